"""Exact arithmetic in Z[zeta_e], zeta_e a primitive e-th root of unity.

Values are coefficient vectors of length phi(e) in the power basis
``1, zeta, ..., zeta^(phi(e)-1)``, reduced modulo the e-th cyclotomic
polynomial. No floating point is involved anywhere except ``to_complex``.
"""

from __future__ import annotations

import cmath
from functools import lru_cache

import numpy as np


def _divisors(n: int) -> list[int]:
    return [d for d in range(1, n + 1) if n % d == 0]


@lru_cache(maxsize=None)
def cyclotomic_poly(e: int) -> tuple[int, ...]:
    """Coefficients of Phi_e, lowest degree first."""
    if e < 1:
        raise ValueError("conductor must be positive")
    num = [-1] + [0] * (e - 1) + [1]  # x^e - 1
    for d in _divisors(e)[:-1]:
        num = _exact_div(num, list(cyclotomic_poly(d)))
    return tuple(num)


def _exact_div(num: list[int], den: list[int]) -> list[int]:
    num = list(num)
    q = [0] * (len(num) - len(den) + 1)
    lead = den[-1]
    for i in range(len(q) - 1, -1, -1):
        c, r = divmod(num[i + len(den) - 1], lead)
        assert r == 0
        q[i] = c
        for j, dj in enumerate(den):
            num[i + j] -= c * dj
    assert not any(num[: len(den) - 1])
    return q


def totient(e: int) -> int:
    return len(cyclotomic_poly(e)) - 1


def reduce_poly(coeffs, e: int) -> tuple[int, ...]:
    """Reduce an integer polynomial (lowest degree first) modulo Phi_e."""
    phi = cyclotomic_poly(e)
    k = len(phi) - 1
    c = [int(v) for v in coeffs]
    for i in range(len(c) - 1, k - 1, -1):
        t = c[i]
        if t:
            # Phi_e is monic
            for j in range(k + 1):
                c[i - k + j] -= t * phi[j]
    c = c[:k] + [0] * (k - len(c))
    return tuple(c)


@lru_cache(maxsize=None)
def root_table(e: int) -> np.ndarray:
    """Row t holds the reduced coefficients of zeta^t, for t in [0, e)."""
    out = np.zeros((e, totient(e)), dtype=np.int64)
    for t in range(e):
        out[t] = reduce_poly([0] * t + [1], e)
    return out


class CyclotomicInt:
    __slots__ = ("e", "coeffs")

    def __init__(self, e: int, coeffs):
        self.e = e
        self.coeffs = tuple(int(v) for v in coeffs)
        if len(self.coeffs) != totient(e):
            self.coeffs = reduce_poly(self.coeffs, e)

    @classmethod
    def from_int(cls, e: int, n: int) -> "CyclotomicInt":
        return cls(e, (n,) + (0,) * (totient(e) - 1))

    @classmethod
    def root(cls, e: int, k: int = 1) -> "CyclotomicInt":
        return cls(e, root_table(e)[k % e])

    @classmethod
    def from_multiplicities(cls, e: int, mult) -> "CyclotomicInt":
        """``sum_t mult[t] * zeta^t``."""
        return cls(e, np.asarray(mult, dtype=np.int64) @ root_table(e))

    def _coerce(self, other) -> "CyclotomicInt":
        if isinstance(other, CyclotomicInt):
            if other.e != self.e:
                raise ValueError(f"conductor mismatch: {self.e} vs {other.e}")
            return other
        if isinstance(other, (int, np.integer)):
            return CyclotomicInt.from_int(self.e, int(other))
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return CyclotomicInt(self.e, [a + b for a, b in zip(self.coeffs, other.coeffs)])

    __radd__ = __add__

    def __neg__(self):
        return CyclotomicInt(self.e, [-a for a in self.coeffs])

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        a, b = self.coeffs, other.coeffs
        prod = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    prod[i + j] += x * y
        return CyclotomicInt(self.e, reduce_poly(prod, self.e))

    __rmul__ = __mul__

    def conj(self) -> "CyclotomicInt":
        """Complex conjugate: zeta^t goes to zeta^(e - t)."""
        full = [0] * self.e
        for t, c in enumerate(self.coeffs):
            full[(-t) % self.e] += c
        return CyclotomicInt(self.e, reduce_poly(full, self.e))

    def norm_sq(self) -> "CyclotomicInt":
        return self * self.conj()

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def as_int(self) -> int | None:
        """The rational integer this equals, if any."""
        if any(self.coeffs[1:]):
            return None
        return self.coeffs[0]

    def __eq__(self, other) -> bool:
        other = self._coerce(other)
        if other is NotImplemented:
            return False
        return self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash((self.e, self.coeffs))

    def to_complex(self) -> complex:
        z = cmath.exp(2j * cmath.pi / self.e)
        return sum(c * z**t for t, c in enumerate(self.coeffs))

    def __repr__(self) -> str:
        terms = []
        for t, c in enumerate(self.coeffs):
            if not c:
                continue
            mono = "" if t == 0 else ("z" if t == 1 else f"z^{t}")
            if mono and abs(c) == 1:
                coef = "-" if c < 0 else ""
                terms.append(f"{coef}{mono}")
            else:
                terms.append(f"{c}{'*' + mono if mono else ''}")
        body = " + ".join(terms).replace("+ -", "- ") if terms else "0"
        return f"{body} (e={self.e})"
