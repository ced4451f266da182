"""Finite groups with canonical 0-based element indexing.

Every group is stored through the right action of its generators on the
element indices (``R[s, x] = x * gens[s]``) together with a breadth-first
spanning tree, so that any product can be recomputed from words. Groups up
to ``DENSE_CAP`` elements additionally carry a full Cayley table.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Hashable, Iterable, Sequence

import numpy as np

DENSE_CAP = 4096
BLACKBOX_CAP = 10**6


class GroupError(ValueError):
    """Invalid group input or invalid use of group elements."""


class GroupTooLarge(GroupError):
    pass


def prime_power(n: int) -> tuple[int, int] | None:
    """Return ``(p, k)`` with ``n == p**k`` and ``k >= 1``, else None."""
    if n < 2:
        return None
    p = next((q for q in range(2, math.isqrt(n) + 1) if n % q == 0), n)
    k = 0
    while n % p == 0:
        n //= p
        k += 1
    return (p, k) if n == 1 else None


def is_prime(n: int) -> bool:
    return n >= 2 and all(n % q for q in range(2, math.isqrt(n) + 1))


@dataclass(frozen=True)
class Element:
    group: "GroupRep"
    index: int

    def _check(self, other: "Element") -> None:
        if other.group is not self.group:
            raise GroupError("elements belong to different groups")

    def __mul__(self, other: "Element") -> "Element":
        self._check(other)
        return Element(self.group, self.group.mul(self.index, other.index))

    def __invert__(self) -> "Element":
        return Element(self.group, self.group.inv(self.index))

    @property
    def order(self) -> int:
        return self.group.element_order(self.index)


def _index(g, group: "GroupRep") -> int:
    if isinstance(g, Element):
        if g.group is not group:
            raise GroupError("element does not belong to this group")
        return g.index
    g = int(g)
    if not 0 <= g < group.order:
        raise GroupError(f"element index {g} outside [0, {group.order})")
    return g


class GroupRep:
    """An immutable finite group on the indices ``0 .. order-1``.

    Index 0 is the identity. ``backend`` records how products are realised:
    ``"cayley"`` when a dense table is held, otherwise the source kind
    (``"permutation"`` or ``"unitriangular"``) and products are replayed
    from generator words.
    """

    def __init__(
        self,
        right_action: np.ndarray,
        gens: Sequence[int],
        *,
        kind: str = "cayley",
        keys: Sequence[Hashable] | None = None,
        table: np.ndarray | None = None,
        name: str | None = None,
        dense_cap: int = DENSE_CAP,
    ):
        if len(gens):
            R = np.ascontiguousarray(right_action, dtype=np.int64).reshape(len(gens), -1)
            self.order = R.shape[1]
        else:
            self.order = 1
            R = np.zeros((0, 1), dtype=np.int64)
        self.right_action = R
        self.gens = [int(g) for g in gens]
        self.kind = kind
        self.keys = list(keys) if keys is not None else None
        self.name = name
        self.identity = 0
        self._cache: dict = {}
        self._tree()
        if table is None and self.order <= dense_cap:
            table = self._build_table()
        self.table = None if table is None else np.asarray(table, dtype=np.int64)
        self.backend = "cayley" if self.table is not None else kind
        pp = prime_power(self.order)
        self.p = pp[0] if pp else None
        self._inv = self._build_inverses()

    # -- construction helpers ------------------------------------------------

    def _tree(self) -> None:
        n = self.order
        parent = np.full(n, -1, dtype=np.int64)
        pgen = np.full(n, -1, dtype=np.int64)
        seen = np.zeros(n, dtype=bool)
        seen[0] = True
        levels = [np.array([0], dtype=np.int64)]
        frontier = levels[0]
        while frontier.size:
            new_elems, new_par, new_gen = [], [], []
            for s in range(len(self.gens)):
                img = self.right_action[s, frontier]
                _, first = np.unique(img, return_index=True)
                first.sort()
                img, src = img[first], frontier[first]
                fresh = ~seen[img]
                img, src = img[fresh], src[fresh]
                seen[img] = True
                new_elems.append(img)
                new_par.append(src)
                new_gen.append(np.full(img.size, s, dtype=np.int64))
            frontier = np.concatenate(new_elems) if new_elems else np.zeros(0, np.int64)
            if frontier.size:
                parent[frontier] = np.concatenate(new_par)
                pgen[frontier] = np.concatenate(new_gen)
                levels.append(frontier)
        if not seen.all():
            raise GroupError("generators do not generate all elements")
        self.parent, self.parent_gen, self.levels = parent, pgen, levels

    def _build_table(self) -> np.ndarray:
        n = self.order
        T = np.empty((n, n), dtype=np.int64)
        T[:, 0] = np.arange(n)
        for level in self.levels[1:]:
            T[:, level] = self.right_action[self.parent_gen[level][None, :], T[:, self.parent[level]]]
        return T

    def _build_inverses(self) -> np.ndarray:
        if self.table is not None:
            rows, cols = np.nonzero(self.table == 0)
            inv = np.empty(self.order, dtype=np.int64)
            inv[rows] = cols
            return inv
        # x * s^{-1} is the inverse permutation of x -> x * s
        rinv = np.empty_like(self.right_action)
        for s in range(len(self.gens)):
            rinv[s, self.right_action[s]] = np.arange(self.order)
        inv = np.empty(self.order, dtype=np.int64)
        for h in range(self.order):
            y = 0
            for s in reversed(self.word(h)):
                y = rinv[s, y]
            inv[h] = y
        return inv

    # -- arithmetic -------------------------------------------------------------

    def word(self, h: int) -> list[int]:
        """Generator positions spelling ``h`` along the spanning tree."""
        out = []
        while h:
            out.append(int(self.parent_gen[h]))
            h = int(self.parent[h])
        return out[::-1]

    def element(self, i: int) -> Element:
        return Element(self, _index(i, self))

    def elements(self) -> range:
        return range(self.order)

    def mul(self, g, h) -> int:
        if isinstance(g, Element) and isinstance(h, Element) and g.group is not h.group:
            raise GroupError("elements belong to different groups")
        g, h = _index(g, self), _index(h, self)
        if self.table is not None:
            return int(self.table[g, h])
        for s in self.word(h):
            g = int(self.right_action[s, g])
        return g

    def inv(self, g) -> int:
        return int(self._inv[_index(g, self)])

    @property
    def inverses(self) -> np.ndarray:
        return self._inv

    def power(self, g, k: int) -> int:
        g = _index(g, self)
        if k < 0:
            g, k = self.inv(g), -k
        out = 0
        while k:
            if k & 1:
                out = self.mul(out, g)
            g = self.mul(g, g)
            k >>= 1
        return out

    def mul_arrays(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        """Elementwise products ``a[t] * b[t]``."""
        a, b = np.asarray(a), np.asarray(b)
        if self.table is not None:
            return self.table[a, b]
        return np.array([self.mul(int(x), int(y)) for x, y in zip(a, b)], dtype=np.int64)

    def left_row(self, g) -> np.ndarray:
        """``[g*h for h in G]``."""
        g = _index(g, self)
        if self.table is not None:
            return self.table[g]
        row = np.empty(self.order, dtype=np.int64)
        row[0] = g
        for level in self.levels[1:]:
            row[level] = self.right_action[self.parent_gen[level], row[self.parent[level]]]
        return row

    def right_col(self, g) -> np.ndarray:
        """``[x*g for x in G]``."""
        g = _index(g, self)
        if self.table is not None:
            return self.table[:, g]
        col = np.arange(self.order)
        for s in self.word(g):
            col = self.right_action[s, col]
        return col

    def conjugation(self, x) -> np.ndarray:
        """``[x^-1 * g * x for g in G]``."""
        x = _index(x, self)
        return self.right_col(x)[self.left_row(self._inv[x])]

    @property
    def element_orders(self) -> np.ndarray:
        if "orders" not in self._cache:
            idx = np.arange(self.order)
            orders = np.zeros(self.order, dtype=np.int64)
            cur, k = idx, 1
            while True:
                hit = (cur == 0) & (orders == 0)
                orders[hit] = k
                if orders.all():
                    break
                cur = self.mul_arrays(cur, idx)
                k += 1
            self._cache["orders"] = orders
        return self._cache["orders"]

    def element_order(self, g) -> int:
        return int(self.element_orders[_index(g, self)])

    @property
    def exponent(self) -> int:
        return int(np.lcm.reduce(self.element_orders))

    @property
    def is_abelian(self) -> bool:
        gs = self.gens
        return all(self.mul(a, b) == self.mul(b, a) for a in gs for b in gs)

    def element_name(self, g) -> str:
        g = _index(g, self)
        if self.keys is None:
            return str(g)
        return str(self.keys[g])

    def __repr__(self) -> str:
        label = self.name or "group"
        return f"<GroupRep {label} order={self.order} backend={self.backend}>"


# -- builders --------------------------------------------------------------------


def closure(
    gen_keys: Sequence[Hashable],
    identity: Hashable,
    rmul: Callable[[Hashable, Hashable], Hashable],
    cap: int,
) -> tuple[list[Hashable], np.ndarray]:
    """Breadth-first closure in canonical order.

    Elements of each new word length are discovered generator by generator,
    and for a fixed generator by increasing index of the left factor.
    """
    keys = [identity]
    index = {identity: 0}
    actions: list[dict[int, int]] = [dict() for _ in gen_keys]
    level = [0]
    while level:
        nxt = []
        for s, gk in enumerate(gen_keys):
            act = actions[s]
            for x in level:
                y = rmul(keys[x], gk)
                j = index.get(y)
                if j is None:
                    j = len(keys)
                    if j >= cap:
                        raise GroupTooLarge(f"group too large: closure exceeds cap {cap}")
                    index[y] = j
                    keys.append(y)
                    nxt.append(j)
                act[x] = j
        level = nxt
    n = len(keys)
    R = np.empty((len(gen_keys), n), dtype=np.int64)
    for s, gk in enumerate(gen_keys):
        act = actions[s]
        R[s] = [act[x] for x in range(n)]
    return keys, R


def _from_keys(gen_keys, identity, rmul, *, kind, name, max_order, dense_cap) -> GroupRep:
    keys, R = closure(gen_keys, identity, rmul, max_order)
    gens = [keys.index(g) for g in gen_keys]
    return GroupRep(R, gens, kind=kind, keys=keys, name=name, dense_cap=dense_cap)


def _compose(p: tuple, q: tuple) -> tuple:
    # apply p first, then q
    return tuple(q[i] for i in p)


def perm_from_cycles(cycles: Iterable[Sequence[int]], degree: int) -> list[int]:
    img = list(range(degree))
    for cyc in cycles:
        for a, b in zip(cyc, list(cyc[1:]) + [cyc[0]]):
            img[a] = b
    return img


def build_from_permutations(
    generators: Sequence[Sequence[int]],
    degree: int,
    *,
    name: str | None = None,
    max_order: int = BLACKBOX_CAP,
    dense_cap: int = DENSE_CAP,
) -> GroupRep:
    """Group generated by permutations given as 0-based image arrays.

    Products compose left to right: ``(g*h)(i) = h(g(i))``.
    """
    gens = []
    for g in generators:
        g = tuple(int(v) for v in g)
        if len(g) != degree or sorted(g) != list(range(degree)):
            raise GroupError(f"not a permutation of {{0..{degree - 1}}}: {list(g)}")
        gens.append(g)
    return _from_keys(
        gens, tuple(range(degree)), _compose,
        kind="permutation", name=name, max_order=max_order, dense_cap=dense_cap,
    )


def build_unitriangular(
    n: int,
    p: int,
    generators: Sequence[Sequence[Sequence[int]]] | None = None,
    *,
    name: str | None = None,
    max_order: int = BLACKBOX_CAP,
    dense_cap: int = DENSE_CAP,
) -> GroupRep:
    """Upper unitriangular ``n x n`` matrices over GF(p).

    Elements are keyed by their above-diagonal entries in row-major order.
    Without ``generators`` the whole group UT(n, p) is built from the
    elementary matrices ``I + E[i, i+1]``; otherwise the subgroup generated
    by the given matrices.
    """
    if n < 2 or not is_prime(p):
        raise GroupError(f"unitriangular needs n >= 2 and p prime, got n={n}, p={p}")
    size = p ** (n * (n - 1) // 2)
    if generators is None and size > max_order:
        raise GroupTooLarge(f"group too large: UT({n},{p}) has order {size} > cap {max_order}")
    slots = [(i, j) for i in range(n) for j in range(i + 1, n)]
    where = {ij: t for t, ij in enumerate(slots)}

    def rmul(a, b):
        out = []
        for i, j in slots:
            # (A B)[i, j] with unit diagonals
            v = a[where[i, j]] + b[where[i, j]]
            for m in range(i + 1, j):
                v += a[where[i, m]] * b[where[m, j]]
            out.append(v % p)
        return tuple(out)

    gens = []
    if generators is None:
        for i in range(n - 1):
            g = [0] * len(slots)
            g[where[i, i + 1]] = 1
            gens.append(tuple(g))
        name = name or f"UT({n},{p})"
    else:
        for m in generators:
            m = [[int(v) % p for v in row] for row in m]
            if len(m) != n or any(len(row) != n for row in m):
                raise GroupError(f"generator is not a {n}x{n} matrix")
            if any(m[i][j] != (i == j) for i in range(n) for j in range(i + 1)):
                raise GroupError(f"generator is not upper unitriangular: {m}")
            gens.append(tuple(m[i][j] for i, j in slots))
    return _from_keys(
        gens, tuple([0] * len(slots)), rmul,
        kind="unitriangular", name=name, max_order=max_order, dense_cap=dense_cap,
    )


def regular_permutations(G: GroupRep) -> list[list[int]]:
    """Right regular action of the generators, as image arrays."""
    return [list(map(int, row)) for row in G.right_action]


def _cyclic(n: int):
    if n < 1:
        raise GroupError("cyclic order must be positive")
    gen = [(1,)] if n > 1 else []
    return gen, (0,), lambda a, b: ((a[0] + b[0]) % n,)


def _abelian(invariants: Sequence[int]):
    inv = [int(m) for m in invariants]
    if any(m < 1 for m in inv):
        raise GroupError(f"invalid invariant factors {inv}")
    r = len(inv)
    gens = []
    for t, m in enumerate(inv):
        if m > 1:
            g = [0] * r
            g[t] = 1
            gens.append(tuple(g))
    return gens, tuple([0] * r), lambda a, b: tuple((x + y) % m for x, y, m in zip(a, b, inv))


def _dihedral(order: int):
    if order < 2 or order % 2:
        raise GroupError(f"dihedral order must be even and >= 2, got {order}")
    n = order // 2

    def rmul(a, b):
        # r^a s^b * r^c s^d = r^(a + (-1)^b c) s^(b + d)
        sign = -1 if a[1] else 1
        return ((a[0] + sign * b[0]) % n, (a[1] + b[1]) % 2)

    gens = ([(1 % n, 0)] if n > 1 else []) + [(0, 1)]
    return gens, (0, 0), rmul


def _quaternion(order: int):
    if order < 4 or order % 4:
        raise GroupError(f"quaternion (dicyclic) order must be a multiple of 4, got {order}")
    # <x, y | x^(2n) = 1, y^2 = x^n, x^y = x^-1>
    n = order // 4
    m = 2 * n

    def rmul(a, b):
        sign = -1 if a[1] else 1
        e = a[0] + sign * b[0]
        t = a[1] + b[1]
        if t == 2:
            e += n  # y^2 = x^n
            t = 0
        return (e % m, t)

    return [(1, 0), (0, 1)], (0, 0), rmul


def _extraspecial(p: int, exponent: int, sign: str = "+"):
    if not is_prime(p):
        raise GroupError(f"extraspecial needs a prime, got {p}")
    if p == 2:
        if exponent != 4:
            raise GroupError("extraspecial 2^(1+2) has exponent 4")
        return _dihedral(8) if sign == "+" else _quaternion(8)
    if exponent == p:
        # Heisenberg group: (a, b, c) <-> [[1, a, c], [0, 1, b], [0, 0, 1]]
        def rmul(x, y):
            return ((x[0] + y[0]) % p, (x[1] + y[1]) % p, (x[2] + y[2] + x[0] * y[1]) % p)

        return [(1, 0, 0), (0, 1, 0)], (0, 0, 0), rmul
    if exponent == p * p:
        q = p * p
        tw = pow(1 + p, -1, q)

        def rmul(x, y):
            # x^a y^b * x^c y^d = x^(a + c (1+p)^(-b)) y^(b+d)
            return ((x[0] + y[0] * pow(tw, x[1], q)) % q, (x[1] + y[1]) % p)

        return [(1, 0), (0, 1)], (0, 0), rmul
    raise GroupError(f"extraspecial {p}^(1+2) has exponent {p} or {p * p}, got {exponent}")


FAMILIES = ("cyclic", "abelian", "dihedral", "quaternion", "extraspecial", "direct_product")


def direct_product(G: GroupRep, H: GroupRep, *, name: str | None = None,
                   max_order: int = BLACKBOX_CAP, dense_cap: int = DENSE_CAP) -> GroupRep:
    """``G x H`` acting on the disjoint union of the two regular actions."""
    shift = G.order
    degree = G.order + H.order
    gens = []
    ident = list(range(degree))
    for row in G.right_action:
        gens.append(list(map(int, row)) + ident[shift:])
    for row in H.right_action:
        gens.append(ident[:shift] + [shift + int(v) for v in row])
    if name is None and G.name and H.name:
        name = f"{G.name}x{H.name}"
    if G.order * H.order > max_order:
        raise GroupTooLarge(
            f"group too large: product order {G.order * H.order} > cap {max_order}"
        )
    return build_from_permutations(gens, degree, name=name, max_order=max_order, dense_cap=dense_cap)


def build_builtin(family: str, params: dict | None = None, *, max_order: int = BLACKBOX_CAP,
                  dense_cap: int = DENSE_CAP, **kwargs) -> GroupRep:
    """Build a named family member.

    ``params`` (or keyword arguments) per family: ``cyclic(n)``,
    ``abelian(invariants)``, ``dihedral(order)``, ``quaternion(order)``,
    ``extraspecial(p, exponent[, sign])``, ``direct_product(left, right)``
    where the factors are GroupReps.
    """
    params = {**(params or {}), **kwargs}
    try:
        if family == "cyclic":
            n = int(params["n"])
            spec, label = _cyclic(n), f"C{n}"
        elif family == "abelian":
            inv = list(params["invariants"])
            spec, label = _abelian(inv), "C" + "xC".join(map(str, inv)) if inv else "C1"
        elif family == "dihedral":
            n = int(params["order"])
            spec, label = _dihedral(n), f"D{n}"
        elif family == "quaternion":
            n = int(params["order"])
            spec, label = _quaternion(n), f"Q{n}"
        elif family == "extraspecial":
            p, e = int(params["p"]), int(params["exponent"])
            sign = params.get("sign", "+")
            spec = _extraspecial(p, e, sign)
            label = f"{p}^(1+2){sign if p == 2 else ''}_exp{e}"
        elif family == "direct_product":
            return direct_product(params["left"], params["right"], name=params.get("name"),
                                  max_order=max_order, dense_cap=dense_cap)
        else:
            raise GroupError(f"unknown family {family!r}; known: {', '.join(FAMILIES)}")
    except KeyError as exc:
        raise GroupError(f"family {family!r} is missing parameter {exc.args[0]!r}") from None
    gens, ident, rmul = spec
    return _from_keys(gens, ident, rmul, kind="builtin", name=params.get("name", label),
                      max_order=max_order, dense_cap=dense_cap)


def from_cayley_table(table: Sequence[Sequence[int]], generators: Sequence[int] | None = None,
                      *, name: str | None = None) -> GroupRep:
    """Group given by a full multiplication table, re-indexed canonically.

    Generators default to a greedy irredundant generating set taken from the
    table's own element order.
    """
    T = np.asarray(table, dtype=np.int64)
    n = T.shape[0]
    if T.shape != (n, n) or n == 0:
        raise GroupError("Cayley table must be a nonempty square array")
    if T.min() < 0 or T.max() >= n:
        raise GroupError("Cayley table entries out of range")
    for row in (T, T.T):
        if not all(len(set(r.tolist())) == n for r in row):
            raise GroupError("Cayley table is not a Latin square")
    ident = [e for e in range(n) if np.array_equal(T[e], np.arange(n))]
    if not ident or not np.array_equal(T[:, ident[0]], np.arange(n)):
        raise GroupError("Cayley table has no identity")
    e = ident[0]
    if generators is None:
        generators = []
        span = {e}
        for g in range(n):
            if g not in span:
                generators.append(g)
                span = _span(T, generators, e)
    gens = [int(g) for g in generators]
    keys, R = closure(gens, e, lambda a, b: int(T[a, b]), n + 1)
    if len(keys) != n:
        raise GroupError("generators do not generate the whole table")
    return GroupRep(R, [keys.index(g) for g in gens], kind="cayley", keys=keys, name=name)


def _span(T: np.ndarray, gens: list[int], e: int) -> set[int]:
    seen, stack = {e}, [e]
    while stack:
        x = stack.pop()
        for g in gens:
            y = int(T[x, g])
            if y not in seen:
                seen.add(y)
                stack.append(y)
    return seen
