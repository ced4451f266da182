"""Exact character tables by the Dixon-Burnside method.

Class-multiplication matrices are diagonalised simultaneously over GF(l),
with l the least prime congruent to 1 mod exp(G) and above 2*sqrt(|G|).
Each character is then lifted from its residues to a sum of e-th roots of
unity by reading off eigenvalue multiplicities.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .cyclotomic import CyclotomicInt, root_table
from .group import GroupError, GroupRep, is_prime
from .subgroups import ConjugacyClassData, SubgroupSet, conjugacy_classes, generated_subgroup

CHAR_CAP = 1024


class CharacterCapExceeded(GroupError):
    pass


class CharacterTableError(RuntimeError):
    """An internal consistency check on a computed table failed."""


def dixon_prime(order: int, exponent: int) -> int:
    """Least prime l with l = 1 mod exponent and l > 2 sqrt(order)."""
    ell = exponent + 1
    while not (ell * ell > 4 * order and is_prime(ell)):
        ell += exponent
    return ell


# -- linear algebra over GF(l) ------------------------------------------------


def rref_mod(M: np.ndarray, ell: int) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form and pivot columns."""
    A = np.array(M, dtype=np.int64) % ell
    rows, cols = A.shape
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.flatnonzero(A[r:, c])
        if not nz.size:
            continue
        k = r + nz[0]
        if k != r:
            A[[r, k]] = A[[k, r]]
        A[r] = (A[r] * pow(int(A[r, c]), -1, ell)) % ell
        f = A[:, c].copy()
        f[r] = 0
        A = (A - np.outer(f, A[r])) % ell
        pivots.append(c)
        r += 1
    return A[:r], pivots


def matmul_mod(A: np.ndarray, B: np.ndarray, q: int) -> np.ndarray:
    """``A @ B mod q`` for nonnegative residues, exact.

    Uses float64 (BLAS) when every partial sum stays below 2**53.
    """
    if A.shape[-1] * (q - 1) ** 2 < 2**53:
        out = np.matmul(np.ascontiguousarray(A, dtype=np.float64),
                        np.ascontiguousarray(B, dtype=np.float64))
        return np.rint(np.fmod(out, q)).astype(np.int64)
    if A.shape[-1] * (q - 1) ** 2 < 2**63:
        return np.matmul(A, B) % q
    return (np.matmul(A.astype(object), B.astype(object)) % q).astype(np.int64)


def nullspace_mod(M: np.ndarray, ell: int) -> np.ndarray:
    """Columns spanning the right null space of M."""
    n = M.shape[1]
    R, piv = rref_mod(M, ell)
    free = [c for c in range(n) if c not in piv]
    out = np.zeros((n, len(free)), dtype=np.int64)
    for t, f in enumerate(free):
        out[f, t] = 1
        for r, pc in enumerate(piv):
            out[pc, t] = (-R[r, f]) % ell
    return out


def _column_echelon(B: np.ndarray, ell: int) -> tuple[np.ndarray, list[int]]:
    R, piv = rref_mod(B.T, ell)
    return R.T.copy(), piv


def charpoly_mod(A: np.ndarray, ell: int) -> np.ndarray:
    """Characteristic polynomial (lowest degree first) via Hessenberg form."""
    H = np.array(A, dtype=np.int64) % ell
    n = H.shape[0]
    for m in range(1, n - 1):
        nz = np.flatnonzero(H[m:, m - 1])
        if not nz.size:
            continue
        i = m + nz[0]
        if i != m:
            H[[i, m]] = H[[m, i]]
            H[:, [i, m]] = H[:, [m, i]]
        inv = pow(int(H[m, m - 1]), -1, ell)
        for j in range(m + 1, n):
            u = (H[j, m - 1] * inv) % ell
            if u:
                H[j] = (H[j] - u * H[m]) % ell
                H[:, m] = (H[:, m] + u * H[:, j]) % ell
    # p_k = (x - h_kk) p_{k-1} - sum_i h_ik (prod of subdiagonal) p_{i-1}
    polys = [np.array([1], dtype=np.int64)]
    for k in range(n):
        pk = np.zeros(k + 2, dtype=np.int64)
        prev = polys[k]
        pk[1:] += prev
        pk[: k + 1] -= H[k, k] * prev
        t = 1
        for i in range(k - 1, -1, -1):
            t = (t * H[i + 1, i]) % ell
            if not t:
                break
            pk[: i + 1] -= (H[i, k] * t % ell) * polys[i]
        polys.append(pk % ell)
    return polys[n]


def _roots_mod(poly: np.ndarray, ell: int) -> list[int]:
    xs = np.arange(ell, dtype=np.int64)
    acc = np.zeros(ell, dtype=np.int64)
    for c in poly[::-1]:
        acc = (acc * xs + c) % ell
    return np.flatnonzero(acc == 0).tolist()


def _primitive_root(ell: int) -> int:
    factors = [q for q in range(2, ell) if (ell - 1) % q == 0 and is_prime(q)]
    for g in range(2, ell):
        if all(pow(g, (ell - 1) // q, ell) != 1 for q in factors):
            return g
    return 1


# -- the table ------------------------------------------------------------------


@dataclass
class CharacterTable:
    """Irreducible characters of ``group``.

    ``multiplicities[row, cls, t]`` counts the eigenvalue zeta^t of a
    representing matrix at the class; ``coeffs`` holds the same values
    reduced in the power basis of Z[zeta_e].
    """

    group: GroupRep
    class_data: ConjugacyClassData
    conductor: int
    prime: int
    degrees: list[int]
    multiplicities: np.ndarray
    coeffs: np.ndarray

    def __len__(self) -> int:
        return len(self.degrees)

    def value(self, row: int, cls: int) -> CyclotomicInt:
        return CyclotomicInt(self.conductor, self.coeffs[row, cls])

    def row(self, row: int) -> list[CyclotomicInt]:
        return [self.value(row, c) for c in range(len(self.class_data))]

    @property
    def nonlinear(self) -> list[int]:
        return [i for i, d in enumerate(self.degrees) if d != 1]

    def zero_mask(self) -> np.ndarray:
        """``mask[row, cls]`` is True where the value is exactly zero."""
        return ~self.coeffs.any(axis=2)


def _class_matrix(G: GroupRep, cc: ConjugacyClassData, i: int) -> np.ndarray:
    """``M[j, k]`` = #{x in C_i : x^-1 z_k in C_j}, z_k the class representatives."""
    r = len(cc)
    xs = G.inverses[cc.classes[i]]
    reps = np.array(cc.representatives)
    prod = G.table[np.ix_(xs, reps)]
    js = cc.class_of[prod]
    flat = js + r * np.arange(r)[None, :]
    return np.bincount(flat.ravel(), minlength=r * r).reshape(r, r).T


def _split(G: GroupRep, cc: ConjugacyClassData, ell: int) -> list[np.ndarray]:
    r = len(cc)
    spaces = [np.eye(r, dtype=np.int64)]
    for i in range(1, r):
        if all(B.shape[1] == 1 for B in spaces):
            break
        M = _class_matrix(G, cc, i) % ell
        nxt = []
        for B in spaces:
            m = B.shape[1]
            if m == 1:
                nxt.append(B)
                continue
            B, piv = _column_echelon(B, ell)
            A = (M @ B % ell)[piv]
            roots = _roots_mod(charpoly_mod(A, ell), ell)
            got = 0
            for lam in roots:
                N = nullspace_mod((A - lam * np.eye(m, dtype=np.int64)) % ell, ell)
                got += N.shape[1]
                nxt.append(B @ N % ell)
            if got != m:
                raise CharacterTableError("class matrix is not diagonalisable over GF(l)")
        spaces = nxt
    if any(B.shape[1] != 1 for B in spaces):
        raise CharacterTableError("class matrices failed to separate the characters")
    return [B[:, 0] for B in spaces]


def character_table(G: GroupRep, cap: int = CHAR_CAP) -> CharacterTable:
    if G.order > cap:
        raise CharacterCapExceeded(f"character table cap exceeded: |G| = {G.order} > {cap}")
    key = ("chartable",)
    if key in G._cache:
        return G._cache[key]
    if G.table is None:
        raise CharacterCapExceeded("character tables need a dense Cayley table")
    cc = conjugacy_classes(G)
    r = len(cc)
    order = G.order
    e = G.exponent
    ell = dixon_prime(order, e)
    sizes = np.array(cc.sizes, dtype=np.int64)
    reps = cc.representatives
    inv_class = cc.class_of[G.inverses[reps]]

    central = _split(G, cc, ell)
    # power maps: class of g^j for j in [0, e)
    pmap = np.zeros((r, e), dtype=np.int64)
    for k, x in enumerate(reps):
        y = 0
        for j in range(e):
            pmap[k, j] = cc.class_of[y]
            y = G.mul(y, x)
    z = pow(_primitive_root(ell), (ell - 1) // e, ell)
    zinv = pow(z, -1, ell)
    jt = np.outer(np.arange(e), np.arange(e)) % e
    zpow = np.array([pow(zinv, int(v), ell) for v in range(e)], dtype=np.int64)[jt]
    e_inv = pow(e, -1, ell)
    size_inv = np.array([pow(int(s), -1, ell) for s in sizes], dtype=np.int64)

    degrees, mults = [], []
    bound = math.isqrt(order)
    for w in central:
        w = w * pow(int(w[0]), -1, ell) % ell
        s = int(np.sum(w * w[inv_class] % ell * size_inv % ell) % ell)
        target = order * pow(s, -1, ell) % ell
        d = next((d for d in range(1, bound + 1) if d * d % ell == target), None)
        if d is None:
            raise CharacterTableError("no admissible degree for a central character")
        chi = w * d % ell * size_inv % ell
        # m[k, t] = e^-1 sum_j chi(g_k^j) z^(-jt)
        m = matmul_mod(chi[pmap], zpow, ell) * e_inv % ell
        if m.max() > d:
            raise CharacterTableError("lifted multiplicity exceeds the degree")
        degrees.append(d)
        mults.append(m)
    mults = np.array(mults, dtype=np.int64)
    coeffs = mults @ root_table(e)

    trivial = [all(row[k, 0] == 1 and not row[k, 1:].any() for k in range(r)) for row in coeffs]
    order_key = sorted(
        range(r),
        key=lambda i: (degrees[i], not trivial[i], coeffs[i].ravel().tolist()),
    )
    T = CharacterTable(
        G, cc, e, ell,
        [degrees[i] for i in order_key], mults[order_key], coeffs[order_key],
    )
    check_table(T)
    G._cache[key] = T
    return T


def _gram(X: np.ndarray, Y: np.ndarray, weights: np.ndarray, e: int, bound: int) -> np.ndarray:
    """``sum_c w_c X[a, c] conj(Y[b, c])`` for multiplicity-form values.

    The cyclic convolutions are done with a number-theoretic transform modulo
    a prime q = 1 mod e exceeding twice ``bound`` (a bound on the absolute
    value of every result coefficient), so the symmetric lift is exact.
    Returns reduced coefficients in Z[zeta_e].
    """
    q = dixon_prime(bound * bound + 1, e)
    w = pow(_primitive_root(q), (q - 1) // e, q)
    tf = np.outer(np.arange(e), np.arange(e)) % e
    fwd = np.array([pow(w, int(k), q) for k in range(e)], dtype=np.int64)[tf]
    back = np.array([pow(w, -int(k), q) for k in range(e)], dtype=np.int64)[tf]
    Xh = matmul_mod(X % q, fwd, q) * (weights % q)[None, :, None] % q
    Yh = matmul_mod(Y % q, back, q)  # transform of conj(Y)
    # one (a x c) @ (c x b) product per frequency
    out = matmul_mod(np.transpose(Xh, (2, 0, 1)), np.transpose(Yh, (2, 1, 0)), q)
    coef = matmul_mod(np.transpose(out, (1, 2, 0)), back, q) * pow(e, -1, q) % q
    coef = np.where(coef > q // 2, coef - q, coef)
    return coef @ root_table(e)


def check_table(T: CharacterTable) -> None:
    """Exact checks; raises CharacterTableError on any violation."""
    G, cc, e = T.group, T.class_data, T.conductor
    r = len(cc)
    if len(T) != r:
        raise CharacterTableError("row count differs from class count")
    if sum(d * d for d in T.degrees) != G.order:
        raise CharacterTableError("sum of squared degrees differs from |G|")
    sizes = np.array(cc.sizes, dtype=np.int64)
    rows = _gram(T.multiplicities, T.multiplicities, sizes, e, G.order * max(T.degrees) ** 2)
    want = np.zeros_like(rows)
    want[np.arange(r), np.arange(r), 0] = G.order
    if not np.array_equal(rows, want):
        raise CharacterTableError("row orthogonality fails")
    cols = column_gram(T)
    want = np.zeros_like(cols)
    want[np.arange(r), np.arange(r), 0] = cc.centralizer_order
    if not np.array_equal(cols, want):
        raise CharacterTableError("column orthogonality fails")


def column_gram(T: CharacterTable) -> np.ndarray:
    """``[k, l] -> sum_chi chi(k) conj(chi(l))``, reduced coefficients."""
    M = np.transpose(T.multiplicities, (1, 0, 2))
    return _gram(M, M, np.ones(M.shape[1], dtype=np.int64), T.conductor, T.group.order)


def vanishing_set(T: CharacterTable, row: int) -> set[int]:
    return set(np.flatnonzero(T.zero_mask()[row]).tolist())


def v_from_characters(G: GroupRep, cap: int = CHAR_CAP) -> SubgroupSet:
    """Subgroup generated by the elements where some nonlinear character is nonzero."""
    T = character_table(G, cap)
    nl = T.nonlinear
    if not nl:
        return SubgroupSet.trivial(G)
    live = (~T.zero_mask()[nl]).any(axis=0)
    return generated_subgroup(G, np.flatnonzero(live[T.class_data.class_of]))


def kernel_classes(T: CharacterTable, row: int) -> set[int]:
    d = T.degrees[row]
    c = T.coeffs[row]
    hit = (c[:, 0] == d) & ~c[:, 1:].any(axis=1)
    return set(np.flatnonzero(hit).tolist())


def irr_over(T: CharacterTable, H: SubgroupSet) -> set[int]:
    """Rows whose kernel does not contain H."""
    h_classes = set(np.unique(T.class_data.class_of[H.members]).tolist())
    return {i for i in range(len(T)) if not h_classes <= kernel_classes(T, i)}
