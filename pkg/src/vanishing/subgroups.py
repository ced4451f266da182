"""Subgroups as membership masks, and the computations built on them."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .group import GroupError, GroupRep, prime_power

SUBSPACE_CAP = 10**6


class NotNormal(GroupError):
    def __init__(self, g: int, n: int):
        super().__init__(f"subgroup is not normal: conjugate of {n} by {g} leaves it")
        self.witness = (g, n)


class SectionTooLarge(GroupError):
    pass


class SubgroupSet:
    """A subgroup of ``parent`` stored as a boolean mask over element indices."""

    __slots__ = ("parent", "members", "order", "_gens")

    def __init__(self, parent: GroupRep, members: np.ndarray, gens: Sequence[int] | None = None):
        self.parent = parent
        self.members = np.asarray(members, dtype=bool)
        self.members.setflags(write=False)
        self.order = int(self.members.sum())
        self._gens = None if gens is None else [int(g) for g in gens]
        if parent.order % self.order:
            raise GroupError(f"subgroup order {self.order} does not divide {parent.order}")

    @classmethod
    def trivial(cls, G: GroupRep) -> "SubgroupSet":
        m = np.zeros(G.order, dtype=bool)
        m[0] = True
        return cls(G, m, [])

    @classmethod
    def whole(cls, G: GroupRep) -> "SubgroupSet":
        return cls(G, np.ones(G.order, dtype=bool), G.gens)

    @property
    def elements(self) -> np.ndarray:
        return np.flatnonzero(self.members)

    @property
    def gens(self) -> list[int]:
        """A small generating set (greedy over increasing element index)."""
        if self._gens is None:
            self._gens = generated_subgroup(self.parent, self.elements)._gens
        return self._gens

    @property
    def index(self) -> int:
        return self.parent.order // self.order

    @property
    def is_trivial(self) -> bool:
        return self.order == 1

    def __contains__(self, g) -> bool:
        return bool(self.members[int(g)])

    def __le__(self, other: "SubgroupSet") -> bool:
        return bool(np.all(other.members[self.members]))

    def __lt__(self, other: "SubgroupSet") -> bool:
        return self.order < other.order and self <= other

    def __ge__(self, other: "SubgroupSet") -> bool:
        return other <= self

    def __gt__(self, other: "SubgroupSet") -> bool:
        return other < self

    def __eq__(self, other) -> bool:
        if not isinstance(other, SubgroupSet):
            return NotImplemented
        return self.parent is other.parent and np.array_equal(self.members, other.members)

    def __hash__(self) -> int:
        return hash(np.packbits(self.members).tobytes())

    def __and__(self, other: "SubgroupSet") -> "SubgroupSet":
        return SubgroupSet(self.parent, self.members & other.members)

    def key(self) -> tuple[int, bytes]:
        return self.order, np.packbits(self.members).tobytes()

    def __repr__(self) -> str:
        return f"<SubgroupSet order={self.order} of {self.parent!r}>"


def _extend(G: GroupRep, members: np.ndarray, gens: list[int]) -> np.ndarray:
    """Close ``members`` (already a subgroup's mask, or a seed) under right
    multiplication by ``gens``."""
    members = members.copy()
    frontier = np.flatnonzero(members)
    cols = [G.right_col(g) for g in gens]
    while frontier.size:
        found = []
        for col in cols:
            img = col[frontier]
            img = img[~members[img]]
            if img.size:
                img = np.unique(img)
                members[img] = True
                found.append(img)
        frontier = np.concatenate(found) if found else frontier[:0]
    return members


def generated_subgroup(G: GroupRep, S: Iterable[int]) -> SubgroupSet:
    """Least subgroup containing ``S``; elements already covered are skipped,
    so the recorded generators are irredundant in the order given."""
    members = np.zeros(G.order, dtype=bool)
    members[0] = True
    gens: list[int] = []
    for s in S:
        s = int(s)
        if not members[s]:
            gens.append(s)
            members = _extend(G, members, gens)
    return SubgroupSet(G, members, gens)


def commutator(G: GroupRep, g: int, h: int) -> int:
    """``[g, h] = g^-1 h^-1 g h``."""
    return G.mul(G.mul(G.inv(g), G.inv(h)), G.mul(g, h))


def normal_closure(G: GroupRep, S: Iterable[int], conjugators: Sequence[int]) -> SubgroupSet:
    H = generated_subgroup(G, S)
    conj = [G.conjugation(x) for x in dict.fromkeys(conjugators)]
    while True:
        extra = [int(c[n]) for n in H.gens for c in conj if not H.members[c[n]]]
        if not extra:
            return H
        H = generated_subgroup(G, list(H.gens) + extra)


def commutator_subgroup(G: GroupRep, H: SubgroupSet, K: SubgroupSet) -> SubgroupSet:
    """``[H, K]``: commutators of generator pairs, normally closed in <H, K>."""
    comms = [commutator(G, h, k) for h in H.gens for k in K.gens]
    return normal_closure(G, comms, H.gens + K.gens)


def derived_subgroup(G: GroupRep) -> SubgroupSet:
    if "derived" not in G._cache:
        W = SubgroupSet.whole(G)
        G._cache["derived"] = commutator_subgroup(G, W, W)
    return G._cache["derived"]


def commutators_with(G: GroupRep, h: int) -> np.ndarray:
    """``[[g, h] for g in G]``."""
    return G.mul_arrays(G.inverses, G.conjugation(h))


def centralizer(G: GroupRep, x: int) -> SubgroupSet:
    return SubgroupSet(G, G.right_col(x) == G.left_row(x))


def centralizer_mod(G: GroupRep, N: SubgroupSet, H: SubgroupSet | Sequence[int]) -> SubgroupSet:
    """Full preimage of ``C_{G/N}(HN/N)``: all g with ``[g, h]`` in N for h in H.

    Tested on generators of H only; that suffices because N is normal.
    ``H`` may also be given as a list of elements.
    """
    require_normal(G, N)
    hs = H.gens if isinstance(H, SubgroupSet) else [int(h) for h in H]
    mask = np.ones(G.order, dtype=bool)
    for h in hs:
        mask &= N.members[commutators_with(G, h)]
    return SubgroupSet(G, mask)


@dataclass(frozen=True)
class ConjugacyClassData:
    classes: list[np.ndarray]
    class_of: np.ndarray
    centralizer_order: list[int]

    @property
    def sizes(self) -> list[int]:
        return [len(c) for c in self.classes]

    @property
    def representatives(self) -> list[int]:
        return [int(c[0]) for c in self.classes]

    def __len__(self) -> int:
        return len(self.classes)


def conjugacy_classes(G: GroupRep) -> ConjugacyClassData:
    """Orbits of conjugation by the generators, ordered by least element.

    Each class is sorted; its first entry is the representative.
    """
    if "classes" in G._cache:
        return G._cache["classes"]
    conj = [G.conjugation(s) for s in dict.fromkeys(G.gens)]
    class_of = np.full(G.order, -1, dtype=np.int64)
    classes = []
    for g in range(G.order):
        if class_of[g] >= 0:
            continue
        cid = len(classes)
        class_of[g] = cid
        orbit, stack = [g], [g]
        while stack:
            x = stack.pop()
            for c in conj:
                y = int(c[x])
                if class_of[y] < 0:
                    class_of[y] = cid
                    orbit.append(y)
                    stack.append(y)
        classes.append(np.array(sorted(orbit), dtype=np.int64))
    data = ConjugacyClassData(classes, class_of, [G.order // len(c) for c in classes])
    assert sum(data.sizes) == G.order
    assert all(z * s == G.order for z, s in zip(data.centralizer_order, data.sizes))
    G._cache["classes"] = data
    return data


def center(G: GroupRep) -> SubgroupSet:
    cc = conjugacy_classes(G)
    sizes = np.array(cc.sizes)
    return SubgroupSet(G, sizes[cc.class_of] == 1)


def normality_witness(G: GroupRep, H: SubgroupSet) -> tuple[int, int] | None:
    for g in dict.fromkeys(G.gens):
        img = G.conjugation(g)
        bad = np.flatnonzero(H.members & ~H.members[img])
        if bad.size:
            return g, int(bad[0])
    return None


def is_normal(G: GroupRep, H: SubgroupSet) -> bool:
    return normality_witness(G, H) is None


def require_normal(G: GroupRep, N: SubgroupSet) -> None:
    w = normality_witness(G, N)
    if w is not None:
        raise NotNormal(*w)


@dataclass(frozen=True)
class QuotientMap:
    source: GroupRep
    kernel: SubgroupSet
    target: GroupRep
    projection: np.ndarray
    representatives: np.ndarray

    def image(self, H: SubgroupSet) -> SubgroupSet:
        m = np.zeros(self.target.order, dtype=bool)
        m[self.projection[H.members]] = True
        return SubgroupSet(self.target, m)

    def preimage(self, H: SubgroupSet) -> SubgroupSet:
        return SubgroupSet(self.source, H.members[self.projection])


def quotient(G: GroupRep, N: SubgroupSet) -> QuotientMap:
    """``G/N`` with cosets indexed by increasing least representative."""
    require_normal(G, N)
    proj = np.full(G.order, -1, dtype=np.int64)
    reps = []
    n_elems = N.elements
    for g in range(G.order):
        if proj[g] < 0:
            proj[G.left_row(g)[n_elems]] = len(reps)
            reps.append(g)
    reps = np.array(reps, dtype=np.int64)
    m = len(reps)
    if G.table is not None:
        T = proj[G.table[np.ix_(reps, reps)]]
    else:
        T = np.array([[proj[G.mul(int(a), int(b))] for b in reps] for a in reps], dtype=np.int64)
    gens = list(dict.fromkeys(int(proj[s]) for s in G.gens if proj[s] != 0))
    R = T[:, gens].T if gens else np.zeros((0, m), dtype=np.int64)
    name = f"{G.name}/N{N.order}" if G.name else None
    target = GroupRep(R, gens, kind="cayley", keys=[int(r) for r in reps], table=T, name=name)
    return QuotientMap(G, N, target, proj, reps)


def elementary_abelian_prime(G: GroupRep, A: SubgroupSet, B: SubgroupSet) -> int | None:
    """The prime p when ``B/A`` is a nontrivial elementary abelian p-group
    (1 when trivial); None otherwise."""
    if not A <= B:
        return None
    idx = B.order // A.order
    if idx == 1:
        return 1
    pp = prime_power(idx)
    if pp is None:
        return None
    p = pp[0]
    bg = B.gens
    for a in bg:
        if not A.members[G.power(a, p)]:
            return None
        for b in bg:
            if not A.members[commutator(G, a, b)]:
                return None
    return p


def gaussian_binomial(d: int, k: int, p: int) -> int:
    num = den = 1
    for t in range(k):
        num *= p ** (d - t) - 1
        den *= p ** (t + 1) - 1
    return num // den


def subspaces(d: int, p: int, cap: int = SUBSPACE_CAP):
    """Yield every subspace of GF(p)^d as a reduced row-echelon basis
    (tuple of row tuples), by dimension then pivot pattern."""
    total = sum(gaussian_binomial(d, k, p) for k in range(d + 1))
    if total > cap:
        raise SectionTooLarge(f"section too large: {total} subspaces > cap {cap}")
    for k in range(d + 1):
        for pivots in itertools.combinations(range(d), k):
            free = [(r, c) for r, pc in enumerate(pivots) for c in range(pc + 1, d) if c not in pivots]
            for vals in itertools.product(range(p), repeat=len(free)):
                rows = [[0] * d for _ in range(k)]
                for r, pc in enumerate(pivots):
                    rows[r][pc] = 1
                for (r, c), v in zip(free, vals):
                    rows[r][c] = v
                yield tuple(tuple(r) for r in rows)


def _rref(rows: list[list[int]], p: int) -> list[list[int]]:
    rows = [list(r) for r in rows]
    out, col = [], 0
    d = len(rows[0]) if rows else 0
    while rows and col < d:
        piv = next((r for r in rows if r[col] % p), None)
        if piv is None:
            col += 1
            continue
        rows.remove(piv)
        s = pow(piv[col], -1, p)
        piv = [(v * s) % p for v in piv]
        rows = [[(a - r[col] * b) % p for a, b in zip(r, piv)] for r in rows]
        out = [[(a - r[col] * b) % p for a, b in zip(r, piv)] for r in out]
        out.append(piv)
        col += 1
    out = [r for r in out if any(r)]
    out.sort(key=lambda r: next(i for i, v in enumerate(r) if v))
    return out


def _in_span(basis: Sequence[Sequence[int]], v: Sequence[int], p: int) -> bool:
    return len(_rref(list(basis) + [list(v)], p)) == len(basis)


def invariant_intermediate_subgroups(
    G: GroupRep, A: SubgroupSet, B: SubgroupSet, cap: int = SUBSPACE_CAP
) -> list[SubgroupSet]:
    """All N normal in G with ``A <= N < B``, for an elementary abelian ``B/A``.

    The section is coordinatised as GF(p)^d; G-invariant subspaces other than
    the whole space are returned, ordered by size then membership mask.
    """
    require_normal(G, A)
    require_normal(G, B)
    p = elementary_abelian_prime(G, A, B)
    if p is None:
        raise GroupError("section B/A is not elementary abelian")
    if p == 1:
        return []
    # basis of B/A
    basis: list[int] = []
    span = A
    for b in B.gens + [int(x) for x in B.elements]:
        if not span.members[b]:
            basis.append(b)
            span = generated_subgroup(G, list(A.gens) + basis)
            if span.order == B.order:
                break
    d = len(basis)
    total = sum(gaussian_binomial(d, k, p) for k in range(d + 1))
    if total > cap:
        raise SectionTooLarge(f"section too large: {total} subspaces > cap {cap}")
    # coordinates of each element of B
    coords = np.full((G.order, d), -1, dtype=np.int64)
    a_elems = A.elements
    for vec in itertools.product(range(p), repeat=d):
        x = 0
        for b, c in zip(basis, vec):
            x = G.mul(x, G.power(b, c))
        coords[G.left_row(x)[a_elems]] = vec
    action = []
    for s in dict.fromkeys(G.gens):
        conj = G.conjugation(s)
        action.append([coords[conj[b]].tolist() for b in basis])  # images of basis vectors

    def apply(mat, v):
        out = [0] * d
        for c, row in zip(v, mat):
            if c:
                out = [(o + c * r) % p for o, r in zip(out, row)]
        return out

    b_elems = B.elements
    found = []
    for sub in subspaces(d, p, cap):
        if len(sub) == d:
            continue
        if all(_in_span(sub, apply(mat, v), p) for mat in action for v in sub):
            inside = np.zeros(G.order, dtype=bool)
            if sub:
                # x lies in N iff its coordinate vector is in the row space
                rows = np.array(sub, dtype=np.int64)
                cvec = coords[b_elems]
                inside[b_elems] = _rowspace_member(rows, cvec, p)
            else:
                inside[b_elems] = ~coords[b_elems].any(axis=1)
            found.append(SubgroupSet(G, inside))
    found.sort(key=SubgroupSet.key)
    return found


def _rowspace_member(rows: np.ndarray, vecs: np.ndarray, p: int) -> np.ndarray:
    # rows is in reduced echelon form: a vector is in the span iff it equals
    # the combination read off at the pivot columns
    pivots = [int(np.flatnonzero(r)[0]) for r in rows]
    combo = (vecs[:, pivots] @ rows) % p
    return np.all(combo == vecs % p, axis=1)


def normal_subgroups_between(G: GroupRep, A: SubgroupSet, B: SubgroupSet,
                             cap: int = SUBSPACE_CAP) -> list[SubgroupSet]:
    """Like :func:`invariant_intermediate_subgroups` but including B itself."""
    return invariant_intermediate_subgroups(G, A, B, cap) + [B]


def abelian_invariants(H: SubgroupSet | GroupRep) -> list[int]:
    """Primary invariants of an abelian subgroup (or whole group), ascending."""
    if isinstance(H, GroupRep):
        H = SubgroupSet.whole(H)
    G = H.parent
    gs = H.gens
    if any(G.mul(a, b) != G.mul(b, a) for a in gs for b in gs):
        raise GroupError("abelian_invariants needs an abelian subgroup")
    orders = G.element_orders[H.members]
    out = []
    n = H.order
    q = 2
    while n > 1:
        if n % q:
            q += 1
            continue
        while n % q == 0:
            n //= q
        # c[k] = #{x : x^(q^k) = 1}; the number of cyclic factors of order
        # at least q^k is log_q(c[k] / c[k-1])
        counts = [1]
        k = 0
        while True:
            k += 1
            c = int(np.sum(q**k % orders == 0))
            counts.append(c)
            if c == counts[-2]:
                break
        ge = []
        for t in range(1, len(counts)):
            ratio, e = counts[t] // counts[t - 1], 0
            while ratio > 1:
                ratio //= q
                e += 1
            ge.append(e)
        ge.append(0)
        for t in range(len(ge) - 1):
            out.extend([q ** (t + 1)] * (ge[t] - ge[t + 1]))
    return sorted(out)
