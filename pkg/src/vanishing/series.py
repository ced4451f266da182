"""Lower central series, the vanishing-off subgroup and its central series,
the companion subgroups Y_i, D_i, E_i, and the H1 and Camina predicates.

Series lists are 1-based in the mathematical sense: ``lower[0]`` is G_1 = G.
A list stops at the first term that is trivial or repeats its predecessor,
the repeat being kept, so S3 gives ``[S3, A3, A3]``. Indices past the end
refer to the final (stable) term.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .group import GroupError, GroupRep, prime_power
from .subgroups import (
    SubgroupSet,
    center,
    centralizer_mod,
    commutator_subgroup,
    conjugacy_classes,
    derived_subgroup,
    elementary_abelian_prime,
    generated_subgroup,
    invariant_intermediate_subgroups,
    quotient,
)


class IndexBeyondClass(GroupError):
    pass


def _descend(G: GroupRep, first: SubgroupSet) -> list[SubgroupSet]:
    W = SubgroupSet.whole(G)
    out = [first]
    while not out[-1].is_trivial:
        nxt = commutator_subgroup(G, out[-1], W)
        out.append(nxt)
        if nxt == out[-2]:
            break
    return out


def term(series: list[SubgroupSet], i: int) -> SubgroupSet:
    if i < 1:
        raise IndexError("series terms are numbered from 1")
    return series[min(i, len(series)) - 1]


def lower_central_series(G: GroupRep) -> list[SubgroupSet]:
    return _descend(G, SubgroupSet.whole(G))


def nilpotence_class(lower: list[SubgroupSet]) -> int | None:
    if not lower[-1].is_trivial:
        return None
    return len(lower) - 1


def vanishing_off_subgroup(G: GroupRep) -> SubgroupSet:
    """V(G) without characters.

    Summing |chi(g)|^2 over Irr(G) gives |C_G(g)|, and the linear characters
    contribute exactly |G:G'| of it, so some nonlinear character is nonzero
    at g precisely when |C_G(g)| > |G:G'|.
    """
    cc = conjugacy_classes(G)
    linear = derived_subgroup(G).index
    cent = np.asarray(cc.centralizer_order)[cc.class_of]
    return generated_subgroup(G, np.flatnonzero(cent > linear))


def v_series(G: GroupRep) -> list[SubgroupSet]:
    return _descend(G, vanishing_off_subgroup(G))


def upper_preimage_center(G: GroupRep, N: SubgroupSet) -> SubgroupSet:
    """Full preimage of Z(G/N)."""
    q = quotient(G, N)
    return q.preimage(center(q.target))


@dataclass
class CaminaData:
    is_camina: bool
    witness: int | None
    class3: bool
    n_from_index: int | None


def camina_data(G: GroupRep) -> CaminaData:
    """Camina test: 1 < G' < G and cl(x) = xG' for every x outside G'.

    Abelian and perfect groups are not Camina.
    """
    D = derived_subgroup(G)
    lower = lower_central_series(G)
    cls = nilpotence_class(lower)
    n = None
    pp = prime_power(D.index)
    if pp and pp[1] % 2 == 0 and G.p is not None:
        n = pp[1] // 2
    if D.is_trivial or D.order == G.order:
        return CaminaData(False, None, False, n)
    cc = conjugacy_classes(G)
    d_elems = D.elements
    for cid, members in enumerate(cc.classes):
        x = int(members[0])
        if D.members[x]:
            continue
        coset = np.sort(G.left_row(x)[d_elems])
        if len(members) != len(coset) or not np.array_equal(members, coset):
            return CaminaData(False, x, cls == 3, n)
    return CaminaData(True, None, cls == 3, n)


@dataclass
class SeriesProfile:
    """The computed tower for one group; companion subgroups are filled for
    every index ``3 <= i <= len(lower)`` (E from 4)."""

    group: GroupRep
    lower: list[SubgroupSet]
    vanishing: list[SubgroupSet]
    p: int | None
    nilpotence_class: int | None
    n: int | None
    Y: dict[int, SubgroupSet] = field(default_factory=dict)
    D: dict[int, SubgroupSet] = field(default_factory=dict)
    E: dict[int, SubgroupSet] = field(default_factory=dict)
    _h1: dict[int, tuple[bool, SubgroupSet | None]] = field(default_factory=dict, repr=False)

    def G_(self, i: int) -> SubgroupSet:
        return term(self.lower, i)

    def V_(self, i: int) -> SubgroupSet:
        return term(self.vanishing, i)

    @property
    def depth(self) -> int:
        return len(self.lower)

    @property
    def D3_direct(self) -> SubgroupSet:
        return centralizer_mod(self.group, self.V_(3), derived_subgroup(self.group))

    def h1(self, k: int) -> tuple[bool, SubgroupSet | None]:
        if k not in self._h1:
            self._h1[k] = is_H1(self.group, k, self)
        return self._h1[k]

    def strict(self, i: int) -> bool:
        """Whether V_i < G_i."""
        return self.V_(i) < self.G_(i)

    def derived_mod_abelian(self, i: int) -> bool:
        """Whether G'/V_i is abelian."""
        D = self.G_(2)
        return commutator_subgroup(self.group, D, D) <= self.V_(i)


def series_subgroups(G: GroupRep, i: int, profile: SeriesProfile | None = None):
    """``(Y_i, D_i, E_i)`` with E_i None below i = 4."""
    prof = profile or series_profile(G)
    if i < 3 or i > prof.depth:
        raise IndexBeyondClass(f"index {i} beyond class: series have {prof.depth} terms")
    if i in prof.Y:
        return prof.Y[i], prof.D[i], prof.E.get(i)
    Vi = prof.V_(i)
    Y = upper_preimage_center(G, Vi)
    D = centralizer_mod(G, Vi, prof.G_(i - 1))
    E = None
    if i >= 4:
        E = centralizer_mod(G, prof.G_(i - 1) & Y, prof.G_(i - 2))
    if i == 3:
        assert D == prof.D3_direct
    prof.Y[i], prof.D[i] = Y, D
    if E is not None:
        prof.E[i] = E
    return Y, D, E


def _section_prime(lower, vanishing, G) -> int | None:
    primes = set()
    for i in range(1, max(len(lower), len(vanishing)) + 1):
        q = elementary_abelian_prime(G, term(vanishing, i), term(lower, i))
        if q is None:
            return None
        if q > 1:
            primes.add(q)
    return primes.pop() if len(primes) == 1 else None


def series_profile(G: GroupRep) -> SeriesProfile:
    if "profile" in G._cache:
        return G._cache["profile"]
    lower = lower_central_series(G)
    vanishing = v_series(G)
    p = G.p
    if p is None and term(vanishing, 2) < term(lower, 2):
        p = _section_prime(lower, vanishing, G)
    n = None
    if p is not None:
        pp = prime_power(term(vanishing, 1).index)
        if pp and pp[0] == p and pp[1] % 2 == 0:
            n = pp[1] // 2
    prof = SeriesProfile(G, lower, vanishing, p, nilpotence_class(lower), n)
    for i in range(3, prof.depth + 1):
        series_subgroups(G, i, prof)
    G._cache["profile"] = prof
    return prof


def is_H1(G: GroupRep, k: int, profile: SeriesProfile | None = None) -> tuple[bool, SubgroupSet | None]:
    """Whether G_k is H1; on failure the offending N is returned as witness.

    For each normal N with V_k <= N < G_k the image of V_{k-1} in G/N must
    equal the image of G_{k-1} intersected with Z(G/N).
    """
    prof = profile or series_profile(G)
    if k < 2:
        raise IndexBeyondClass("H1 needs k >= 2")
    Vk, Gk = prof.V_(k), prof.G_(k)
    if Vk == Gk:
        return True, None
    for N in invariant_intermediate_subgroups(G, Vk, Gk):
        q = quotient(G, N)
        lhs = q.image(prof.V_(k - 1))
        rhs = q.image(prof.G_(k - 1)) & center(q.target)
        if lhs != rhs:
            return False, N
    return True, None
