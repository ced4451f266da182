"""Hypothesis-first verification of the series lemmas and theorems.

Each check evaluates its hypothesis flags at every admissible index and asserts
the conclusion wherever all flags hold. One :class:`CheckRecord` is emitted per
(group, checkId).
"""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Callable

import numpy as np

from . import __version__
from .characters import CHAR_CAP, CharacterCapExceeded, character_table, irr_over, v_from_characters
from .group import GroupError, GroupRep, is_prime
from .series import SeriesProfile, camina_data, series_profile, v_series, term
from .subgroups import (
    NotNormal,
    SectionTooLarge,
    SubgroupSet,
    abelian_invariants,
    center,
    centralizer_mod,
    conjugacy_classes,
    elementary_abelian_prime,
    invariant_intermediate_subgroups,
    quotient,
)

REPORT_FORMAT = 1
STATUSES = ("pass", "fail", "skipped-hypothesis", "skipped-cap")


class CapSkip(Exception):
    pass


@dataclass
class CheckRecord:
    groupName: str
    checkId: str
    status: str
    hypothesisFlags: dict[str, bool] = field(default_factory=dict)
    witness: dict | None = None
    metrics: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.status not in STATUSES:
            raise ValueError(f"unknown status {self.status!r}")
        if self.status == "fail" and self.witness is None:
            raise ValueError("a failing record needs a witness")
        if self.status == "skipped-hypothesis" and all(self.hypothesisFlags.values()):
            raise ValueError("a skipped-hypothesis record needs a false flag")

    def to_json(self) -> dict:
        return asdict(self)


def _sub(H: SubgroupSet) -> dict:
    return {"order": H.order, "gens": sorted(int(g) for g in H.gens)}


class _Run:
    """Accumulates flags, metrics and the first failure of one check."""

    def __init__(self):
        self.flags: dict[str, bool] = {}
        self.metrics: dict = {}
        self.witness: dict | None = None
        self.instances: list = []

    def hyp(self, label: str, **conds: bool) -> bool:
        for name, val in conds.items():
            self.flags[f"{label}: {name}" if label else name] = bool(val)
        ok = all(conds.values())
        if ok:
            self.instances.append(label or "global")
        return ok

    def fail(self, **witness):
        if self.witness is None:
            self.witness = witness

    def record(self, group: str, check: str) -> CheckRecord:
        if not self.flags:
            self.flags["index range nonempty"] = False
        self.metrics["instances"] = self.instances
        if self.witness is not None:
            status = "fail"
        elif self.instances:
            status = "pass"
        else:
            status = "skipped-hypothesis"
        return CheckRecord(group, check, status, dict(sorted(self.flags.items())), self.witness, self.metrics)


@dataclass
class Context:
    G: GroupRep
    prof: SeriesProfile
    char_cap: int = CHAR_CAP

    @property
    def depth(self) -> int:
        return self.prof.depth

    def G_(self, i):
        return self.prof.G_(i)

    def V_(self, i):
        return self.prof.V_(i)

    def table(self):
        try:
            return character_table(self.G, self.char_cap)
        except CharacterCapExceeded as exc:
            raise CapSkip(str(exc)) from exc

    def sections(self, A, B):
        try:
            return invariant_intermediate_subgroups(self.G, A, B)
        except SectionTooLarge as exc:
            raise CapSkip(str(exc)) from exc

    def coset_is_class(self, x: int, N: SubgroupSet) -> bool:
        cc = conjugacy_classes(self.G)
        cls = cc.classes[cc.class_of[x]]
        coset = np.sort(self.G.left_row(x)[N.elements])
        return len(cls) == len(coset) and bool(np.array_equal(cls, coset))

    def coset_reps(self, A: SubgroupSet, mod: SubgroupSet, minus: SubgroupSet) -> list[int]:
        """One element of each coset ``a mod`` with ``a`` in ``A`` but not ``minus``."""
        q = quotient(self.G, mod)
        seen, out = set(), []
        for a in A.elements:
            a = int(a)
            if minus.members[a]:
                continue
            img = int(q.projection[a])
            if img not in seen:
                seen.add(img)
                out.append(a)
        return out

    def k_of(self, a: int, N: SubgroupSet) -> SubgroupSet:
        """Preimage of the centralizer of aN in G/N."""
        return centralizer_mod(self.G, N, [a])


def _is_prime_order(H: SubgroupSet) -> bool:
    return is_prime(H.order)


# -- checks ---------------------------------------------------------------------


def check_sandwich(c: Context, r: _Run):
    r.hyp("", **{"always": True})
    n = max(len(c.prof.lower), len(c.prof.vanishing)) + 1
    for i in range(1, n + 1):
        Gi, Gn, Vi = c.G_(i), c.G_(i + 1), c.V_(i)
        if not Gn <= Vi:
            r.fail(i=i, relation="G_{i+1} <= V_i", G_next=_sub(Gn), V=_sub(Vi))
        if not Vi <= Gi:
            r.fail(i=i, relation="V_i <= G_i", V=_sub(Vi), G=_sub(Gi))
    r.metrics.update(lower=[H.order for H in c.prof.lower], vanishing=[H.order for H in c.prof.vanishing])


def check_elem_abelian(c: Context, r: _Run):
    if not r.hyp("", **{"V2<G2": c.prof.strict(2)}):
        return
    primes = []
    for i in range(1, c.depth + 1):
        q = elementary_abelian_prime(c.G, c.V_(i), c.G_(i))
        if q is None:
            r.fail(i=i, reason="section not elementary abelian", V=_sub(c.V_(i)), G=_sub(c.G_(i)))
            return
        primes.append(q)
    distinct = sorted({q for q in primes if q > 1})
    r.metrics.update(sectionPrimes=primes)
    if len(distinct) != 1:
        r.fail(reason="sections not over a single prime", primes=primes)


def _lewis_n(c: Context) -> tuple[int | None, int, int]:
    a = c.V_(1).index
    b = c.G_(2).order // c.V_(2).order
    return c.prof.n, a, b


def check_lewis_index(c: Context, r: _Run):
    if not r.hyp("", **{"V3<G3": c.prof.strict(3)}):
        return
    n, a, b = _lewis_n(c)
    p = c.prof.p
    r.metrics.update({"|G:V1|": a, "|G':V2|": b, "p": p, "n": n})
    if p is None or n is None or n < 1 or a != b * b or a != p ** (2 * n):
        r.fail(**{"|G:V1|": a, "|G':V2|": b, "p": p})


def check_lewis_d3(c: Context, r: _Run):
    if not r.hyp("", **{"V3<G3": c.prof.strict(3)}):
        return
    n, p = c.prof.n, c.prof.p
    D3 = c.prof.D[3]
    r.metrics.update({"|G:D3|": D3.index, "|V1|": c.V_(1).order, "p": p, "n": n})
    if n is None:
        r.fail(reason="|G:V1| is not an even power of p", **{"|G:V1|": c.V_(1).index})
    elif not (D3.index == p**n or D3 == c.V_(1)):
        r.fail(D3=_sub(D3), V1=_sub(c.V_(1)), **{"p^n": p**n})


def check_h1_k3(c: Context, r: _Run):
    if not r.hyp("", **{"V3<G3": c.prof.strict(3)}):
        return
    ok, N = c.prof.h1(3)
    if not ok:
        r.fail(k=3, N=_sub(N))


def check_lem_hone(c: Context, r: _Run):
    for k in range(3, c.depth + 1):
        strict = c.prof.strict(k)
        premise = []
        if strict:
            for N in c.sections(c.V_(k), c.G_(k)):
                q = quotient(c.G, N)
                if q.image(c.V_(k - 1)) == q.image(c.G_(k - 1)) & center(q.target):
                    premise.append(N)
        if not r.hyp(f"k={k}", **{"V_k<G_k": strict, "premise N exists": bool(premise)}):
            continue
        lhs, rhs = c.V_(k - 1), c.G_(k - 1) & c.prof.Y[k]
        if lhs != rhs:
            r.fail(k=k, N=_sub(premise[0]), V_prev=_sub(lhs), G_prev_cap_Y=_sub(rhs))


def check_lem_classsize_p(c: Context, r: _Run):
    nil = c.prof.nilpotence_class is not None
    Z = center(c.G)
    checked = 0
    for i in range(3, c.depth + 1):
        Gi, Vi = c.G_(i), c.V_(i)
        if not r.hyp(f"i={i}", nilpotent=nil, **{"|G_i|=p": _is_prime_order(Gi), "V_i=1": Vi.is_trivial}):
            continue
        # with V_i = 1, Y_i = Z(G)
        assert c.prof.Y[i] == Z
        for x in c.G_(i - 1).elements:
            x = int(x)
            if Z.members[x]:
                continue
            checked += 1
            if not c.coset_is_class(x, Gi):
                r.fail(i=i, x=x)
                return
    r.metrics["elementsChecked"] = checked


def check_lem_quotient_v(c: Context, r: _Run):
    compared = 0
    for k in range(3, c.depth + 1):
        if not r.hyp(f"k={k}", **{"V_k<G_k": c.prof.strict(k)}):
            continue
        for N in c.sections(c.V_(k), c.G_(k)):
            q = quotient(c.G, N)
            VQ = v_series(q.target)
            for i in range(2, k + 1):
                compared += 1
                if term(VQ, i) != q.image(c.V_(i)):
                    r.fail(k=k, i=i, N=_sub(N))
                    return
    r.metrics["comparisons"] = compared


def check_lem_classsize_h1(c: Context, r: _Run):
    checked = 0
    for i in range(3, c.depth + 1):
        Vi = c.V_(i)
        if not r.hyp(f"i={i}", **{"V_i=1": Vi.is_trivial, "G_i is H1": c.prof.h1(i)[0]}):
            continue
        prev = c.V_(i - 1)
        for x in c.G_(i - 1).elements:
            x = int(x)
            if prev.members[x]:
                continue
            checked += 1
            if not c.coset_is_class(x, c.G_(i)):
                r.fail(i=i, x=x)
                return
    r.metrics["elementsChecked"] = checked


def check_lem_char_vanish(c: Context, r: _Run):
    checked = 0
    for k in range(3, c.depth + 1):
        Gk, Vk = c.G_(k), c.V_(k)
        flags = {"V_k=1": Vk.is_trivial, "G_k>1": not Gk.is_trivial, "G_k is H1": c.prof.h1(k)[0]}
        if not r.hyp(f"k={k}", **flags):
            continue
        T = c.table()
        rows = sorted(irr_over(T, Gk))
        cc = T.class_data
        outside = c.G_(k - 1).members & ~c.V_(k - 1).members
        classes = sorted(set(cc.class_of[outside].tolist()))
        zero = T.zero_mask()
        for row in rows:
            for cls in classes:
                checked += 1
                if not zero[row, cls]:
                    r.fail(k=k, character=row, classRep=int(cc.classes[cls][0]), value=repr(T.value(row, cls)))
                    return
    r.metrics["valuesChecked"] = checked


def check_lem_dlee(c: Context, r: _Run):
    for i in range(4, c.depth + 1):
        if not r.hyp(f"i={i}", **{"V_i<G_i": c.prof.strict(i), "G'/V_i abelian": c.prof.derived_mod_abelian(i)}):
            continue
        D, E = c.prof.D[i], c.prof.E[i]
        if not D <= E:
            r.fail(i=i, D=_sub(D), E=_sub(E))


def check_lem_dibound(c: Context, r: _Run):
    for i in range(3, c.depth + 1):
        if not r.hyp(f"i={i}", **{"V_i=1": c.V_(i).is_trivial, "|G_i|=p": _is_prime_order(c.G_(i))}):
            continue
        lhs = c.prof.D[i].index
        prev = c.G_(i - 1)
        rhs = prev.order // (prev & c.prof.Y[i]).order
        r.metrics[f"i={i}"] = {"|G:D_i|": lhs, "|G_{i-1}:G_{i-1}nY_i|": rhs}
        if lhs > rhs:
            r.fail(i=i, **{"|G:D_i|": lhs, "|G_{i-1}:G_{i-1}nY_i|": rhs})


def check_lem_gk_iso(c: Context, r: _Run):
    tested = 0
    for i in range(3, c.depth + 1):
        Vi, Gi = c.V_(i), c.G_(i)
        if not r.hyp(f"i={i}", **{"V_i<G_i": c.prof.strict(i), "G_i is H1": c.prof.h1(i)[0]}):
            continue
        qV = quotient(c.G, Vi)
        target = abelian_invariants(qV.image(Gi))
        size = Gi.order // Vi.order
        seen = {}
        for a in c.coset_reps(c.G_(i - 1), Vi, c.V_(i - 1)):
            tested += 1
            K = c.k_of(a, Vi)
            if K.key() in seen:
                continue
            seen[K.key()] = True
            if K.index != size:
                r.fail(i=i, a=a, K=_sub(K), **{"|G:K|": K.index, "|G_i:V_i|": size})
                return
            try:
                inv = abelian_invariants(quotient(c.G, K).target)
            except (NotNormal, GroupError) as exc:
                r.fail(i=i, a=a, K=_sub(K), reason=str(exc))
                return
            if inv != target:
                r.fail(i=i, a=a, K=_sub(K), invariants=inv, expected=target)
                return
        r.metrics[f"i={i}"] = {"|G_i:V_i|": size, "invariants": target, "distinctK": len(seen)}
    r.metrics["cosetsTested"] = tested


def check_cor_givi_bound(c: Context, r: _Run):
    for i in range(3, c.depth + 1):
        if not r.hyp(f"i={i}", **{"V_i<G_i": c.prof.strict(i), "G_i is H1": c.prof.h1(i)[0]}):
            continue
        lhs = c.G_(i).order // c.V_(i).order
        rhs = c.prof.D[i].index
        r.metrics[f"i={i}"] = {"|G_i:V_i|": lhs, "|G:D_i|": rhs}
        if lhs > rhs:
            r.fail(i=i, **{"|G_i:V_i|": lhs, "|G:D_i|": rhs})


def _flags_4(c: Context, i: int) -> dict[str, bool]:
    return {
        "V_i<G_i": c.prof.strict(i),
        "G'/V_i abelian": c.prof.derived_mod_abelian(i),
        "G_{i-1} is H1": c.prof.h1(i - 1)[0],
    }


def check_lem_kled(c: Context, r: _Run):
    tested = 0
    for i in range(4, c.depth + 1):
        if not r.hyp(f"i={i}", **_flags_4(c, i)):
            continue
        Vp, D = c.V_(i - 1), c.prof.D[i]
        for a in c.coset_reps(c.G_(i - 2), Vp, c.V_(i - 2)):
            tested += 1
            K = c.k_of(a, Vp)
            if not K <= D:
                r.fail(i=i, a=a, K=_sub(K), D=_sub(D))
                return
    r.metrics["cosetsTested"] = tested


def check_cor_dled(c: Context, r: _Run):
    for i in range(4, c.depth + 1):
        if not r.hyp(f"i={i}", **_flags_4(c, i)):
            continue
        if not c.prof.D[i - 1] <= c.prof.D[i]:
            r.fail(i=i, D_prev=_sub(c.prof.D[i - 1]), D=_sub(c.prof.D[i]))


def check_lem_ebound(c: Context, r: _Run):
    for i in range(4, c.depth + 1):
        if not r.hyp(f"i={i}", **{"V_i<G_i": c.prof.strict(i), "G_{i-1} is H1": c.prof.h1(i - 1)[0]}):
            continue
        lhs = c.prof.E[i].index
        prev = c.G_(i - 1)
        rhs = prev.order // (prev & c.prof.Y[i]).order
        r.metrics[f"i={i}"] = {"|G:E_i|": lhs, "|G_{i-1}:G_{i-1}nY_i|": rhs}
        if lhs < rhs:
            r.fail(i=i, **{"|G:E_i|": lhs, "|G_{i-1}:G_{i-1}nY_i|": rhs})


def _thm_flags(c: Context, k: int) -> dict[str, bool]:
    return {"V_k<G_k": c.prof.strict(k), "G'/V_k abelian": c.prof.derived_mod_abelian(k)}


def check_thm1(c: Context, r: _Run):
    for k in range(3, c.depth + 1):
        flags = _thm_flags(c, k)
        flags["G_i is H1 for 3<=i<=k"] = all(c.prof.h1(i)[0] for i in range(3, k + 1))
        if not r.hyp(f"k={k}", **flags):
            continue
        if c.prof.D[k] != c.prof.D[3]:
            r.fail(k=k, D_k=_sub(c.prof.D[k]), D_3=_sub(c.prof.D[3]))


def check_thm2a(c: Context, r: _Run):
    D3 = c.prof.D.get(3)
    for k in range(4, c.depth + 1):
        if not r.hyp(f"k={k}", **_thm_flags(c, k)):
            continue
        lhs = c.G_(k - 1).order // c.V_(k - 1).order
        r.metrics[f"k={k}"] = {"|G_{k-1}:V_{k-1}|": lhs, "|G:D_3|": D3.index}
        if lhs != D3.index:
            r.fail(k=k, **{"|G_{k-1}:V_{k-1}|": lhs, "|G:D_3|": D3.index})


def check_thm2b(c: Context, r: _Run):
    for k in range(3, c.depth + 1):
        if not r.hyp(f"k={k}", **_thm_flags(c, k)):
            continue
        if c.prof.D[k] != c.prof.D[3]:
            r.fail(k=k, D_k=_sub(c.prof.D[k]), D_3=_sub(c.prof.D[3]))


def check_thm2c(c: Context, r: _Run):
    for k in range(3, c.depth + 1):
        if not r.hyp(f"k={k}", **_thm_flags(c, k)):
            continue
        ok, N = c.prof.h1(k)
        if not ok:
            r.fail(k=k, N=_sub(N))


def check_thm2d(c: Context, r: _Run):
    for k in range(3, c.depth + 1):
        if not r.hyp(f"k={k}", **_thm_flags(c, k)):
            continue
        lhs = c.G_(k).order // c.V_(k).order
        rhs = c.prof.D[3].index
        r.metrics[f"k={k}"] = {"|G_k:V_k|": lhs, "|G:D_3|": rhs}
        if lhs > rhs:
            r.fail(k=k, **{"|G_k:V_k|": lhs, "|G:D_3|": rhs})


def _camina3(c: Context, r: _Run):
    data = camina_data(c.G)
    ok = r.hyp("", camina=data.is_camina, **{"class 3": c.prof.nilpotence_class == 3})
    if not ok:
        return None
    p = c.prof.p or c.G.p
    idx = c.G_(2).index
    n = data.n_from_index
    r.metrics.update({"|G:G'|": idx, "p": p, "n": n})
    if p is None or n is None or idx != p ** (2 * n):
        r.fail(reason="|G:G'| is not p^(2n)", **{"|G:G'|": idx})
        return None
    return p, n


def check_thm3(c: Context, r: _Run):
    pn = _camina3(c, r)
    if pn is None:
        return
    p, n = pn
    g3 = c.G_(3).order
    r.metrics["|G_3|"] = g3
    if g3 > p**n:
        r.fail(**{"|G_3|": g3, "p^n": p**n})


def check_macdonald_d3(c: Context, r: _Run):
    pn = _camina3(c, r)
    if pn is None:
        return
    p, n = pn
    idx = c.prof.D[3].index
    r.metrics["|G:D_3|"] = idx
    if idx != p**n:
        r.fail(**{"|G:D_3|": idx, "p^n": p**n})


def check_v_double(c: Context, r: _Run):
    r.hyp("", always=True)
    try:
        Vc = v_from_characters(c.G, c.char_cap)
    except CharacterCapExceeded as exc:
        raise CapSkip(str(exc)) from exc
    r.metrics["|V|"] = Vc.order
    if Vc != c.V_(1):
        r.fail(fromCharacters=_sub(Vc), fromCentralizers=_sub(c.V_(1)))


CHECKS: dict[str, Callable[[Context, _Run], None]] = {
    "sandwich": check_sandwich,
    "elem-abelian": check_elem_abelian,
    "lewis-index": check_lewis_index,
    "lewis-D3": check_lewis_d3,
    "H1-k3": check_h1_k3,
    "lem-hone": check_lem_hone,
    "lem-classsize-p": check_lem_classsize_p,
    "lem-quotient-V": check_lem_quotient_v,
    "lem-classsize-H1": check_lem_classsize_h1,
    "lem-char-vanish": check_lem_char_vanish,
    "lem-DleE": check_lem_dlee,
    "lem-DiBound": check_lem_dibound,
    "lem-G/K-iso": check_lem_gk_iso,
    "cor-GiVi-bound": check_cor_givi_bound,
    "lem-KleD": check_lem_kled,
    "cor-DleD": check_cor_dled,
    "lem-EBound": check_lem_ebound,
    "thm1": check_thm1,
    "thm2a": check_thm2a,
    "thm2b": check_thm2b,
    "thm2c": check_thm2c,
    "thm2d": check_thm2d,
    "thm3": check_thm3,
    "macdonald-D3": check_macdonald_d3,
    "v-double": check_v_double,
}
CHECK_IDS = tuple(CHECKS)


def parse_suite(selector: str | list[str] | None) -> list[str]:
    if selector is None or selector == "all":
        return list(CHECK_IDS)
    ids = selector.split(",") if isinstance(selector, str) else list(selector)
    ids = [s.strip() for s in ids if s.strip()]
    unknown = [s for s in ids if s not in CHECKS]
    if unknown or not ids:
        raise ValueError(f"unknown checkId(s): {', '.join(unknown) or '(empty)'}")
    return [s for s in CHECK_IDS if s in ids]


def run_suite(G: GroupRep, suite="all", *, char_cap: int = CHAR_CAP) -> list[CheckRecord]:
    ctx = Context(G, series_profile(G), char_cap)
    out = []
    for cid in parse_suite(suite):
        run = _Run()
        try:
            CHECKS[cid](ctx, run)
        except CapSkip as exc:
            out.append(CheckRecord(G.name, cid, "skipped-cap", dict(sorted(run.flags.items())),
                                   None, {"reason": str(exc)}))
            continue
        out.append(run.record(G.name, cid))
    return out


def group_summary(G: GroupRep) -> dict:
    prof = series_profile(G)
    d = prof.depth
    cam = camina_data(G)
    out = {
        "name": G.name,
        "order": G.order,
        "backend": G.backend,
        "classCount": len(conjugacy_classes(G)),
        "nilpotenceClass": prof.nilpotence_class,
        "p": prof.p,
        "n": prof.n,
        "camina": cam.is_camina,
        "G": [prof.G_(i).order for i in range(1, d + 1)],
        "V": [prof.V_(i).order for i in range(1, d + 1)],
        "Y": {str(i): prof.Y[i].order for i in sorted(prof.Y)},
        "D": {str(i): prof.D[i].order for i in sorted(prof.D)},
        "E": {str(i): prof.E[i].order for i in sorted(prof.E)},
        "|G:V1|": prof.V_(1).index,
        "|G:D3|": prof.D[3].index if 3 in prof.D else None,
    }
    return out


@dataclass
class VerificationReport:
    toolVersion: str
    corpus: dict
    groups: list[dict]
    records: list[CheckRecord]
    suite: list[str]

    def counts(self) -> dict[str, int]:
        out = {s: 0 for s in STATUSES}
        for rec in self.records:
            out[rec.status] += 1
        return out

    def coverage(self) -> dict[str, dict]:
        cov = {}
        for cid in self.suite:
            recs = [r for r in self.records if r.checkId == cid]
            row = {s: sum(r.status == s for r in recs) for s in STATUSES}
            row["instances"] = sum(len(r.metrics.get("instances", [])) for r in recs)
            row["vacuous"] = row["pass"] + row["fail"] == 0
            cov[cid] = row
        return cov

    def vacuous(self) -> list[str]:
        return [cid for cid, row in self.coverage().items() if row["vacuous"]]

    @property
    def failed(self) -> bool:
        return any(r.status == "fail" for r in self.records)

    def to_json(self) -> dict:
        return {
            "reportFormat": REPORT_FORMAT,
            "toolVersion": self.toolVersion,
            "corpus": self.corpus,
            "suite": self.suite,
            "groups": self.groups,
            "records": [r.to_json() for r in self.records],
            "summary": self.counts(),
            "coverage": self.coverage(),
            "vacuous": [f"{cid}: vacuous" for cid in self.vacuous()],
        }


def build_report(results: list[tuple[dict, list[CheckRecord]]], suite: list[str], corpus: dict) -> VerificationReport:
    groups = sorted((g for g, _ in results), key=lambda g: g["name"])
    records = sorted((r for _, recs in results for r in recs), key=lambda r: (r.groupName, r.checkId))
    return VerificationReport(__version__, corpus, groups, records, suite)


def _cell(v) -> str:
    return "-" if v is None else str(v)


def render_markdown(rep: VerificationReport) -> str:
    lines = [f"# Verification report (tool {rep.toolVersion}, format {REPORT_FORMAT})", ""]
    src = rep.corpus
    lines.append(f"Corpus: {src.get('source')} (max order {src.get('maxOrder')}, {len(rep.groups)} groups)")
    lines.append("")
    counts = rep.counts()
    lines.append("Summary: " + ", ".join(f"{k} {v}" for k, v in counts.items()))
    lines.append("")
    lines += ["## Coverage", "", "| checkId | pass | fail | skipped-hypothesis | skipped-cap | instances | note |",
              "|---|---|---|---|---|---|---|"]
    for cid, row in rep.coverage().items():
        note = f"{cid}: vacuous" if row["vacuous"] else ""
        lines.append(f"| {cid} | {row['pass']} | {row['fail']} | {row['skipped-hypothesis']} "
                     f"| {row['skipped-cap']} | {row['instances']} | {note} |")
    fails = [r for r in rep.records if r.status == "fail"]
    if fails:
        lines += ["", "## Failures", ""]
        for r in fails:
            lines.append(f"- {r.groupName} / {r.checkId}: `{json.dumps(r.witness, sort_keys=True)}`")
    lines += ["", "## Groups", ""]
    for g in rep.groups:
        lines.append(f"### {g['name']}")
        lines.append("")
        lines.append(f"order {g['order']}, class {_cell(g['nilpotenceClass'])}, p {_cell(g['p'])}, "
                     f"n {_cell(g['n'])}, Camina {g['camina']}, |G:V1| {g['|G:V1|']}, |G:D3| {_cell(g['|G:D3|'])}")
        lines.append("")
        lines += ["| i | G_i | V_i | Y_i | D_i | E_i |", "|---|---|---|---|---|---|"]
        for i, (gi, vi) in enumerate(zip(g["G"], g["V"]), start=1):
            k = str(i)
            lines.append(f"| {i} | {gi} | {vi} | {_cell(g['Y'].get(k))} | {_cell(g['D'].get(k))} "
                         f"| {_cell(g['E'].get(k))} |")
        lines.append("")
    return "\n".join(lines)


def render_json(rep: VerificationReport) -> str:
    return json.dumps(rep.to_json(), sort_keys=True, indent=1, ensure_ascii=False) + "\n"


def emit_report(rep: VerificationReport, fmt: str, path) -> Path:
    if not rep.records:
        raise ValueError("no records to emit")
    if fmt == "json":
        text = render_json(rep)
    elif fmt == "markdown":
        text = render_markdown(rep)
    else:
        raise ValueError(f"unknown format {fmt!r}")
    path = Path(path)
    try:
        path.write_text(text)
    except OSError as exc:
        raise OSError(f"cannot write report to {path}: {exc.strerror or exc}") from exc
    return path
