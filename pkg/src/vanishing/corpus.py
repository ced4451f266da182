"""Group definition files, manifests, and the bundled builtin corpus.

Group file (JSON, one group per file)::

    {"format": 1, "name": "Q8", "kind": "builtin",
     "family": "quaternion", "params": {"order": 8},
     "expected": {"order": 8, "classCount": 5, "nilpotenceClass": 2}}

``kind`` is one of ``permutation`` (``degree``, ``generators`` as 0-based
image arrays), ``cayley`` (row-major ``table``, optional ``generators``),
``unitriangular`` (``n``, ``p``, optional ``generators`` as matrices) or
``builtin`` (``family``, ``params``; a ``direct_product`` takes ``left`` and
``right`` as nested group specs).

Manifest::

    {"format": 1, "groups": [{"path": "q8.json", "tags": ["p2"]}]}
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

from .group import (
    BLACKBOX_CAP,
    DENSE_CAP,
    GroupError,
    GroupRep,
    build_builtin,
    build_from_permutations,
    build_unitriangular,
    from_cayley_table,
    perm_from_cycles,
)
from .series import lower_central_series, nilpotence_class
from .subgroups import conjugacy_classes

FORMAT = 1
KINDS = ("permutation", "cayley", "unitriangular", "builtin")


class CorpusError(GroupError):
    pass


@dataclass(frozen=True)
class CorpusEntry:
    name: str
    spec: dict
    tags: tuple[str, ...] = ()

    @property
    def order(self) -> int | None:
        return self.spec.get("expected", {}).get("order")

    def build(self, **caps) -> GroupRep:
        return build_group(self.spec, **caps)


def _need(spec: dict, key: str, where: str):
    if key not in spec:
        raise CorpusError(f"{where}: missing field {key!r}")
    return spec[key]


def _build(spec: dict, where: str, caps: dict) -> GroupRep:
    kind = _need(spec, "kind", where)
    name = spec.get("name")
    if kind == "permutation":
        return build_from_permutations(
            _need(spec, "generators", where), int(_need(spec, "degree", where)), name=name, **caps
        )
    if kind == "cayley":
        return from_cayley_table(_need(spec, "table", where), spec.get("generators"), name=name)
    if kind == "unitriangular":
        return build_unitriangular(
            int(_need(spec, "n", where)), int(_need(spec, "p", where)),
            spec.get("generators"), name=name, **caps,
        )
    if kind == "builtin":
        family = _need(spec, "family", where)
        params = dict(spec.get("params", {}))
        if family == "direct_product":
            params["left"] = _build(_need(params, "left", where + ".params"), where + ".left", caps)
            params["right"] = _build(_need(params, "right", where + ".params"), where + ".right", caps)
        G = build_builtin(family, params, **caps)
        if name:
            G.name = name
        return G
    raise CorpusError(f"{where}: unknown kind {kind!r}; expected one of {', '.join(KINDS)}")


def build_group(spec: dict, where: str = "group", *, max_order: int = BLACKBOX_CAP,
                dense_cap: int = DENSE_CAP) -> GroupRep:
    """Build a group from a parsed group-file dict and run its expected facts."""
    if spec.get("format", FORMAT) != FORMAT:
        raise CorpusError(f"{where}: unsupported format {spec.get('format')!r}")
    try:
        G = _build(spec, where, {"max_order": max_order, "dense_cap": dense_cap})
    except (KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, GroupError):
            raise
        raise CorpusError(f"{where}: invalid parameters ({exc})") from exc
    expected = spec.get("expected") or {}
    facts = {
        "order": lambda: G.order,
        "classCount": lambda: len(conjugacy_classes(G)),
        "nilpotenceClass": lambda: nilpotence_class(lower_central_series(G)),
    }
    for key, want in sorted(expected.items()):
        if key not in facts:
            raise CorpusError(f"{where}: unknown expected fact {key!r}")
        got = facts[key]()
        if got != want:
            raise CorpusError(f"{where}: expected-fact mismatch: {key} {got} ≠ {want}")
    return G


def load_group_file(path, **caps) -> GroupRep:
    path = Path(path)
    try:
        spec = json.loads(path.read_text())
    except json.JSONDecodeError as exc:
        raise CorpusError(f"{path}:{exc.lineno}: parse error: {exc.msg}") from exc
    except OSError as exc:
        raise CorpusError(f"{path}: {exc.strerror or exc}") from exc
    if not isinstance(spec, dict):
        raise CorpusError(f"{path}: top level must be an object")
    return build_group(spec, str(path), **caps)


def load_manifest(path) -> list[CorpusEntry]:
    path = Path(path)
    try:
        data = json.loads(path.read_text())
    except json.JSONDecodeError as exc:
        raise CorpusError(f"{path}:{exc.lineno}: parse error: {exc.msg}") from exc
    except OSError as exc:
        raise CorpusError(f"{path}: {exc.strerror or exc}") from exc
    if data.get("format") != FORMAT:
        raise CorpusError(f"{path}: unsupported manifest format {data.get('format')!r}")
    out, names = [], set()
    for t, item in enumerate(_need(data, "groups", str(path))):
        gpath = path.parent / _need(item, "path", f"{path}: groups[{t}]")
        try:
            spec = json.loads(gpath.read_text())
        except json.JSONDecodeError as exc:
            raise CorpusError(f"{gpath}:{exc.lineno}: parse error: {exc.msg}") from exc
        except OSError as exc:
            raise CorpusError(f"{gpath}: {exc.strerror or exc}") from exc
        name = spec.get("name") or gpath.stem
        if name in names:
            raise CorpusError(f"{path}: duplicate group name {name!r}")
        names.add(name)
        spec = {**spec, "name": name}
        out.append(CorpusEntry(name, spec, tuple(item.get("tags", ()))))
    return out


# -- builtin catalog -----------------------------------------------------------------


def _fam(name, family, size, tags=(), **params):
    spec = {"format": FORMAT, "name": name, "kind": "builtin", "family": family,
            "params": params, "expected": {"order": size}}
    return CorpusEntry(name, spec, tuple(tags))


def _perm(name, gens, degree, order, tags=()):
    spec = {"format": FORMAT, "name": name, "kind": "permutation", "degree": degree,
            "generators": [perm_from_cycles(c, degree) for c in gens], "expected": {"order": order}}
    return CorpusEntry(name, spec, tuple(tags))


def _ut(name, n, p, order, gens=None, tags=()):
    spec = {"format": FORMAT, "name": name, "kind": "unitriangular", "n": n, "p": p,
            "expected": {"order": order}}
    if gens is not None:
        spec["generators"] = gens
    return CorpusEntry(name, spec, tuple(tags))


def _prod(a: CorpusEntry, b: CorpusEntry, tags=()):
    name = f"{a.name}x{b.name}"
    spec = {"format": FORMAT, "name": name, "kind": "builtin", "family": "direct_product",
            "params": {"left": a.spec, "right": b.spec},
            "expected": {"order": a.order * b.order}}
    return CorpusEntry(name, spec, tuple(tags))


def _unit(n, entries):
    m = [[int(i == j) for j in range(n)] for i in range(n)]
    for i, j in entries:
        m[i][j] = 1
    return m


def _catalog() -> list[CorpusEntry]:
    cyc = {n: _fam(f"C{n}", "cyclic", n, ("abelian",), n=n) for n in (2, 3, 4, 5, 6, 7, 8, 9, 16, 27)}
    ab = [
        _fam("C2xC2", "abelian", 4, ("abelian", "elementary"), invariants=[2, 2]),
        _fam("C2xC2xC2", "abelian", 8, ("abelian", "elementary"), invariants=[2, 2, 2]),
        _fam("C2^4", "abelian", 16, ("abelian", "elementary"), invariants=[2, 2, 2, 2]),
        _fam("C3xC3", "abelian", 9, ("abelian", "elementary"), invariants=[3, 3]),
        _fam("C3^3", "abelian", 27, ("abelian", "elementary"), invariants=[3, 3, 3]),
        _fam("C5xC5", "abelian", 25, ("abelian", "elementary"), invariants=[5, 5]),
        _fam("C4xC2", "abelian", 8, ("abelian",), invariants=[4, 2]),
        _fam("C4xC4", "abelian", 16, ("abelian",), invariants=[4, 4]),
    ]
    S3 = _perm("S3", [[[0, 1]], [[0, 1, 2]]], 3, 6, ("nonnilpotent", "camina-candidate"))
    D8 = _fam("D8", "dihedral", 8, ("p2", "class2", "camina-candidate"), order=8)
    Q8 = _fam("Q8", "quaternion", 8, ("p2", "class2", "camina-candidate"), order=8)
    E27 = _fam("3^(1+2)_exp3", "extraspecial", 27, ("p3", "class2", "camina-candidate"), p=3, exponent=3)
    E125 = _fam("5^(1+2)_exp5", "extraspecial", 125, ("p5", "class2", "camina-candidate"), p=5, exponent=5)
    UT42 = _ut("UT(4,2)", 4, 2, 64, tags=("p2", "class3"))
    H32 = _ut("UT(4,2)>32", 4, 2, 32, [_unit(4, [(2, 3)]), _unit(4, [(0, 1), (1, 2)])], ("p2", "class3", "V3<G3"))
    H243 = _ut("UT(4,3)>243", 4, 3, 243,
               [_unit(4, [(2, 3)]), _unit(4, [(0, 2)]), _unit(4, [(0, 1), (1, 2)])], ("p3", "class3", "V3<G3"))
    H256 = _ut("UT(5,2)>256", 5, 2, 256, [_unit(5, [(2, 3), (3, 4)]), _unit(5, [(0, 1), (1, 2)])],
               ("p2", "class4", "V4<G4"))
    C2, C3 = cyc[2], cyc[3]
    return [
        *cyc.values(),
        *ab,
        S3,
        _perm("A4", [[[0, 1, 2]], [[0, 1], [2, 3]]], 4, 12, ("nonnilpotent",)),
        _perm("S4", [[[0, 1]], [[0, 1, 2, 3]]], 4, 24, ("nonnilpotent",)),
        _fam("D12", "dihedral", 12, ("nonnilpotent",), order=12),
        D8,
        _fam("D16", "dihedral", 16, ("p2", "class3", "maximal-class"), order=16),
        _fam("D32", "dihedral", 32, ("p2", "class4", "maximal-class"), order=32),
        _fam("D64", "dihedral", 64, ("p2", "class5", "maximal-class"), order=64),
        _fam("D128", "dihedral", 128, ("p2", "class6", "maximal-class"), order=128),
        Q8,
        _fam("Q16", "quaternion", 16, ("p2", "class3", "maximal-class"), order=16),
        _fam("Q32", "quaternion", 32, ("p2", "class4", "maximal-class"), order=32),
        _fam("2^(1+2)+", "extraspecial", 8, ("p2", "class2"), p=2, exponent=4, sign="+"),
        _fam("2^(1+2)-", "extraspecial", 8, ("p2", "class2"), p=2, exponent=4, sign="-"),
        E27,
        _fam("3^(1+2)_exp9", "extraspecial", 27, ("p3", "class2", "camina-candidate"), p=3, exponent=9),
        E125,
        _fam("5^(1+2)_exp25", "extraspecial", 125, ("p5", "class2", "camina-candidate"), p=5, exponent=25),
        _ut("UT(3,2)", 3, 2, 8, tags=("p2", "class2")),
        _ut("UT(3,3)", 3, 3, 27, tags=("p3", "class2")),
        _ut("UT(3,5)", 3, 5, 125, tags=("p5", "class2")),
        _ut("UT(3,7)", 3, 7, 343, tags=("p7", "class2")),
        UT42,
        _ut("UT(4,3)", 4, 3, 729, tags=("p3", "class3")),
        _ut("UT(5,2)", 5, 2, 1024, tags=("p2", "class4")),
        H32,
        H243,
        H256,
        _perm("C3wrC3", [[[0, 1, 2]], [[0, 3, 6], [1, 4, 7], [2, 5, 8]]], 9, 81, ("p3", "class3", "maximal-class")),
        _perm("Syl2(S8)", [[[0, 1]], [[0, 2], [1, 3]], [[0, 4], [1, 5], [2, 6], [3, 7]]], 8, 128, ("p2",)),
        _prod(Q8, C2, ("p2", "class2")),
        _prod(D8, C2, ("p2", "class2")),
        _prod(Q8, C3, ("nilpotent", "class2")),
        _prod(S3, C2, ("nonnilpotent",)),
        _prod(D8, D8, ("p2", "class2")),
        _prod(Q8, Q8, ("p2", "class2")),
        _prod(E27, C3, ("p3", "class2")),
        _prod(H32, C3, ("nilpotent", "class3", "V3<G3")),
        _prod(H32, C2, ("p2", "class3")),
        _prod(UT42, C2, ("p2", "class3")),
    ]


def builtin_corpus_entries(max_order: int = 1024) -> list[CorpusEntry]:
    if max_order < 8:
        raise CorpusError("max order must be at least 8")
    return [e for e in _catalog() if e.order <= max_order]


def builtin_corpus(max_order: int = 1024) -> list[GroupRep]:
    """The bundled corpus, in catalog order, restricted to ``|G| <= max_order``."""
    return [e.build() for e in builtin_corpus_entries(max_order)]
