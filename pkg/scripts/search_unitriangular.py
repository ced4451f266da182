"""Search subgroups of UT(n, p) generated by sums of elementary matrices for V_k < G_k.

Each candidate generator is I plus a 0/1 combination of superdiagonal-adjacent
units drawn from a small pool. Groups with a strict V-series term are printed
with their series orders, which is how the strict examples in the builtin
corpus were found.
"""
import argparse
import itertools
from dataclasses import dataclass

from vanishing.group import build_unitriangular
from vanishing.series import lower_central_series, v_series


@dataclass
class SearchConfig:
    n: int = 4
    p: int = 2
    ngens: int = 2
    max_order: int = 1024


def pool(n):
    # single units E_ij, plus adjacent pairs E_{i,i+1} + E_{i+1,i+2}
    out = [((i, j),) for i in range(n) for j in range(i + 1, n)]
    out += [((i, i + 1), (i + 1, i + 2)) for i in range(n - 2)]
    return out


def matrix(n, entries):
    m = [[int(i == j) for j in range(n)] for i in range(n)]
    for i, j in entries:
        m[i][j] = 1
    return m


def search(cfg: SearchConfig):
    seen = set()
    hits = []
    for combo in itertools.combinations(pool(cfg.n), cfg.ngens):
        G = build_unitriangular(cfg.n, cfg.p, [matrix(cfg.n, e) for e in combo])
        if G.order > cfg.max_order:
            continue
        lower = [H.order for H in lower_central_series(G)]
        vs = [H.order for H in v_series(G)]
        strict = [k for k in range(1, min(len(lower), len(vs)) + 1) if k >= 3 and vs[k - 1] < lower[k - 1]]
        key = (G.order, tuple(lower), tuple(vs))
        if strict and key not in seen:
            seen.add(key)
            hits.append((combo, lower, vs, strict))
            print(f"gens {combo}: |G| {G.order}, G_i {lower}, V_i {vs}, strict k {strict}")
    return hits


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("-n", type=int, default=4)
    ap.add_argument("-p", type=int, default=2)
    ap.add_argument("--ngens", type=int, default=2)
    ap.add_argument("--max-order", type=int, default=1024)
    a = ap.parse_args()
    hits = search(SearchConfig(a.n, a.p, a.ngens, a.max_order))
    print(f"{len(hits)} distinct series shapes with a strict term")


if __name__ == "__main__":
    main()
