"""Run the full check suite over the builtin corpus and write JSON and markdown reports."""
import argparse
import time
from dataclasses import dataclass
from pathlib import Path

from vanishing.corpus import builtin_corpus_entries
from vanishing.verify import CHECK_IDS, build_report, emit_report, group_summary, run_suite


@dataclass
class RunConfig:
    max_order: int = 1024
    char_cap: int = 1024
    out_dir: Path = Path("reports")


def run(cfg: RunConfig):
    results = []
    for entry in builtin_corpus_entries(cfg.max_order):
        G = entry.build()
        t0 = time.perf_counter()
        recs = run_suite(G, char_cap=cfg.char_cap)
        print(f"{entry.name:>22}  order {G.order:5d}  {time.perf_counter() - t0:6.2f}s")
        results.append((group_summary(G), recs))
    rep = build_report(results, list(CHECK_IDS), {"source": "builtin", "maxOrder": cfg.max_order})
    cfg.out_dir.mkdir(parents=True, exist_ok=True)
    emit_report(rep, "json", cfg.out_dir / "builtin.json")
    emit_report(rep, "markdown", cfg.out_dir / "builtin.md")
    print(rep.counts())
    for cid in rep.vacuous():
        print(f"{cid}: vacuous")
    return rep


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-order", type=int, default=1024)
    ap.add_argument("--char-cap", type=int, default=1024)
    ap.add_argument("--out-dir", type=Path, default=Path("reports"))
    a = ap.parse_args()
    rep = run(RunConfig(a.max_order, a.char_cap, a.out_dir))
    return 1 if rep.failed else 0


if __name__ == "__main__":
    raise SystemExit(main())
