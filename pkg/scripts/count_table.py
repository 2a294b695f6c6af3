"""Frieze counts over finite fields: closed formula against exhaustive enumeration."""
import argparse

from _common import emit, ints

from farey_friezes.experiments import CountConfig, count_table


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--orders", type=ints, default=CountConfig.orders, help="field orders, e.g. 2,3,4,5")
    ap.add_argument("--widths", type=ints, default=CountConfig.widths)
    ap.add_argument("--formula-only", action="store_true")
    ap.add_argument("--budget", type=int, default=CountConfig.budget)
    ap.add_argument("--json", action="store_true")
    a = ap.parse_args()
    cfg = CountConfig(orders=a.orders, widths=a.widths, brute_force=not a.formula_only, budget=a.budget)
    rows = count_table(cfg)
    emit(cfg, rows, a.json)
    if any(r.get("agree") is False for r in rows):
        raise SystemExit(1)


if __name__ == "__main__":
    main()
