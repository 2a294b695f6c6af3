"""Print the four reference frieze and tiling grids checked by the self-test."""
import argparse
import json
import sys

from farey_friezes.selftest import reference_grids


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--json", action="store_true")
    a = ap.parse_args()
    grids = reference_grids()
    if a.json:
        json.dump(grids, sys.stdout, indent=2)
        sys.stdout.write("\n")
        return
    for name, text in grids.items():
        print(f"[{name}]")
        print(text.rstrip("\n"))
        print()


if __name__ == "__main__":
    main()
