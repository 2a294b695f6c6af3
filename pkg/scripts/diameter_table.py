"""Diameters of the trivial-unit and sign-unit complexes, plus the surface test."""
import argparse

from _common import emit

from farey_friezes.experiments import DiameterConfig, diameter_table


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--rings", help="comma-separated ring names, e.g. z5,gf4,z2xz3")
    ap.add_argument("--no-surface", action="store_true")
    ap.add_argument("--json", action="store_true")
    a = ap.parse_args()
    cfg = DiameterConfig(surfaces=not a.no_surface,
                         **({"rings": tuple(a.rings.split(","))} if a.rings else {}))
    emit(cfg, diameter_table(cfg), a.json)


if __name__ == "__main__":
    main()
