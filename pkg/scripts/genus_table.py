"""Genus and cusp count of the sign-unit complex over Z/N."""
import argparse

from _common import emit, ints

from farey_friezes.experiments import GenusConfig, genus_table


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--moduli", type=ints, default=GenusConfig().moduli)
    ap.add_argument("--json", action="store_true")
    a = ap.parse_args()
    cfg = GenusConfig(moduli=a.moduli)
    emit(cfg, genus_table(cfg), a.json)


if __name__ == "__main__":
    main()
