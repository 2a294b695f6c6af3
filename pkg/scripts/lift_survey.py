"""How many semiregular friezes over Z/N lift to positive integer friezes of the same width."""
import argparse

from _common import emit, ints

from farey_friezes.experiments import LiftSurveyConfig, lift_survey


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--moduli", type=ints, default=LiftSurveyConfig.moduli)
    ap.add_argument("--widths", type=ints, default=LiftSurveyConfig.widths)
    ap.add_argument("--budget", type=int, default=LiftSurveyConfig.budget)
    ap.add_argument("--json", action="store_true")
    a = ap.parse_args()
    cfg = LiftSurveyConfig(moduli=a.moduli, widths=a.widths, budget=a.budget)
    emit(cfg, lift_survey(cfg), a.json)


if __name__ == "__main__":
    main()
