"""Table-producing experiments behind the scripts in ``scripts/``.

Each experiment takes a frozen dataclass config and returns a list of row
dicts, so the same data can be printed as text or dumped as JSON.
"""
from __future__ import annotations

from dataclasses import asdict, dataclass, field

from .complex import build_complex, diameter, genus_and_cusps, is_surface_complex
from .frieze import DEFAULT_BUDGET, count_friezes, semiregular_friezes
from .lifting import DEFAULT_SEARCH_BUDGET, frieze_path_in_complex, lift_frieze
from .ring import ZMod, galois_field, parse_ring

DEFAULT_RINGS = tuple(f"z{N}" for N in range(2, 17)) + (
    "gf4", "gf8", "gf9", "z2xz3", "z3xz3", "z4xz2", "z2xz2", "z2xz2xz2", "z2xz2xz2xz2")


@dataclass(frozen=True)
class DiameterConfig:
    rings: tuple = DEFAULT_RINGS
    surfaces: bool = True


@dataclass(frozen=True)
class CountConfig:
    orders: tuple = (2, 3, 4, 5)
    widths: tuple = (2, 3, 4, 5, 6)
    kinds: tuple = ("all", "semiregular", "regular")
    brute_force: bool = True
    budget: int = DEFAULT_BUDGET


@dataclass(frozen=True)
class LiftSurveyConfig:
    moduli: tuple = (2, 3, 4, 5, 6)
    widths: tuple = (2, 3, 4, 5)
    budget: int = DEFAULT_SEARCH_BUDGET


@dataclass(frozen=True)
class GenusConfig:
    moduli: tuple = field(default_factory=lambda: tuple(range(2, 13)))


def diameter_table(cfg: DiameterConfig) -> list:
    rows = []
    for name in cfg.rings:
        R = parse_ring(name)
        pm = build_complex(R, "pm1")
        row = {"ring": name, "order": R.order,
               "diameter_one": diameter(build_complex(R, "one")),
               "diameter_pm1": diameter(pm)}
        if cfg.surfaces:
            row["surface"] = is_surface_complex(pm).is_surface if pm.has_faces else None
        rows.append(row)
    return rows


def count_table(cfg: CountConfig) -> list:
    rows = []
    for q in cfg.orders:
        F = galois_field(q)
        for n in cfg.widths:
            for kind in cfg.kinds:
                row = {"q": q, "n": n, "kind": kind, "formula": count_friezes(F, n, kind)}
                if cfg.brute_force:
                    row["brute_force"] = count_friezes(F, n, kind, "brute_force", cfg.budget)
                    row["agree"] = row["formula"] == row["brute_force"]
                rows.append(row)
    return rows


def lift_survey(cfg: LiftSurveyConfig) -> list:
    """Per modulus and width: semiregular friezes, closed paths, liftable friezes."""
    rows = []
    for N in cfg.moduli:
        R = ZMod(N)
        for n in cfg.widths:
            total = closed = liftable = 0
            for f in semiregular_friezes(R, n):
                total += 1
                tp, _ = frieze_path_in_complex(f)
                closed += tp.is_closed
                liftable += bool(lift_frieze(f, cfg.budget))
            rows.append({"N": N, "n": n, "semiregular": total, "closed": closed, "liftable": liftable})
    return rows


def genus_table(cfg: GenusConfig) -> list:
    rows = []
    for N in cfg.moduli:
        g, cusps = genus_and_cusps(N)
        rows.append({"N": N, "genus": g, "cusps": cusps})
    return rows


def format_rows(rows: list) -> str:
    """Plain aligned table with one header line."""
    if not rows:
        return ""
    keys = list(rows[0])
    cells = [[str(k) for k in keys]] + [["-" if r.get(k) is None else str(r[k]) for k in keys] for r in rows]
    widths = [max(len(row[c]) for row in cells) for c in range(len(keys))]
    return "".join("  ".join(s.rjust(w) for s, w in zip(row, widths)) + "\n" for row in cells)


def config_dict(cfg) -> dict:
    return asdict(cfg)
