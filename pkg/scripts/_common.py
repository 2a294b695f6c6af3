"""Shared output handling for the experiment scripts."""
import json
import sys

from farey_friezes.experiments import config_dict, format_rows


def emit(cfg, rows, as_json: bool) -> None:
    if as_json:
        json.dump({"config": config_dict(cfg), "rows": rows}, sys.stdout, indent=2)
        sys.stdout.write("\n")
    else:
        sys.stdout.write(format_rows(rows))


def ints(text: str) -> tuple:
    return tuple(int(x) for x in text.split(","))
