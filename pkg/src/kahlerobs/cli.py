"""Command line entry point: ``kahlerobs <subcommand> [options]``.

Exit status is 0 when the obstruction is certified, 1 when a step failed and
2 when the run was inconclusive (including rejected configurations).
"""

from __future__ import annotations

import argparse
import json
import sys
from importlib import resources

from .pipelines import PIPELINES, ConfigError, PipelineConfig, report_emit

_HELP = {
    "certify-poly": "Galois and real-root certificates for the polynomial",
    "build-torus": "torus datum, period lattice and kernel sublattices",
    "ns-check": "Neron-Severi rank bound from Galois orbits",
    "theorem-even": "obstruction for the X model (optionally times a factor)",
    "theorem-odd": "obstruction for X times an elliptic curve",
    "deligne-q": "rational cup-product locus components",
    "deligne-c": "complex locus components with multiplicity sections",
    "kummer": "vanishing q-table on the blown-up Kummer square",
}

DEFAULT_CONFIG = {"kummer": "kummer.json"}


def shipped_config(name: str) -> dict:
    """Load one of the JSON configs bundled with the package."""
    text = resources.files("kahlerobs").joinpath("configs", name).read_text(encoding="utf-8")
    return json.loads(text)


def shipped_config_names() -> list[str]:
    return sorted(p.name for p in resources.files("kahlerobs").joinpath("configs").iterdir() if p.name.endswith(".json"))


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="kahlerobs", description="Exact checks of cohomological obstructions to projectivity.")
    sub = p.add_subparsers(dest="command", required=True)
    for name in PIPELINES:
        s = sub.add_parser(name, help=_HELP.get(name))
        s.add_argument("--config", help="JSON config file (default: a shipped instance)")
        s.add_argument("--shipped", metavar="NAME", help="use a bundled config, e.g. negative-x4p1.json")
        s.add_argument("--poly", help="override the polynomial, e.g. 'x^4+x+1' or '1,1,0,0,1'")
        s.add_argument("--level", type=int, choices=(1, 2))
        s.add_argument("--prime-bound", type=int)
        s.add_argument("--seed", type=int)
        s.add_argument("--format", choices=("json", "text"), default="json")
    sub.add_parser("list-configs", help="print the names of the bundled configs")
    return p


def _poly_arg(text: str):
    if "x" in text:
        return text
    return [int(c) for c in text.replace(" ", "").split(",")]


def load_config(args) -> PipelineConfig:
    if args.config and args.shipped:
        raise ConfigError("--config and --shipped are exclusive")
    if args.config:
        with open(args.config, encoding="utf-8") as fh:
            try:
                data = json.load(fh)
            except json.JSONDecodeError as exc:
                raise ConfigError(f"{args.config}: {exc}") from exc
    else:
        data = shipped_config(args.shipped or DEFAULT_CONFIG.get(args.command, "default.json"))
    data = dict(data)
    if args.poly is not None:
        data["polynomial"] = _poly_arg(args.poly)
        data.pop("n", None)
    for key, val in (("level", args.level), ("prime_bound", args.prime_bound), ("seed", args.seed)):
        if val is not None:
            data[key] = val
    return PipelineConfig.from_dict(data)


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "list-configs":
        print("\n".join(shipped_config_names()))
        return 0
    try:
        cfg = load_config(args)
        report = PIPELINES[args.command](cfg)
    except (ConfigError, OSError) as exc:
        print(f"kahlerobs: configuration error: {exc}", file=sys.stderr)
        return 2
    sys.stdout.write(report_emit(report, args.format))
    return report.exit_code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
