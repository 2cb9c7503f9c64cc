"""``fon`` command line: run one named scenario from a YAML config."""
from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .errors import ConfigError, FonError
from .scenarios import SCHEMAS, parse_config, resolve_output_dir, run_scenario

EXIT_OK, EXIT_CONFIG, EXIT_RUNTIME = 0, 1, 2


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="fon", description="Gaussian fuzzy opinion network scenarios.")
    ap.add_argument("scenario", choices=sorted(SCHEMAS), metavar="scenario",
                    help="one of: " + ", ".join(SCHEMAS))
    ap.add_argument("--config", help="YAML config file (defaults are used when omitted)")
    ap.add_argument("--seed", type=int, help="overrides the config seed (default 42)")
    ap.add_argument("--out", help="output directory (default $FON_OUT/<scenario>)")
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        text = Path(args.config).read_text(encoding="utf-8") if args.config else ""
    except OSError as exc:
        print(f"fon: cannot read config: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    try:
        config = parse_config(text, args.scenario)
        if args.seed is not None:
            if args.seed < 0:
                raise ConfigError(["seed: must be a nonnegative integer"])
            config.seed = args.seed
    except ConfigError as exc:
        for err in exc.errors:
            print(f"fon: config error: {err}", file=sys.stderr)
        return EXIT_CONFIG
    try:
        run_scenario(config, args.out)
    except FonError as exc:
        print(f"fon: {exc}", file=sys.stderr)
        return EXIT_RUNTIME
    print(resolve_output_dir(config, args.out))
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
