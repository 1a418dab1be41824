from __future__ import annotations

import argparse


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="moller-dirac",
        description="Moller operators and quantum states for boundary Dirac fields on 1+1 dimensional strips",
        epilog="MOLLER_DIRAC_* variables are read from the environment after loading the nearest .env file.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="Run validation suites against a JSON config")
    run.add_argument("config", help="Path to a run config (see docs/schemas.md)")
    run.add_argument(
        "--suite",
        action="append",
        default=None,
        help="Suite to run (repeat flag for several); defaults to the config's list",
    )
    run.add_argument("--grid", type=str, default=None, help="Grid ladder override, e.g. 100,200,400")
    run.add_argument("--out", type=str, default=None, help="Output directory for reports (default: config 'out')")
    run.add_argument("--seed", type=int, default=None, help="Seed override for every random draw")
    run.add_argument(
        "--snapshots",
        action="store_true",
        help="Also write stored solution slices as .npy files with a JSON header",
    )

    sub.add_parser("suites", help="List the available suites, then exit")
    sub.add_parser("schema-version", help="Print the report schema version, then exit")
    return parser
