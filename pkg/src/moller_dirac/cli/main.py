from __future__ import annotations

import logging
from typing import Optional, Sequence

from ..config import LabSettings, load_env_file
from .args import build_parser
from .commands import list_suites_command, run_command, schema_version_command


def main(argv: Optional[Sequence[str]] = None) -> int:
    # .env
    load_env_file()
    settings = LabSettings()
    logging.basicConfig(
        level=logging.DEBUG if settings.debug_env else logging.WARNING,
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
    )

    args = build_parser().parse_args(argv)
    if args.command == "suites":
        return list_suites_command()
    if args.command == "schema-version":
        return schema_version_command()
    return run_command(
        args.config,
        suites=args.suite,
        grid=args.grid,
        out=args.out,
        seed=args.seed,
        snapshots=args.snapshots,
        settings=settings,
    )
