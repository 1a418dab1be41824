"""Laboratory settings read from the environment (after `.env` loading)."""

from __future__ import annotations

import os
from typing import Any, Dict, List, Optional

from dotenv import load_dotenv

ENV_PREFIX = "MOLLER_DIRAC_"
MAX_DEFAULT_THREADS = 8


def load_env_file() -> Optional[str]:
    """Load the nearest `.env` walking up from the CWD; existing variables win."""
    debug_env = os.environ.get(f"{ENV_PREFIX}DEBUG_ENV", "").lower() in ("1", "true", "yes")

    try:
        current_dir = os.getcwd()
        while True:
            env_path = os.path.join(current_dir, ".env")
            if os.path.exists(env_path):
                load_dotenv(env_path, verbose=False, override=False)
                if debug_env:
                    print(f"Debug: Loaded .env from: {env_path}")
                return env_path
            parent = os.path.dirname(current_dir)
            if parent == current_dir:
                break
            current_dir = parent

        if debug_env:
            print("Debug: No .env file found, using system environment variables only")

    except Exception as e:
        print(f"Warning: Failed to load .env file: {e}")
    return None


class LabSettings:
    """Configuration from MOLLER_DIRAC_* variables; invalid values fall back to defaults."""

    def __init__(self) -> None:
        self.warnings: List[str] = []
        self.threads = self._get_threads()
        self.log_dir = self._get_log_dir()
        self.cfl = self._get_cfl()
        self.debug_env = self._get_debug_env()

    def _get_threads(self) -> int:
        default = max(1, min(os.cpu_count() or 1, MAX_DEFAULT_THREADS))
        raw = os.getenv(f"{ENV_PREFIX}THREADS")
        if raw:
            try:
                value = int(raw)
                if value >= 1:
                    return value
            except ValueError:
                pass
            self.warnings.append(f"{ENV_PREFIX}THREADS={raw!r} is not a positive integer; using {default}")
        return default

    def _get_log_dir(self) -> Optional[str]:
        return os.getenv(f"{ENV_PREFIX}LOG_DIR") or None

    def _get_cfl(self) -> float:
        raw = os.getenv(f"{ENV_PREFIX}CFL")
        if raw:
            try:
                value = float(raw)
                if 0.0 < value <= 0.5:
                    return value
            except ValueError:
                pass
            self.warnings.append(f"{ENV_PREFIX}CFL={raw!r} must lie in (0, 0.5]; using 0.5")
        return 0.5

    def _get_debug_env(self) -> bool:
        return os.getenv(f"{ENV_PREFIX}DEBUG_ENV", "false").lower() in ("true", "1", "yes")

    def resolve_log_dir(self, out_dir: str) -> str:
        return self.log_dir or os.path.join(out_dir, "logs")

    def to_dict(self) -> Dict[str, Any]:
        return {
            "threads": self.threads,
            "log_dir": self.log_dir,
            "cfl": self.cfl,
            "debug_env": self.debug_env,
            "warnings": list(self.warnings),
        }
