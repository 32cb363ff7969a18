"""Mutable limits and defaults for the toric toolkit."""
import os
from dataclasses import dataclass


def _env_int(name: str, default: int) -> int:
    raw = os.getenv(name)
    if raw is None or not raw.strip():
        return default
    try:
        return int(raw)
    except ValueError:
        raise ValueError(f"{name} must be an integer, got {raw!r}") from None


@dataclass
class ToricConfig:
    """Holds tunable limits for cohomology scans and randomized checks.

    Modules read these attributes at call time, so the CLI and tests may mutate the singleton below.
    """
    SCAN_SHELL_CAP: int = 64            # shells a scan may add before giving up
    SCAN_QUIET_SHELLS: int = 2          # consecutive empty shells ending a scan
    CAP_STABILIZE_KMAX: int = 16        # default search bound for scaled caps
    DEFAULT_ENGINE: str = "cech"        # cech | support | polytope
    RANDOM_SEED: int = 20240601
    SCHEMA_VERSION: int = 1
    LOG_LEVEL: str = "WARNING"


# Singleton instance that library modules and the CLI may mutate at runtime
toric = ToricConfig(
    SCAN_SHELL_CAP=_env_int("TORIC_SCAN_CAP", ToricConfig.SCAN_SHELL_CAP),
    LOG_LEVEL=os.getenv("TORIC_LOG", ToricConfig.LOG_LEVEL).upper(),
)

# --- Convenience re-exports -------------------------------------------
SCHEMA_VERSION = toric.SCHEMA_VERSION
RANDOM_SEED    = toric.RANDOM_SEED
