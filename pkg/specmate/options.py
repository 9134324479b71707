import json
import logging
import os
from dataclasses import asdict, dataclass, field
from pathlib import Path

logger = logging.getLogger(__name__)

CAP_ENV = "SPECMATE_CAP"


def _config_path() -> Path:
    return Path.home() / ".config" / "specmate" / "options.json"


@dataclass(frozen=True)
class SolverOptions:
    cap: int = 1 << 16
    trial_division_limit: int = 1_000_000
    rho_max_steps: int = 200_000
    rho_retries: int = 5


@dataclass(frozen=True)
class BatchOptions:
    jobs: int = 1


@dataclass(frozen=True)
class AppOptions:
    solver: SolverOptions = field(default_factory=SolverOptions)
    batch: BatchOptions = field(default_factory=BatchOptions)

    def save(self, path: Path | None = None):
        path = path or _config_path()
        path.parent.mkdir(parents=True, exist_ok=True)
        with open(path, "w") as f:
            json.dump(asdict(self), f, indent=2)

    @classmethod
    def load(cls, path: Path | None = None) -> "AppOptions":
        path = path or _config_path()
        if not path.exists():
            return cls()
        try:
            with open(path) as f:
                data = json.load(f)
            return cls(
                solver=SolverOptions(**data.get("solver", {})),
                batch=BatchOptions(**data.get("batch", {})),
            )
        except Exception:
            logger.warning("ignoring unreadable options file %s", path)
            return cls()


def resolve_cap(flag: int | None, options: AppOptions, environ=os.environ) -> int:
    """--cap beats SPECMATE_CAP, which beats the options file."""
    if flag is not None:
        value = flag
    elif environ.get(CAP_ENV):
        raw = environ[CAP_ENV]
        try:
            value = int(raw)
        except ValueError:
            raise ValueError(f"{CAP_ENV}={raw!r} is not an integer") from None
    else:
        value = options.solver.cap
    if value < 1:
        raise ValueError(f"cap must be positive, got {value}")
    return value
