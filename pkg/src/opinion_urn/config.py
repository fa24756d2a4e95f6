"""Configuration management."""

import os
from pathlib import Path
from pydantic import BaseModel, Field
from dotenv import load_dotenv

# Load environment variables
load_dotenv()


def _env_int(name: str, default: int) -> int:
    raw = os.getenv(name, "")
    if not raw.strip():
        return default
    try:
        return int(raw)
    except ValueError:
        # Left for validate_runtime() to report with the variable name
        return -1


class Config(BaseModel):
    """Application configuration."""

    # Execution
    threads: int = Field(
        default_factory=lambda: _env_int("OPINION_URN_THREADS", os.cpu_count() or 1),
        description="Maximum worker threads for ensemble runs"
    )
    batch_size: int = Field(
        default_factory=lambda: _env_int("OPINION_URN_BATCH_SIZE", 100),
        description="Trajectories simulated together in one vectorised batch"
    )

    # Paths
    workspace: Path = Field(
        default_factory=lambda: Path(os.getenv("OPINION_URN_WORKSPACE", ".")),
        description="Default output directory"
    )

    class Config:
        """Pydantic config."""
        frozen = False

    def validate_runtime(self) -> None:
        """Validate the execution settings.

        Raises:
            ValueError: If a worker or batch setting is not a positive integer.
        """
        invalid: list[str] = []

        if self.threads < 1:
            invalid.append("OPINION_URN_THREADS")
        if self.batch_size < 1:
            invalid.append("OPINION_URN_BATCH_SIZE")

        if invalid:
            raise ValueError(
                f"Invalid runtime configuration: {', '.join(invalid)}. "
                "Values must be positive integers."
            )

    def worker_count(self, hint: int | None = None) -> int:
        """Return the number of workers to use, capped by ``threads``."""
        self.validate_runtime()
        if hint is None or hint < 1:
            return self.threads
        return min(hint, self.threads)


# Global config instance
config = Config()
