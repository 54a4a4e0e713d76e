"""
Settings for the doublet solvers, the CLI and the REST service.

=== WHERE VALUES COME FROM ===

    defaults below  <  .env in the project root  <  process environment

Every numerical default here is the value the test suites are written
against; a .env override is for one machine (a finer oracle grid, JSON
logs in a container), not for changing results. Field bounds are checked
when the module is imported, so NEWTON_GRID=1 or a negative tolerance
fails before any solve starts.

=== READING SETTINGS ===

    from config.settings import get_settings
    grid = get_settings().newton_grid

Solver functions read settings at call time and accept keyword overrides,
so tests pass explicit values instead of mutating the global instance.
"""
from pathlib import Path

from dotenv import load_dotenv
from pydantic import Field
from pydantic_settings import BaseSettings, SettingsConfigDict

PROJECT_ROOT = Path(__file__).parent.parent
ENV_FILE = PROJECT_ROOT / ".env"

# explicit path: the CLI may run from any working directory
load_dotenv(dotenv_path=ENV_FILE)


class Settings(BaseSettings):
    """Tolerances, grid sizes, logging and service options. Names are case-insensitive."""

    # ============================================
    # LINE-TENSION SOLVER (multistart Newton)
    # ============================================

    newton_grid: int = Field(48, ge=2, description="Starts per angle axis")
    newton_tolerance: float = Field(
        1e-13, gt=0, description="Newton stop on residual, relative to t_s"
    )
    newton_max_iterations: int = Field(60, ge=1)
    dedup_radius: float = Field(
        1e-6, gt=0, description="Max-norm cluster radius over (z1,z2,z3,rho)"
    )

    # ============================================
    # ACCEPTANCE TOLERANCES
    # ============================================

    residual_tolerance: float = Field(
        1e-10, gt=0, description="Force balance (scaled) and relative volume residual"
    )
    relation_tolerance: float = Field(1e-9, gt=0)
    verify_tolerance: float = Field(
        1e-9, gt=0, description="CLI --verify recomputation threshold"
    )

    # ============================================
    # PHASE SCAN / BULGING
    # ============================================

    scan_grid: int = Field(256, ge=2, description="Angle grid per axis")
    bulge_scan_points: int = Field(
        4001, ge=11, description="Samples of the t1 condition before bracketing"
    )

    # ============================================
    # ORACLE
    # ============================================

    oracle_grid: int = Field(200, ge=2, description="Grid cells per axis over (x3, h)")
    oracle_refine_starts: int = Field(10, ge=1)
    oracle_simplex_tolerance: float = Field(1e-12, gt=0)
    oracle_simplex_max_iterations: int = Field(400, ge=1)

    # ============================================
    # LOGGING
    # ============================================

    log_level: str = Field("WARNING", description="DEBUG, INFO, WARNING, ERROR")
    log_json: bool = Field(False, description="Render log events as JSON lines")

    # ============================================
    # FASTAPI / API SETTINGS
    # ============================================

    # Server Configuration
    api_host: str = "0.0.0.0"
    api_port: int = 8000
    api_reload: bool = True  # For development (auto-reload on code changes)

    # API Features
    api_debug: bool = Field(default=False, description="Expose exception details")
    api_docs_enabled: bool = True  # Enable Swagger docs at /docs

    # CORS Settings (Cross-Origin Resource Sharing)
    cors_origins: list[str] = ["*"]
    cors_allow_credentials: bool = True

    # Scans are CPU bound; keep request grids small
    api_max_scan_grid: int = Field(128, ge=2)

    # ============================================
    # PROJECT PATHS
    # ============================================

    project_root: Path = PROJECT_ROOT

    model_config = SettingsConfigDict(
        env_file=str(ENV_FILE),  # Use absolute path
        env_file_encoding="utf-8",
        case_sensitive=False,
        extra="ignore",
    )


settings = Settings()


def get_settings() -> Settings:
    """Get the global settings instance."""
    return settings


if __name__ == "__main__":
    from rich.console import Console
    from rich.table import Table

    table = Table(title="Doublet Platform - Configuration")
    table.add_column("setting")
    table.add_column("value")
    for name, value in settings.model_dump().items():
        table.add_row(name, repr(value))
    Console().print(table)
