"""Configuration-driven orchestration: run, report, plot, validate."""

from .config import RunConfig, canonical_config, check_inputs, config_hash, load_config
from .main import main
from .plots import cmd_plot
from .runner import JobResult, RunSummary, cmd_run, cmd_validate, run_job
from .smoke import build_smoke_workspace, smoke_config
from .tables import cmd_report, load_reports

__all__ = [
    "RunConfig",
    "canonical_config",
    "check_inputs",
    "config_hash",
    "load_config",
    "main",
    "cmd_plot",
    "JobResult",
    "RunSummary",
    "cmd_run",
    "cmd_validate",
    "run_job",
    "build_smoke_workspace",
    "smoke_config",
    "cmd_report",
    "load_reports",
]
