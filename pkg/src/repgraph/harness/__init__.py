"""Configuration, pipeline orchestration, reports and the command line."""

from .config import ExperimentConfig, default_config, load_config, validate_config
from .pipeline import PLANS, build_window, run_pipeline
from .report import CHECKS, Report, StepResult, Verdict, emit_report, parse_report

__all__ = [
    "CHECKS",
    "ExperimentConfig",
    "PLANS",
    "Report",
    "StepResult",
    "Verdict",
    "build_window",
    "default_config",
    "emit_report",
    "load_config",
    "parse_report",
    "run_pipeline",
    "validate_config",
]
