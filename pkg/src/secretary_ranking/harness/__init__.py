from .config import ExperimentConfig, MRule
from .report import emit_report, plot_data, results_csv, summary_json
from .runner import (
    ExperimentReport,
    TrialResult,
    run_experiment,
    run_trial,
    trial_seed,
    verify_decomposition,
)
