"""Sorting under an evolving true order: after every comparison an adversary
mutates the hidden total order, and repeated classical sorting algorithms try
to keep the Kendall tau distance to it small."""

from .adversaries import (
    HotSpotAdversary,
    MutationReport,
    UniformAdversary,
    mutate,
)
from .algorithms import AlgorithmKind, BlockSchedule, Sorter
from .metrics import (
    Sample,
    SteadySummary,
    UndefinedSwapRatio,
    brute_force_tau,
    good_swap_fraction,
    summarize_run,
)
from .model import (
    SimClock,
    StartConfig,
    SwapEffect,
    TauTracker,
    TrueOrder,
    WorkingList,
    compare_true,
    init_start_config,
    recount_tau,
    swap_adjacent_true,
    swap_adjacent_working,
    swap_working_positions,
)
from .runner import (
    AdversaryKind,
    ExperimentConfig,
    RunRecord,
    derive_rngs,
    make_grid,
    preset_configs,
    reproduce,
    run_once,
    run_sweep,
)

__version__ = "0.1.0"

__all__ = [
    "AdversaryKind",
    "AlgorithmKind",
    "BlockSchedule",
    "ExperimentConfig",
    "HotSpotAdversary",
    "MutationReport",
    "RunRecord",
    "Sample",
    "SimClock",
    "Sorter",
    "StartConfig",
    "SteadySummary",
    "SwapEffect",
    "TauTracker",
    "TrueOrder",
    "UndefinedSwapRatio",
    "UniformAdversary",
    "WorkingList",
    "brute_force_tau",
    "compare_true",
    "derive_rngs",
    "good_swap_fraction",
    "init_start_config",
    "make_grid",
    "mutate",
    "preset_configs",
    "recount_tau",
    "reproduce",
    "run_once",
    "run_sweep",
    "summarize_run",
    "swap_adjacent_true",
    "swap_adjacent_working",
    "swap_working_positions",
]
