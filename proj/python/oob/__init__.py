"""Optimistic optimization of a lazily sampled Brownian motion on [0, 1]."""

from ._oob import (  # noqa: F401
    BrownianPath,
    RandomSource,
    RunResult,
    VerificationReport,
    baseline_separation,
    bridge_max_exceed_prob,
    bridge_max_from_uniform,
    bridge_max_sample,
    compute_h_max,
    conditional_max_sample,
    derive_seed,
    eta,
    event_c_check,
    lemma3_mc,
    near_optimal_count,
    pac_estimate,
    run_oob,
    run_oob_on_path,
    ucb,
    uniform_grid_baseline,
)
