"""Python interface to the (gamma+1) re-optimization EA core."""

import json as _json

from ._core import (
    __version__,
    greedy_linear_optimum,
    hamming,
    leading_ones,
    mst,
    neutral_bit_probability,
    repair,
    run_experiment_json,
)

__all__ = [
    "__version__",
    "greedy_linear_optimum",
    "hamming",
    "leading_ones",
    "mst",
    "neutral_bit_probability",
    "repair",
    "run_experiment",
    "run_experiment_json",
]


def run_experiment(**spec):
    """Run a full experiment grid.

    Keyword arguments mirror the CLI config keys (problem, variant,
    algorithm, n, gamma, delta, reps, seed, budget, sign, coupled,
    milestones, epsilon, jobs, instance, flips). Returns a dict with the
    parsed aggregate under "aggregate" plus the raw "csv" and "table" text.
    """
    csv_text, json_text, table = run_experiment_json(_json.dumps(spec))
    return {"aggregate": _json.loads(json_text), "csv": csv_text, "table": table}
