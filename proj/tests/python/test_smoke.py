import os
import subprocess

import pytest

reopt = pytest.importorskip("reopt")


def test_version():
    assert reopt.__version__ == "1.0.0"


def test_bitstring_helpers():
    assert reopt.hamming("0000", "1111") == 4
    assert reopt.hamming("1010", "1001") == 2
    assert reopt.leading_ones("1111", "1101") == 2
    assert reopt.leading_ones("1111", "1111") == 4
    assert reopt.leading_ones("1010", "1110", sigma=[3, 2, 1, 0]) == 2


def test_oracles():
    genome, value = reopt.greedy_linear_optimum([3, 1, 2], 2)
    assert genome == "101"
    assert value == "5"
    ids, weight, components = reopt.mst(3, [(0, 1, 1.0), (1, 2, 2.0), (0, 2, 10.0)])
    assert list(ids) == [0, 1]
    assert weight == 3.0
    assert components == 1
    assert reopt.neutral_bit_probability(2, 1) == 0.5


def test_repair_is_deterministic():
    first = reopt.repair("leadingones", "adversarial", n=40, gamma=2, delta=2, seed=11)
    second = reopt.repair("leadingones", "adversarial", n=40, gamma=2, delta=2, seed=11)
    assert first == second
    assert first["termination"] == "target_hit"
    # The adversarial perturbation moves the optimum to the prefix-flipped string.
    assert first["final"] == "0" * 2 + "1" * 38
    assert reopt.hamming(first["final"], "1" * 40) == 2
    assert first["evaluations"] >= 1


def test_run_experiment_roundtrip():
    kwargs = dict(
        problem="leadingones",
        variant="adversarial",
        algorithm="rea",
        n=30,
        gamma=1,
        delta=1,
        reps=5,
        seed=3,
    )
    first = reopt.run_experiment(**kwargs)
    second = reopt.run_experiment(**kwargs)
    assert first == second

    header = first["csv"].splitlines()[0]
    assert header == "seed,n,gamma,delta,algorithm,problem,evaluations,termination,T_0,T_1"
    assert len(first["csv"].splitlines()) == 6

    cell = first["aggregate"]["cells"][0]
    assert cell["target_hits"] == 5
    assert cell["n"] == 30


def test_cli_determinism(tmp_path):
    cli = os.environ.get("REOPT_CLI")
    if not cli:
        pytest.skip("REOPT_CLI not set")

    def run_once(tag):
        stem = tmp_path / tag / "result"
        proc = subprocess.run(
            [
                cli, "run",
                "--problem", "leadingones",
                "--n", "100",
                "--gamma", "1",
                "--delta", "1",
                "--reps", "50",
                "--seed", "7",
                "--out", str(stem),
            ],
            capture_output=True,
            text=True,
            check=True,
        )
        return (
            proc.stdout,
            stem.with_suffix(".csv").read_bytes(),
            stem.with_suffix(".json").read_bytes(),
        )

    assert run_once("a") == run_once("b")
