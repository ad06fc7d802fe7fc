import csv
import json

import numpy as np
import pytest

from rlatt.cli import main
from rlatt.report import REPORT_SCHEMA_VERSION


def run_json(tmp_path, args, name="out.json"):
    out = tmp_path / name
    code = main(args + ["--out", str(out)])
    return code, json.loads(out.read_text()) if out.exists() else None


def test_enumerate_counts(tmp_path):
    code, payload = run_json(tmp_path, ["enumerate", "--n", "2", "--m", "1"])
    assert code == 0
    assert payload["size"] == 3
    assert [r["partition"] for r in payload["records"]] == [[], [1], [1, 1]]
    code, payload = run_json(tmp_path, ["enumerate", "--n", "2", "--m", "2"])
    assert code == 0
    assert payload["size"] == 6
    assert all(r["delta"] > 0 for r in payload["records"])


def test_enumerate_rejects_bad_rank(tmp_path):
    assert main(["enumerate", "--n", "0", "--m", "2"]) == 2


def test_missing_required_shape_is_usage_error():
    assert main(["enumerate", "--m", "2"]) == 2


def test_operator_matrix(tmp_path):
    code, payload = run_json(
        tmp_path, ["operator", "--n", "1", "--m", "1", "--g", "1", "--p", "0", "--r", "1"]
    )
    assert code == 0
    assert payload["size"] == 2
    assert payload["dtype"] == "real"
    mat = np.array(payload["entries"]).reshape(2, 2)
    assert mat == pytest.approx(np.array([[0.0, 1.0], [1.0, 0.0]]), abs=1e-14)


def test_operator_bad_order_is_usage_error(tmp_path):
    assert main(["operator", "--n", "1", "--m", "1", "--r", "0"]) == 2


def test_operator_json_roundtrip_is_bit_exact(tmp_path):
    args = ["operator", "--n", "2", "--m", "2", "--g", "0.7", "--p", "0.5", "--r", "2"]
    code, payload = run_json(tmp_path, args)
    assert code == 0
    from rlatt.coeffs import ModelParams
    from rlatt.operators import build_hop_operator

    direct = build_hop_operator(2, ModelParams(2, 2, 0.7, 0.5)).matrix
    reloaded = np.array(payload["entries"]).reshape(payload["size"], payload["size"])
    assert np.array_equal(reloaded, direct)


def test_complex_operator_export(tmp_path):
    code, payload = run_json(
        tmp_path,
        ["operator", "--n", "2", "--m", "2", "--g", "0.7", "--p", "0.3", "--r", "1", "--kind", "S"],
    )
    assert code == 0
    assert payload["dtype"] == "complex"
    entries = np.array([complex(re, im) for re, im in payload["entries"]])
    assert np.all(np.abs(entries.real) < 1e-15)


def test_spectrum_sweep_two_state(tmp_path):
    code, payload = run_json(
        tmp_path,
        [
            "spectrum", "--n", "1", "--m", "1", "--g", "1",
            "--p-start", "0", "--p-stop", "0.9", "--p-step", "0.1",
        ],
    )
    assert code == 0
    assert len(payload["points"]) == 10
    for point in payload["points"]:
        assert len(point["records"]) == 2
        values = sorted(e[0] for record in point["records"] for e in record["e"])
        assert values == pytest.approx([-1.0, 1.0], abs=1e-12)


def test_spectrum_descending_sweep(tmp_path):
    code, payload = run_json(
        tmp_path,
        [
            "spectrum", "--n", "1", "--m", "1", "--g", "1",
            "--p-start", "0.2", "--p-stop", "0", "--p-step", "0.1",
        ],
    )
    assert code == 0
    assert [point["p"] for point in payload["points"]] == [0.2, 0.1, 0.0]


def test_spectrum_labels_match_trig_table(tmp_path):
    code, payload = run_json(
        tmp_path, ["spectrum", "--n", "2", "--m", "2", "--g", "0.7", "--p", "0"]
    )
    assert code == 0
    from rlatt.coeffs import ModelParams
    from rlatt.macdonald import trig_joint_eigenvalue

    params = ModelParams(2, 2, 0.7, 0.0)
    for record in payload["points"][0]["records"]:
        nu = tuple(record["nu"])
        for r, (re, im) in enumerate(record["e"], start=1):
            closed = trig_joint_eigenvalue(nu, r, params)
            assert complex(re, im) == pytest.approx(closed, abs=1e-8)


def test_verify_passes(tmp_path):
    code, payload = run_json(
        tmp_path, ["verify", "--n", "2", "--m", "2", "--g", "1", "--p", "0.3"]
    )
    assert code == 0
    assert payload["passed"] is True
    assert payload["versions"] == {"schema": REPORT_SCHEMA_VERSION, "package": "0.1.0"}
    names = [c["name"] for c in payload["checks"]]
    assert names == [
        "commutators", "adjointness", "truncation-dichotomy", "weight-recurrence",
        "psi-consistency", "orthogonality", "pieri", "dual-orthogonality",
        "reconstruction", "trig-comparison", "appendix-crosscheck",
    ]
    for check in payload["checks"]:
        assert check["passed"] is True
        assert check["residual"] is not None and np.isfinite(check["residual"])
        assert check["residual"] < check["tolerance"]
        assert check["seconds"] >= 0


def test_verify_with_broken_alpha_fails(tmp_path):
    code, payload = run_json(
        tmp_path,
        ["verify", "--n", "2", "--m", "2", "--g", "1", "--p", "0.3", "--alpha-scale", "0.93"],
    )
    assert code == 1
    assert payload["passed"] is False
    by_name = {c["name"]: c for c in payload["checks"]}
    assert by_name["truncation-dichotomy"]["passed"] is False


def test_verify_rejects_sweep():
    code = main(
        ["verify", "--n", "2", "--m", "2", "--p-start", "0", "--p-stop", "0.5", "--p-step", "0.1"]
    )
    assert code == 2


def test_verify_tolerance_flag(tmp_path):
    # absurdly tight tolerance forces a failure and exit 1
    code, payload = run_json(
        tmp_path,
        ["verify", "--n", "1", "--m", "1", "--g", "1", "--p", "0",
         "--tol-reconstruction", "1e-30"],
    )
    assert code == 1
    by_name = {c["name"]: c for c in payload["checks"]}
    assert by_name["reconstruction"]["passed"] is False
    assert by_name["reconstruction"]["tolerance"] == 1e-30


def test_polys_two_state_table(tmp_path):
    code, payload = run_json(
        tmp_path, ["polys", "--n", "1", "--m", "1", "--g", "1", "--p", "0.5"]
    )
    assert code == 0
    triples = {(tuple(t["mu"]), tuple(t["nu"])): t["u"] for t in payload["triples"]}
    assert triples == {((), ()): 1.0, ((1,), (1,)): 1.0}
    for t in payload["triples"]:
        assert isinstance(t["u"], float)


def test_polys_monic_rows_present(tmp_path):
    code, payload = run_json(
        tmp_path, ["polys", "--n", "2", "--m", "2", "--g", "0.7", "--p", "0.3"]
    )
    assert code == 0
    monic = {tuple(t["mu"]) for t in payload["triples"] if t["mu"] == t["nu"] and t["u"] == 1.0}
    assert len(monic) == 6


def test_byte_determinism(tmp_path):
    for args, name in [
        (["enumerate", "--n", "2", "--m", "2", "--g", "0.7", "--p", "0.5"], "basis"),
        (["operator", "--n", "2", "--m", "2", "--g", "0.7", "--p", "0.5", "--r", "1"], "op"),
        (["spectrum", "--n", "2", "--m", "2", "--g", "0.7", "--p", "0.5", "--seed", "3"], "spec"),
        (["polys", "--n", "2", "--m", "2", "--g", "0.7", "--p", "0.5"], "polys"),
    ]:
        first = tmp_path / f"{name}1.json"
        second = tmp_path / f"{name}2.json"
        assert main(args + ["--out", str(first)]) == 0
        assert main(args + ["--out", str(second)]) == 0
        assert first.read_bytes() == second.read_bytes()


def test_report_determinism_modulo_timings(tmp_path):
    args = ["verify", "--n", "1", "--m", "1", "--g", "1", "--p", "0.3"]
    _, one = run_json(tmp_path, args, "r1.json")
    _, two = run_json(tmp_path, args, "r2.json")
    for payload in (one, two):
        for check in payload["checks"]:
            check["seconds"] = 0.0
    assert one == two


def test_csv_output(tmp_path):
    out = tmp_path / "basis.csv"
    assert main(["enumerate", "--n", "2", "--m", "2", "--format", "csv", "--out", str(out)]) == 0
    rows = list(csv.reader(out.read_text().splitlines()))
    assert rows[0] == ["index", "partition", "weight", "delta"]
    assert len(rows) == 7
    # full precision survives the csv round trip
    from rlatt.coeffs import ModelParams, lattice_weight

    assert float(rows[2][3]) == lattice_weight((1,), ModelParams(2, 2, 1.0, 0.0))


def test_spectrum_csv(tmp_path):
    out = tmp_path / "spec.csv"
    assert main(
        ["spectrum", "--n", "1", "--m", "1", "--g", "1", "--p", "0.4", "--format", "csv",
         "--out", str(out)]
    ) == 0
    rows = list(csv.reader(out.read_text().splitlines()))
    assert rows[0] == ["p", "nu", "norm_hat", "residual", "e1_re", "e1_im"]
    assert len(rows) == 3


def test_config_file_and_overrides(tmp_path, monkeypatch):
    config = tmp_path / "config.json"
    config.write_text(json.dumps({"n": 2, "m": 1, "g": 1.0, "p": 0.0, "seed": 7}))
    code, payload = run_json(tmp_path, ["enumerate", "--config", str(config)])
    assert code == 0
    assert payload["size"] == 3
    # flags override the file
    code, payload = run_json(tmp_path, ["enumerate", "--config", str(config), "--m", "2"])
    assert payload["size"] == 6
    # the environment overrides the seed only
    monkeypatch.setenv("RLATT_SEED", "99")
    code, payload = run_json(
        tmp_path, ["spectrum", "--config", str(config), "--p", "0.2"], "seeded.json"
    )
    assert code == 0
    assert payload["seed"] == 99


def test_unknown_tolerance_in_config_is_usage_error(tmp_path):
    config = tmp_path / "config.json"
    config.write_text(json.dumps({"n": 1, "m": 1, "tolerances": {"bogus": 1e-3}}))
    assert main(["verify", "--config", str(config)]) == 2
