import json
import pathlib
from fractions import Fraction

import numpy as np
import pytest

import pivotkit

SCHEMA = pathlib.Path(__file__).resolve().parents[2] / "schemas" / "report.schema.json"

A21 = np.array(
    [[1, 10, 10], [2, 3, 4], [0, 10, -3], [4, -5, 4], [0, -6, 8]], dtype=float
)


def test_compressed_golden():
    strict = pivotkit.build_compressed(A21, "strict")
    relaxed = pivotkit.build_compressed(A21, "relaxed")
    np.testing.assert_array_equal(strict, [[0, 0, 0], [4, 10, 10], [2, 6, 8]])
    np.testing.assert_array_equal(relaxed, [[4, -5, 4], [1, 10, 10], [0, -6, 8]])


def test_relaxed_counterexample_bound():
    a = pivotkit.generate("pathological-relaxed", 5, 2)
    relaxed = pivotkit.factor(a, "relaxed")
    assert relaxed["nelim"] == 2
    assert abs(relaxed["L"][4, 1]) == pytest.approx(199.999998, rel=1e-9)
    for method in ("tpp", "strict"):
        assert pivotkit.factor(a, method)["delayed"] == [1]


@pytest.mark.parametrize("method", ["tpp", "strict", "relaxed", "restricted"])
def test_factor_reconstructs(method):
    a = pivotkit.generate("random-indefinite", 40, 8, seed=3)
    f = pivotkit.factor(a, method)
    k = f["nelim"]
    perm = f["perm"]
    L, D = f["L"], f["D"]
    full = np.vstack([a[perm, :][:, perm][: 8], a[8:, :][:, perm]])
    rows = np.r_[0:k, 8:40]
    lhs = full[rows][:, :k]
    rhs = L[rows] @ D @ L[:k].T
    assert np.max(np.abs(lhs - rhs)) <= 1e-12 * max(1.0, np.max(np.abs(a)))
    if method == "strict":
        assert np.max(np.abs(L)) <= 1 / 0.01 + 1e-9


def test_cost_model_matches_simulation():
    a = pivotkit.generate("all-2x2-accept", 64, 8, seed=1)
    for scheme in ("tpp_A", "tpp_B", "strict", "relaxed", "restricted"):
        counted = pivotkit.simulate(scheme, a, 8)["counters"]
        model = pivotkit.scheme_costs(scheme, 64, 8, 8)
        assert {k: Fraction(v) for k, v in counted.items()} == model
    assert pivotkit.tpp_ops(4, 2) == 28
    assert pivotkit.scheme_costs("strict", 64, 8, 8)["msgs"] == 4


def test_solve_and_report_schema():
    jsonschema = pytest.importorskip("jsonschema")
    a = pivotkit.generate("random-indefinite", 80, 16, seed=5, system=True)
    b = a @ np.ones(80)
    runs = []
    for method in ("tpp", "strict", "relaxed", "restricted"):
        r = pivotkit.solve(a, b, method=method, p=16)
        r.instance = "smoke"
        assert r.converged
        assert r.bwd_err[-1] < 1e-14
        assert r.nelim + r.root_nelim + r.zero_pivots == 80
        assert pivotkit.backward_error(a, r.x, b) == pytest.approx(r.bwd_err[-1], abs=1e-18)
        runs.append(r)
    doc = json.loads(pivotkit.report_json(runs))
    assert doc["schema"] == pivotkit.report_schema_id
    jsonschema.validate(doc, json.loads(SCHEMA.read_text()))


def test_errors():
    with pytest.raises(ValueError):
        pivotkit.simulate("strict", pivotkit.generate("all-2x2-accept", 16, 4), 3)
    with pytest.raises(ValueError):
        pivotkit.factor(np.zeros((3, 3)), "nonsense")
