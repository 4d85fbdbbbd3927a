import json
import math
from pathlib import Path

import jsonschema
import numpy as np
import pytest

import causentropy as ce

ROOT = Path(__file__).resolve().parents[2]
EXAMPLES = sorted((ROOT / "examples_cfg").glob("*.json"))

LEDGER = {"s_g": 1.0, "s_e": 0.9, "s_b": 0.8, "s_e_star": 0.5, "s_b_star": 0.6, "s_0": 0.2}


def transfer_config(**ledger):
    return {"kind": "transfer", "seed": 1, "tolerance": 1e-12, "params": {"ledger": {**LEDGER, **ledger}}}


def test_version():
    assert ce.__version__ == "0.1.0"


def test_schema_is_a_valid_draft_2020_12_document():
    jsonschema.Draft202012Validator.check_schema(ce.scenario_schema())
    shipped = json.loads((ROOT / "schemas" / "scenario.schema.json").read_text())
    assert shipped == ce.scenario_schema()


@pytest.mark.parametrize("path", EXAMPLES, ids=lambda p: p.name)
def test_examples_pass_both_validators(path):
    config = json.loads(path.read_text())
    jsonschema.validate(config, ce.scenario_schema(), cls=jsonschema.Draft202012Validator)
    assert ce.validate_config(config) == []


def test_validators_agree_on_rejections():
    bad = transfer_config()
    bad["params"]["ledger"]["s_gg"] = 1.0
    bad["extra"] = True
    diagnostics = ce.validate_config(bad)
    assert any("s_gg" in d for d in diagnostics)
    assert any("extra" in d for d in diagnostics)
    with pytest.raises(jsonschema.ValidationError):
        jsonschema.validate(bad, ce.scenario_schema(), cls=jsonschema.Draft202012Validator)
    with pytest.raises(ce.Error) as info:
        ce.run_scenario(bad)
    assert info.value.code == "ConfigInvalid"


def test_transfer_scenario():
    report = ce.run_scenario(transfer_config())
    assert report["all_pass"]
    assert report["outputs"]["s_g_prime"]["value"] == pytest.approx(1.7, abs=1e-14)
    assert abs(report["outputs"]["conservation_residual"]["value"]) <= 1e-12
    assert ce.emit_report(report) == ce.emit_report(ce.run_scenario(transfer_config()))
    header, row = ce.emit_report(report, "csv").splitlines()
    assert header.split(",")[-1] == "all_pass"
    assert row.endswith("true")


def test_apply_transfer_and_errors():
    out = ce.apply_transfer(**LEDGER)
    assert out["s_g_prime"] == pytest.approx(1.7)
    assert out["delta_s_tot"] == pytest.approx(2 * out["delta_s_g"])
    with pytest.raises(ce.Error) as info:
        ce.apply_transfer(**{**LEDGER, "s_e_star": 2.0})
    assert info.value.code == "InvalidLedger"
    assert isinstance(info.value, RuntimeError)


def test_sweep_in_grid_order():
    config = transfer_config(s_0=0.1)
    config["sweep"] = {"params.ledger.s_e_star": [0.2 + 0.05 * i for i in range(10)]}
    points = ce.run_sweep(config, threads=3)
    assert [p["assignment"]["params.ledger.s_e_star"] for p in points] == config["sweep"]["params.ledger.s_e_star"]
    s_g_prime = [p["report"]["outputs"]["s_g_prime"]["value"] for p in points]
    assert all(b > a for a, b in zip(s_g_prime, s_g_prime[1:]))


def test_entropies_against_numpy():
    rng = np.random.default_rng(3)
    psi = rng.normal(size=12) + 1j * rng.normal(size=12)
    psi /= np.linalg.norm(psi)
    rho = np.outer(psi, psi.conj())
    rho_a = ce.reduced_state(rho, [3, 4], [0])
    reference = psi.reshape(3, 4) @ psi.reshape(3, 4).conj().T
    np.testing.assert_allclose(rho_a, reference, atol=1e-14)
    w = np.linalg.eigvalsh(reference)
    expected = -sum(x * math.log2(x) for x in w if x > 1e-12)
    assert ce.von_neumann_entropy(rho_a, [3]) == pytest.approx(expected, abs=1e-12)
    assert ce.von_neumann_entropy(rho, [3, 4]) == pytest.approx(0.0, abs=1e-9)


def test_bell_pair_negativity_and_ssa():
    bell = np.zeros(4, dtype=complex)
    bell[0] = bell[3] = 1 / math.sqrt(2)
    rho = np.outer(bell, bell.conj())
    assert ce.negativity(rho, [2, 2], 0) == pytest.approx(0.5)
    assert ce.ppt_gap(rho, [2, 2], 0) == pytest.approx(-0.5)
    ghz = np.zeros(8, dtype=complex)
    ghz[0] = ghz[7] = 1 / math.sqrt(2)
    assert ce.ssa_gap(np.outer(ghz, ghz.conj()), [2, 2, 2], [0, 1], [1, 2]) >= -1e-9
    with pytest.raises(ce.Error) as info:
        ce.negativity(np.eye(4) * 0.3, [2, 2], 0)
    assert info.value.code == "DomainError"


def test_certificate_of_a_product_state():
    cert = ce.certify_partitions(np.eye(8) / 8, [2, 2, 2])
    assert cert["negativity_g_vs_eb"] == pytest.approx(0.0, abs=1e-12)
    assert cert["separable_decomposition_e_cut"] is not None
    assert cert["reconstruction_error_trace_norm"] <= 1e-6


def test_area_round_trip():
    scheme = {"delta": 2.0, "c0_tilde": 0.1}
    assert ce.area_from_entropy(5.0, scheme) == pytest.approx(200.0)
    assert ce.entropy_from_area(200.0, scheme) == pytest.approx(5.0)
    assert ce.area_from_entropy(3.0, {"planck_factor": 2 * math.pi}, "geom_scale") == pytest.approx(3.0)


def test_quadrature_closed_forms():
    x = np.linspace(0.0, 1.0, 11)
    values = np.ones((11, 5))
    assert ce.boost_integral(0.7 * values, [0.0, 0.0], [0.1, 0.25]) == pytest.approx(-math.pi * 0.7, abs=1e-12)
    assert ce.trapezoid(np.outer(x, np.ones(5)), [0.0, 0.0], [0.1, 0.25]) == pytest.approx(0.5, abs=1e-14)
    with pytest.raises(ce.Error) as info:
        ce.trapezoid(values, [0.0], [0.1])
    assert info.value.code == "BadGrid"


def test_unit_trace_constant():
    assert ce.unit_trace_constant(np.zeros((5, 5))) == pytest.approx(math.log(5))
