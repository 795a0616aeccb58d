"""Tests for the HTTP service endpoints."""
import pytest
from fastapi.testclient import TestClient

from bellbunch.fock import FockVector
from bellbunch.service import app

client = TestClient(app)


def test_health():
    response = client.get("/health")
    assert response.status_code == 200
    assert response.json() == {"status": "ok"}


def test_scan_delay_normalizes_to_reference():
    response = client.post("/scan-delay", json={"steps": 5, "dt_max": 4.0})
    assert response.status_code == 200
    body = response.json()
    assert body["control_name"] == "dt"
    assert len(body["control"]) == 5
    assert body["probability"][0] == pytest.approx(0.0, abs=1e-12)
    assert body["metadata"]["reference"] == 1.0
    assert body["metadata"]["reference_raw"] > 0
    # plateau approaches the normalized reference from below
    assert 0.99 < body["probability"][-1] <= 1.0 + 1e-12


def test_scan_delay_antibunching_peak():
    response = client.post(
        "/scan-delay",
        json={"second": "phi-plus", "steps": 3, "dt_min": 0.0, "dt_max": 6.0},
    )
    body = response.json()
    assert body["probability"][0] == pytest.approx(4.0, abs=1e-9)


def test_scan_delay_rejects_bad_input():
    assert client.post("/scan-delay", json={"steps": 0}).status_code == 422
    assert client.post("/scan-delay", json={"first": "omega"}).status_code == 400
    assert client.post(
        "/scan-delay", json={"dt_min": 2.0, "dt_max": 1.0, "steps": 3}
    ).status_code == 400


def test_table_blocks():
    response = client.post("/table", json={"basis_a": "hv", "basis_b": "pm"})
    assert response.status_code == 200
    body = response.json()
    assert body["order"] == ["psi-minus", "psi-plus", "phi-minus", "phi-plus"]
    kinds = [[cell["kind"] for cell in row] for row in body["cells"]]
    assert kinds == [
        ["B", "B", "B", "A"],
        ["B", "B", "A", "B"],
        ["B", "A", "B", "B"],
        ["A", "B", "B", "B"],
    ]


def test_table_rejects_equal_bases():
    response = client.post("/table", json={"basis_a": "hv", "basis_b": "hv"})
    assert response.status_code == 400


def test_modes_sweep_rows():
    response = client.post("/modes-sweep", json={"max_n": 4})
    rows = response.json()["rows"]
    assert [r["n_d"] for r in rows] == [1, 2, 3, 4]
    assert rows[0]["probability"] == pytest.approx(0.0, abs=1e-12)
    assert rows[1]["probability"] == pytest.approx(1 / 16, rel=1e-9)
    assert rows[1]["alpha_min"] == pytest.approx(0.6)


def test_alpha_sweep_reports_crossover_degeneracy():
    response = client.post("/alpha-sweep", json={"steps": 5})
    assert response.status_code == 200
    body = response.json()
    assert body["crossover"] is None
    assert "sign change" in body["note"]
    assert body["alpha"][0] == pytest.approx(0.6)
    assert body["ratio"][0] == pytest.approx(1.0, abs=1e-9)
    assert body["ratio"][-1] == pytest.approx(0.0, abs=1e-9)


def test_alpha_sweep_rejects_out_of_range():
    response = client.post("/alpha-sweep", json={"alpha_lo": 0.5, "steps": 3})
    assert response.status_code == 400


def test_visibility_pure_singlet():
    response = client.post("/visibility", json={"alpha": 1.0, "steps": 5})
    assert response.status_code == 200
    assert response.json()["visibility"] == pytest.approx(1.0, abs=1e-9)


def test_visibility_rejects_low_alpha():
    response = client.post("/visibility", json={"alpha": 0.4, "steps": 5})
    assert response.status_code == 400


def test_state_dump_round_trips():
    response = client.post(
        "/state-dump", json={"source": "multimode", "n_d": 2})
    assert response.status_code == 200
    records = response.json()["records"]
    state = FockVector.from_records(records)
    assert state.norm() == pytest.approx(1.0, abs=1e-9)
    strings = {m for rec in records for m, _ in rec["occupation"]}
    assert all(":" in s and s[0] in "ab" for s in strings)


def test_state_dump_double_pass_uses_perp_labels_at_large_delay():
    response = client.post(
        "/state-dump", json={"source": "double-pass", "dt": 50.0})
    labels = {
        m.split(":")[1]
        for rec in response.json()["records"]
        for m, _ in rec["occupation"]
    }
    assert "perp1" in labels
