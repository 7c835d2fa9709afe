import json

import pytest
from gmpy2 import mpq

from binetkit import REGISTRY, VerifySettings, default_records, report, run_identity, sweep
from binetkit.harness import failure_count
from binetkit.records import Status

EXACT_IDS = [
    "eq1",
    "gould_check",
    "thm1.F",
    "thm1.L",
    "thm2.F",
    "thm2.L",
    "thm3.F",
    "thm3.L",
    "horadam.w",
    "thm4.plain.F",
    "thm4.plain.L",
    "thm4.alt.F",
    "thm4.alt.L",
]

SERIES_IDS = [
    "lehmer.j",
    "lehmer.j2",
    "lehmer.plain",
    "euler_arctan",
    "bc_arcsin",
    "thm5.F",
    "thm5.L",
    "sq.F",
    "sq.L",
    "hm.F",
    "hm.L",
    "thm7.F",
    "thm7.L",
    "thm8.F",
    "thm8.L",
    "thm9.F",
    "thm9.L",
    "sury",
]


def test_registry_contains_every_identity_exactly_once():
    assert set(EXACT_IDS) <= set(REGISTRY)
    assert set(SERIES_IDS) <= set(REGISTRY)
    assert len(REGISTRY) == len(EXACT_IDS) + len(SERIES_IDS)
    for ident, desc in REGISTRY.items():
        assert desc.id == ident
        assert desc.mode in ("exact", "series")
        assert desc.statement  # reports must be self-describing


def test_sweep_eq1_all_verified():
    records = sweep(["eq1"], {"n": range(0, 6)})
    assert len(records) == 6
    assert all(r.status is Status.VERIFIED_EXACT for r in records)


def test_sweep_includes_reduction_point():
    records = sweep(["thm3.F"], {"n": [2], "r": [0], "s": [1]})
    assert len(records) == 1 and records[0].status is Status.VERIFIED_EXACT


def test_sweep_unknown_id_and_out_of_schema():
    with pytest.raises(KeyError):
        sweep(["nope"], {"n": [1]})
    with pytest.raises(ValueError):
        sweep(["eq1"], {"bogus": [1]})
    with pytest.raises(ValueError):
        run_identity("eq1", {"n": -1})
    with pytest.raises(ValueError):
        run_identity("eq1", {})


def test_refuted_printed_constant_record():
    rec = run_identity("hm.L", {"m": 2, "s": 0, "variant": "paper-printed"})
    assert rec.status is Status.REFUTED
    assert failure_count([rec]) == 1
    assert failure_count([rec], expect_refuted=["hm.L"]) == 0


def test_report_json_empty_and_roundtrip():
    assert report([], "json") == b"[]\n"
    records = sweep(["eq1"], {"n": range(0, 3)})
    payload = json.loads(report(records, "json"))
    assert [r["params"]["n"] for r in payload] == ["0", "1", "2"]
    assert all(r["wall_time"] is None for r in payload)
    assert {r["status"] for r in payload} == {"VERIFIED_EXACT"}
    assert all(r["statement"] for r in payload)


def test_report_csv_and_text_shapes():
    records = sweep(["eq1"], {"n": [2]})
    csv_lines = report(records, "csv").decode().strip().splitlines()
    assert len(csv_lines) == 2
    assert csv_lines[0].startswith("id,params,status")
    text = report(records, "text").decode()
    assert "status counts: VERIFIED_EXACT=1" in text
    with pytest.raises(ValueError):
        report(records, "yaml")


def test_reports_are_byte_identical_across_runs():
    settings = VerifySettings(tol=mpq(1, 10**20), prec=128)
    a = report(sweep(["thm5.L", "thm5.F"], {"s": range(-1, 2)}, settings), "json")
    b = report(sweep(["thm5.L", "thm5.F"], {"s": range(-1, 2)}, settings), "json")
    assert a == b
    c = report(sweep(["eq1"], {"n": range(4)}), "csv")
    d = report(sweep(["eq1"], {"n": range(4)}), "csv")
    assert c == d


def test_series_runner_retries_precision_until_conclusive():
    # prec 16 cannot reach tol 1e-30; the harness must escalate and succeed
    settings = VerifySettings(tol=mpq(1, 10**30), prec=16, max_prec=4096)
    rec = run_identity("lehmer.j", {"z": mpq(1, 2)}, settings)
    assert rec.status is Status.VERIFIED_NUMERIC
    assert rec.prec > 16
    # with escalation capped at the starting precision it stays inconclusive
    capped = VerifySettings(tol=mpq(1, 10**30), prec=16, max_prec=16)
    rec = run_identity("lehmer.j", {"z": mpq(1, 2)}, capped)
    assert rec.status is Status.INCONCLUSIVE


def test_default_records_for_single_identity():
    records = default_records(["lehmer.plain"])
    assert len(records) == 1
    assert records[0].status is Status.VERIFIED_NUMERIC


def test_gould_symbolic_points_run_exact():
    rec = run_identity("gould_check", {"n": 4, "z": "alpha^3"})
    assert rec.status is Status.VERIFIED_EXACT
    assert rec.params["z"] == "alpha^3"
    rec = run_identity("gould_check", {"n": 4, "z": "40/33"})
    assert rec.status is Status.VERIFIED_EXACT


def test_settings_validation():
    with pytest.raises(ValueError):
        VerifySettings(tol=0)
    with pytest.raises(ValueError):
        VerifySettings(prec=8)
