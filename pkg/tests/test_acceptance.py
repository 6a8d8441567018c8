"""Acceptance suite: one test per release criterion, printing a pass line each.

Run with ``pytest tests/test_acceptance.py -s`` to see the per-criterion
summary lines.
"""

import json
import math
import time
import xml.etree.ElementTree as ET

import numpy as np
import pytest

import oracle
from conftest import random_frame
from flipaudit import (
    AuditFrame,
    Decision,
    REFERENCE_EXAMPLE,
    ThresholdConfig,
    build_report,
    classify,
    compute_proportionality,
    emit_chart,
    generate_scenario,
    make_sp_debiaser,
    parse_structured,
    render_structured,
    run_audit_pipeline,
    sp_equalizing_debiaser,
    split_by_group,
    statistical_parity_difference,
    summarize_flips,
)
from flipaudit import DebiasError, evaluate_fairness, ingest
from flipaudit.cli import main
from flipaudit.metrics import (
    BOTH_ZERO,
    MetricValue,
    NO_FLIPS,
    ONE_ZERO,
    ONLY_BENEFICIAL,
    ONLY_HARMFUL,
)
from flipaudit.tabular import ColumnMapping, write_frame


def announce(criterion: int, message: str):
    print(f"PASS criterion {criterion}: {message}")


def test_criterion_1_table_reproduction(tmp_path, capsys):
    start = time.perf_counter()
    csv_path = tmp_path / "reference.csv"
    assert main(["synth", "--scenario", "reference-example", "-o", str(csv_path)]) == 0
    code = main(["audit", "-i", str(csv_path), "--format", "structured"])
    elapsed = time.perf_counter() - start
    report = json.loads(capsys.readouterr().out)

    assert code == 3
    assert report["total_samples"] == 1320
    assert report["group0_samples"] == 799
    assert report["group1_samples"] == 521
    assert report["total_flips"] == 174
    assert report["group0_flips"] == 136
    assert report["group1_flips"] == 38

    displayed = {
        "fr": 0.13, "group0_fr": 0.17, "group1_fr": 0.073,
        "hfp": 0.78, "group0_hfp": 1.0, "group1_hfp": 0.0,
        "dfr": 0.28, "group0_dfr": 0.0,
        "frd": 0.097, "di": 2.33, "fd": 0.74, "rfd": 0.40,
        "hfpd": 1.0, "rhfd": 1.0,
    }
    for key, expected in displayed.items():
        cell = report[key]
        assert cell["kind"] == "finite", key
        assert abs(cell["value"] - expected) <= 0.005, key

    assert report["group1_dfr"]["kind"] == "inf"
    assert report["group1_dfr"]["annotation"] == "Only beneficial flips"
    assert report["group0_dfr"]["annotation"] == "Only harmful flips"
    assert report["group0_hfp"]["annotation"] == "Only harmful flips"
    assert report["group1_hfp"]["annotation"] == "No harmful flips"
    assert report["hdi"]["kind"] == "inf"
    assert report["hdi"]["annotation"] == "One value is zero"
    assert report["hfd"]["kind"] == "inf"
    assert report["hfd"]["annotation"] == "One value is zero"
    assert report["rhfd"]["annotation"] == "Regular calculation"

    assert elapsed < 1.0, f"took {elapsed:.3f}s"
    announce(1, f"table values reproduced in {elapsed:.3f}s")


def _frame(pred, corr, group):
    return AuditFrame(pred, corr, group)


def test_criterion_2_edge_case_matrix():
    # DFR degeneracies.
    only_beneficial = summarize_flips(_frame([0, 1, 0, 1], [1, 1, 0, 1], [0, 0, 1, 1]))
    assert only_beneficial.dfr.is_infinite
    assert only_beneficial.dfr.annotation == ONLY_BENEFICIAL

    only_harmful = summarize_flips(_frame([1, 1, 0, 1], [0, 1, 0, 1], [0, 0, 1, 1]))
    assert only_harmful.dfr == MetricValue.finite(0.0, ONLY_HARMFUL)

    identity = _frame([1, 0, 1, 0], [1, 0, 1, 0], [0, 0, 1, 1])
    no_flips = summarize_flips(identity)
    assert no_flips.dfr == MetricValue.finite(1.0, NO_FLIPS)

    # DI / HDI: infinity when exactly one group rate is zero, 1 when both are.
    g0_only = compute_proportionality(_frame([1, 1, 0, 0], [0, 1, 0, 0], [0, 0, 1, 1]))
    assert g0_only.di.is_infinite and g0_only.di.annotation == ONE_ZERO
    assert g0_only.hdi.is_infinite and g0_only.hdi.annotation == ONE_ZERO

    idle = compute_proportionality(identity)
    assert idle.di == MetricValue.finite(1.0, BOTH_ZERO)
    assert idle.hdi == MetricValue.finite(1.0, BOTH_ZERO)

    # HDI both-zero with flips present: all flips beneficial in both groups.
    benign = compute_proportionality(_frame([0, 1, 0, 1], [1, 1, 1, 1], [0, 0, 1, 1]))
    assert benign.hdi == MetricValue.finite(1.0, BOTH_ZERO)

    # FD / HFD conventions mirror DI / HDI.
    assert g0_only.fd.is_infinite and g0_only.fd.annotation == ONE_ZERO
    assert g0_only.hfd.is_infinite and g0_only.hfd.annotation == ONE_ZERO
    assert idle.fd == MetricValue.finite(1.0, BOTH_ZERO)
    assert idle.hfd == MetricValue.finite(1.0, BOTH_ZERO)

    # RFD / RHFD: 1 when one rate is zero, 0 when there are no flips.
    assert g0_only.rfd.value == pytest.approx(1.0)
    assert g0_only.rhfd.value == pytest.approx(1.0)
    assert idle.rfd == MetricValue.finite(0.0, NO_FLIPS)
    assert idle.rhfd == MetricValue.finite(0.0, NO_FLIPS)

    announce(2, "all degenerate-value conventions and annotations exact")


def test_criterion_3_oracle_equivalence():
    rng = np.random.default_rng(101)
    for i in range(1000):
        frame = random_frame(rng, max_n=200)
        expected = oracle.audit(
            frame.y_predicted.tolist(),
            frame.y_corrected.tolist(),
            frame.group.tolist(),
        )
        s = summarize_flips(frame)
        assert s.n_flips == expected["total"]["flips"]
        assert s.n_favorable == expected["total"]["fav"]
        assert s.n_unfavorable == expected["total"]["unfav"]
        assert abs(s.flip_rate.value - expected["fr"]) <= 1e-12
        assert abs(s.hfp.value - expected["hfp"]) <= 1e-12

        priv, unpriv = split_by_group(frame)
        assert abs(priv.summary.flip_rate.value - expected["fr1"]) <= 1e-12
        assert abs(unpriv.summary.flip_rate.value - expected["fr0"]) <= 1e-12

        p = compute_proportionality(frame)
        assert abs(p.frd.value - expected["frd"]) <= 1e-12
        assert abs(p.hfpd.value - expected["hfpd"]) <= 1e-12
        for name in ("di", "hdi", "fd", "hfd", "rfd", "rhfd"):
            kind, value = expected[name]
            mv = getattr(p, name)
            assert mv.kind == kind, (i, name)
            if kind == "finite":
                assert abs(mv.value - value) <= 1e-12, (i, name)
    announce(3, "1000 random frames match the brute-force oracle within 1e-12")


def test_criterion_4_invariant_suite():
    rng = np.random.default_rng(202)
    cfg = ThresholdConfig.default()
    for _ in range(300):
        frame = random_frame(rng, max_n=80)
        s = summarize_flips(frame)
        priv, unpriv = split_by_group(frame)

        # Partition and aggregation identities.
        assert s.n_favorable + s.n_unfavorable == s.n_flips
        assert priv.summary.n_flips + unpriv.summary.n_flips == s.n_flips
        lhs = frame.n * s.flip_rate.value
        rhs = (priv.size * priv.summary.flip_rate.value
               + unpriv.size * unpriv.summary.flip_rate.value)
        assert math.isclose(lhs, rhs, abs_tol=1e-9)

        # pred/corr swap law for DFR.
        swapped = summarize_flips(
            AuditFrame(frame.y_corrected, frame.y_predicted, frame.group)
        )
        if s.dfr.is_infinite:
            assert swapped.dfr.value == 0.0
        elif s.dfr.value == 0.0:
            assert swapped.dfr.is_infinite
        else:
            assert math.isclose(swapped.dfr.value, 1.0 / s.dfr.value)

        # Group-swap symmetry of all eight proportionality metrics.
        p = compute_proportionality(frame)
        q = compute_proportionality(
            AuditFrame(frame.y_predicted, frame.y_corrected, 1 - frame.group)
        )
        for name in ("frd", "hfpd", "di", "hdi", "fd", "hfd", "rfd", "rhfd"):
            a, b = getattr(p, name), getattr(q, name)
            assert a.kind == b.kind
            if a.kind == "finite":
                assert math.isclose(a.value, b.value, abs_tol=1e-12)

        # Bounds.
        assert 0.0 <= s.flip_rate.value <= 1.0
        assert 0.0 <= s.hfp.value <= 1.0
        assert 0.0 <= p.rfd.value <= 1.0 + 1e-12
        assert 0.0 <= p.rhfd.value <= 1.0 + 1e-12
        for mv in (p.di, p.hdi):
            if not mv.is_infinite:
                assert mv.value >= 1.0

    # Threshold monotonicity on a deterministic sweep.
    for name in cfg.entries:
        ideal = cfg.entry(name).ideal
        bands = [
            classify(name, MetricValue.finite(ideal + d), cfg)
            for d in np.linspace(0.0, 2.0, 101)
        ]
        assert bands == sorted(bands)
    announce(4, "partition, aggregation, symmetry, bounds, monotonicity hold")


def test_criterion_5_debiaser_contract():
    rng = np.random.default_rng(303)
    epsilon = 0.1
    contract_checked = minimal_checked = 0
    while contract_checked < 200:
        frame = random_frame(rng, max_n=60)
        labels, group = frame.y_predicted, frame.group
        try:
            corrected = sp_equalizing_debiaser(labels, group, epsilon,
                                               rng_seed=int(rng.integers(1 << 30)))
        except DebiasError:
            assert oracle.min_sp_flips(labels.tolist(), group.tolist(), epsilon) is None
            continue
        contract_checked += 1
        assert abs(statistical_parity_difference(corrected, group)) <= epsilon
        changed = np.flatnonzero(corrected != labels)
        sp = statistical_parity_difference(labels, group)
        if abs(sp) <= epsilon:
            assert changed.size == 0
        if frame.n <= 20:
            best = oracle.min_sp_flips(labels.tolist(), group.tolist(), epsilon)
            assert changed.size == best
            minimal_checked += 1

    while minimal_checked < 50:
        frame = random_frame(rng, max_n=20)
        labels, group = frame.y_predicted, frame.group
        try:
            corrected = sp_equalizing_debiaser(labels, group, epsilon)
        except DebiasError:
            assert oracle.min_sp_flips(labels.tolist(), group.tolist(), epsilon) is None
            continue
        best = oracle.min_sp_flips(labels.tolist(), group.tolist(), epsilon)
        assert int((corrected != labels).sum()) == best
        minimal_checked += 1
    announce(5, f"contract held on {contract_checked} frames, "
                f"minimality on {minimal_checked} desk-scale frames")


def test_criterion_6_pipeline_semantics():
    pred = np.array([1, 0, 1, 0])
    group = np.array([0, 0, 1, 1])
    fair = run_audit_pipeline(pred, group, make_sp_debiaser(0.1))
    assert fair.decision is Decision.NO_DEBIAS_NEEDED
    assert fair.report.total_flips == 0

    frame = generate_scenario(REFERENCE_EXAMPLE)
    outcome = run_audit_pipeline(
        frame.y_predicted, frame.group,
        lambda y, g: frame.y_corrected,
        y_true=frame.y_true,
    )
    assert outcome.decision is Decision.FAIR_BUT_DISPROPORTIONATE

    repeats = [
        render_structured(
            run_audit_pipeline(
                frame.y_predicted, frame.group,
                make_sp_debiaser(0.1, rng_seed=9),
                y_true=frame.y_true,
            ).report
        )
        for _ in range(2)
    ]
    assert repeats[0] == repeats[1]
    announce(6, "early exit, reference-scenario outcome, and determinism verified")


def test_criterion_7_gate_transition_on_reference_scenario():
    # The original classifier and its training data are not available, so the
    # gate transition is demonstrated on the synthetic reference scenario
    # instead: it fails the fairness gates before debiasing and passes them
    # after, exercising the same loop.
    frame = generate_scenario(REFERENCE_EXAMPLE)
    pre = evaluate_fairness(frame.y_predicted, frame.group, frame.y_true)
    post = evaluate_fairness(frame.y_corrected, frame.group, frame.y_true)
    assert not pre.passed
    assert post.passed
    assert abs(post.sp_difference) <= 0.1
    assert post.eo_difference <= 0.1
    announce(7, "fairness gates fail before and pass after debiasing on the "
                "reference scenario")


def test_criterion_8_io_and_rendering(tmp_path):
    frame = generate_scenario(REFERENCE_EXAMPLE)

    # synth -> CSV -> ingest round trip is exact.
    csv_path = tmp_path / "frame.csv"
    write_frame(frame, csv_path)
    assert ingest(csv_path, ColumnMapping(true_col="true")) == frame

    # Structured report round trip is identity and deterministic.
    report = build_report(frame)
    text = render_structured(report)
    assert parse_structured(text) == report
    assert render_structured(build_report(frame)) == text

    # SVG: well-formed, three panels, deterministic, clamp glyph present,
    # bar colors match the report's band classifications in row order.
    svg = emit_chart(report)
    assert svg == emit_chart(report)
    assert "∞" in svg
    root = ET.fromstring(svg)
    panels = [el for el in root.iter() if el.get("class") == "panel"]
    assert len(panels) == 3
    expected_cells = (
        [report.fr, report.hfp],
        [report.group0_fr, report.group0_hfp, report.group1_fr, report.group1_hfp],
        list(report.proportionality_cells().values()),
    )
    ns = "{http://www.w3.org/2000/svg}"
    for panel, cells in zip(panels, expected_cells):
        fills = [rect.get("fill") for rect in panel.iter(f"{ns}rect")]
        assert fills == [cell.band.color for cell in cells]
    announce(8, "CSV and structured round trips exact; SVG panels and "
                "band colors verified")
