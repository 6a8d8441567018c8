import re

import numpy as np
import pytest

from flipaudit import (
    AuditFrame,
    build_report,
    evaluate_fairness,
    parse_structured,
    render_structured,
    render_text,
)
from flipaudit.report import format_value, report_to_dict
from flipaudit.metrics import MetricValue

SECTION_ORDER = [
    "Dataset information",
    "Overall Metrics",
    "Flips by Groups",
    "Directional flip ratio",
    "Flip Proportionality Metrics",
    "Harmful Flip Proportionality Metrics",
]


def squash(text: str) -> str:
    return re.sub(r"\s+", " ", text)


@pytest.fixture(scope="module")
def reference_report(reference_frame):
    return build_report(reference_frame)


class TestBuildReport:
    def test_reference_verdict(self, reference_report):
        assert reference_report.verdict == "Disproportionate"

    def test_reference_counts(self, reference_report):
        r = reference_report
        assert (r.total_samples, r.group0_samples, r.group1_samples) == (1320, 799, 521)
        assert (r.total_flips, r.group0_flips, r.group1_flips) == (174, 136, 38)
        assert r.harmful_flips == 136

    def test_every_cell_carries_annotation_and_band(self, reference_report):
        d = report_to_dict(reference_report)
        for key, value in d.items():
            if isinstance(value, dict) and "annotation" in value:
                assert value["annotation"]
                assert value["band"] in ("Acceptable", "Moderate", "Disproportionate")

    def test_identity_frame_proportionate(self, identity_frame):
        r = build_report(identity_frame)
        assert r.verdict == "Proportionate"
        assert r.total_flips == 0
        assert r.dfr.metric.value == 1.0

    def test_one_group_all_harmful_gives_infinite_hdi(self):
        pred = [1, 1, 1, 0, 1, 0]
        corr = [0, 0, 1, 1, 1, 0]
        group = [0, 0, 0, 1, 1, 1]
        r = build_report(AuditFrame(pred, corr, group))
        assert r.hdi.metric.is_infinite
        assert r.hdi.metric.annotation == "One value is zero"
        assert r.verdict == "Disproportionate"


class TestRenderText:
    def test_contains_reference_hfp_line(self, reference_report):
        text = render_text(reference_report)
        line = next(l for l in text.splitlines() if l.startswith("HFP "))
        assert "HFP 0.78 Regular calculation" in squash(line)

    def test_no_flip_report_total(self, identity_frame):
        text = render_text(build_report(identity_frame))
        assert "Total flips" in text
        assert re.search(r"Total flips\s+0\b", text)

    def test_section_order(self, reference_report):
        text = render_text(reference_report)
        positions = [text.index(h) for h in SECTION_ORDER]
        assert positions == sorted(positions)

    def test_infinity_glyph(self, reference_report):
        assert "∞" in render_text(reference_report)

    def test_fairness_sections_rendered(self, reference_frame):
        pre = evaluate_fairness(reference_frame.y_predicted, reference_frame.group,
                                reference_frame.y_true)
        post = evaluate_fairness(reference_frame.y_corrected, reference_frame.group,
                                 reference_frame.y_true)
        text = render_text(build_report(reference_frame, fairness_pre=pre,
                                        fairness_post=post))
        assert "Fairness (pre-debias)" in text
        assert "Fairness (post-debias)" in text


class TestRenderStructured:
    def test_full_precision_value(self, reference_report):
        d = report_to_dict(reference_report)
        assert d["fr"]["value"] == pytest.approx(174 / 1320, abs=1e-15)
        assert d["schema_version"] == "1"

    def test_round_trip_identity(self, reference_report):
        assert parse_structured(render_structured(reference_report)) == reference_report

    def test_round_trip_with_fairness(self, reference_frame):
        pre = evaluate_fairness(reference_frame.y_predicted, reference_frame.group)
        r = build_report(reference_frame, fairness_pre=pre)
        assert parse_structured(render_structured(r)) == r

    def test_hdi_encoded_as_inf(self, reference_report):
        d = report_to_dict(reference_report)
        assert d["hdi"]["kind"] == "inf"
        assert d["hdi"]["value"] is None
        assert d["hdi"]["annotation"] == "One value is zero"

    def test_deterministic_output(self, reference_frame):
        a = render_structured(build_report(reference_frame))
        b = render_structured(build_report(reference_frame))
        assert a == b

    def test_all_eleven_metrics_present(self, reference_report):
        d = report_to_dict(reference_report)
        for key in ("fr", "dfr", "hfp", "frd", "hfpd", "di", "hdi",
                    "fd", "hfd", "rfd", "rhfd"):
            assert key in d


class TestFormatValue:
    @pytest.mark.parametrize("value,expected", [
        (174 / 1320, "0.13"),
        (38 / 521, "0.073"),
        (136 / 799 - 38 / 521, "0.097"),
        (2.333706, "2.33"),
        (1.0, "1.0"),
        (0.0, "0.0"),
    ])
    def test_display_rounding(self, value, expected):
        assert format_value(MetricValue.finite(value)) == expected

    def test_infinity(self):
        assert format_value(MetricValue.infinite("One value is zero")) == "∞"
