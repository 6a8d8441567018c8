"""Proportionality report assembly and rendering.

The report mirrors the structure of the audit output tables: dataset
information, overall flip metrics, per-group flips, directional flip
ratios, then the flip and harmful-flip proportionality metric families.
Every metric cell keeps its full-precision value, its annotation, and its
threshold band; rendering handles display rounding.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from .fairness import FairnessResult
from .frame import AuditFrame
from .groups import compute_proportionality, split_by_group
from .metrics import MetricValue, summarize_flips
from .thresholds import Band, ThresholdConfig, classify

SCHEMA_VERSION = "1"

VERDICT_BY_BAND = {
    Band.ACCEPTABLE: "Proportionate",
    Band.MODERATE: "ReviewRequired",
    Band.DISPROPORTIONATE: "Disproportionate",
}

# Aliases seen elsewhere for the same metrics: HFPD ~ "HFRD", RFD ~ "NFD",
# RHFD ~ "NHFD".
METRIC_ALIASES = {"HFPD": "HFRD", "RFD": "NFD", "RHFD": "NHFD"}


@dataclass(frozen=True)
class MetricCell:
    metric: MetricValue
    band: Band


@dataclass(frozen=True)
class ProportionalityReport:
    schema_version: str
    total_samples: int
    group0_samples: int
    group1_samples: int
    total_flips: int
    harmful_flips: int
    fr: MetricCell
    hfp: MetricCell
    group0_flips: int
    group0_harmful_flips: int
    group0_fr: MetricCell
    group0_hfp: MetricCell
    group1_flips: int
    group1_harmful_flips: int
    group1_fr: MetricCell
    group1_hfp: MetricCell
    dfr: MetricCell
    group0_dfr: MetricCell
    group1_dfr: MetricCell
    frd: MetricCell
    di: MetricCell
    fd: MetricCell
    rfd: MetricCell
    hfpd: MetricCell
    hdi: MetricCell
    hfd: MetricCell
    rhfd: MetricCell
    fairness_pre: FairnessResult | None
    fairness_post: FairnessResult | None
    verdict: str

    def proportionality_cells(self) -> dict[str, MetricCell]:
        return {
            "FRD": self.frd,
            "DI": self.di,
            "FD": self.fd,
            "RFD": self.rfd,
            "HFPD": self.hfpd,
            "HDI": self.hdi,
            "HFD": self.hfd,
            "RHFD": self.rhfd,
        }


def build_report(
    frame: AuditFrame,
    config: ThresholdConfig | None = None,
    fairness_pre: FairnessResult | None = None,
    fairness_post: FairnessResult | None = None,
) -> ProportionalityReport:
    """Audit a frame and assemble the full banded report."""
    config = config or ThresholdConfig.default()
    overall = summarize_flips(frame)
    priv, unpriv = split_by_group(frame)
    prop = compute_proportionality(frame)

    def cell(name: str, value: MetricValue) -> MetricCell:
        return MetricCell(metric=value, band=classify(name, value, config))

    prop_cells = {
        "FRD": cell("FRD", prop.frd),
        "DI": cell("DI", prop.di),
        "FD": cell("FD", prop.fd),
        "RFD": cell("RFD", prop.rfd),
        "HFPD": cell("HFPD", prop.hfpd),
        "HDI": cell("HDI", prop.hdi),
        "HFD": cell("HFD", prop.hfd),
        "RHFD": cell("RHFD", prop.rhfd),
    }
    worst = max(c.band for c in prop_cells.values())

    return ProportionalityReport(
        schema_version=SCHEMA_VERSION,
        total_samples=frame.n,
        group0_samples=unpriv.size,
        group1_samples=priv.size,
        total_flips=overall.n_flips,
        harmful_flips=overall.n_unfavorable,
        fr=cell("FR", overall.flip_rate),
        hfp=cell("HFP", overall.hfp),
        group0_flips=unpriv.summary.n_flips,
        group0_harmful_flips=unpriv.summary.n_unfavorable,
        group0_fr=cell("FR", unpriv.summary.flip_rate),
        group0_hfp=cell("HFP", unpriv.summary.hfp),
        group1_flips=priv.summary.n_flips,
        group1_harmful_flips=priv.summary.n_unfavorable,
        group1_fr=cell("FR", priv.summary.flip_rate),
        group1_hfp=cell("HFP", priv.summary.hfp),
        dfr=cell("DFR", overall.dfr),
        group0_dfr=cell("DFR", unpriv.summary.dfr),
        group1_dfr=cell("DFR", priv.summary.dfr),
        frd=prop_cells["FRD"],
        di=prop_cells["DI"],
        fd=prop_cells["FD"],
        rfd=prop_cells["RFD"],
        hfpd=prop_cells["HFPD"],
        hdi=prop_cells["HDI"],
        hfd=prop_cells["HFD"],
        rhfd=prop_cells["RHFD"],
        fairness_pre=fairness_pre,
        fairness_post=fairness_post,
        verdict=VERDICT_BY_BAND[worst],
    )


def format_value(value: MetricValue) -> str:
    """Display rounding: 2 decimals for |v| >= 0.1, 3 below; infinity glyph."""
    if value.is_infinite:
        return "∞"
    v = value.value
    digits = 2 if abs(v) >= 0.1 else 3
    s = f"{v:.{digits}f}".rstrip("0")
    if s.endswith("."):
        s += "0"
    return s


def render_text(report: ProportionalityReport) -> str:
    """Plain-text sectioned table: metric, value, short analysis, band."""

    lines: list[str] = []

    def header(title: str):
        lines.append(title)
        lines.append("-" * len(title))

    def count_row(label: str, value: int):
        lines.append(f"{label:<22} {value}")

    def metric_row(label: str, c: MetricCell):
        lines.append(
            f"{label:<22} {format_value(c.metric):>6}  "
            f"{c.metric.annotation:<24} {c.band.label}"
        )

    header("Dataset information")
    count_row("Total samples", report.total_samples)
    count_row("Group 0 samples", report.group0_samples)
    count_row("Group 1 samples", report.group1_samples)
    lines.append("")

    header("Overall Metrics")
    count_row("Total flips", report.total_flips)
    metric_row("FR", report.fr)
    count_row("Harmful Flips", report.harmful_flips)
    metric_row("HFP", report.hfp)
    lines.append("")

    header("Flips by Groups")
    count_row("Group 0 Flips", report.group0_flips)
    metric_row("Group 0 FR", report.group0_fr)
    count_row("Group 0 Harmful flips", report.group0_harmful_flips)
    metric_row("Group 0 HFP", report.group0_hfp)
    count_row("Group 1 Flips", report.group1_flips)
    metric_row("Group 1 FR", report.group1_fr)
    count_row("Group 1 Harmful flips", report.group1_harmful_flips)
    metric_row("Group 1 HFP", report.group1_hfp)
    lines.append("")

    header("Directional flip ratio")
    metric_row("DFR", report.dfr)
    metric_row("Group 0 DFR", report.group0_dfr)
    metric_row("Group 1 DFR", report.group1_dfr)
    lines.append("")

    header("Flip Proportionality Metrics")
    metric_row("FRD", report.frd)
    metric_row("DI", report.di)
    metric_row("FD", report.fd)
    metric_row("RFD", report.rfd)
    lines.append("")

    header("Harmful Flip Proportionality Metrics")
    metric_row("HFPD", report.hfpd)
    metric_row("HDI", report.hdi)
    metric_row("HFD", report.hfd)
    metric_row("RHFD", report.rhfd)
    lines.append("")

    for tag, fres in (("pre", report.fairness_pre), ("post", report.fairness_post)):
        if fres is None:
            continue
        header(f"Fairness ({tag}-debias)")
        lines.append(f"{'SP difference':<22} {fres.sp_difference:+.3f}  "
                     f"{'pass' if fres.sp_pass else 'fail'}")
        if fres.eo_difference is not None:
            lines.append(f"{'EO difference':<22} {fres.eo_difference:.3f}  "
                         f"{'pass' if fres.eo_pass else 'fail'}")
        if fres.note:
            lines.append(f"  note: {fres.note}")
        lines.append("")

    lines.append(f"Verdict: {report.verdict}")
    lines.append("Legend: HFPD also known as HFRD; RFD as NFD; RHFD as NHFD.")
    return "\n".join(lines) + "\n"


def _cell_to_dict(c: MetricCell) -> dict:
    return {
        "kind": c.metric.kind,
        "value": c.metric.value,
        "display": format_value(c.metric),
        "annotation": c.metric.annotation,
        "band": c.band.label,
    }


def _cell_from_dict(d: dict) -> MetricCell:
    if d["kind"] == "inf":
        mv = MetricValue.infinite(d["annotation"])
    else:
        mv = MetricValue.finite(d["value"], d["annotation"])
    return MetricCell(metric=mv, band=Band.from_label(d["band"]))


def _fairness_to_dict(f: FairnessResult | None) -> dict | None:
    if f is None:
        return None
    return {
        "sp_difference": f.sp_difference,
        "eo_difference": f.eo_difference,
        "fair_interval": list(f.fair_interval),
        "sp_pass": f.sp_pass,
        "eo_pass": f.eo_pass,
        "note": f.note,
    }


def _fairness_from_dict(d: dict | None) -> FairnessResult | None:
    if d is None:
        return None
    return FairnessResult(
        sp_difference=d["sp_difference"],
        eo_difference=d["eo_difference"],
        fair_interval=tuple(d["fair_interval"]),
        sp_pass=d["sp_pass"],
        eo_pass=d["eo_pass"],
        note=d.get("note", ""),
    )


_CELL_FIELDS = [
    "fr", "hfp",
    "group0_fr", "group0_hfp", "group1_fr", "group1_hfp",
    "dfr", "group0_dfr", "group1_dfr",
    "frd", "di", "fd", "rfd",
    "hfpd", "hdi", "hfd", "rhfd",
]
_COUNT_FIELDS = [
    "total_samples", "group0_samples", "group1_samples",
    "total_flips", "harmful_flips",
    "group0_flips", "group0_harmful_flips",
    "group1_flips", "group1_harmful_flips",
]


def report_to_dict(report: ProportionalityReport) -> dict:
    out: dict = {"schema_version": report.schema_version}
    for name in _COUNT_FIELDS:
        out[name] = getattr(report, name)
    for name in _CELL_FIELDS:
        out[name] = _cell_to_dict(getattr(report, name))
    out["fairness_pre"] = _fairness_to_dict(report.fairness_pre)
    out["fairness_post"] = _fairness_to_dict(report.fairness_post)
    out["verdict"] = report.verdict
    return out


def report_from_dict(data: dict) -> ProportionalityReport:
    kwargs: dict = {"schema_version": data["schema_version"]}
    for name in _COUNT_FIELDS:
        kwargs[name] = data[name]
    for name in _CELL_FIELDS:
        kwargs[name] = _cell_from_dict(data[name])
    kwargs["fairness_pre"] = _fairness_from_dict(data.get("fairness_pre"))
    kwargs["fairness_post"] = _fairness_from_dict(data.get("fairness_post"))
    kwargs["verdict"] = data["verdict"]
    return ProportionalityReport(**kwargs)


def render_structured(report: ProportionalityReport) -> str:
    """JSON with fixed key order; infinities appear as kind "inf"."""
    return json.dumps(report_to_dict(report), indent=2) + "\n"


def parse_structured(text: str) -> ProportionalityReport:
    return report_from_dict(json.loads(text))
