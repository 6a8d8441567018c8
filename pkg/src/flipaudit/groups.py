"""Per-group flip statistics and the pairwise proportionality metrics.

The eight metrics compare the privileged and unprivileged groups' flip
rates and harmful flip proportions: absolute differences, max/min ratios,
gaps normalized by the overall flip rate, and gaps normalized by the sum
of the group rates. Degenerate cases follow fixed conventions (infinity
when exactly one rate is zero, neutral values when both are).
"""

from __future__ import annotations

from dataclasses import dataclass

from .frame import AuditFrame, PRIVILEGED, UNPRIVILEGED, ValidationError
from .metrics import (
    BOTH_ZERO,
    NO_FLIPS,
    ONE_ZERO,
    REGULAR,
    FlipSummary,
    MetricValue,
    summarize_flips,
)


@dataclass(frozen=True)
class GroupFlipSummary:
    group_id: int  # 0 unprivileged, 1 privileged
    size: int
    summary: FlipSummary


@dataclass(frozen=True)
class ProportionalityMetrics:
    frd: MetricValue
    hfpd: MetricValue
    di: MetricValue
    hdi: MetricValue
    fd: MetricValue
    hfd: MetricValue
    rfd: MetricValue
    rhfd: MetricValue


def split_by_group(frame: AuditFrame) -> tuple[GroupFlipSummary, GroupFlipSummary]:
    """Return (privileged, unprivileged) flip summaries; both groups required."""
    result = []
    for gid in (PRIVILEGED, UNPRIVILEGED):
        mask = frame.group == gid
        size = int(mask.sum())
        if size == 0:
            raise ValidationError(f"group {gid} has no instances", code="missing_group")
        result.append(GroupFlipSummary(group_id=gid, size=size, summary=summarize_flips(frame, mask)))
    return result[0], result[1]


def rate_difference(rate_priv: MetricValue, rate_unpriv: MetricValue) -> MetricValue:
    """Absolute difference of two group rates (serves FRD and HFPD)."""
    return MetricValue.finite(abs(rate_priv.value - rate_unpriv.value), REGULAR)


def disparity_index(rate_a: MetricValue, rate_b: MetricValue) -> MetricValue:
    """max/min ratio of two group rates (serves DI and HDI)."""
    a, b = rate_a.value, rate_b.value
    if a == 0.0 and b == 0.0:
        return MetricValue.finite(1.0, BOTH_ZERO)
    if a == 0.0 or b == 0.0:
        return MetricValue.infinite(ONE_ZERO)
    return MetricValue.finite(max(a, b) / min(a, b), REGULAR)


def flip_disparity(
    rate_priv: MetricValue, rate_unpriv: MetricValue, overall_fr: MetricValue
) -> MetricValue:
    """Between-group gap normalized by the overall flip rate (serves FD and HFD).

    When exactly one group rate is zero the result is +inf by convention,
    even though the raw formula would stay finite; when both are zero the
    result is 1.
    """
    a, b = rate_priv.value, rate_unpriv.value
    if a == 0.0 and b == 0.0:
        return MetricValue.finite(1.0, BOTH_ZERO)
    if a == 0.0 or b == 0.0:
        return MetricValue.infinite(ONE_ZERO)
    fr = overall_fr.value
    return MetricValue.finite(abs(a / fr - b / fr), REGULAR)


def relative_disparity(
    diff: MetricValue, rate_priv: MetricValue, rate_unpriv: MetricValue
) -> MetricValue:
    """Gap normalized by the sum of the group rates (serves RFD and RHFD)."""
    total = rate_priv.value + rate_unpriv.value
    if total == 0.0:
        return MetricValue.finite(0.0, NO_FLIPS)
    return MetricValue.finite(diff.value / total, REGULAR)


def compute_proportionality(frame: AuditFrame) -> ProportionalityMetrics:
    """Evaluate all eight proportionality metrics for a frame."""
    priv, unpriv = split_by_group(frame)
    overall = summarize_flips(frame)
    fr_p, fr_u = priv.summary.flip_rate, unpriv.summary.flip_rate
    hfp_p, hfp_u = priv.summary.hfp, unpriv.summary.hfp

    frd = rate_difference(fr_p, fr_u)
    hfpd = rate_difference(hfp_p, hfp_u)
    return ProportionalityMetrics(
        frd=frd,
        hfpd=hfpd,
        di=disparity_index(fr_p, fr_u),
        hdi=disparity_index(hfp_p, hfp_u),
        fd=flip_disparity(fr_p, fr_u, overall.flip_rate),
        hfd=flip_disparity(hfp_p, hfp_u, overall.flip_rate),
        rfd=relative_disparity(frd, fr_p, fr_u),
        rhfd=relative_disparity(hfpd, hfp_p, hfp_u),
    )
