"""Validated container for the label vectors an audit operates on."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

UNFAVORABLE = 0
FAVORABLE = 1
UNPRIVILEGED = 0
PRIVILEGED = 1


class ValidationError(ValueError):
    """Input data violates a structural requirement.

    ``code`` is a stable machine-readable identifier so callers (notably the
    CLI) can distinguish failure modes without parsing the message.
    """

    def __init__(self, message: str, code: str = "invalid"):
        super().__init__(message)
        self.code = code


def _as_binary_vector(values, name: str) -> np.ndarray:
    arr = np.asarray(values)
    if arr.ndim != 1:
        raise ValidationError(f"{name} must be one-dimensional", code="bad_shape")
    if arr.size == 0:
        raise ValidationError(f"{name} is empty", code="empty")
    try:
        as_int = arr.astype(np.int64)
    except (TypeError, ValueError):
        raise ValidationError(f"{name} contains non-numeric values", code="non_binary")
    if not np.array_equal(as_int, arr):
        bad = int(np.nonzero(as_int != arr)[0][0])
        raise ValidationError(
            f"{name}[{bad}] = {arr[bad]!r} is not an integer label", code="non_binary"
        )
    bad_mask = (as_int != 0) & (as_int != 1)
    if bad_mask.any():
        bad = int(np.nonzero(bad_mask)[0][0])
        raise ValidationError(
            f"{name}[{bad}] = {as_int[bad]} is not a binary value (expected 0 or 1)",
            code="non_binary",
        )
    as_int.setflags(write=False)
    return as_int


@dataclass(frozen=True)
class AuditFrame:
    """Aligned predicted/corrected labels plus group membership.

    Label encoding is strict: 1 is the favorable outcome, 0 the unfavorable
    one; group 1 is the privileged group, group 0 the unprivileged group.
    Anything outside {0, 1} is rejected rather than coerced, since silent
    coercion would corrupt every downstream count.
    """

    y_predicted: np.ndarray
    y_corrected: np.ndarray
    group: np.ndarray
    y_true: np.ndarray | None = field(default=None)

    def __post_init__(self):
        pred = _as_binary_vector(self.y_predicted, "y_predicted")
        corr = _as_binary_vector(self.y_corrected, "y_corrected")
        grp = _as_binary_vector(self.group, "group")
        object.__setattr__(self, "y_predicted", pred)
        object.__setattr__(self, "y_corrected", corr)
        object.__setattr__(self, "group", grp)
        n = pred.size
        for name, vec in (("y_corrected", corr), ("group", grp)):
            if vec.size != n:
                raise ValidationError(
                    f"{name} has length {vec.size}, expected {n}", code="length_mismatch"
                )
        if self.y_true is not None:
            true = _as_binary_vector(self.y_true, "y_true")
            if true.size != n:
                raise ValidationError(
                    f"y_true has length {true.size}, expected {n}", code="length_mismatch"
                )
            object.__setattr__(self, "y_true", true)

    @property
    def n(self) -> int:
        return int(self.y_predicted.size)

    def __eq__(self, other) -> bool:
        if not isinstance(other, AuditFrame):
            return NotImplemented
        if not (
            np.array_equal(self.y_predicted, other.y_predicted)
            and np.array_equal(self.y_corrected, other.y_corrected)
            and np.array_equal(self.group, other.group)
        ):
            return False
        if (self.y_true is None) != (other.y_true is None):
            return False
        return self.y_true is None or np.array_equal(self.y_true, other.y_true)

    def with_corrected(self, y_corrected) -> "AuditFrame":
        """Return a copy with a different corrected-label vector."""
        return AuditFrame(
            y_predicted=self.y_predicted,
            y_corrected=y_corrected,
            group=self.group,
            y_true=self.y_true,
        )
