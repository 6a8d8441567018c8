import numpy as np
import pytest

from flipaudit import AuditFrame, REFERENCE_EXAMPLE, generate_scenario


def random_frame(rng, max_n=200, with_true=False) -> AuditFrame:
    """Random frame with both groups nonempty."""
    n = int(rng.integers(2, max_n + 1))
    while True:
        group = rng.integers(0, 2, size=n)
        if group.any() and not group.all():
            break
    return AuditFrame(
        y_predicted=rng.integers(0, 2, size=n),
        y_corrected=rng.integers(0, 2, size=n),
        group=group,
        y_true=rng.integers(0, 2, size=n) if with_true else None,
    )


@pytest.fixture(scope="session")
def reference_frame() -> AuditFrame:
    return generate_scenario(REFERENCE_EXAMPLE)


@pytest.fixture
def identity_frame() -> AuditFrame:
    pred = np.array([1, 0, 1, 0, 1, 1])
    return AuditFrame(
        y_predicted=pred,
        y_corrected=pred.copy(),
        group=np.array([0, 0, 0, 1, 1, 1]),
    )
