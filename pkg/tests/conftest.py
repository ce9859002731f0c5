import sys
from pathlib import Path

from hypothesis import HealthCheck, settings

sys.path.insert(0, str(Path(__file__).resolve().parent))

settings.register_profile(
    "deterministic",
    derandomize=True,
    deadline=None,
    max_examples=100,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("deterministic")


def boost(theta: float):
    """Real positive boost: the phase-free matrix of rapidity theta."""
    from compound_barriers import HyperbolicParams, from_polar

    return from_polar(HyperbolicParams(theta, 0.0, 0.0))
