from fractions import Fraction

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

settings.register_profile(
    "engine",
    derandomize=True,
    deadline=None,
    max_examples=25,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("engine")


def rationals(max_num: int = 6, max_den: int = 4, nonzero: bool = False):
    """Small exact rationals; denominators stay small so PBW straightening stays fast."""
    values = st.builds(
        Fraction,
        st.integers(min_value=-max_num, max_value=max_num),
        st.integers(min_value=1, max_value=max_den),
    )
    return values.filter(bool) if nonzero else values


@pytest.fixture(autouse=True)
def _isolated_settings(monkeypatch):
    from virasoro_engine.config import get_settings

    monkeypatch.delenv("VIRASORO_WINDOW", raising=False)
    monkeypatch.delenv("VIRASORO_KAC_BOUND", raising=False)
    monkeypatch.delenv("VIRASORO_MEMO_SIZE", raising=False)
    get_settings.cache_clear()
    yield
    get_settings.cache_clear()
