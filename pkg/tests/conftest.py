from fractions import Fraction

import pytest
from hypothesis import strategies as st

from qschwarz.series import PuiseuxSeries

small_rats = st.builds(Fraction, st.integers(-6, 6), st.integers(1, 4))


@st.composite
def series(draw, min_len=1, max_len=8, rams=(1, 2, 3, 6), lead_range=(-3, 3), nonzero_lead=False):
    ram = draw(st.sampled_from(rams))
    lead = draw(st.integers(*lead_range))
    coeffs = draw(st.lists(small_rats, min_size=min_len, max_size=max_len))
    if nonzero_lead:
        first = draw(small_rats.filter(lambda x: x != 0))
        coeffs = [first] + coeffs
    return PuiseuxSeries(ram, lead, coeffs)


@st.composite
def monic_series(draw, max_len=8):
    ram = draw(st.sampled_from((1, 2, 3)))
    tail = draw(st.lists(small_rats, min_size=0, max_size=max_len))
    return PuiseuxSeries(ram, 0, [1] + tail)


@pytest.fixture(autouse=True)
def _isolated_cache(tmp_path, monkeypatch):
    monkeypatch.setenv("QSCHWARZ_CACHE_DIR", str(tmp_path / "cache"))
    monkeypatch.setenv("QSCHWARZ_CONFIG", str(tmp_path / "missing-config.json"))
