import numpy as np
import pytest
from hypothesis import settings, strategies as st

from detic.field import Field
from detic.matrix import Matrix

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")

FIELDS = [Field(2), Field(3), Field(7), Field(257), Field.rational()]


@st.composite
def matrices(draw, field=None, max_dim=4, min_dim=0, shape=None):
    F = field or draw(st.sampled_from(FIELDS))
    n, m = shape or (draw(st.integers(min_dim, max_dim)), draw(st.integers(min_dim, max_dim)))
    hi = 6 if F.is_rational else F.p - 1
    lo = -6 if F.is_rational else 0
    rows = draw(st.lists(st.lists(st.integers(lo, hi), min_size=m, max_size=m),
                         min_size=n, max_size=n))
    return Matrix(F, rows, n, m)


@st.composite
def low_rank_matrices(draw, field=None, max_dim=4):
    """Products of two random factors, so rank deficiency is common."""
    F = field or draw(st.sampled_from(FIELDS))
    n, m = draw(st.integers(0, max_dim)), draw(st.integers(0, max_dim))
    r = draw(st.integers(0, max(0, min(n, m))))
    A = draw(matrices(F, shape=(n, r)))
    B = draw(matrices(F, shape=(r, m)))
    return A @ B


@pytest.fixture
def rng():
    return np.random.default_rng(12345)
