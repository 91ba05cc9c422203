import numpy as np
import pytest
from hypothesis import given, strategies as st

from detic.channel import (ChannelQuadruple, capacity_region, rank_profile, reduce_channel,
                           rank_inequalities)
from detic.field import Field
from detic.fixtures import example_channel
from detic.linalg import rank
from detic.matrix import Matrix, ShapeError, random_matrix, vstack
from detic.oracle import generic_channel, random_channel
from detic.region import RateRegion, dof_region, region_equal

F7 = Field(7)
Q = Field.rational()


def identity_channel(F=F7):
    I, Z = Matrix.identity(F, 2), Matrix.zeros(F, 2, 2)
    return ChannelQuadruple(I, Z, Z, I)


def test_example_profile():
    prof = rank_profile(example_channel())
    assert (prof.r11, prof.r12, prof.r21, prof.r22) == (2, 2, 2, 3)
    assert (prof.a, prof.b, prof.cross1, prof.cross2) == (0, 0, 4, 4)


def test_example_region():
    reg = capacity_region(example_channel())
    assert region_equal(reg, RateRegion(((1, 0, 2), (1, 1, 3), (2, 1, 4))))
    assert [(v.R1, v.R2) for v in reg.vertices()] == [(0, 0), (2, 0), (1, 2), (0, 3)]
    assert reg.contains((1, 2)) and not reg.contains((2, 2))


def test_identity_and_scalar_channels():
    prof = rank_profile(identity_channel())
    assert (prof.r11, prof.r22, prof.r12, prof.r21, prof.cross1, prof.cross2) == (2, 2, 0, 0, 2, 2)
    assert capacity_region(identity_channel()).inequalities == ((1, 0, 2), (0, 1, 2))
    one = Matrix(Q, [[1]])
    assert capacity_region(ChannelQuadruple(one, one, one, one)).inequalities == ((1, 1, 1),)


def test_generic_rational_block_ranks(rng):
    ch = ChannelQuadruple(*(random_matrix(Q, 2, 2, rng) for _ in range(4)))
    prof = rank_profile(ch)
    assert prof.cross1 == prof.cross2 == 4


def test_shape_mismatch():
    with pytest.raises(ShapeError):
        ChannelQuadruple(Matrix.identity(F7, 2), Matrix.identity(F7, 3),
                         Matrix.identity(F7, 2), Matrix.identity(F7, 2))


def test_reduction_keeps_reduced_channel():
    ch = example_channel()
    red, sel = reduce_channel(ch)
    assert red == ch and ch.is_reduced()
    assert sel.rows1 == (0, 1) and sel.cols2 == (0, 1, 2)


def test_reduction_drops_duplicate_and_zero_rows():
    ch = example_channel()
    dup = ChannelQuadruple(vstack(ch.H11, ch.H11.row_slice(0, 1), Matrix.zeros(F7, 1, 2)),
                           vstack(ch.H12, ch.H12.row_slice(0, 1), Matrix.zeros(F7, 1, 3)),
                           ch.H21, ch.H22)
    assert not dup.is_reduced()
    red, sel = reduce_channel(dup)
    assert red.n1 == 2 and sel.rows1 == (0, 1)
    assert region_equal(capacity_region(dup), capacity_region(ch))


def test_transmit_is_linear():
    ch = example_channel()
    y1, y2 = ch.transmit((1, 0), (0, 0, 0))
    assert y1 == ch.H11.col(0) and y2 == ch.H21.col(0)


def test_reduced_form_bounds_on_example():
    ch = example_channel()
    assert region_equal(capacity_region(ch, "reduced"), capacity_region(ch, "ranks"))
    with pytest.raises(ValueError):
        capacity_region(ch, "other")


def channel_strategy(F):
    return st.integers(0, 2 ** 32).map(lambda s: random_channel(F, np.random.default_rng(s)))


@pytest.mark.parametrize("F", [Field(2), Field(3), Field(257), Q], ids=str)
@given(data=st.data())
def test_both_forms_agree(F, data):
    ch = data.draw(channel_strategy(F))
    assert region_equal(capacity_region(ch, "ranks"), capacity_region(ch, "reduced"))


@given(channel_strategy(Field(7)))
def test_swap_symmetry(ch):
    assert region_equal(capacity_region(ch.swapped()), capacity_region(ch).swapped())


@given(channel_strategy(Field(257)), st.integers(0, 2 ** 32))
def test_invertible_transforms_leave_region_unchanged(ch, seed):
    rng = np.random.default_rng(seed)
    F = ch.field

    def inv(n):
        while True:
            S = random_matrix(F, n, n, rng)
            if rank(S) == n:
                return S

    A1, A2, B1, B2 = inv(ch.n1), inv(ch.n2), inv(ch.m1), inv(ch.m2)
    moved = ChannelQuadruple(A1 @ ch.H11 @ B1, A1 @ ch.H12 @ B2,
                             A2 @ ch.H21 @ B1, A2 @ ch.H22 @ B2)
    assert region_equal(capacity_region(moved), capacity_region(ch))


@given(channel_strategy(Field(7)))
def test_reduction_preserves_ranks(ch):
    red, _ = reduce_channel(ch)
    assert red.is_reduced()
    a, b = rank_profile(ch), rank_profile(red)
    assert (a.r11, a.r12, a.r21, a.r22, a.cross1, a.cross2) == \
           (b.r11, b.r12, b.r21, b.r22, b.cross1, b.cross2)


@given(st.integers(0, 2 ** 32))
def test_generic_channels_match_dof_region(seed):
    rng = np.random.default_rng(seed)
    F = Field(257) if seed % 2 else Q
    dims = tuple(int(x) for x in rng.integers(1, 5, size=4))
    ch = generic_channel(F, rng, dims)
    assert region_equal(capacity_region(ch), dof_region(*ch.dims))
