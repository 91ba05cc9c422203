"""Small worked instances used by the tests, the notebooks and ``demo``."""

from __future__ import annotations

from .channel import ChannelQuadruple
from .field import Field
from .linalg import InterferenceDecomposition
from .matrix import Matrix
from .netcode import Network

F7 = Field(7)


def example_channel() -> ChannelQuadruple:
    """2x2 / 3x3 channel over F7 with full-rank cross links."""
    return ChannelQuadruple.from_lists(
        F7,
        [[2, 0], [2, 3]],
        [[2, 1, 0], [2, 1, 1]],
        [[1, 0], [2, 3], [2, 3]],
        [[1, 0, 0], [2, 1, 0], [2, 1, 1]],
    )


def example_bases() -> dict:
    """Hand-picked bases for the two cross links of :func:`example_channel`."""
    return {
        "dec12": {"U11": [[1, 0], [1, 1]], "U10": [[], []],
                  "V11": [[2, 2], [1, 1], [0, 1]], "V10": [[1], [5], [0]]},
        "dec21": {"U11": [[1, 0], [2, 3], [2, 3]], "U10": [[0], [3], [4]],
                  "V11": [[1, 2], [0, 3]], "V10": [[], []]},
    }


def example_spreading() -> dict:
    """Spreading matrices for rates (1, 2) split as (1, 0, 1, 1)."""
    return {"E1c": [[4], [3]], "E2c": [[2], [3]], "E2p": [[3]]}


def example_decompositions(ch: ChannelQuadruple | None = None):
    ch = ch or example_channel()
    F = ch.field
    out = []
    for H, b in ((ch.H12, example_bases()["dec12"]), (ch.H21, example_bases()["dec21"])):
        out.append(InterferenceDecomposition.from_bases(
            H, *(Matrix(F, b[k]) for k in ("U11", "U10", "V11", "V10"))))
    return tuple(out)


def relay_network() -> Network:
    """Two sessions sharing one bottleneck ``m -> n`` plus a direct edge each."""
    return Network(
        ("s1", "s2", "m", "n", "t1", "t2"),
        (("s1", "t1"), ("s1", "m"), ("s2", "m"), ("s2", "t2"),
         ("m", "n"), ("n", "t1"), ("n", "t2")),
        "s1", "s2", "t1", "t2",
    )


def single_edge_network() -> Network:
    return Network(("s1", "s2", "t1", "t2"), (("s1", "t1"),), "s1", "s2", "t1", "t2")


def disjoint_network(width: int = 1) -> Network:
    """Two separate chains ``s_i -> a_i -> t_i`` with ``width`` parallel edges."""
    edges = []
    for i in (1, 2):
        edges += [(f"s{i}", f"a{i}")] * width + [(f"a{i}", f"t{i}")] * width
    return Network(("s1", "s2", "a1", "a2", "t1", "t2"), tuple(edges), "s1", "s2", "t1", "t2")
