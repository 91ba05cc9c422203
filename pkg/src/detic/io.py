"""JSON formats for channels, regions and injected codec parameters."""

from __future__ import annotations

import hashlib
import json
from fractions import Fraction

from .channel import ChannelQuadruple
from .field import Field
from .linalg import InterferenceDecomposition
from .matrix import Matrix
from .region import RateRegion


class FormatError(ValueError):
    pass


def sha256_text(text: str) -> str:
    return hashlib.sha256(text.encode("utf-8")).hexdigest()


def _matrix(F: Field, data, nrows: int, ncols: int, name: str) -> Matrix:
    if not isinstance(data, list) or any(not isinstance(r, list) for r in data):
        raise FormatError(f"{name} must be a list of rows")
    try:
        return Matrix(F, data, nrows, ncols)
    except (ValueError, TypeError, ZeroDivisionError) as exc:
        raise FormatError(f"{name}: {exc}") from None


def channel_from_json(obj: dict) -> ChannelQuadruple:
    try:
        F = Field.from_json(obj["field"])
        m1, m2, n1, n2 = (int(obj[k]) for k in ("m1", "m2", "n1", "n2"))
        shapes = {"H11": (n1, m1), "H12": (n1, m2), "H21": (n2, m1), "H22": (n2, m2)}
        mats = {k: _matrix(F, obj[k], *s, k) for k, s in shapes.items()}
    except KeyError as exc:
        raise FormatError(f"missing key {exc}") from None
    return ChannelQuadruple(mats["H11"], mats["H12"], mats["H21"], mats["H22"])


def channel_to_json(ch: ChannelQuadruple) -> dict:
    return {"field": ch.field.to_json(), "m1": ch.m1, "m2": ch.m2, "n1": ch.n1, "n2": ch.n2,
            "H11": ch.H11.to_json(), "H12": ch.H12.to_json(),
            "H21": ch.H21.to_json(), "H22": ch.H22.to_json()}


def load_channel(text: str) -> ChannelQuadruple:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"invalid JSON: {exc}") from None
    if not isinstance(obj, dict):
        raise FormatError("channel file must hold a JSON object")
    return channel_from_json(obj)


def _frac(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def region_to_json(reg: RateRegion, provenance: dict | None = None) -> dict:
    return {
        "inequalities": [{"a1": a1, "a2": a2, "b": b} for a1, a2, b in reg.inequalities],
        "vertices": [[_frac(v.R1), _frac(v.R2)] for v in reg.vertices()],
        "provenance": provenance or {},
    }


def region_from_json(obj: dict) -> RateRegion:
    return RateRegion(tuple((i["a1"], i["a2"], i["b"]) for i in obj["inequalities"]))


def vertices_from_json(obj: dict) -> list[tuple[Fraction, Fraction]]:
    return [(Fraction(a), Fraction(b)) for a, b in obj["vertices"]]


def codec_injection(obj: dict, ch: ChannelQuadruple):
    """Spreading matrices and (optionally) decomposition bases from JSON.

    Returns ``(spreading, decomps)`` where ``decomps`` is ``None`` when the
    file carries no bases.
    """
    F = ch.field
    spreading = {}
    for k in ("E1c", "E1p", "E2c", "E2p"):
        if k in obj:
            rows = obj[k]
            spreading[k] = _matrix(F, rows, len(rows), len(rows[0]) if rows else 0, k)
    decomps = None
    if "dec12" in obj or "dec21" in obj:
        decomps = []
        for name, H in (("dec12", ch.H12), ("dec21", ch.H21)):
            b = obj[name]
            parts = []
            for k, n in (("U11", H.nrows), ("U10", H.nrows), ("V11", H.ncols), ("V10", H.ncols)):
                rows = b[k]
                parts.append(_matrix(F, rows, n, len(rows[0]) if rows else 0, f"{name}.{k}"))
            dec = InterferenceDecomposition.from_bases(H, *parts)
            dec.check()
            decomps.append(dec)
        decomps = tuple(decomps)
    return spreading, decomps
