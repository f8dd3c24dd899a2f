"""Conversions between user-facing numbers and exact rationals."""

from __future__ import annotations

import math
from fractions import Fraction

MAX_DEN = 10**12


def as_fraction(x) -> Fraction:
    """Exact rational for ints/Fractions/decimal strings; floats go through repr.

    ``as_fraction(0.05) == Fraction(1, 20)``, which is what a user typing
    ``--lambda 0.05`` means.
    """
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("bool is not a number here")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, float):
        if not math.isfinite(x):
            raise ValueError(f"non-finite value {x}")
        return Fraction(repr(x))
    if isinstance(x, str):
        return Fraction(x)
    if isinstance(x, dict) and {"num", "den"} <= x.keys():
        return Fraction(x["num"], x["den"])
    raise TypeError(f"cannot convert {x!r} to a rational")


def ceil_fraction(x: float, max_den: int = MAX_DEN) -> Fraction:
    """A small-denominator rational that is >= x (used for thresholds we certify)."""
    f = Fraction(x).limit_denominator(max_den)
    if f < Fraction(x):
        f += Fraction(1, f.denominator)
    return f


def floor_fraction(x: float, max_den: int = MAX_DEN) -> Fraction:
    f = Fraction(x).limit_denominator(max_den)
    if f > Fraction(x):
        f -= Fraction(1, f.denominator)
    return f


def to_json(x: Fraction | int | None):
    if x is None:
        return None
    x = Fraction(x)
    return {"num": x.numerator, "den": x.denominator}
