"""
Time-Frequency Model Module - Fractional DFT Toolkit

Real 2x2 algebra on (t, f) coordinates. A quadratic phase multiply is the
shear f' = q t + f, the DFT is the quarter rotation t -> f, f -> -t, and the
five-step chirp product A(q1) B^-1 A(q2) B A(q1) collapses to the rotation by
alpha. Nothing here touches sample data, so it serves as an analytic oracle
for the sample-space transforms.
"""

import math
from typing import List, Sequence

import numpy as np
import numpy.typing as npt

from frdft.modules.fractional_transform import DEFAULT_CONDITIONING_BOUND, chirp_rates

TF2Matrix = npt.NDArray[np.float64]


def shear(q: float) -> TF2Matrix:
    """A(q) = [[1, 0], [q, 1]]"""
    return np.array([[1.0, 0.0], [q, 1.0]])


def quarter_rotation() -> TF2Matrix:
    """B = [[0, -1], [1, 0]]"""
    return np.array([[0.0, -1.0], [1.0, 0.0]])


def inverse_quarter_rotation() -> TF2Matrix:
    """B^-1 = [[0, 1], [-1, 0]]"""
    return np.array([[0.0, 1.0], [-1.0, 0.0]])


def rotation(alpha: float) -> TF2Matrix:
    c, s = math.cos(alpha), math.sin(alpha)
    return np.array([[c, -s], [s, c]])


def garcia_factors(alpha: float,
                   conditioning_bound: float = DEFAULT_CONDITIONING_BOUND) -> List[TF2Matrix]:
    """
    The five factors in the order they act on a point:
    A(q1), B, A(q2), B^-1, A(q1).
    """
    rates = chirp_rates(alpha, conditioning_bound)
    return [
        shear(rates.q1),
        quarter_rotation(),
        shear(rates.q2),
        inverse_quarter_rotation(),
        shear(rates.q1),
    ]


def compose_garcia(alpha: float,
                   conditioning_bound: float = DEFAULT_CONDITIONING_BOUND) -> TF2Matrix:
    """
    Multiply out A(q1) B^-1 A(q2) B A(q1).

    The product is [[1 - q1 q2, -q2], [q1 (2 - q1 q2), 1 - q1 q2]], which
    equals rotation(alpha) once q1 = tan(alpha/2) and q2 = sin(alpha).
    """
    result = np.eye(2)
    for factor in garcia_factors(alpha, conditioning_bound):
        result = factor @ result
    return result


def apply_tf(m: TF2Matrix, point: Sequence[float]) -> npt.NDArray[np.float64]:
    """Map a (t, f) point."""
    return np.asarray(m, dtype=np.float64) @ np.asarray(point, dtype=np.float64)


def determinant(m: TF2Matrix) -> float:
    m = np.asarray(m, dtype=np.float64)
    return float(m[0, 0] * m[1, 1] - m[0, 1] * m[1, 0])
