"""O(n log n) real-arithmetic structured matrix-vector products.

A circulant product runs entirely through real transforms:

    C @ x = Q.T @ B @ Omega @ B.T @ Q @ x,      B = blockdiag(DCT, J DST J)

and the skew-circulant analog swaps the roles of Q and Q.T:

    S @ x = Q @ Btilde @ Sigma @ Btilde.T @ Q.T @ x.

Each product costs one DCT and one DST of about n/2 points per block
application (so three of each including the spectrum precomputation,
which operators amortize across calls) plus O(n) butterflies and core
multiplies.  A Toeplitz product is the sum of the two through the
splitting T = C + S.

Operators are immutable; two products with the same operator and input
are bitwise identical.
"""

from dataclasses import dataclass

import numpy as np

from .real_schur import (
    XPattern, apply_block_transform, apply_q, real_spectrum, xpattern_apply,
)
from .structured_matrices import CirculantCol, SkewCirculantCol, ToeplitzBands, cscs_split

__all__ = [
    "CirculantOperator", "ToeplitzOperator",
    "circulant_matvec", "skew_circulant_matvec", "toeplitz_matvec",
]


@dataclass(frozen=True)
class CirculantOperator:
    """Precomputed spectral core for a circulant or skew-circulant matrix."""

    n: int
    kind: str
    pattern: XPattern

    @classmethod
    def from_circulant(cls, col) -> "CirculantOperator":
        col = col.col if isinstance(col, CirculantCol) else col
        pattern = real_spectrum("circulant", col).expand()
        return cls(pattern.n, "circulant", pattern)

    @classmethod
    def from_skew_circulant(cls, col) -> "CirculantOperator":
        col = col.col if isinstance(col, SkewCirculantCol) else col
        pattern = real_spectrum("skew", col).expand()
        return cls(pattern.n, "skew", pattern)


@dataclass(frozen=True)
class ToeplitzOperator:
    """Toeplitz product T @ x = C @ x + S @ x via the CSCS splitting."""

    circulant_part: CirculantOperator
    skew_part: CirculantOperator

    @classmethod
    def from_bands(cls, T: ToeplitzBands) -> "ToeplitzOperator":
        c, s = cscs_split(T)
        return cls(CirculantOperator.from_circulant(c),
                   CirculantOperator.from_skew_circulant(s))

    @property
    def n(self) -> int:
        return self.circulant_part.n


def _check(op, x, kind):
    if op.kind != kind:
        raise ValueError(f"operator holds a {op.kind} spectrum, expected {kind}")
    x = np.asarray(x, dtype=np.float64)
    if x.shape != (op.n,):
        raise ValueError(f"expected a vector of length {op.n}, got shape {x.shape}")
    return x


def circulant_matvec(op: CirculantOperator, x) -> np.ndarray:
    """C @ x through Q, the DCT/DST block factor and the Omega core."""
    x = _check(op, x, "circulant")
    y = apply_block_transform("circulant", apply_q(x), transposed=True)
    y = xpattern_apply(op.pattern, 0.0, "none", y)
    return apply_q(apply_block_transform("circulant", y), transposed=True)


def skew_circulant_matvec(op: CirculantOperator, x) -> np.ndarray:
    """S @ x; mirror of the circulant product with Q and Q.T exchanged."""
    x = _check(op, x, "skew")
    y = apply_block_transform("skew", apply_q(x, transposed=True), transposed=True)
    y = xpattern_apply(op.pattern, 0.0, "none", y)
    return apply_q(apply_block_transform("skew", y))


def toeplitz_matvec(op: ToeplitzOperator, x) -> np.ndarray:
    """T @ x = C @ x + S @ x."""
    return (circulant_matvec(op.circulant_part, x)
            + skew_circulant_matvec(op.skew_part, x))
