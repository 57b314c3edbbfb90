"""First-significant-digit extraction, unit-interval rescaling, digit
histograms, and reference digit laws (Benford, uniform, Poisson).

Digit extraction is pure arithmetic: scale |x| into [1, 10) by the power of
ten recovered from floor(log10), correct the two float boundary cases, and
take the integer part. No string formatting is involved, so results do not
depend on locale or repr behaviour.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .errors import DegenerateWindowError, DomainError, ConfigurationError


class DistKind(enum.Enum):
    BENFORD = "benford"
    UNIFORM = "uniform"
    POISSON = "poisson"


_DIGITS = np.arange(1, 10)


@dataclass(frozen=True)
class ReferenceDistribution:
    """A reference law assigning a probability to each first digit 1..9."""

    kind: DistKind
    kappa: float | None = None

    def __post_init__(self):
        if self.kind is DistKind.POISSON:
            if self.kappa is None or not (self.kappa > 0):
                raise ConfigurationError("poisson reference requires kappa > 0")
        elif self.kappa is not None:
            raise ConfigurationError("kappa is only meaningful for the poisson kind")

    @classmethod
    def benford(cls) -> "ReferenceDistribution":
        return cls(DistKind.BENFORD)

    @classmethod
    def uniform(cls) -> "ReferenceDistribution":
        return cls(DistKind.UNIFORM)

    @classmethod
    def poisson(cls, kappa: float) -> "ReferenceDistribution":
        return cls(DistKind.POISSON, kappa)

    def label(self) -> str:
        if self.kind is DistKind.POISSON:
            return f"poisson(kappa={self.kappa:g})"
        return self.kind.value


@dataclass(frozen=True)
class DigitHistogram:
    """Observed first-digit counts; skipped counts inputs with no significant
    digit (exact zeros)."""

    counts: tuple[int, ...]
    total: int
    skipped: int

    def __post_init__(self):
        if len(self.counts) != 9 or any(c < 0 for c in self.counts):
            raise ConfigurationError("counts must be 9 nonnegative integers")
        if sum(self.counts) != self.total:
            raise ConfigurationError("counts must sum to total")

    def frequencies(self) -> np.ndarray:
        if self.total == 0:
            raise DomainError("histogram with total = 0 has no frequencies")
        return np.asarray(self.counts, dtype=float) / self.total


def digits_of(values) -> np.ndarray:
    """Vectorized first significant digits; 0 marks values with none.

    Raises on non-finite entries.
    """
    a = np.asarray(values, dtype=float)
    if not np.all(np.isfinite(a)):
        raise DomainError("first significant digit undefined for non-finite input")
    mag = np.abs(a).ravel()
    out = np.zeros(mag.shape, dtype=np.int64)
    nz = mag > 0.0
    m = mag[nz]
    e = np.floor(np.log10(m))
    m = m / np.power(10.0, e)
    m = np.where(m >= 10.0, m / 10.0, m)
    m = np.where(m < 1.0, m * 10.0, m)
    out[nz] = m.astype(np.int64)
    return out.reshape(a.shape)


def first_significant_digit(x: float) -> int | None:
    """Leading nonzero decimal digit of |x|; None exactly when x = 0."""
    d = int(digits_of([x])[0])
    return d if d else None


def rescale_unit(values) -> np.ndarray:
    """Affine map of the data onto [0, 1]; order preserving.

    Constant input has no such map and raises DegenerateWindowError.
    """
    a = np.asarray(values, dtype=float)
    if a.size < 2:
        raise DegenerateWindowError("rescale_unit needs at least 2 values")
    if not np.all(np.isfinite(a)):
        raise DomainError("rescale_unit requires finite values")
    lo = a.min()
    hi = a.max()
    if hi == lo:
        raise DegenerateWindowError("all values equal; unit rescaling undefined")
    return (a - lo) / (hi - lo)


def histogram(values) -> DigitHistogram:
    """Tally first significant digits; exact zeros go to skipped."""
    d = digits_of(values)
    counts = np.bincount(d.ravel(), minlength=10)
    return DigitHistogram(
        counts=tuple(int(c) for c in counts[1:10]),
        total=int(counts[1:10].sum()),
        skipped=int(counts[0]),
    )


def probabilities(dist: ReferenceDistribution) -> np.ndarray:
    """P(D) for D = 1..9 under the reference law; sums to 1."""
    if dist.kind is DistKind.BENFORD:
        return np.log10(1.0 + 1.0 / _DIGITS)
    if dist.kind is DistKind.UNIFORM:
        return np.full(9, 1.0 / 9.0)
    # Poisson weights kappa^D / D!; the e^{-kappa} factor cancels on
    # normalizing over D = 1..9. Computed in log space to keep large kappa
    # exact-ish.
    logw = _DIGITS * math.log(dist.kappa) - np.array(
        [math.lgamma(d + 1.0) for d in _DIGITS]
    )
    w = np.exp(logw - logw.max())
    return w / w.sum()


def expected_counts(dist: ReferenceDistribution, n: int) -> np.ndarray:
    """E(D) = n P(D), kept real-valued."""
    if n < 1:
        raise DomainError("expected_counts requires n >= 1")
    return n * probabilities(dist)
