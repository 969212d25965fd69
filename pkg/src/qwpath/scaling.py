"""Distribution functions, Kolmogorov distances, and the size-sweep harness.

The headline experiment compares the two walks' time-averaged distribution
functions across a sweep of path sizes: with a spectral gap bounded away from
zero their rescaled CDFs collapse onto each other, while gapless families are
run and reported without a verdict.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import partial
from typing import Callable, Optional, Sequence

import numpy as np

from qwpath.bdchain import BDChain
from qwpath.ctqw import TimeAveragedDist, ctqw_time_average
from qwpath.spectral import eigendecompose, jacobi_matrix, spectral_gap
from qwpath.szegedy import dtqw_time_average

__all__ = [
    "StepCDF",
    "SizeRow",
    "ScalingReport",
    "step_cdf",
    "ks_distance",
    "arcsine_cdf",
    "reference_distance",
    "theorem1_experiment",
]


@dataclass(frozen=True)
class StepCDF:
    """Right-continuous step CDF on the vertices 0..n."""

    values: np.ndarray  # values[k] = sum of pbar(0..k)
    kind: str  # "ctqw" | "dtqw"

    def at(self, x: float) -> float:
        """Evaluate at a real argument: F(x) = values[floor(x)], 0 left of 0."""
        if x < 0:
            return 0.0
        k = min(int(math.floor(x)), self.values.size - 1)
        return float(self.values[k])


def step_cdf(pbar: TimeAveragedDist) -> StepCDF:
    """Prefix sums of a time-averaged distribution."""
    kind = "ctqw" if pbar.kind.startswith("ctqw") else "dtqw"
    return StepCDF(values=np.cumsum(pbar.probs), kind=kind)


def ks_distance(a: StepCDF, b: StepCDF) -> float:
    """Sup distance between two step CDFs on the same vertex set.

    Both CDFs jump only at integers, so the lattice maximum is the exact
    supremum over the reals.
    """
    if a.values.size != b.values.size:
        raise ValueError("CDFs live on different vertex sets")
    return float(np.max(np.abs(a.values - b.values)))


def arcsine_cdf(x: float) -> float:
    """CDF of the arcsine law on [0, 1]; arguments are clamped to the support."""
    x = min(1.0, max(0.0, x))
    return (2.0 / math.pi) * math.asin(math.sqrt(x))


def reference_distance(cdf: StepCDF, reference: Callable[[float], float]) -> float:
    """Lattice sup distance between a step CDF and a reference CDF at x = k/n."""
    n = cdf.values.size - 1
    grid = np.arange(n + 1) / n
    ref = np.array([reference(float(x)) for x in grid])
    return float(np.max(np.abs(cdf.values - ref)))


@dataclass(frozen=True)
class SizeRow:
    """One sweep entry; metric fields are None when the size failed."""

    n: int
    gap: Optional[float]
    ks_cd: Optional[float]
    ks_ref: Optional[float]
    error: Optional[str] = None

    @property
    def ok(self) -> bool:
        return self.error is None


@dataclass(frozen=True)
class ScalingReport:
    """Results of a size sweep for one chain family, sorted by n."""

    family: str
    rows: tuple[SizeRow, ...]

    @property
    def sizes(self) -> list[int]:
        return [r.n for r in self.rows]

    @property
    def gaps(self) -> list[Optional[float]]:
        return [r.gap for r in self.rows]

    @property
    def ks_cd(self) -> list[Optional[float]]:
        return [r.ks_cd for r in self.rows]


def _evaluate_size(
    chain_factory: Callable[[int], BDChain],
    reference: Optional[Callable[[float], float]],
    n: int,
) -> SizeRow:
    try:
        chain = chain_factory(n)
        spec = eigendecompose(jacobi_matrix(chain))
        f_c = step_cdf(ctqw_time_average(spec))
        f_d = step_cdf(dtqw_time_average(chain, spec))
        ks_ref = reference_distance(f_c, reference) if reference is not None else None
        return SizeRow(
            n=n,
            gap=spectral_gap(spec),
            ks_cd=ks_distance(f_c, f_d),
            ks_ref=ks_ref,
        )
    except Exception as exc:  # a failed size must not abort the sweep
        return SizeRow(n=n, gap=None, ks_cd=None, ks_ref=None, error=str(exc))


def theorem1_experiment(
    chain_factory: Callable[[int], BDChain],
    sizes: Sequence[int],
    family: str = "",
    reference: Optional[Callable[[float], float]] = None,
    workers: int = 1,
) -> ScalingReport:
    """Run the walk comparison over a sweep of path sizes.

    For each n this builds the chain, diagonalizes its Jacobi matrix, forms
    both closed-form time averages, and records the spectral gap, the
    Kolmogorov distance between the two CDFs, and optionally the distance of
    the continuous walk's CDF to a reference limit evaluated at x = k/n.
    Failures are recorded per size.  ``workers > 1`` fans the sizes out to a
    process pool; the factory and reference must then be picklable.
    """
    sizes = sorted(int(n) for n in sizes)
    if not sizes or sizes[0] < 2:
        raise ValueError("sizes must be integers >= 2")
    job = partial(_evaluate_size, chain_factory, reference)
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(job, sizes))
    else:
        rows = [job(n) for n in sizes]
    return ScalingReport(family=family, rows=tuple(rows))
