"""Continuous-time quantum walk generated by I - J, started at vertex 0.

All quantities are spectral sums over the Jacobi eigensystem; nothing here
builds a matrix exponential.  The finite-horizon time average is evaluated in
closed form, so its O(1/T) approach to the limiting distribution is exact
arithmetic rather than quadrature error.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from qwpath.spectral import SpectralData

__all__ = [
    "CTQWDist",
    "TimeAveragedDist",
    "ctqw_amplitudes",
    "ctqw_distribution",
    "ctqw_time_average",
    "ctqw_time_average_finite",
]


@dataclass(frozen=True)
class CTQWDist:
    """Position distribution of the continuous-time walk at one time."""

    probs: np.ndarray
    t: float


@dataclass(frozen=True)
class TimeAveragedDist:
    """Averaged position distribution, either a closed form or a finite horizon.

    ``kind`` is one of ``ctqw_closed``, ``ctqw_finiteT``, ``dtqw_closed``,
    ``dtqw_empirical``; ``horizon`` is set iff the average is finite-horizon
    (a real time for the continuous walk, a step count for the discrete one).
    """

    probs: np.ndarray
    kind: str
    horizon: float | int | None = None


def ctqw_amplitudes(spec: SpectralData, t: float) -> np.ndarray:
    """Amplitude vector <k| exp(it(I - J)) |0>.

    The k-th entry is e^{it} * sum_l e^{-it lambda_l} v_l(k) v_l(0); the
    leading global phase is kept so the amplitudes match the dense matrix
    exponential exactly, not only up to phase.
    """
    phases = np.exp(1j * t * (1.0 - spec.eigenvalues))
    return (phases * spec.vectors[:, 0]) @ spec.vectors


def ctqw_distribution(spec: SpectralData, t: float) -> CTQWDist:
    """Squared moduli of the time-t amplitudes."""
    amps = ctqw_amplitudes(spec, t)
    return CTQWDist(probs=np.abs(amps) ** 2, t=float(t))


def ctqw_time_average(spec: SpectralData) -> TimeAveragedDist:
    """Limiting time average: pbar_C(j) = sum_l v_l(j)^2 v_l(0)^2.

    Valid because the eigenvalues are simple, so every cross term dephases.
    """
    V2 = spec.vectors**2
    probs = V2.T @ V2[:, 0]
    return TimeAveragedDist(probs=probs, kind="ctqw_closed")


def ctqw_time_average_finite(spec: SpectralData, T: float) -> TimeAveragedDist:
    """Exact average of the position distribution over times [0, T].

    Integrating the cross terms gives the kernel
    K(l, m) = (e^{-iT(lambda_l - lambda_m)} - 1) / (-iT(lambda_l - lambda_m))
    for l != m and 1 on the diagonal; the result is the closed-form limit plus
    an O(1/T) correction.
    """
    if T <= 0:
        raise ValueError("horizon T must be positive")
    lam = spec.eigenvalues
    delta = lam[:, None] - lam[None, :]
    off = ~np.eye(lam.size, dtype=bool)
    K = np.ones_like(delta, dtype=complex)
    K[off] = (np.exp(-1j * T * delta[off]) - 1.0) / (-1j * T * delta[off])
    W = spec.vectors * spec.vectors[:, [0]]  # W[l, j] = v_l(j) v_l(0)
    probs = np.sum((K @ W) * W, axis=0).real
    return TimeAveragedDist(probs=probs, kind="ctqw_finiteT", horizon=float(T))
