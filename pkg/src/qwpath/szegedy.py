"""Szegedy's discrete-time quantum walk U = S C on the arc space of the path.

States live on 2(n+1) components indexed 2j + coin with coin L = 0, R = 1.
The coin reflects about (sqrt(pL_j), sqrt(pR_j)) at interior vertices and is
the identity at the walls; the flip-flop shift swaps the two directed arcs of
every edge.  The two wall components (0, L) and (n, R) are not arcs of the
path; the shift holds them fixed, and a walk started at (0, R) never
populates them.

One step is applied matrix-free in O(n); dense matrices appear only in tests.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from qwpath.bdchain import BDChain
from qwpath.ctqw import TimeAveragedDist
from qwpath.spectral import SpectralData
from qwpath.tridiag import EigensolverError

__all__ = [
    "CoinState",
    "SzegedyOperator",
    "LiftedEigenpair",
    "szegedy_operator",
    "initial_state",
    "vertex_distribution",
    "lift_vector",
    "apply_U",
    "dtqw_distribution",
    "iter_distributions",
    "dtqw_time_average_empirical",
    "dtqw_time_average_sweep",
    "dtqw_time_average",
    "lifted_eigenpairs",
    "dtqw_cdf_correction",
]


@dataclass(frozen=True)
class CoinState:
    """Walker state on the arc space: flat complex vector, index 2j + coin."""

    amps: np.ndarray

    @property
    def n(self) -> int:
        return self.amps.size // 2 - 1


@dataclass(frozen=True)
class SzegedyOperator:
    """One-step evolution U = S C for a fixed chain, applied matrix-free."""

    chain: BDChain
    sqrt_pL: np.ndarray
    sqrt_pR: np.ndarray

    @property
    def n(self) -> int:
        return self.chain.n


@dataclass(frozen=True)
class LiftedEigenpair:
    """Eigenvalue mu of U (unit modulus) and its eigenvector on the arc space.

    Interior vectors are kept unnormalized with squared norm 2(1 - lambda^2);
    the two edge-of-spectrum vectors are unit lifts.
    """

    mu: complex
    u: np.ndarray


def szegedy_operator(chain: BDChain) -> SzegedyOperator:
    sqL = np.sqrt(chain.pL)
    sqR = np.sqrt(chain.pR)
    sqL.setflags(write=False)
    sqR.setflags(write=False)
    return SzegedyOperator(chain=chain, sqrt_pL=sqL, sqrt_pR=sqR)


def initial_state(n: int) -> CoinState:
    """The walk's start state |0> (x) |R>."""
    amps = np.zeros(2 * (n + 1), dtype=complex)
    amps[1] = 1.0
    return CoinState(amps=amps)


def vertex_distribution(state: CoinState) -> np.ndarray:
    """Position distribution: both coin components summed per vertex."""
    a = state.amps.reshape(-1, 2)
    return np.abs(a[:, 0]) ** 2 + np.abs(a[:, 1]) ** 2


def lift_vector(chain: BDChain, v) -> np.ndarray:
    """Lift a vertex vector to the arc space: (j, c) component v(j) sqrt(p^c_j).

    At the walls this puts all the weight on the inward coin, so a unit v
    lifts to a unit arc vector.
    """
    v = np.asarray(v, dtype=float)
    if v.shape != (chain.n + 1,):
        raise ValueError(f"expected vector of length {chain.n + 1}, got {v.shape}")
    out = np.empty((chain.n + 1, 2))
    out[:, 0] = v * np.sqrt(chain.pL)
    out[:, 1] = v * np.sqrt(chain.pR)
    return out.reshape(-1)


def _coin(op: SzegedyOperator, a: np.ndarray) -> np.ndarray:
    """Reflection coins at interior vertices, identity at the walls."""
    s = op.sqrt_pL * a[:, 0] + op.sqrt_pR * a[:, 1]
    b = np.empty_like(a)
    b[:, 0] = 2.0 * s * op.sqrt_pL - a[:, 0]
    b[:, 1] = 2.0 * s * op.sqrt_pR - a[:, 1]
    b[0] = a[0]
    b[-1] = a[-1]
    return b


def _shift(a: np.ndarray) -> np.ndarray:
    """Flip-flop shift (j, R) <-> (j+1, L); wall components stay put."""
    out = np.empty_like(a)
    out[1:, 0] = a[:-1, 1]
    out[:-1, 1] = a[1:, 0]
    out[0, 0] = a[0, 0]
    out[-1, 1] = a[-1, 1]
    return out


def _step(op: SzegedyOperator, a: np.ndarray) -> np.ndarray:
    return _shift(_coin(op, a))


def apply_U(op: SzegedyOperator, state: CoinState) -> CoinState:
    """One step of the walk; norm-preserving."""
    a = state.amps.reshape(-1, 2)
    return CoinState(amps=_step(op, a).reshape(-1))


def dtqw_distribution(op: SzegedyOperator, t: int) -> np.ndarray:
    """Position distribution after t steps from |0> (x) |R>."""
    if t < 0:
        raise ValueError("step count must be nonnegative")
    a = initial_state(op.n).amps.reshape(-1, 2)
    for _ in range(t):
        a = _step(op, a)
    return np.abs(a[:, 0]) ** 2 + np.abs(a[:, 1]) ** 2


def iter_distributions(op: SzegedyOperator, T: int):
    """Yield the position distribution after t steps, for t = 0 .. T."""
    if T < 0:
        raise ValueError("step count must be nonnegative")
    a = initial_state(op.n).amps.reshape(-1, 2)
    for t in range(T + 1):
        yield np.abs(a[:, 0]) ** 2 + np.abs(a[:, 1]) ** 2
        if t < T:
            a = _step(op, a)


def dtqw_time_average_empirical(op: SzegedyOperator, T: int) -> TimeAveragedDist:
    """Mean position distribution over steps t = 0 .. T-1."""
    (result,) = dtqw_time_average_sweep(op, [T]).values()
    return result


def dtqw_time_average_sweep(op, horizons) -> dict[int, TimeAveragedDist]:
    """Empirical averages at several horizons from a single simulation pass."""
    horizons = sorted({int(T) for T in horizons})
    if not horizons or horizons[0] < 1:
        raise ValueError("horizons must be positive integers")
    a = initial_state(op.n).amps.reshape(-1, 2)
    acc = np.zeros(op.n + 1)
    out: dict[int, TimeAveragedDist] = {}
    pending = list(horizons)
    for t in range(horizons[-1]):
        acc += np.abs(a[:, 0]) ** 2 + np.abs(a[:, 1]) ** 2
        if t + 1 == pending[0]:
            T = pending.pop(0)
            out[T] = TimeAveragedDist(probs=acc / T, kind="dtqw_empirical", horizon=T)
        a = _step(op, a)
    return out


def dtqw_time_average(chain: BDChain, spec: SpectralData) -> TimeAveragedDist:
    """Limiting time average of the discrete walk, in closed form.

    pbar_D(j) =   1/2 v_0(j)^2 v_0(0)^2 + 1/2 v_n(j)^2 v_n(0)^2
                + 1/2 sum_l v_l(j)^2 v_l(0)^2
                + 1/2 sum_{0<l<n} [pR_{j-1} v_l(j-1)^2 - lambda_l^2 v_l(j)^2
                                   + pL_{j+1} v_l(j+1)^2] v_l(0)^2 / (1 - lambda_l^2)

    with out-of-range terms treated as zero.  Tiny negative entries from
    cancellation are clamped to 0.
    """
    lam = spec.eigenvalues
    V2 = spec.vectors**2
    w0 = V2[:, 0]
    probs = 0.5 * (V2[0] * w0[0] + V2[-1] * w0[-1] + V2.T @ w0)
    n = spec.n
    if n >= 2:
        li = lam[1:-1]
        denom = 1.0 - li**2
        if np.any(denom <= 1e-13):
            raise EigensolverError("interior eigenvalue too close to +-1")
        Vi = V2[1:-1]
        bracket = -(li**2)[:, None] * Vi
        bracket[:, 1:] += chain.pR[:-1] * Vi[:, :-1]
        bracket[:, :-1] += chain.pL[1:] * Vi[:, 1:]
        probs = probs + 0.5 * ((w0[1:-1] / denom) @ bracket)
    if np.min(probs) < -1e-12:
        raise ArithmeticError("closed-form average went negative beyond roundoff")
    probs = np.maximum(probs, 0.0)
    return TimeAveragedDist(probs=probs, kind="dtqw_closed")


def lifted_eigenpairs(chain: BDChain, spec: SpectralData) -> list[LiftedEigenpair]:
    """The 2n eigenpairs of U reachable from the walk's invariant subspace.

    The extreme eigenvectors are the unit lifts of v_0 (mu = 1) and v_n
    (mu = -1); every interior l contributes the pair
    mu = exp(+-i arccos lambda_l), u = lift(v_l) - mu S lift(v_l).
    """
    n = spec.n
    pairs = [
        LiftedEigenpair(mu=1.0 + 0.0j, u=lift_vector(chain, spec.vectors[0]).astype(complex)),
        LiftedEigenpair(mu=-1.0 + 0.0j, u=lift_vector(chain, spec.vectors[-1]).astype(complex)),
    ]
    for ell in range(1, n):
        vbar = lift_vector(chain, spec.vectors[ell])
        svbar = _shift(vbar.reshape(-1, 2)).reshape(-1)
        theta = math.acos(min(1.0, max(-1.0, float(spec.eigenvalues[ell]))))
        for sign in (1.0, -1.0):
            mu = complex(math.cos(theta), sign * math.sin(theta))
            pairs.append(LiftedEigenpair(mu=mu, u=vbar - mu * svbar))
    return pairs


def dtqw_cdf_correction(chain: BDChain, spec: SpectralData, k: int) -> float:
    """Gap between the two walks' distribution functions at vertex k.

    Adding the returned value to the continuous walk's CDF at k gives the
    discrete walk's CDF at k exactly; the term is an interior spectral sum
    and vanishes for n = 1.
    """
    n = spec.n
    if not 0 <= k <= n - 1:
        raise ValueError(f"k must be in [0, {n - 1}], got {k}")
    if n < 2:
        return 0.0
    lam = spec.eigenvalues[1:-1]
    V2 = spec.vectors[1:-1] ** 2
    w0 = V2[:, 0]
    term = -chain.pR[k] * V2[:, k] + chain.pL[k + 1] * V2[:, k + 1]
    return float(0.5 * np.sum(term * w0 / (1.0 - lam**2)))
