"""Birth-death chains on the path graph with reflecting walls.

Vertices are 0..n.  A walker at j steps right with probability pR[j] and
left with pL[j] = 1 - pR[j]; the walls force pR[0] = pL[n] = 1.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = [
    "BDChain",
    "StationaryDist",
    "make_chain",
    "make_ehrenfest",
    "make_random",
    "transition_matrix",
    "stationary_distribution",
]


@dataclass(frozen=True)
class BDChain:
    """Nearest-neighbour chain on the path with n+1 vertices.

    Arrays have length n+1 and are read-only; pL + pR = 1 elementwise.
    """

    n: int
    pR: np.ndarray
    pL: np.ndarray


@dataclass(frozen=True)
class StationaryDist:
    """Stationary distribution pi together with its normalizing constant."""

    pi: np.ndarray
    cPi: float


def _freeze(a: np.ndarray) -> np.ndarray:
    a.setflags(write=False)
    return a


def make_chain(n: int, interior_pR) -> BDChain:
    """Chain with the given rightward probabilities at vertices 1..n-1.

    Interior probabilities must lie strictly inside (0, 1), which keeps the
    chain irreducible.  For n = 1 the interior is empty and the chain is the
    pure two-vertex reflector.
    """
    if n < 1:
        raise ValueError("need n >= 1 (a path has at least two vertices)")
    interior = np.atleast_1d(np.asarray(interior_pR, dtype=float))
    if interior.shape != (n - 1,):
        raise ValueError(
            f"expected {n - 1} interior probabilities for n={n}, got {interior.size}"
        )
    if interior.size and not np.all((interior > 0.0) & (interior < 1.0)):
        raise ValueError("interior step probabilities must lie strictly in (0, 1)")
    pR = np.empty(n + 1)
    pR[0] = 1.0
    pR[1:n] = interior
    pR[n] = 0.0
    pL = 1.0 - pR
    return BDChain(n=n, pR=_freeze(pR), pL=_freeze(pL))


def make_ehrenfest(n: int) -> BDChain:
    """Urn-exchange chain: pL[j] = j/n.  The walls are reflecting for free."""
    if n < 1:
        raise ValueError("need n >= 1")
    pL = np.arange(n + 1, dtype=float) / n
    pR = 1.0 - pL
    return BDChain(n=n, pR=_freeze(pR), pL=_freeze(pL))


def make_random(n: int, rng, low: float = 0.1, high: float = 0.9) -> BDChain:
    """Chain with interior pR drawn uniformly from [low, high].

    ``rng`` may be a seed or a numpy Generator; the draw is reproducible
    either way.
    """
    if not 0.0 < low <= high < 1.0:
        raise ValueError("need 0 < low <= high < 1")
    gen = np.random.default_rng(rng)
    return make_chain(n, gen.uniform(low, high, size=n - 1))


def transition_matrix(chain: BDChain) -> np.ndarray:
    """Row-stochastic transition matrix; P[j, k] = probability of j -> k."""
    n = chain.n
    P = np.zeros((n + 1, n + 1))
    idx = np.arange(n)
    P[idx, idx + 1] = chain.pR[:-1]
    P[idx + 1, idx] = chain.pL[1:]
    return P


def stationary_distribution(chain: BDChain) -> StationaryDist:
    """Stationary distribution via the product formula.

    The unnormalized weight of vertex j is the product of pR[0..j-1] over
    pL[1..j], accumulated as a running ratio so intermediate values stay near
    the final scale.  Raises OverflowError if the ratios still leave the
    double range (extremely biased chain at large n).
    """
    ratios = np.ones(chain.n + 1)
    ratios[1:] = chain.pR[:-1] / chain.pL[1:]
    with np.errstate(over="ignore"):
        w = np.cumprod(ratios)
    if not np.all(np.isfinite(w)):
        raise OverflowError("stationary weights overflowed double precision")
    c = float(w.sum())
    if not np.isfinite(c):
        raise OverflowError("stationary normalizer overflowed double precision")
    return StationaryDist(pi=_freeze(w / c), cPi=c)
