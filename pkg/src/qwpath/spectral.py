"""Jacobi matrix of a chain, its eigensystem, and the walk generator.

Detailed balance turns the (generally non-symmetric) transition matrix P into
the symmetric tridiagonal J = D^{1/2} P D^{-1/2} with zero diagonal; the walk
generator is I - J.  Everything downstream consumes the eigensystem of J.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from qwpath.bdchain import BDChain
from qwpath.tridiag import EigensolverError, tridiag_eigh

__all__ = [
    "JacobiMatrix",
    "SpectralData",
    "jacobi_matrix",
    "dense_matrix",
    "eigendecompose",
    "spectral_gap",
    "laplacian_apply",
]

# eigenvalue pairs closer than this are reported as degenerate rather than
# silently ordered; valid chains always have simple spectra
DEGENERACY_TOL = 1e-13


@dataclass(frozen=True)
class JacobiMatrix:
    """Symmetric tridiagonal matrix with zero diagonal, stored as one band."""

    n: int
    offdiag: np.ndarray  # offdiag[j] = entry (j, j+1) = sqrt(pR[j] * pL[j+1])


@dataclass(frozen=True)
class SpectralData:
    """Eigenvalues (descending) and orthonormal eigenvectors of a Jacobi matrix.

    ``vectors[l, j]`` is the j-th component of the l-th eigenvector; every
    eigenvector is normalized with a positive first component.
    """

    eigenvalues: np.ndarray
    vectors: np.ndarray

    @property
    def n(self) -> int:
        return self.eigenvalues.size - 1

    def as_dict(self) -> dict:
        """JSON-ready dict: eigenvalues plus the eigenvector matrix, row per vector."""
        return {
            "eigenvalues": [float(x) for x in self.eigenvalues],
            "eigenvectors": [[float(x) for x in row] for row in self.vectors],
        }


def jacobi_matrix(chain: BDChain) -> JacobiMatrix:
    """Band of D^{1/2} P D^{-1/2}: offdiag[j] = sqrt(pR[j] * pL[j+1])."""
    off = np.sqrt(chain.pR[:-1] * chain.pL[1:])
    off.setflags(write=False)
    return JacobiMatrix(n=chain.n, offdiag=off)


def dense_matrix(J: JacobiMatrix) -> np.ndarray:
    """Materialize J as a dense array (diagnostics and small-n cross-checks)."""
    A = np.zeros((J.n + 1, J.n + 1))
    idx = np.arange(J.n)
    A[idx, idx + 1] = J.offdiag
    A[idx + 1, idx] = J.offdiag
    return A


def eigendecompose(J: JacobiMatrix) -> SpectralData:
    """Full eigensystem of J, sorted descending, signs fixed at vertex 0.

    Raises EigensolverError on non-convergence or if two eigenvalues coincide
    numerically (closer than DEGENERACY_TOL), which a valid chain cannot
    produce.
    """
    w, V = tridiag_eigh(np.zeros(J.n + 1), J.offdiag)
    order = np.argsort(w)[::-1]
    w = w[order]
    V = V[:, order]
    if J.n >= 1 and np.min(-np.diff(w)) <= DEGENERACY_TOL:
        raise EigensolverError("spectrum is numerically degenerate")
    V[:, V[0] < 0] *= -1.0
    vectors = np.ascontiguousarray(V.T)
    w.setflags(write=False)
    vectors.setflags(write=False)
    return SpectralData(eigenvalues=w, vectors=vectors)


def spectral_gap(spec: SpectralData) -> float:
    """Distance 1 - lambda_1 from the top of the spectrum to the runner-up."""
    return float(1.0 - spec.eigenvalues[1])


def laplacian_apply(J: JacobiMatrix, x) -> np.ndarray:
    """Apply the walk generator I - J to a vector."""
    x = np.asarray(x, dtype=float)
    if x.shape != (J.n + 1,):
        raise ValueError(f"expected vector of length {J.n + 1}, got {x.shape}")
    jx = np.zeros_like(x)
    jx[:-1] += J.offdiag * x[1:]
    jx[1:] += J.offdiag * x[:-1]
    return x - jx
