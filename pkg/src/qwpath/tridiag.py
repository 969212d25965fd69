"""Symmetric tridiagonal eigensolver: implicit-shift QL with Wilkinson shifts.

This is the numerical core of the package.  The matrices that arise here are
small-to-moderate (a few thousand rows at most) and tridiagonal, so a direct
QL iteration with accumulated plane rotations is both simple and adequate:
eigenvalues converge cubically and the rotation products keep the eigenvector
matrix orthogonal to working precision.
"""

from __future__ import annotations

import math

import numpy as np

__all__ = ["EigensolverError", "tridiag_eigh"]


class EigensolverError(RuntimeError):
    """QL iteration exceeded its sweep budget, or the spectrum degenerated."""


def tridiag_eigh(
    diag,
    offdiag,
    max_sweeps: int = 50,
    rel_tol: float = 1e-14,
) -> tuple[np.ndarray, np.ndarray]:
    """Full eigensystem of the symmetric tridiagonal matrix (diag, offdiag).

    Returns ``(w, V)`` where ``V[:, k]`` is the unit eigenvector belonging to
    ``w[k]``; eigenvalues come back in no particular order.  An off-diagonal
    entry is treated as negligible once it falls below ``rel_tol`` times the
    sum of its two neighbouring diagonal magnitudes.

    Raises EigensolverError if any single eigenvalue needs more than
    ``max_sweeps`` QL sweeps.
    """
    d = np.array(diag, dtype=float, copy=True)
    n = d.size
    if n == 0:
        raise ValueError("empty matrix")
    V = np.eye(n)
    if n == 1:
        return d, V
    off = np.asarray(offdiag, dtype=float)
    if off.shape != (n - 1,):
        raise ValueError(f"offdiag must have length {n - 1}, got {off.shape}")
    e = np.zeros(n)
    e[: n - 1] = off

    for low in range(n):
        for sweep in range(max_sweeps + 1):
            # locate the first negligible off-diagonal at or above `low`
            m = low
            while m < n - 1:
                dd = abs(d[m]) + abs(d[m + 1])
                if abs(e[m]) <= rel_tol * dd:
                    break
                m += 1
            if m == low:
                break
            if sweep == max_sweeps:
                raise EigensolverError(
                    f"eigenvalue {low} did not converge in {max_sweeps} QL sweeps"
                )
            # Wilkinson shift from the trailing 2x2 of the active block
            g = (d[low + 1] - d[low]) / (2.0 * e[low])
            r = math.hypot(g, 1.0)
            g = d[m] - d[low] + e[low] / (g + math.copysign(r, g))
            s = 1.0
            c = 1.0
            p = 0.0
            aborted = False
            for i in range(m - 1, low - 1, -1):
                f = s * e[i]
                b = c * e[i]
                r = math.hypot(f, g)
                e[i + 1] = r
                if r == 0.0:
                    # rotation annihilated early; restart the sweep search
                    d[i + 1] -= p
                    e[m] = 0.0
                    aborted = True
                    break
                s = f / r
                c = g / r
                g = d[i + 1] - p
                r = (d[i] - g) * s + 2.0 * c * b
                p = s * r
                d[i + 1] = g + p
                g = c * r - b
                col_i = V[:, i].copy()
                col_j = V[:, i + 1].copy()
                V[:, i + 1] = s * col_i + c * col_j
                V[:, i] = c * col_i - s * col_j
            if aborted:
                continue
            d[low] -= p
            e[low] = g
            e[m] = 0.0
    return d, V
