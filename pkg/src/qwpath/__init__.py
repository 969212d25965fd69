"""Quantum walks on the path graph driven by birth-death chains.

The pipeline: a chain with reflecting walls determines a symmetric
tridiagonal Jacobi matrix; its eigensystem gives closed forms for the
time-averaged distributions of both the continuous-time walk and Szegedy's
discrete-time walk, which the `scaling` module compares across graph sizes.
"""

from qwpath.bdchain import (
    BDChain,
    StationaryDist,
    make_chain,
    make_ehrenfest,
    make_random,
    stationary_distribution,
    transition_matrix,
)
from qwpath.ctqw import (
    CTQWDist,
    TimeAveragedDist,
    ctqw_amplitudes,
    ctqw_distribution,
    ctqw_time_average,
    ctqw_time_average_finite,
)
from qwpath.scaling import (
    ScalingReport,
    SizeRow,
    StepCDF,
    arcsine_cdf,
    ks_distance,
    step_cdf,
    theorem1_experiment,
)
from qwpath.spectral import (
    JacobiMatrix,
    SpectralData,
    dense_matrix,
    eigendecompose,
    jacobi_matrix,
    laplacian_apply,
    spectral_gap,
)
from qwpath.szegedy import (
    CoinState,
    LiftedEigenpair,
    SzegedyOperator,
    apply_U,
    dtqw_cdf_correction,
    dtqw_distribution,
    dtqw_time_average,
    dtqw_time_average_empirical,
    dtqw_time_average_sweep,
    initial_state,
    iter_distributions,
    lift_vector,
    lifted_eigenpairs,
    szegedy_operator,
    vertex_distribution,
)
from qwpath.tridiag import EigensolverError, tridiag_eigh

__version__ = "0.1.0"
