"""Complete p-elliptic integrals, generalized trigonometric functions and the cubic AGM
at arbitrary precision."""
from .cubic_agm import (
    AgmState,
    I3,
    J3,
    Pi3Report,
    agm_step,
    agm_trajectory,
    constancy_residual,
    ij_recursion_residual,
    j_sum_residual,
    k3_agm_residual,
    ke_transform_residuals,
    m3,
    pi3,
    pi3_iterates,
    ramanujan_residual,
    remark_residual,
)
from .elliptic import (
    E_p,
    E_p_star,
    E_p_star_im,
    K_p,
    K_p_star,
    K_p_star_im,
    Modulus,
    dE_dk,
    dK_dk,
    legendre_residual,
    quadrature_value,
    relation_residuals,
    special_value_E,
    special_value_K,
)
from .errors import ConvergenceError, DomainError, PellintError, PrecisionError
from .gentrig import PExponent, arcsin_p, cos_p, pi_p, sin_p
from .hypergeom import HypergeomParams, gauss_2f1, pochhammer
from .numeric import PrecisionContext, duplication_residual, format_decimal, gamma
from .quadrature import QuadratureResult, integrate

__version__ = "0.1.0"
