"""Ricci rotation coefficients, the vectors B and C, and the three-part
irreducible split of the rotation coefficients.

Index convention: ``gamma[a, b, c] = -e_(a)beta;alpha e_(b)^beta e_(c)^alpha``,
antisymmetric in the first pair. All frame indices are lowered.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .algebra import EPS_DDDU, EPS_UUUD, ETA, ETA_INV
from .geometry import FrameJet

# B_trace = KAPPA_B * B_dirac; measured against finite differences, pinned in tests
KAPPA_B = 2.0


@dataclass
class Decomposition:
    C_part: np.ndarray
    B_part: np.ndarray
    E_part: np.ndarray


@dataclass
class RicciAtPoint:
    gamma: np.ndarray
    lam: np.ndarray
    B_dirac: np.ndarray
    B_trace: np.ndarray
    C: np.ndarray
    decomposition: Decomposition


def rotation_coefficients(frame: FrameJet) -> np.ndarray:
    return -np.einsum("aBA,bB,cA->abc", frame.cov_deriv_down, frame.e_up, frame.e_up)


def lambda_at(frame: FrameJet) -> np.ndarray:
    """``lam_abc = (d_beta e_(a)alpha - d_alpha e_(a)beta) e_(c)^alpha e_(b)^beta``.

    Uses ordinary partials only; no Christoffel symbols enter.
    """
    d = frame.e_down_partials  # d[a, alpha, beta] = d_beta e_(a)alpha
    curl = d - np.einsum("aAB->aBA", d)
    return np.einsum("aAB,cA,bB->abc", curl, frame.e_up, frame.e_up)


def gamma_from_lambda(lam: np.ndarray) -> np.ndarray:
    return 0.5 * (lam + np.einsum("bca->abc", lam) - np.einsum("cab->abc", lam))


def c_vector(gamma: np.ndarray) -> np.ndarray:
    """``C_k = 1/4 eps^{abc}_k gamma_abc``."""
    return 0.25 * np.einsum("abck,abc->k", EPS_UUUD, gamma)


def b_trace(gamma: np.ndarray) -> np.ndarray:
    """``B_b = gamma_{kb}^k``."""
    return np.einsum("kc,kbc->b", ETA_INV, gamma)


def b_dirac(frame: FrameJet) -> np.ndarray:
    """``B_k = 1/2 e_(k)^alpha_{;alpha}``, the covariant divergence of each frame vector."""
    return 0.5 * np.einsum("AB,kBA->k", frame.g_inv, frame.cov_deriv_down)


_CYCLIC = {0: (1, 2, 3), 1: (0, 2, 3), 2: (0, 1, 3), 3: (0, 1, 2)}
_CYCLIC_SIGN = {0: -1.0, 1: -1.0, 2: 1.0, 3: -1.0}


def c_from_lambda(lam: np.ndarray) -> np.ndarray:
    """C rebuilt from cyclic sums of ``lam`` alone.

    ``C_k = s_k / 4 * (lam_pqr + lam_qrp + lam_rpq)`` with ``(p, q, r)`` the
    increasing triple complementary to ``k`` and ``s = (-, -, +, -)``; the signs
    follow from ``eps^{0123} = +1`` with ``k`` lowered.
    """
    out = np.zeros(4)
    for k, (p, q, r) in _CYCLIC.items():
        out[k] = 0.25 * _CYCLIC_SIGN[k] * (lam[p, q, r] + lam[q, r, p] + lam[r, p, q])
    return out


def c_part(gamma: np.ndarray) -> np.ndarray:
    return (gamma + np.einsum("bca->abc", gamma) + np.einsum("cab->abc", gamma)) / 3.0


def c_part_from_dual(C: np.ndarray) -> np.ndarray:
    """Totally antisymmetric tensor dual to ``C``: ``-2/3 eps_{abc}^n C_n``."""
    return -2.0 / 3.0 * np.einsum("abcn,n->abc", EPS_DDDU, C)


def b_part(B: np.ndarray) -> np.ndarray:
    """``1/3 (eta_ac B_b - eta_bc B_a)``."""
    return (np.einsum("ac,b->abc", ETA, B) - np.einsum("bc,a->abc", ETA, B)) / 3.0


def decompose(gamma: np.ndarray) -> Decomposition:
    cp = c_part(gamma)
    bp = b_part(b_trace(gamma))
    return Decomposition(cp, bp, gamma - cp - bp)


def ricci_at(frame: FrameJet) -> RicciAtPoint:
    gamma = rotation_coefficients(frame)
    return RicciAtPoint(
        gamma=gamma,
        lam=lambda_at(frame),
        B_dirac=b_dirac(frame),
        B_trace=b_trace(gamma),
        C=c_vector(gamma),
        decomposition=decompose(gamma),
    )


def _amax(x) -> float:
    return float(np.max(np.abs(x)))


def decomposition_residuals(r: RicciAtPoint) -> dict[str, float]:
    """Named residuals of the orthogonality, trace and reconstruction identities."""
    g = r.gamma
    dec = r.decomposition
    delta = g - dec.C_part
    C = c_vector(g)
    B = b_trace(g)
    trace_first = lambda t: np.einsum("kc,kbc->b", ETA_INV, t)
    trace_second = lambda t: np.einsum("kc,bkc->b", ETA_INV, t)
    return {
        "delta_eps_orthogonal": _amax(np.einsum("abcm,abc->m", EPS_UUUD, delta)),
        "c_part_eps_contraction": _amax(np.einsum("abcm,abc->m", EPS_UUUD, dec.C_part) - 4 * C),
        "b_part_trace": _amax(trace_first(dec.B_part) - B),
        "b_part_trace_second": _amax(trace_second(dec.B_part) + B),
        "e_part_trace": _amax(trace_first(dec.E_part)),
        "e_part_trace_second": _amax(trace_second(dec.E_part)),
        "e_part_eps_orthogonal": _amax(np.einsum("abcm,abc->m", EPS_UUUD, dec.E_part)),
        "reconstruction": _amax(g - (dec.C_part + dec.B_part + dec.E_part)),
        "c_part_closed_form": _amax(dec.C_part - c_part_from_dual(C)),
        "delta_closed_form": _amax(
            delta - (2.0 / 3.0 * g + (np.einsum("acb->abc", g) - np.einsum("bca->abc", g)) / 3.0)
        ),
    }


def lambda_identity_residual(r: RicciAtPoint) -> float:
    return _amax(gamma_from_lambda(r.lam) - r.gamma)
