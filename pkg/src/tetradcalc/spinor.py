"""Rank-4 spinor images of the rotation coefficients.

Axis layout (fixed; no dotted/undotted bookkeeping beyond this):

* ``g4[i, j, k, l]``: ``(i, j)`` are the row/column of the first 2x2 factor
  ``sigma_bar^a sigma^b``, ``(k, l)`` those of the second factor ``sigma^c``.
* ``GammaSpinor.conj`` is the barred spinor with both factors conjugated by
  ``eps``: ``eps (sigma^a sigma_bar^b) eps^T  (x)  eps sigma_bar^c eps^T``.  In this layout
  it is the elementwise complex conjugate of ``g4`` for a real frame.
* ``GammaSymmetric.Gamma = eps`` applied to axis 0 of ``g4``; symmetric in ``(i, j)``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .algebra import EPS2, SIGMA, SIGMA_BAR, SIGMA_BAR_LOW, SIGMA_LOW
from .newman_penrose import NullFrameJet, SpinCoefficientSet

SQRT2 = np.sqrt(2.0)

# gamma_klm = A [Tr(sb_k s_l . ) Tr(sb_m . )] gamma + A [Tr(s_k sb_l . ) Tr(s_m . )] gamma_bar
RECONSTRUCTION_A = -1.0 / 16.0
# Gamma = GAMMA_PREFACTOR * [[X1, X3], [X3, X2]] (x) [[l, m], [mbar, n]] with letters X = C_GAMMA * s,
# s the canonical spin coefficients.  |C_GAMMA| = 2^(3/2); its sign is measured.
GAMMA_PREFACTOR = -2.0
C_GAMMA = -(2.0**1.5)

# first-pair slot of Gamma -> coefficient index (0-based): (0,0)->1, (0,1)->3, (1,1)->2
_FIRST_SLOT = {(0, 0): 0, (0, 1): 2, (1, 1): 1}
# second-pair slot -> letter family
_SECOND_SLOT = {(0, 0): "L", (0, 1): "M", (1, 0): "M_bar", (1, 1): "N"}


@dataclass
class GammaSpinor:
    g4: np.ndarray
    conj: np.ndarray


@dataclass
class GammaSymmetric:
    Gamma: np.ndarray

    def antisymmetry_residual(self) -> float:
        return float(np.max(np.abs(self.Gamma - self.Gamma.transpose(1, 0, 2, 3))))


def _raise(m: np.ndarray) -> np.ndarray:
    """``eps m eps^T`` on the last two axes."""
    return np.einsum("ip,...pq,jq->...ij", EPS2, m, EPS2)


def forward_map(gamma: np.ndarray) -> GammaSpinor:
    """Spinor pair from frame-index rotation coefficients ``gamma[a, b, c]``."""
    pair = np.einsum("aij,bjk->abik", SIGMA_BAR, SIGMA)
    pair_bar = np.einsum("aij,bjk->abik", SIGMA, SIGMA_BAR)
    g4 = np.einsum("abij,ckl,abc->ijkl", pair, SIGMA, gamma)
    g4_bar = np.einsum("abij,ckl,abc->ijkl", _raise(pair_bar), _raise(SIGMA_BAR), gamma)
    return GammaSpinor(g4, g4_bar)


def plain_gamma_bar(gamma: np.ndarray) -> np.ndarray:
    """Barred spinor without the ``eps`` raising: ``(sigma^a sigma_bar^b (x) sigma_bar^c) gamma_abc``."""
    pair_bar = np.einsum("aij,bjk->abik", SIGMA, SIGMA_BAR)
    return np.einsum("abij,ckl,abc->ijkl", pair_bar, SIGMA_BAR, gamma)


def _sigma_fields(nf: NullFrameJet):
    """``sigma^alpha``, ``sigma_bar^alpha`` and ``sigma_bar_{alpha;beta}`` from the null frame."""
    l, n, m, mb = nf.l, nf.n, nf.m, nf.m_bar
    s_up = SQRT2 * np.array([[l.up, m.up], [mb.up, n.up]]).transpose(2, 0, 1)
    sb_up = SQRT2 * np.array([[n.up, -m.up], [-mb.up, l.up]]).transpose(2, 0, 1)
    # axes (alpha, beta, i, j)
    sb_cov = SQRT2 * np.array([[n.cov, -m.cov], [-mb.cov, l.cov]]).transpose(2, 3, 0, 1)
    s_cov = SQRT2 * np.array([[l.cov, m.cov], [mb.cov, n.cov]]).transpose(2, 3, 0, 1)
    return s_up, sb_up, s_cov, sb_cov


def gamma_spinor(nf: NullFrameJet) -> GammaSpinor:
    """``gamma = -sigma_bar_{alpha;beta} sigma^alpha (x) sigma^beta`` and its barred partner."""
    s_up, sb_up, s_cov, sb_cov = _sigma_fields(nf)
    g4 = -np.einsum("ABip,Apj,Bkl->ijkl", sb_cov, s_up, s_up)
    g4_bar = -np.einsum("ABip,Apj,Bkl->ijkl", s_cov, sb_up, sb_up)
    return GammaSpinor(g4, np.einsum("ip,jq,kr,ls,pqrs->ijkl", EPS2, EPS2, EPS2, EPS2, g4_bar))


def conjugation_residual(g: GammaSpinor) -> float:
    return float(np.max(np.abs(g.conj - g.g4.conj())))


def gamma_symmetric(g: GammaSpinor) -> GammaSymmetric:
    return GammaSymmetric(np.einsum("ip,pjkl->ijkl", EPS2, g.g4))


def reconstruct_ricci(g: GammaSpinor, A: float = RECONSTRUCTION_A, keep_imag: bool = False) -> np.ndarray:
    """Rebuild ``gamma_klm`` from the double traces of both spinors."""
    g4_bar = np.einsum("ip,jq,kr,ls,pqrs->ijkl", EPS2.T, EPS2.T, EPS2.T, EPS2.T, g.conj)
    t1 = np.einsum("kxy,lyz,zxpq,mqp->klm", SIGMA_BAR_LOW, SIGMA_LOW, g.g4, SIGMA_BAR_LOW)
    t2 = np.einsum("kxy,lyz,zxpq,mqp->klm", SIGMA_LOW, SIGMA_BAR_LOW, g4_bar, SIGMA_LOW)
    out = A * (t1 + t2)
    return out if keep_imag else out.real


def to_letters(s: SpinCoefficientSet) -> SpinCoefficientSet:
    """Canonical coefficients to the letter normalization used inside ``Gamma``."""
    return s.scaled(C_GAMMA)


def from_letters(letters: SpinCoefficientSet) -> SpinCoefficientSet:
    return letters.scaled(1.0 / C_GAMMA)


def gamma_letters(Gamma: GammaSymmetric) -> SpinCoefficientSet:
    """The twelve independent slots of ``Gamma`` with the overall prefactor removed."""
    out = {name: np.zeros(3, dtype=complex) for name in ("L", "N", "M", "M_bar")}
    for (i, j), idx in _FIRST_SLOT.items():
        for (k, l), name in _SECOND_SLOT.items():
            out[name][idx] = Gamma.Gamma[i, j, k, l] / GAMMA_PREFACTOR
    return SpinCoefficientSet(**out)


def gamma_slot_map(Gamma: GammaSymmetric) -> SpinCoefficientSet:
    """Canonical spin coefficients read off ``Gamma``."""
    return from_letters(gamma_letters(Gamma))


def gamma_from_letters(letters: SpinCoefficientSet) -> GammaSymmetric:
    G = np.zeros((2, 2, 2, 2), dtype=complex)
    for (i, j), idx in _FIRST_SLOT.items():
        for (k, l), name in _SECOND_SLOT.items():
            G[i, j, k, l] = G[j, i, k, l] = GAMMA_PREFACTOR * getattr(letters, name)[idx]
    return GammaSymmetric(G)


def gamma_from_spin_coefficients(s: SpinCoefficientSet) -> GammaSymmetric:
    return gamma_from_letters(to_letters(s))
