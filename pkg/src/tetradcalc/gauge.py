"""Local Lorentz gauge transformations generated by SL(2,C) spinor fields.

A gauge is a 2x2 matrix field ``B(x) = [[a, c], [d, b]]`` with ``ab - cd = 1``.
It acts on the frame through the Lorentz matrix

    L_a^b = 1/2 Tr(sigma_a B sigma_bar^b B^dagger),   B sigma_bar^b B^dagger = sigma_bar^a L_a^b,

so that ``e'_(a) = L_a^b e_(b)``, ``sigma_bar'^alpha = B sigma_bar^alpha B^dagger`` and
``sigma'^alpha = (B^dagger)^-1 sigma^alpha B^-1``.

Transformation laws are given for B_a, C_a, the rotation coefficients, the
spin coefficients (through the F/G/H/Delta kernels) and the symmetric spinor
Gamma.  Each law is checked against recomputing the quantity from the
transformed tetrad.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Sequence

import numpy as np

from . import exprlang as X
from .algebra import EPS2, EPS_UUUD, ETA, SIGMA, SIGMA_BAR, SIGMA_LOW
from .geometry import FrameJet, PointDomainError, TetradField
from .newman_penrose import NullFrameJet, SpinCoefficientSet
from .spinor import C_GAMMA, GammaSymmetric

DET_TOL = 1e-10
SQRT2 = np.sqrt(2.0)


class GaugeError(ValueError):
    pass


# spinor gauge fields -----------------------------------------------------------


class SpinorGaugeField:
    """``B(x) = [[a, c], [d, b]]`` from four complex expressions."""

    def __init__(
        self,
        a,
        b,
        c,
        d,
        params: Mapping[str, float] | None = None,
        coords: Sequence[str] = X.DEFAULT_COORDS,
        name: str | None = None,
    ):
        self.params = dict(params or {})
        self.coords = tuple(coords)
        self.name = name
        parse = lambda s: s if not isinstance(s, str) else X.parse(s, self.coords)
        self.exprs = {"a": parse(a), "b": parse(b), "c": parse(c), "d": parse(d)}
        for e in self.exprs.values():
            X.bind(e, self.params)

    def matrix_jet(self, point) -> tuple[np.ndarray, np.ndarray]:
        """``B`` and ``d_mu B`` (axes ``i, j, mu``)."""
        try:
            j = {k: X.eval_jet(e, point, self.params) for k, e in self.exprs.items()}
        except X.EvalDomainError as exc:
            raise PointDomainError(str(exc)) from exc
        B = np.array([[j["a"].value, j["c"].value], [j["d"].value, j["b"].value]], dtype=complex)
        dB = np.array([[j["a"].partials, j["c"].partials], [j["d"].partials, j["b"].partials]])
        _check_det(B, point)
        return B, dB

    def compose(self, first) -> "ProductGauge":
        """The gauge that applies ``first`` and then ``self``."""
        return ProductGauge(self, first)

    def to_config(self) -> dict:
        return {k: X.to_source(e, self.coords) for k, e in self.exprs.items()} | {"params": dict(self.params)}


@dataclass
class ConstantGauge:
    B: np.ndarray

    def matrix_jet(self, point) -> tuple[np.ndarray, np.ndarray]:
        B = np.asarray(self.B, dtype=complex)
        _check_det(B, point)
        return B, np.zeros((2, 2, 4), dtype=complex)

    def compose(self, first) -> "ProductGauge":
        return ProductGauge(self, first)


@dataclass
class ProductGauge:
    """``B = second.B @ first.B``: apply ``first``, then ``second``."""

    second: object
    first: object

    def matrix_jet(self, point) -> tuple[np.ndarray, np.ndarray]:
        B2, dB2 = self.second.matrix_jet(point)
        B1, dB1 = self.first.matrix_jet(point)
        return B2 @ B1, np.einsum("ijm,jk->ikm", dB2, B1) + np.einsum("ij,jkm->ikm", B2, dB1)

    def compose(self, first) -> "ProductGauge":
        return ProductGauge(self, first)


def _check_det(B: np.ndarray, point) -> None:
    det = B[0, 0] * B[1, 1] - B[0, 1] * B[1, 0]
    if abs(det - 1) > DET_TOL:
        raise GaugeError(f"spinor gauge has det = {det:.12g} != 1 at {tuple(np.asarray(point, dtype=float))}")


def identity_gauge() -> ConstantGauge:
    return ConstantGauge(np.eye(2, dtype=complex))


def cartesian_to_spherical_gauge() -> SpinorGaugeField:
    """Rotates the Cartesian frame (in spherical coordinates) into the spherical one."""
    return SpinorGaugeField(
        a="cos(th/2)*exp(i*ph/2)",
        c="sin(th/2)*exp(-i*ph/2)",
        d="-sin(th/2)*exp(i*ph/2)",
        b="cos(th/2)*exp(-i*ph/2)",
        coords=("t", "r", "th", "ph"),
        name="cartesian_to_spherical",
    )


BUILTIN_GAUGES = {"identity": lambda: SpinorGaugeField("1", "1", "0", "0", name="identity"),
                  "cartesian_to_spherical": cartesian_to_spherical_gauge}  # fmt: skip


def gauge_from_config(cfg: Mapping, coords: Sequence[str] = X.DEFAULT_COORDS):
    if "builtin" in cfg:
        try:
            return BUILTIN_GAUGES[cfg["builtin"]]()
        except KeyError:
            raise GaugeError(f"unknown builtin gauge {cfg['builtin']!r}; known: {', '.join(BUILTIN_GAUGES)}") from None
    if "matrix" in cfg:
        m = np.array([[complex(X.constant_value(str(v))) for v in row] for row in cfg["matrix"]])
        return ConstantGauge(m)
    try:
        return SpinorGaugeField(cfg["a"], cfg["b"], cfg["c"], cfg["d"], cfg.get("params"), coords)
    except KeyError as exc:
        raise GaugeError(f"malformed gauge config: missing {exc}") from None


def random_sl2c(rng: np.random.Generator, scale: float = 0.5) -> np.ndarray:
    """A random SL(2,C) matrix near the identity (``scale`` sets the spread)."""
    m = np.eye(2) + scale * (rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2)))
    return m / np.sqrt(np.linalg.det(m))


# induced Lorentz matrices ------------------------------------------------------


@dataclass
class LorentzMatrixJet:
    L: np.ndarray  # L[a, b] = L_a^b
    dL: np.ndarray  # d_mu L_a^b, axes (a, b, mu)
    det_sign: int

    def orthogonality_residual(self) -> float:
        return float(np.max(np.abs(self.L @ ETA @ self.L.T - ETA)))


def lorentz_from_matrix(B: np.ndarray, dB: np.ndarray | None = None) -> LorentzMatrixJet:
    Bd = B.conj().T
    L = 0.5 * np.einsum("aij,jk,bkl,li->ab", SIGMA_LOW, B, SIGMA_BAR, Bd)
    if dB is None:
        dL = np.zeros((4, 4, 4))
    else:
        dBd = dB.conj().transpose(1, 0, 2)
        dL = 0.5 * (
            np.einsum("aij,jkm,bkl,li->abm", SIGMA_LOW, dB, SIGMA_BAR, Bd)
            + np.einsum("aij,jk,bkl,lim->abm", SIGMA_LOW, B, SIGMA_BAR, dBd)
        )
    return LorentzMatrixJet(L.real, dL.real, int(np.sign(np.linalg.det(L.real))))


def lorentz_from_spinor(g, point) -> LorentzMatrixJet:
    B, dB = g.matrix_jet(point)
    return lorentz_from_matrix(B, dB)


def constant_lorentz(L: np.ndarray) -> LorentzMatrixJet:
    """Wrap a constant (possibly improper) Lorentz matrix for the vector pathway."""
    L = np.asarray(L, dtype=float)
    if np.max(np.abs(L @ ETA @ L.T - ETA)) > 1e-10:
        raise GaugeError("matrix is not a Lorentz matrix")
    return LorentzMatrixJet(L, np.zeros((4, 4, 4)), int(np.sign(np.linalg.det(L))))


def _lorentz(g, frame: FrameJet) -> LorentzMatrixJet:
    return g if isinstance(g, LorentzMatrixJet) else lorentz_from_spinor(g, frame.point)


# transformed tetrads -----------------------------------------------------------


class GaugedTetradField:
    """A tetrad field seen through a gauge: ``e'_(a)^alpha = L_a^b e_(b)^alpha``."""

    kind = "full"
    is_diagonal = False

    def __init__(self, base, gauge):
        self.base = base
        self.gauge = gauge
        self.chart = base.chart
        self.params = base.params
        self.em_potential = base.em_potential
        self.name = f"{getattr(base, 'name', None) or 'custom'}+gauge"

    def jet(self, point) -> tuple[np.ndarray, np.ndarray]:
        e, de = self.base.jet(point)
        lj = lorentz_from_spinor(self.gauge, point)
        return lj.L @ e, np.einsum("abm,bA->aAm", lj.dL, e) + np.einsum("ab,bAm->aAm", lj.L, de)

    def values(self, point) -> np.ndarray:
        return lorentz_from_spinor(self.gauge, point).L @ self.base.values(point)

    def em_at(self, point):
        return self.base.em_at(point)


def transform_tetrad(field, g) -> GaugedTetradField:
    return GaugedTetradField(field, g)


# vector laws -------------------------------------------------------------------


def transform_B(B_in, g, frame: FrameJet, kappa_inh: float = 0.5) -> np.ndarray:
    """``B'_a = L_a^b B_b + kappa_inh (d_beta L_a^b) e_(b)^beta``.

    ``kappa_inh = 1/2`` for the divergence normalization of B; use 1 for the
    trace normalization.
    """
    lj = _lorentz(g, frame)
    return lj.L @ np.asarray(B_in) + kappa_inh * np.einsum("abm,bm->a", lj.dL, frame.e_up)


def transform_rotation_coefficients(gamma: np.ndarray, g, frame: FrameJet) -> np.ndarray:
    """``gamma'_abc = L_a^k L_b^l L_c^n gamma_kln - (d_mu L_a^k) eta_kl L_b^l L_c^n e_(n)^mu``."""
    lj = _lorentz(g, frame)
    L = lj.L
    hom = np.einsum("ak,bl,cn,kln->abc", L, L, L, gamma)
    inh = -np.einsum("akm,kl,bl,cn,nm->abc", lj.dL, ETA, L, L, frame.e_up)
    return hom + inh


def transform_C(C_in, g, frame: FrameJet) -> np.ndarray:
    """``C'_d = det L * L_d^m C_m + 1/4 eps^{abc}_d (inhomogeneous rotation-coefficient term)``."""
    lj = _lorentz(g, frame)
    L = lj.L
    inh = -np.einsum("akm,kl,bl,cn,nm->abc", lj.dL, ETA, L, L, frame.e_up)
    hom = lj.det_sign * (L @ np.asarray(C_in))
    return hom + 0.25 * np.einsum("abcd,abc->d", EPS_UUUD, inh)


# spin coefficient laws -----------------------------------------------------------


@dataclass
class GaugeKernels:
    F: np.ndarray
    G: np.ndarray
    H: np.ndarray
    Delta: np.ndarray

    def as_array(self) -> np.ndarray:
        return np.concatenate([self.F, self.G, self.H, self.Delta])


def gauge_kernels(s: SpinCoefficientSet, nf: NullFrameJet, g, point) -> GaugeKernels:
    """Kernels in the letter normalization (letters ``= C_GAMMA * s``).

    Vectors enter as the entries of ``sigma^mu = sqrt2 [[l, m], [mbar, n]]``.
    """
    B, dB = g.matrix_jet(point)
    a, c, d, b = B[0, 0], B[0, 1], B[1, 0], B[1, 1]
    da, dc, dd, db = dB[0, 0], dB[0, 1], dB[1, 0], dB[1, 1]
    w1 = b * dd - d * db
    w2 = c * da - a * dc
    w3 = a * db - c * dd

    def kernel(X, v):
        v = SQRT2 * v
        return np.array(
            [
                b * b * X[0] + d * d * X[1] - 2 * b * d * X[2] - 2 * (v @ w1),
                c * c * X[0] + a * a * X[1] - 2 * a * c * X[2] - 2 * (v @ w2),
                -b * c * X[0] - a * d * X[1] + (a * b + c * d) * X[2] - 2 * (v @ w3),
            ]
        )

    lt = s.scaled(C_GAMMA)
    return GaugeKernels(
        F=kernel(lt.L, nf.l.up),
        G=kernel(lt.N, nf.n.up),
        H=kernel(lt.M, nf.m.up),
        Delta=kernel(lt.M_bar, nf.m_bar.up),
    )


def letters_from_kernels(k: GaugeKernels, B: np.ndarray) -> SpinCoefficientSet:
    a, c, d, b = B[0, 0], B[0, 1], B[1, 0], B[1, 1]
    cj = np.conj
    F, G, H, D = k.F, k.G, k.H, k.Delta
    return SpinCoefficientSet(
        L=b * cj(b) * F + d * cj(d) * G - d * cj(b) * H - cj(d) * b * D,
        M=-c * cj(b) * F - a * cj(d) * G + a * cj(b) * H + c * cj(d) * D,
        M_bar=-cj(c) * b * F - cj(a) * d * G + d * cj(c) * H + cj(a) * b * D,
        N=c * cj(c) * F + a * cj(a) * G - a * cj(c) * H - cj(a) * c * D,
    )


def transform_letters(s: SpinCoefficientSet, nf: NullFrameJet, g, point) -> SpinCoefficientSet:
    """Primed coefficients in the letter normalization."""
    B, _ = g.matrix_jet(point)
    return letters_from_kernels(gauge_kernels(s, nf, g, point), B)


def transform_spin_coefficients(s: SpinCoefficientSet, nf: NullFrameJet, g, point) -> SpinCoefficientSet:
    """Primed canonical spin coefficients."""
    return transform_letters(s, nf, g, point).scaled(1.0 / C_GAMMA)


# Gamma law -----------------------------------------------------------------------


def transform_gamma_symmetric(Gm: GammaSymmetric, g, nf: NullFrameJet, point) -> GammaSymmetric:
    """``Gamma' = (B^-T x B^-T x B^dagger^-1 x B^-T) Gamma - 4 eps (dB B^-1) x sigma'^mu``."""
    B, dB = g.matrix_jet(point)
    Binv = np.linalg.inv(B)
    BinvT = Binv.T
    Bdinv = np.linalg.inv(B.conj().T)
    hom = np.einsum("ip,jq,kr,ls,pqrs->ijkl", BinvT, BinvT, Bdinv, BinvT, Gm.Gamma)
    l, n, m, mb = nf.l.up, nf.n.up, nf.m.up, nf.m_bar.up
    sigma_up = SQRT2 * np.array([[l, m], [mb, n]])  # (2, 2, mu)
    sigma_new = np.einsum("kp,pqm,ql->klm", Bdinv, sigma_up, Binv)
    conn = np.einsum("ip,pqm,qj->ijm", EPS2, dB, Binv)
    return GammaSymmetric(hom - 4 * np.einsum("ijm,klm->ijkl", conn, sigma_new))


def frame_sigma(frame: FrameJet) -> tuple[np.ndarray, np.ndarray]:
    """``sigma^alpha`` and ``sigma_bar^alpha`` of a frame, axes (alpha, i, j)."""
    return np.einsum("aij,aA->Aij", SIGMA, frame.e_up), np.einsum("aij,aA->Aij", SIGMA_BAR, frame.e_up)
