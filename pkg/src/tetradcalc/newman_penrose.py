"""Null tetrads, spin coefficients and the two first-order Dirac operator
assemblies.

The null tetrad is normalized: ``l = (e0+e3)/sqrt2``, ``n = (e0-e3)/sqrt2``,
``m = (e1 - i e2)/sqrt2``, so ``l.n = 1`` and ``m.mbar = -1``.  A contraction
written ``(xy)z`` means ``x_{beta;alpha} y^beta z^alpha``.  The twelve spin
coefficients are

    L = ((l mbar) l, (-n m) l, 1/2 (l n + m mbar) l)
    M = ((l mbar) m, (-n m) m, 1/2 (l n + m mbar) m)
    Mbar, N : same with the last slot mbar, n.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .algebra import GAMMA, SIGMA, SIGMA_AB, SIGMA_BAR, hat, unhat
from .geometry import FrameJet
from .ricci import RicciAtPoint

SQRT2 = np.sqrt(2.0)

# frame components (upper frame index) of the null vectors
NULL_FRAME_COMPONENTS = {
    "l": np.array([1, 0, 0, 1], dtype=complex) / SQRT2,
    "n": np.array([1, 0, 0, -1], dtype=complex) / SQRT2,
    "m": np.array([0, 1, -1j, 0], dtype=complex) / SQRT2,
    "mb": np.array([0, 1, 1j, 0], dtype=complex) / SQRT2,
}


@dataclass
class NullVector:
    up: np.ndarray  # v^beta
    up_partials: np.ndarray  # d_alpha v^beta, axes (beta, alpha)
    down: np.ndarray  # v_beta
    cov: np.ndarray  # v_{beta;alpha}, axes (beta, alpha)


@dataclass
class NullFrameJet:
    l: NullVector
    n: NullVector
    m: NullVector
    m_bar: NullVector
    frame: FrameJet = field(repr=False)

    def vectors(self):
        return {"l": self.l, "n": self.n, "m": self.m, "mb": self.m_bar}


def null_frame(frame: FrameJet) -> NullFrameJet:
    out = {}
    for key, comp in NULL_FRAME_COMPONENTS.items():
        out[key] = NullVector(
            up=comp @ frame.e_up,
            up_partials=np.einsum("a,aBA->BA", comp, frame.e_up_partials),
            down=comp @ frame.e_down,
            cov=np.einsum("a,aBA->BA", comp, frame.cov_deriv_down),
        )
    return NullFrameJet(out["l"], out["n"], out["m"], out["mb"], frame)


def null_normalization_residual(nf: NullFrameJet) -> float:
    g = nf.frame.g
    dot = lambda u, v: u.up @ g @ v.up
    l, n, m, mb = nf.l, nf.n, nf.m, nf.m_bar
    res = [
        dot(l, n) - 1,
        dot(m, mb) + 1,
        dot(l, l),
        dot(n, n),
        dot(m, m),
        dot(l, m),
        dot(n, m),
        np.max(np.abs(mb.up - m.up.conj())),
    ]
    return float(np.max(np.abs(res)))


@dataclass
class SpinCoefficientSet:
    L: np.ndarray
    N: np.ndarray
    M: np.ndarray
    M_bar: np.ndarray

    ORDER = ("L", "N", "M", "M_bar")

    def as_array(self) -> np.ndarray:
        return np.concatenate([self.L, self.N, self.M, self.M_bar])

    @classmethod
    def from_array(cls, arr) -> "SpinCoefficientSet":
        arr = np.asarray(arr, dtype=complex)
        return cls(arr[0:3].copy(), arr[3:6].copy(), arr[6:9].copy(), arr[9:12].copy())

    @classmethod
    def zeros(cls) -> "SpinCoefficientSet":
        return cls.from_array(np.zeros(12))

    def scaled(self, factor: complex) -> "SpinCoefficientSet":
        return SpinCoefficientSet.from_array(factor * self.as_array())

    def labels(self) -> list[str]:
        return [f"{name}{i}" for name in ("L", "N", "M", "Mbar") for i in (1, 2, 3)]

    def as_dict(self) -> dict[str, complex]:
        return dict(zip(self.labels(), self.as_array()))


def _contract(x, y, z) -> complex:
    """``(xy)z = x_{beta;alpha} y^beta z^alpha``."""
    return complex(np.einsum("BA,B,A->", x.cov, y.up, z.up))


def spin_coefficients(nf: NullFrameJet) -> SpinCoefficientSet:
    l, n, m, mb = nf.l, nf.n, nf.m, nf.m_bar

    def triple(z):
        return np.array(
            [
                _contract(l, mb, z),
                -_contract(n, m, z),
                0.5 * (_contract(l, n, z) + _contract(m, mb, z)),
            ]
        )

    return SpinCoefficientSet(L=triple(l), N=triple(n), M=triple(m), M_bar=triple(mb))


def spin_coefficients_from_gamma(gamma: np.ndarray) -> SpinCoefficientSet:
    """Same twelve numbers from frame-index rotation coefficients alone.

    Null vectors have constant frame components, so
    ``(xy)z = -X^a Y^b Z^c gamma_abc``.
    """
    c = NULL_FRAME_COMPONENTS
    con = lambda x, y, z: -complex(np.einsum("a,b,c,abc->", c[x], c[y], c[z], gamma))

    def triple(z):
        return np.array([con("l", "mb", z), -con("n", "m", z), 0.5 * (con("l", "n", z) + con("m", "mb", z))])

    return SpinCoefficientSet(L=triple("l"), N=triple("n"), M=triple("m"), M_bar=triple("mb"))


@dataclass
class NpLetters:
    kappa: complex
    pi: complex
    epsilon: complex
    rho: complex
    lambda_: complex
    alpha: complex
    sigma: complex
    mu: complex
    beta: complex
    tau: complex
    nu: complex
    gamma: complex


def np_letters(s: SpinCoefficientSet) -> NpLetters:
    c = np.conj
    return NpLetters(
        kappa=c(s.L[0]), pi=c(s.L[1]), epsilon=c(s.L[2]),
        rho=c(s.M[0]), lambda_=c(s.M[1]), alpha=c(s.M[2]),
        sigma=c(s.M_bar[0]), mu=c(s.M_bar[1]), beta=c(s.M_bar[2]),
        tau=c(s.N[0]), nu=c(s.N[1]), gamma=c(s.N[2]),
    )  # fmt: skip


# spinor connections -----------------------------------------------------------


def sigma_connections(nf: NullFrameJet) -> tuple[np.ndarray, np.ndarray]:
    """``Sigma_alpha`` and ``Sigma_bar_alpha`` as arrays of shape (4, 2, 2)."""
    l, n, m, mb = nf.l, nf.n, nf.m, nf.m_bar
    # y^beta x_{beta;alpha} as a covector in alpha
    yx = lambda y, x: y.up @ x.cov
    diag = yx(l, n) + yx(m, mb)
    sig = np.zeros((4, 2, 2), dtype=complex)
    sig[:, 0, 0] = -0.5 * diag
    sig[:, 0, 1] = yx(n, m)
    sig[:, 1, 0] = yx(l, mb)
    sig[:, 1, 1] = 0.5 * diag
    diag_bar = yx(l, n) + yx(mb, m)
    sigb = np.zeros((4, 2, 2), dtype=complex)
    sigb[:, 0, 0] = 0.5 * diag_bar
    sigb[:, 0, 1] = -yx(l, m)
    sigb[:, 1, 0] = -yx(n, mb)
    sigb[:, 1, 1] = -0.5 * diag_bar
    return sig, sigb


def bispinor_connection(frame: FrameJet) -> np.ndarray:
    """``Gamma_alpha = 1/2 sigma^{ab} e_(a)^beta e_(b)beta;alpha`` as (4, 4, 4)."""
    return 0.5 * np.einsum("abij,aB,bBA->Aij", SIGMA_AB, frame.e_up, frame.cov_deriv_down)


# hat components and operator assemblies --------------------------------------


@dataclass
class HatComponents:
    B_hat: np.ndarray
    C_hat: np.ndarray
    A_hat: np.ndarray
    e_hat: np.ndarray  # (4, 4): hatted index, coordinate index


def hat_components(r: RicciAtPoint, frame: FrameJet, em=None) -> HatComponents:
    """Light-cone combinations of ``B_dirac``, ``C``, the frame and the potential.

    ``em`` holds coordinate components ``A_alpha``; it is projected onto the
    frame before hatting.
    """
    if em is None:
        em = frame.em if frame.em is not None else np.zeros(4)
    a_frame = frame.e_up @ np.asarray(em, dtype=complex)
    return HatComponents(hat(r.B_dirac), hat(r.C), hat(a_frame), hat(frame.e_up))


def hat_reality_residual(h: HatComponents) -> float:
    return float(
        max(
            abs(h.B_hat[0].imag), abs(h.B_hat[1].imag), abs(h.C_hat[0].imag), abs(h.C_hat[1].imag),
            abs(h.B_hat[3] - np.conj(h.B_hat[2])), abs(h.C_hat[3] - np.conj(h.C_hat[2])),
        )
    )  # fmt: skip


@dataclass
class FirstOrderOperator2x2:
    """Entries ``overall_factor * (directions[p, q]^alpha d_alpha + scalars[p, q])``."""

    directions: np.ndarray  # (2, 2, 4)
    scalars: np.ndarray  # (2, 2)
    overall_factor: complex = 1.0

    def normalized(self) -> "FirstOrderOperator2x2":
        f = self.overall_factor
        return FirstOrderOperator2x2(f * self.directions, f * self.scalars, 1.0)

    def distance(self, other: "FirstOrderOperator2x2") -> float:
        a, b = self.normalized(), other.normalized()
        return float(
            max(np.max(np.abs(a.directions - b.directions)), np.max(np.abs(a.scalars - b.scalars)))
        )

    def equals(self, other: "FirstOrderOperator2x2", tol: float = 1e-9) -> bool:
        return self.distance(other) <= tol


def assemble_dirac_bc(h: HatComponents, charge: float = 0.0, chirality: str = "upper") -> FirstOrderOperator2x2:
    """Contract ``sigma^a`` (upper) or ``sigma_bar^a`` (lower) with the frame data.

    Upper acts on xi with ``B + iC``; lower acts on eta with ``B - iC``. Each
    entry is ``i (e^alpha d_alpha + scalar)``, the potential entering the
    scalar as ``+ i e A``.
    """
    e = unhat(h.e_hat)
    B, C, A = unhat(h.B_hat), unhat(h.C_hat), unhat(h.A_hat)
    if chirality == "upper":
        mats, scalar = SIGMA, B + 1j * C + 1j * charge * A
    elif chirality == "lower":
        mats, scalar = SIGMA_BAR, B - 1j * C + 1j * charge * A
    else:
        raise ValueError(f"chirality must be 'upper' or 'lower', not {chirality!r}")
    dirs = np.einsum("apq,ax->pqx", mats, e)
    scal = np.einsum("apq,a->pq", mats, scalar)
    return FirstOrderOperator2x2(dirs, scal, 1j)


def assemble_dirac_np(nf: NullFrameJet, s: SpinCoefficientSet) -> tuple[FirstOrderOperator2x2, FirstOrderOperator2x2]:
    l, n, m, mb = nf.l.up, nf.n.up, nf.m.up, nf.m_bar.up
    L, N, M, Mb = s.L, s.N, s.M, s.M_bar
    c = np.conj
    upper = FirstOrderOperator2x2(
        np.array([[l, m], [mb, n]]),
        np.array([[L[2] - M[0], L[1] - M[2]], [Mb[2] - N[0], Mb[1] - N[2]]]),
        1j * SQRT2,
    )
    lower = FirstOrderOperator2x2(
        np.array([[n, -m], [-mb, l]]),
        np.array(
            [
                [c(Mb[1]) - c(N[2]), -(c(Mb[2]) - c(N[0]))],
                [-(c(L[1]) - c(M[2])), c(L[2]) - c(M[0])],
            ]
        ),
        1j * SQRT2,
    )
    return upper, lower


def bridge_relations(h: HatComponents, s: SpinCoefficientSet) -> dict[str, float]:
    """Residuals of the eight hat/spin-coefficient relations and their solved form."""
    L, N, M, Mb = s.L, s.N, s.M, s.M_bar
    B, C = h.B_hat, h.C_hat
    c = np.conj
    r2 = SQRT2
    combos = {
        0: (L[2] - M[0], c(L[2]) - c(M[0])),
        1: (Mb[1] - N[2], c(Mb[1]) - c(N[2])),
        2: (L[1] - M[2], c(Mb[2]) - c(N[0])),
        3: (Mb[2] - N[0], c(L[1]) - c(M[2])),
    }
    out = {}
    for k, (plus, minus) in combos.items():
        out[f"B{k}+iC{k}"] = abs(B[k] + 1j * C[k] - r2 * plus)
        out[f"B{k}-iC{k}"] = abs(B[k] - 1j * C[k] - r2 * minus)
        out[f"B{k}"] = abs(B[k] - (plus + minus) / r2)
        out[f"iC{k}"] = abs(1j * C[k] - (plus - minus) / r2)
    return out


def bridge_residual(h: HatComponents, s: SpinCoefficientSet) -> float:
    return float(max(bridge_relations(h, s).values()))


def operator_scalars_from_gamma(gamma: np.ndarray) -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
    """Scalar parts of both assemblies computed from a frame-index ``gamma`` alone.

    Returns ``(bc_upper, bc_lower, np_upper, np_lower)`` normalized to unit
    overall factor.  Useful for synthetic tensors that do not come from a
    geometry.
    """
    from .ricci import b_trace, c_vector

    B = b_trace(gamma) / 2.0
    C = c_vector(gamma)
    bc_up = 1j * np.einsum("apq,a->pq", SIGMA, B + 1j * C)
    bc_lo = 1j * np.einsum("apq,a->pq", SIGMA_BAR, B - 1j * C)
    s = spin_coefficients_from_gamma(gamma)
    L, N, M, Mb = s.L, s.N, s.M, s.M_bar
    c = np.conj
    np_up = 1j * SQRT2 * np.array([[L[2] - M[0], L[1] - M[2]], [Mb[2] - N[0], Mb[1] - N[2]]])
    np_lo = 1j * SQRT2 * np.array(
        [[c(Mb[1]) - c(N[2]), -(c(Mb[2]) - c(N[0]))], [-(c(L[1]) - c(M[2])), c(L[2]) - c(M[0])]]
    )
    return bc_up, bc_lo, np_up, np_lo


def dirac_operator_4x4_scalar(frame: FrameJet) -> np.ndarray:
    """``gamma^alpha Gamma_alpha`` in the chiral basis; the non-derivative part of
    the covariant Dirac operator built directly from the spin connection."""
    gamma_coord = np.einsum("aij,aA->Aij", GAMMA, frame.e_up)
    return np.einsum("Aij,Ajk->ik", gamma_coord, bispinor_connection(frame))
