"""Fixed algebraic backdrop: Minkowski metric, Levi-Civita symbol, Pauli and
Dirac matrices, and residual checks for the Clifford and trace identities.

Conventions
-----------
* signature (+,-,-,-), ``ETA = diag(1,-1,-1,-1)``
* ``EPS_UP[a,b,c,d]`` is the totally antisymmetric symbol with ``EPS_UP[0,1,2,3] = +1``;
  indices are lowered one at a time with ``ETA``, so ``EPS_DOWN[0,1,2,3] = -1``
* Pauli quadruples ``SIGMA = (I, s1, s2, s3)`` and ``SIGMA_BAR = (I, -s1, -s2, -s3)``
* chiral Dirac basis ``gamma^a = [[0, SIGMA_BAR^a], [SIGMA^a, 0]]`` acting on the
  stacked bispinor ``(xi, eta)``; then ``gamma5 = -i g0 g1 g2 g3 = diag(-1, +1)``
"""

from __future__ import annotations

import itertools

import numpy as np

ETA = np.diag([1.0, -1.0, -1.0, -1.0])
ETA_INV = ETA.copy()


def levi_civita(n: int = 4) -> np.ndarray:
    """Totally antisymmetric symbol with ``eps[0,1,..,n-1] = +1``."""
    eps = np.zeros((n,) * n)
    for perm in itertools.permutations(range(n)):
        inversions = sum(
            1 for i in range(n) for j in range(i + 1, n) if perm[i] > perm[j]
        )
        eps[perm] = -1.0 if inversions % 2 else 1.0
    return eps


EPS_UP = levi_civita(4)
EPS_DOWN = np.einsum("abcd,ai,bj,ck,dl->ijkl", EPS_UP, ETA, ETA, ETA, ETA)
# eps^{abc}_d : last index lowered
EPS_UUUD = np.einsum("abcn,nd->abcd", EPS_UP, ETA)
# eps_{abc}^d : first three lowered
EPS_DDDU = np.einsum("abcn,nd->abcd", EPS_DOWN, ETA_INV)

I2 = np.eye(2, dtype=complex)
PAULI = (
    np.array([[0, 1], [1, 0]], dtype=complex),
    np.array([[0, -1j], [1j, 0]], dtype=complex),
    np.array([[1, 0], [0, -1]], dtype=complex),
)
SIGMA = np.array([I2, *PAULI])
SIGMA_BAR = np.array([I2, *(-p for p in PAULI)])
# index-lowered quadruples sigma_a = eta_ab sigma^b
SIGMA_LOW = np.einsum("ab,bij->aij", ETA, SIGMA)
SIGMA_BAR_LOW = np.einsum("ab,bij->aij", ETA, SIGMA_BAR)

# 2-spinor metric eps = -i sigma^2
EPS2 = -1j * PAULI[1]


def dirac_matrices(sigma=SIGMA, sigma_bar=SIGMA_BAR) -> np.ndarray:
    """Chiral Dirac matrices with ``sigma_bar`` upper-right, ``sigma`` lower-left."""
    g = np.zeros((4, 4, 4), dtype=complex)
    for a in range(4):
        g[a, :2, 2:] = sigma_bar[a]
        g[a, 2:, :2] = sigma[a]
    return g


GAMMA = dirac_matrices()
GAMMA5 = -1j * GAMMA[0] @ GAMMA[1] @ GAMMA[2] @ GAMMA[3]
I4 = np.eye(4, dtype=complex)


def sigma_ab(gamma: np.ndarray = GAMMA) -> np.ndarray:
    """Spin generators ``sigma^{ab} = (g^a g^b - g^b g^a) / 4``."""
    return 0.25 * (
        np.einsum("aij,bjk->abik", gamma, gamma) - np.einsum("bij,ajk->abik", gamma, gamma)
    )


SIGMA_AB = sigma_ab()


def _matnorm(m: np.ndarray) -> float:
    return float(np.max(np.abs(m))) if m.size else 0.0


def clifford_identity_residual(eta: np.ndarray = ETA, eps_up: np.ndarray = EPS_UP) -> float:
    """Max residual of the three-gamma product identity and its sigma^{ab} form.

    Checks, over all index triples,

        g^c g^a g^b = g^c eta^{ab} - g^a eta^{cb} + g^b eta^{ca} + i g5 eps^{cabk} g_k
        g^c s^{ab}  = (eta^{ca} g^b - eta^{cb} g^a + i g5 eps^{cabk} g_k) / 2

    ``eta`` and ``eps_up`` are parameters so a harness can feed in broken
    conventions and confirm the check notices.
    """
    gamma = GAMMA
    gamma_low = np.einsum("kl,lij->kij", eta, gamma)
    sab = sigma_ab(gamma)
    worst = 0.0
    for c, a, b in itertools.product(range(4), repeat=3):
        eps_term = 1j * GAMMA5 @ np.einsum("k,kij->ij", eps_up[c, a, b], gamma_low)
        lhs = gamma[c] @ gamma[a] @ gamma[b]
        rhs = gamma[c] * eta[a, b] - gamma[a] * eta[c, b] + gamma[b] * eta[c, a] + eps_term
        worst = max(worst, _matnorm(lhs - rhs))
        lhs2 = gamma[c] @ sab[a, b]
        rhs2 = 0.5 * (eta[c, a] * gamma[b] - eta[c, b] * gamma[a] + eps_term)
        worst = max(worst, _matnorm(lhs2 - rhs2))
    return worst


def pauli_trace(*mats: np.ndarray) -> complex:
    out = I2
    for m in mats:
        out = out @ m
    return complex(np.trace(out))


def pauli_trace_residual() -> float:
    """Max residual of the four- and two-matrix Pauli trace formulas."""
    sb, s, g = SIGMA_BAR_LOW, SIGMA_LOW, ETA
    worst = 0.0
    for k, l, a, b in itertools.product(range(4), repeat=4):
        sym = g[k, l] * g[a, b] - g[k, a] * g[l, b] + g[k, b] * g[l, a]
        t1 = pauli_trace(sb[k], s[l], sb[a], s[b])
        t2 = pauli_trace(s[k], sb[l], s[a], sb[b])
        worst = max(worst, abs(t1 - 2 * (sym - 1j * EPS_DOWN[k, l, a, b])))
        worst = max(worst, abs(t2 - 2 * (sym + 1j * EPS_DOWN[k, l, a, b])))
    for n, c in itertools.product(range(4), repeat=2):
        worst = max(worst, abs(pauli_trace(sb[n], s[c]) - 2 * g[n, c]))
        worst = max(worst, abs(pauli_trace(s[n], sb[c]) - 2 * g[n, c]))
    return worst


def epsilon_contraction_residual() -> float:
    """Max of ``|eps^{abc}_m eps_{abc}^n + 6 delta_m^n|`` (exact in floating point)."""
    contr = np.einsum("abcm,abcn->mn", EPS_UUUD, EPS_DDDU)
    return float(np.max(np.abs(contr + 6 * np.eye(4))))


def anticommutator_residual() -> float:
    worst = 0.0
    for a, b in itertools.product(range(4), repeat=2):
        ac = GAMMA[a] @ GAMMA[b] + GAMMA[b] @ GAMMA[a]
        worst = max(worst, _matnorm(ac - 2 * ETA[a, b] * I4))
        worst = max(worst, _matnorm(GAMMA5 @ GAMMA[a] + GAMMA[a] @ GAMMA5))
    return worst


def hat(v) -> np.ndarray:
    """Light-cone combinations ``(v0+v3, v0-v3, v1-i v2, v1+i v2)`` of a frame vector.

    Works on the first axis, so ``v`` may carry trailing axes (e.g. a frame of
    coordinate vectors).
    """
    v = np.asarray(v, dtype=complex)
    return np.array([v[0] + v[3], v[0] - v[3], v[1] - 1j * v[2], v[1] + 1j * v[2]])


def unhat(vh) -> np.ndarray:
    vh = np.asarray(vh, dtype=complex)
    return np.array(
        [
            0.5 * (vh[0] + vh[1]),
            0.5 * (vh[2] + vh[3]),
            0.5j * (vh[2] - vh[3]),
            0.5 * (vh[0] - vh[1]),
        ]
    )
