"""Invariant suites run by ``tetradcalc check``.

Each suite maps a point's derived data to named residuals; a suite passes
when every residual is at most the tolerance.  Point-independent suites
(the fixed algebra) are evaluated once.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import algebra, gauge, geometry, newman_penrose as npf, ricci, spinor


@dataclass
class PointData:
    point: np.ndarray
    frame: geometry.FrameJet
    ricci: ricci.RicciAtPoint
    null: npf.NullFrameJet
    spin: npf.SpinCoefficientSet
    hat: npf.HatComponents
    gamma_spinor: spinor.GammaSpinor
    Gamma: spinor.GammaSymmetric


def point_data(field, point, diff: str = "dual") -> PointData:
    fr = geometry.frame_at(field, point, diff)
    r = ricci.ricci_at(fr)
    nf = npf.null_frame(fr)
    g4 = spinor.gamma_spinor(nf)
    return PointData(
        point=np.asarray(point, dtype=float),
        frame=fr,
        ricci=r,
        null=nf,
        spin=npf.spin_coefficients(nf),
        hat=npf.hat_components(r, fr),
        gamma_spinor=g4,
        Gamma=spinor.gamma_symmetric(g4),
    )


def _amax(x) -> float:
    return float(np.max(np.abs(x))) if np.size(x) else 0.0


@dataclass
class SuiteResult:
    name: str
    residuals: dict[str, float] = field(default_factory=dict)
    worst_point: tuple | None = None
    skipped: str | None = None

    def passed(self, tol: float) -> bool:
        return self.skipped is not None or all(v <= tol for v in self.residuals.values())

    def record(self, name: str, value: float, point) -> None:
        if value > self.residuals.get(name, -1.0):
            self.residuals[name] = float(value)
            if value == max(self.residuals.values()):
                self.worst_point = tuple(float(x) for x in point)


def algebra_suite() -> dict[str, float]:
    return {
        "clifford_triple_product": algebra.clifford_identity_residual(),
        "pauli_traces": algebra.pauli_trace_residual(),
        "epsilon_contraction": algebra.epsilon_contraction_residual(),
        "anticommutators": algebra.anticommutator_residual(),
    }


def frame_suite(d: PointData) -> dict[str, float]:
    return {
        "orthonormality": geometry.orthonormality_residual(d.frame),
        "metric_compatibility": geometry.metric_compatibility_residual(d.frame),
    }


def lambda_suite(d: PointData) -> dict[str, float]:
    return {"gamma_from_lambda": ricci.lambda_identity_residual(d.ricci)}


def cyclic_suite(d: PointData) -> dict[str, float]:
    return {"c_from_lambda": _amax(ricci.c_from_lambda(d.ricci.lam) - d.ricci.C)}


def c_zero_suite(d: PointData) -> dict[str, float]:
    return {"max_abs_C": _amax(d.ricci.C)}


def decomposition_suite(d: PointData) -> dict[str, float]:
    return ricci.decomposition_residuals(d.ricci)


def b_normalization_suite(d: PointData) -> dict[str, float]:
    return {"B_trace_vs_B_dirac": _amax(d.ricci.B_trace - ricci.KAPPA_B * d.ricci.B_dirac)}


def null_suite(d: PointData) -> dict[str, float]:
    return {"null_normalization": npf.null_normalization_residual(d.null)}


def sigma_suite(d: PointData) -> dict[str, float]:
    sig, sigb = npf.sigma_connections(d.null)
    oracle = npf.bispinor_connection(d.frame)
    return {
        "sigma_vs_bispinor": _amax(sig - oracle[:, :2, :2]),
        "sigma_bar_vs_bispinor": _amax(sigb - oracle[:, 2:, 2:]),
        "bispinor_off_diagonal": _amax(oracle[:, :2, 2:]) + _amax(oracle[:, 2:, :2]),
        "sigma_traceless": _amax(np.trace(sig, axis1=1, axis2=2)) + _amax(np.trace(sigb, axis1=1, axis2=2)),
    }


def spin_coefficient_suite(d: PointData) -> dict[str, float]:
    via_gamma = npf.spin_coefficients_from_gamma(d.ricci.gamma)
    return {"contraction_vs_rotation_coefficients": _amax(d.spin.as_array() - via_gamma.as_array())}


def bridge_suite(d: PointData) -> dict[str, float]:
    out = {"hat_reality": npf.hat_reality_residual(d.hat)}
    out.update({f"bridge_{k}": v for k, v in npf.bridge_relations(d.hat, d.spin).items()})
    return out


def assembly_suite(d: PointData) -> dict[str, float]:
    h = npf.hat_components(d.ricci, d.frame, em=np.zeros(4))
    up_np, lo_np = npf.assemble_dirac_np(d.null, d.spin)
    up_bc = npf.assemble_dirac_bc(h, chirality="upper")
    lo_bc = npf.assemble_dirac_bc(h, chirality="lower")
    D = npf.dirac_operator_4x4_scalar(d.frame)
    return {
        "upper_np_vs_bc": up_np.distance(up_bc),
        "lower_np_vs_bc": lo_np.distance(lo_bc),
        "upper_vs_spin_connection": _amax(D[2:, :2] - up_bc.normalized().scalars / 1j),
        "lower_vs_spin_connection": _amax(D[:2, 2:] - lo_bc.normalized().scalars / 1j),
    }


def spinor_suite(d: PointData) -> dict[str, float]:
    rec = spinor.reconstruct_ricci(d.gamma_spinor, keep_imag=True)
    return {
        "reconstruction": _amax(rec.real - d.ricci.gamma),
        "reconstruction_imaginary": _amax(rec.imag),
        "conjugate_partner": spinor.conjugation_residual(d.gamma_spinor),
        "Gamma_symmetry": d.Gamma.antisymmetry_residual(),
        "Gamma_vs_spin_coefficients": _amax(spinor.gamma_slot_map(d.Gamma).as_array() - d.spin.as_array()),
    }


def commuting_square(field, g, point, diff: str = "dual") -> dict[str, float]:
    """Law-transformed minus recomputed values for every transformable quantity."""
    d = point_data(field, point, diff)
    d2 = point_data(gauge.transform_tetrad(field, g), point, diff)
    law_s = gauge.transform_spin_coefficients(d.spin, d.null, g, point)
    law_G = gauge.transform_gamma_symmetric(d.Gamma, g, d.null, point)
    return {
        "B": _amax(gauge.transform_B(d.ricci.B_dirac, g, d.frame) - d2.ricci.B_dirac),
        "C": _amax(gauge.transform_C(d.ricci.C, g, d.frame) - d2.ricci.C),
        "rotation_coefficients": _amax(gauge.transform_rotation_coefficients(d.ricci.gamma, g, d.frame) - d2.ricci.gamma),
        "spin_coefficients": _amax(law_s.as_array() - d2.spin.as_array()),
        "Gamma": _amax(law_G.Gamma - d2.Gamma.Gamma),
        "Gamma_vs_law_coefficients": _amax(spinor.gamma_slot_map(law_G).as_array() - law_s.as_array()),
        "metric_invariance": _amax(d.frame.g - d2.frame.g),
    }


POINT_SUITES = {
    "frame": frame_suite,
    "lambda_identity": lambda_suite,
    "cyclic_C": cyclic_suite,
    "C_vanishes_diagonal": c_zero_suite,
    "decomposition": decomposition_suite,
    "B_normalization": b_normalization_suite,
    "null_tetrad": null_suite,
    "sigma_connections": sigma_suite,
    "spin_coefficients": spin_coefficient_suite,
    "bridge": bridge_suite,
    "operator_assemblies": assembly_suite,
    "spinor_round_trip": spinor_suite,
}

SUITE_NAMES = ("algebra", *POINT_SUITES, "gauge_commuting_square")


def run_suites(field, points, gauges, diff: str = "dual") -> list[SuiteResult]:
    """Run all fourteen suites over ``points``; ``gauges`` feed the commuting square."""
    results = {name: SuiteResult(name) for name in SUITE_NAMES}
    for k, v in algebra_suite().items():
        results["algebra"].record(k, v, (np.nan,) * 4)
    if not getattr(field, "is_diagonal", False):
        results["C_vanishes_diagonal"].skipped = "geometry is not diagonal"
    for p in points:
        d = point_data(field, p, diff)
        for name, suite in POINT_SUITES.items():
            if results[name].skipped:
                continue
            for k, v in suite(d).items():
                results[name].record(k, v, p)
        for j, g in enumerate(gauges):
            for k, v in commuting_square(field, g, p, diff).items():
                results["gauge_commuting_square"].record(f"gauge{j}_{k}", v, p)
    if not gauges:
        results["gauge_commuting_square"].skipped = "no gauge"
    return [results[n] for n in SUITE_NAMES]
