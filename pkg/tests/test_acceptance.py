"""One test per acceptance criterion; each records a PASS/FAIL summary line."""

import itertools
import re
import math
import time

import numpy as np

import conftest
from conftest import cube_points, random_diagonal_tetrad, random_full_tetrad, spherical_points
from tetradcalc import algebra as A
from tetradcalc import checks
from tetradcalc import geometry as G
from tetradcalc import gauge as Gg
from tetradcalc import newman_penrose as P
from tetradcalc import ricci as R
from tetradcalc import spinor as S

TOL = 1e-9


def record(n: int, ok: bool, detail: str) -> None:
    conftest.ACCEPTANCE_LINES[n] = f"criterion {n}: {'PASS' if ok else 'FAIL'} ({detail})"


def fixture_points():
    """Ten points covering r in {1, 2, 5} and theta in {pi/6, pi/3, pi/2}."""
    combos = list(itertools.product((1.0, 2.0, 5.0), (math.pi / 6, math.pi / 3, math.pi / 2)))
    combos.append((2.0, math.pi / 3))
    phis = np.linspace(0.0, 2.5, len(combos))
    return [(0.0, r, th, ph) for (r, th), ph in zip(combos, phis)]


def cartesian_data(p):
    nf = P.null_frame(G.frame_at(G.builtin("cartesian_in_spherical"), p))
    return nf, P.spin_coefficients(nf)


def test_criterion_1_spherical_coefficients():
    g = Gg.cartesian_to_spherical_gauge()
    start = time.perf_counter()
    worst: dict[str, float] = {}
    flipped: dict[str, float] = {}
    for p in fixture_points():
        _, r, th, _ = p
        nf, s = cartesian_data(p)
        lt = Gg.transform_letters(s, nf, g, p)
        cot = 1 / math.tan(th)
        expected = {
            "L": np.zeros(3), "N": np.zeros(3),
            "M": np.array([2 / r, 0, cot / r]),
            "M_bar": np.array([0, 2 / r, cot / r]),
        }  # fmt: skip
        for fam, exp in expected.items():
            got = getattr(lt, fam)
            for i in range(3):
                key = f"{fam}{i + 1}"
                worst[key] = max(worst.get(key, 0.0), abs(got[i] - exp[i]))
                flipped[key] = max(flipped.get(key, 0.0), abs(got[i] + exp[i]))
    elapsed = time.perf_counter() - start
    bad = {k: v for k, v in worst.items() if v >= TOL}
    ok = not bad and elapsed < 1.0
    detail = f"{len(worst) - len(bad)}/12 coefficients within {TOL:g}, {elapsed:.3f} s"
    if bad:
        detail += "; off: " + ", ".join(
            f"{k} err {v:.3g}" + (" (equals minus the expected value)" if flipped[k] < TOL else "") for k, v in bad.items()
        )
    record(1, ok, detail)
    assert elapsed < 1.0
    assert not bad, detail


def test_criterion_2_kernels():
    g = Gg.cartesian_to_spherical_gauge()
    worst = 0.0
    for p in fixture_points():
        _, r, th, ph = p
        nf, s = cartesian_data(p)
        k = Gg.gauge_kernels(s, nf, g, p)
        em, ep = np.exp(-1j * ph), np.exp(1j * ph)
        sn, cs, cot = math.sin(th), math.cos(th), 1 / math.tan(th)
        expected = np.concatenate(
            [
                [-sn / r, -sn / r, 0],
                [sn / r, sn / r, 0],
                [(1 + cs) * em / r, (-1 + cs) * em / r, cot * em / r],
                [(-1 + cs) * ep / r, (1 + cs) * ep / r, -cot * ep / r],
            ]
        )
        worst = max(worst, float(np.max(np.abs(k.as_array() - expected))))
    record(2, worst < TOL, f"max kernel error {worst:.2e} over 10 points")
    assert worst < TOL


def test_criterion_3_c_vanishes_for_diagonal(rng):
    start = time.perf_counter()
    worst = 0.0
    for _ in range(20):
        field = random_diagonal_tetrad(rng)
        for p in cube_points(rng, 50):
            worst = max(worst, float(np.max(np.abs(R.ricci_at(G.frame_at(field, p)).C))))
    elapsed = time.perf_counter() - start
    ok = worst < TOL and elapsed < 5.0
    record(3, ok, f"max |C| {worst:.2e} over 20 tetrads x 50 points, {elapsed:.2f} s")
    assert ok


def test_criterion_4_decomposition(rng):
    worst: dict[str, float] = {}
    for name in ("schwarzschild_diagonal", "cartesian_in_spherical"):
        field = G.builtin(name)
        for p in spherical_points(rng, 50, r=(2.5, 20)):
            for k, v in R.decomposition_residuals(R.ricci_at(G.frame_at(field, p))).items():
                worst[k] = max(worst.get(k, 0.0), v)
    top = max(worst.values())
    record(4, top < TOL, f"{len(worst)} residuals, max {top:.2e}")
    assert top < TOL


def test_criterion_5_bridge_and_assemblies(rng):
    worst_bridge = worst_struct = 0.0
    n_rel = 0
    for name in G.BUILTINS:
        field = G.builtin(name)
        pts = spherical_points(rng, 50, r=(2.5, 20)) if field.chart.names[1] == "r" else cube_points(rng, 50)
        for p in pts:
            d = checks.point_data(field, p)
            rel = P.bridge_relations(d.hat, d.spin)
            n_rel = sum(1 for k in rel if re.fullmatch(r"B\d[+-]iC\d", k))
            worst_bridge = max(worst_bridge, max(rel.values()))
            up_np, lo_np = P.assemble_dirac_np(d.null, d.spin)
            h = P.hat_components(d.ricci, d.frame, em=np.zeros(4))
            worst_struct = max(
                worst_struct,
                up_np.distance(P.assemble_dirac_bc(h, chirality="upper")),
                lo_np.distance(P.assemble_dirac_bc(h, chirality="lower")),
            )
    ok = n_rel == 8 and worst_bridge < TOL and worst_struct < TOL
    record(5, ok, f"{n_rel} relations plus solved forms, max bridge residual {worst_bridge:.2e}, assembly mismatch {worst_struct:.2e}")
    assert ok


def test_criterion_6_reconstruction(rng):
    worst_syn = worst_geo = 0.0
    for _ in range(50):
        x = rng.normal(size=(4, 4, 4))
        gamma = x - x.transpose(1, 0, 2)
        rec = S.reconstruct_ricci(S.forward_map(gamma), keep_imag=True)
        worst_syn = max(worst_syn, float(np.max(np.abs(rec - gamma))))
    for field, pts in (
        (G.builtin("schwarzschild_diagonal"), spherical_points(rng, 20, r=(3, 20))),
        (G.builtin("cartesian_in_spherical"), spherical_points(rng, 20)),
        (random_full_tetrad(rng), cube_points(rng, 20)),
    ):
        for p in pts:
            fr = G.frame_at(field, p)
            rec = S.reconstruct_ricci(S.gamma_spinor(P.null_frame(fr)), keep_imag=True)
            worst_geo = max(worst_geo, float(np.max(np.abs(rec - R.ricci_at(fr).gamma))))
    ok = worst_syn < TOL and worst_geo < TOL and abs(abs(S.RECONSTRUCTION_A) - 1 / 16) == 0
    record(
        6,
        ok,
        f"synthetic {worst_syn:.2e}, geometries {worst_geo:.2e}; |A| = 1/16 with A = {S.RECONSTRUCTION_A:+g} "
        "in this sign convention",
    )
    assert ok


def _local_gauge(rng, coords):
    def term(var):
        return f"{rng.uniform(-0.4, 0.4):.5f}*sin({rng.uniform(0.2, 1.2):.5f}*{var}+{rng.uniform(0, 3):.5f})"

    v = [coords[int(k)] for k in rng.integers(4, size=4)]
    tri = Gg.SpinorGaugeField("1", "1", "0", f"{term(v[0])}+i*{term(v[1])}", coords=coords)
    phase = f"{term(v[2])}+i*{term(v[3])}"
    diag = Gg.SpinorGaugeField(f"exp({phase})", f"exp(-({phase}))", "0", "0", coords=coords)
    const = Gg.ConstantGauge(Gg.random_sl2c(rng))
    return Gg.ProductGauge(const, Gg.ProductGauge(diag, tri))


def test_criterion_7_commuting_square(rng):
    worst: dict[str, float] = {}
    geometries = (
        (G.builtin("schwarzschild_diagonal"), ("t", "r", "th", "ph"), lambda n: spherical_points(rng, n, r=(3, 20))),
        (random_full_tetrad(rng), ("x0", "x1", "x2", "x3"), lambda n: cube_points(rng, n)),
    )
    for field, coords, sampler in geometries:
        for _ in range(10):
            g = _local_gauge(rng, coords)
            for p in sampler(50):
                for k, v in checks.commuting_square(field, g, p).items():
                    worst[k] = max(worst.get(k, 0.0), v)
    top = max(worst.values())
    detail = ", ".join(f"{k} {v:.1e}" for k, v in worst.items() if k in ("B", "C", "spin_coefficients", "Gamma"))
    record(7, top < TOL, f"10 local gauges x 50 points x 2 geometries; {detail}")
    assert top < TOL


def test_criterion_8_algebraic_identities(rng):
    cliff = A.clifford_identity_residual()
    pauli = A.pauli_trace_residual()
    eps = A.epsilon_contraction_residual()
    lam = 0.0
    fields = [(G.builtin(n), n) for n in G.BUILTINS] + [(random_full_tetrad(rng), "random")]
    for field, name in fields:
        pts = spherical_points(rng, 10, r=(2.5, 20)) if field.chart.names[1] == "r" else cube_points(rng, 10)
        for p in pts:
            lam = max(lam, R.lambda_identity_residual(R.ricci_at(G.frame_at(field, p))))
    ok = cliff < 1e-14 and pauli < 1e-14 and eps == 0 and lam < TOL
    record(8, ok, f"clifford/triple {cliff:.1e}, pauli {pauli:.1e}, epsilon {eps:g}, lambda identity {lam:.1e}")
    assert ok


def test_criterion_9_eight_combinations(rng):
    def scalars(gamma):
        return np.concatenate([m.ravel() for m in P.operator_scalars_from_gamma(gamma)])

    unchanged = 0.0
    changed_B = changed_C = np.inf
    for _ in range(20):
        x = rng.normal(size=(4, 4, 4))
        gamma = x - x.transpose(1, 0, 2)
        base = scalars(gamma)
        y = rng.normal(size=(4, 4, 4))
        dec = R.decompose(y - y.transpose(1, 0, 2))
        unchanged = max(unchanged, float(np.max(np.abs(scalars(gamma + dec.E_part) - base))))
        changed_B = min(changed_B, float(np.max(np.abs(scalars(gamma + dec.B_part) - base))))
        changed_C = min(changed_C, float(np.max(np.abs(scalars(gamma + dec.C_part) - base))))
    ok = unchanged < 1e-12 and changed_B > 1e-6 and changed_C > 1e-6
    record(9, ok, f"E perturbation moves operators by {unchanged:.1e}; B and C perturbations by at least {min(changed_B, changed_C):.2f}")
    assert ok
