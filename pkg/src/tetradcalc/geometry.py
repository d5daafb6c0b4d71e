"""Charts, tetrad fields and their first jets.

A tetrad field is specified by its contravariant components ``e_(a)^alpha``
(row ``a`` is the frame index, column ``alpha`` the coordinate index). Every
derivative used downstream comes from :func:`frame_at`, which evaluates the
tetrad and its first partials at one point and derives the metric,
Christoffel symbols and the covariant derivative of the covariant tetrad from
those alone.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Mapping, Sequence

import numpy as np

from . import exprlang as X
from .algebra import ETA

FD_STEP = 1e-5
COND_LIMIT = 1e12
REAL_TOL = 1e-12


class GeometryError(ValueError):
    pass


class SingularTetradError(GeometryError):
    pass


class PointDomainError(GeometryError):
    pass


@dataclass(frozen=True)
class Chart:
    names: tuple[str, str, str, str] = ("x0", "x1", "x2", "x3")
    domains: tuple = (None, None, None, None)

    def __post_init__(self):
        if len(self.names) != 4 or len(set(self.names)) != 4:
            raise GeometryError(f"a chart needs four distinct coordinate names, got {self.names}")

    def check(self, point) -> None:
        for name, dom, x in zip(self.names, self.domains, point):
            if dom is not None and not (dom[0] < x < dom[1]):
                raise PointDomainError(f"{name}={x} outside the chart domain ({dom[0]}, {dom[1]})")


CARTESIAN = Chart(("t", "x", "y", "z"))
SPHERICAL = Chart(("t", "r", "th", "ph"), (None, (0.0, math.inf), (0.0, math.pi), None))


class TetradField:
    """Tetrad given by expressions.

    ``kind="diagonal"`` takes four scale factors ``h`` with
    ``e_(a)alpha = diag(h0, h1, h2, h3)``, i.e. ``e_(a)^alpha = diag(1/h)``;
    ``kind="full"`` takes sixteen expressions for ``e_(a)^alpha`` row by row.
    """

    def __init__(
        self,
        chart: Chart,
        kind: str,
        exprs: Sequence,
        params: Mapping[str, float] | None = None,
        em_potential: Sequence | None = None,
        name: str | None = None,
    ):
        self.chart = chart
        self.kind = kind
        self.params = dict(params or {})
        self.name = name
        parse = lambda s: s if not isinstance(s, str) else X.parse(s, chart.names)
        if kind == "diagonal":
            if len(exprs) != 4:
                raise GeometryError("a diagonal tetrad needs four scale factors")
            self.exprs = tuple(parse(s) for s in exprs)
        elif kind == "full":
            rows = [list(r) for r in exprs]
            if len(rows) != 4 or any(len(r) != 4 for r in rows):
                raise GeometryError("a full tetrad needs a 4x4 array of expressions")
            self.exprs = tuple(tuple(parse(s) for s in r) for r in rows)
        else:
            raise GeometryError(f"unknown tetrad kind {kind!r}")
        self.em_potential = None if em_potential is None else tuple(parse(s) for s in em_potential)
        for e in self._all_exprs():
            X.bind(e, self.params)

    @property
    def is_diagonal(self) -> bool:
        return self.kind == "diagonal"

    def _all_exprs(self):
        if self.kind == "diagonal":
            yield from self.exprs
        else:
            for row in self.exprs:
                yield from row
        if self.em_potential is not None:
            yield from self.em_potential

    def _eval(self, expr, point):
        try:
            return X.eval_jet(expr, point, self.params)
        except X.EvalDomainError as exc:
            raise PointDomainError(str(exc)) from exc

    def jet(self, point) -> tuple[np.ndarray, np.ndarray]:
        """``e_(a)^alpha`` and ``d_beta e_(a)^alpha`` (axes ``a, alpha, beta``)."""
        self.chart.check(point)
        e = np.zeros((4, 4), dtype=complex)
        de = np.zeros((4, 4, 4), dtype=complex)
        if self.kind == "diagonal":
            for a, h in enumerate(self.exprs):
                hj = self._eval(h, point)
                if hj.value == 0:
                    raise SingularTetradError(f"scale factor h{a} vanishes at {tuple(point)}")
                inv = 1.0 / hj
                e[a, a] = inv.value
                de[a, a] = inv.partials
        else:
            for a in range(4):
                for al in range(4):
                    j = self._eval(self.exprs[a][al], point)
                    e[a, al] = j.value
                    de[a, al] = j.partials
        return _real(e, "tetrad"), _real(de, "tetrad partials")

    def values(self, point) -> np.ndarray:
        return self.jet(point)[0]

    def em_at(self, point) -> np.ndarray | None:
        if self.em_potential is None:
            return None
        return np.array([self._eval(e, point).value for e in self.em_potential])

    def to_config(self) -> dict:
        names = self.chart.names
        if self.kind == "diagonal":
            tetrad = {"kind": "diagonal", "h": [X.to_source(e, names) for e in self.exprs]}
        else:
            tetrad = {"kind": "full", "e": [[X.to_source(e, names) for e in r] for r in self.exprs]}
        cfg = {"chart": list(names), "tetrad": tetrad, "params": dict(self.params)}
        if self.em_potential is not None:
            cfg["em_potential"] = [X.to_source(e, names) for e in self.em_potential]
        return cfg


def _real(arr: np.ndarray, what: str) -> np.ndarray:
    if np.any(np.abs(arr.imag) > REAL_TOL * max(1.0, float(np.max(np.abs(arr))))):
        raise GeometryError(f"{what} must be real-valued")
    return arr.real.copy()


def fd_jet(values, point, step: float = FD_STEP) -> tuple[np.ndarray, np.ndarray]:
    """Central differences with one level of Richardson extrapolation.

    ``values(point)`` returns an array; the result has an extra trailing axis
    for the derivative direction.
    """
    point = np.asarray(point, dtype=float)
    base = np.asarray(values(point))
    out = np.zeros(base.shape + (4,), dtype=base.dtype)
    for k in range(4):
        d = []
        for h in (step, step / 2):
            dx = np.zeros(4)
            dx[k] = h
            d.append((np.asarray(values(point + dx)) - np.asarray(values(point - dx))) / (2 * h))
        out[..., k] = (4 * d[1] - d[0]) / 3
    return base, out


@dataclass
class FrameJet:
    """Tetrad, metric and connection data at a single point.

    Index layout: ``e_up[a, alpha]``, ``e_up_partials[a, alpha, beta] = d_beta e_(a)^alpha``,
    ``g_partials[alpha, beta, gamma] = d_gamma g_{alpha beta}``,
    ``christoffel[rho, alpha, beta] = Gamma^rho_{alpha beta}``,
    ``cov_deriv_down[a, beta, alpha] = e_(a)beta;alpha``.
    """

    point: np.ndarray
    e_up: np.ndarray
    e_up_partials: np.ndarray
    e_down: np.ndarray
    e_down_partials: np.ndarray
    g: np.ndarray
    g_inv: np.ndarray
    g_partials: np.ndarray
    christoffel: np.ndarray
    cov_deriv_down: np.ndarray
    em: np.ndarray | None = field(default=None)


def frame_from_jet(point, e, de, em=None) -> FrameJet:
    cond = np.linalg.cond(e)
    if not np.isfinite(cond) or cond > COND_LIMIT:
        raise SingularTetradError(f"tetrad is singular at {tuple(point)} (condition number {cond:.3g})")
    g_inv = np.einsum("ab,ai,bj->ij", ETA, e, e)
    dg_inv = np.einsum("ab,aik,bj->ijk", ETA, de, e) + np.einsum("ab,ai,bjk->ijk", ETA, e, de)
    g = np.linalg.inv(g_inv)
    dg = -np.einsum("im,mnk,nj->ijk", g, dg_inv, g)
    # Gamma^r_{ab} = 1/2 g^{rs} (d_a g_{sb} + d_b g_{sa} - d_s g_{ab})
    lower = 0.5 * (np.einsum("sba->sab", dg) + np.einsum("sab->sab", dg) - np.einsum("abs->sab", dg))
    chris = np.einsum("rs,sab->rab", g_inv, lower)
    e_down = np.einsum("ij,aj->ai", g, e)
    de_down = np.einsum("ijk,aj->aik", dg, e) + np.einsum("ij,ajk->aik", g, de)
    cov = de_down - np.einsum("rba,cr->cba", chris, e_down)
    return FrameJet(
        point=np.asarray(point, dtype=float),
        e_up=e,
        e_up_partials=de,
        e_down=e_down,
        e_down_partials=de_down,
        g=g,
        g_inv=g_inv,
        g_partials=dg,
        christoffel=chris,
        cov_deriv_down=cov,
        em=em,
    )


def frame_at(field, point, diff: str = "dual") -> FrameJet:
    """Evaluate ``field`` and everything derived from its first jet at ``point``.

    ``diff="dual"`` uses exact jets; ``diff="fd"`` differentiates tetrad values
    numerically and is kept as an independent cross-check.
    """
    point = np.asarray(point, dtype=float)
    if diff == "dual":
        e, de = field.jet(point)
    elif diff == "fd":
        field.chart.check(point)
        e, de = fd_jet(field.values, point)
    else:
        raise ValueError(f"unknown diff mode {diff!r}")
    em = field.em_at(point) if field.em_potential is not None else None
    return frame_from_jet(point, e, de, em)


def orthonormality_residual(frame: FrameJet) -> float:
    gram = np.einsum("ij,ai,bj->ab", frame.g, frame.e_up, frame.e_up)
    return float(np.max(np.abs(gram - ETA)))


def metric_compatibility_residual(frame: FrameJet) -> float:
    """``max |g_{alpha beta; gamma}|``."""
    chris, g = frame.christoffel, frame.g
    cov = frame.g_partials - np.einsum("rac,rb->abc", chris, g) - np.einsum("rbc,ar->abc", chris, g)
    return float(np.max(np.abs(cov)))


# catalog --------------------------------------------------------------------

BUILTINS = ("minkowski_cartesian", "minkowski_spherical_diagonal", "cartesian_in_spherical", "schwarzschild_diagonal")


def builtin(name: str, params: Mapping[str, float] | None = None) -> TetradField:
    """Named geometries; ``schwarzschild_diagonal`` takes the mass ``M`` (default 1)."""
    params = dict(params or {})
    if name == "minkowski_cartesian":
        return TetradField(CARTESIAN, "diagonal", ["1", "1", "1", "1"], params, name=name)
    if name == "minkowski_spherical_diagonal":
        return TetradField(SPHERICAL, "diagonal", ["1", "1", "r", "r*sin(th)"], params, name=name)
    if name == "schwarzschild_diagonal":
        params.setdefault("M", 1.0)
        h = ["sqrt(1-2*M/r)", "1/sqrt(1-2*M/r)", "r", "r*sin(th)"]
        return TetradField(SPHERICAL, "diagonal", h, params, name=name)
    if name == "cartesian_in_spherical":
        # e_(a)^mu = d x^mu / d x^a : Cartesian frame expressed in spherical coordinates
        e = [
            ["1", "0", "0", "0"],
            ["0", "sin(th)*cos(ph)", "cos(th)*cos(ph)/r", "-sin(ph)/(r*sin(th))"],
            ["0", "sin(th)*sin(ph)", "cos(th)*sin(ph)/r", "cos(ph)/(r*sin(th))"],
            ["0", "cos(th)", "-sin(th)/r", "0"],
        ]
        return TetradField(SPHERICAL, "full", e, params, name=name)
    raise GeometryError(f"unknown builtin geometry {name!r}; known: {', '.join(BUILTINS)}")


def field_from_config(cfg: Mapping) -> TetradField:
    """Build a tetrad field from a geometry config mapping.

    Either ``{"builtin": name, "params": {...}}`` or
    ``{"chart": [4 names], "tetrad": {"kind": ..., "h"|"e": ...}, "params": {...},
    "em_potential": [4 expr]}``.
    """
    if "builtin" in cfg:
        f = builtin(cfg["builtin"], cfg.get("params"))
        if cfg.get("em_potential") is not None:
            f = TetradField(f.chart, f.kind, f.exprs, f.params, cfg["em_potential"], f.name)
        return f
    try:
        names = tuple(cfg["chart"])
        tet = cfg["tetrad"]
        kind = tet["kind"]
        exprs = tet["h"] if kind == "diagonal" else tet["e"]
    except (KeyError, TypeError) as exc:
        raise GeometryError(f"malformed geometry config: missing {exc}") from None
    domains = tuple(tuple(d) if d is not None else None for d in cfg.get("domains", (None,) * 4))
    return TetradField(Chart(names, domains), kind, exprs, cfg.get("params"), cfg.get("em_potential"))
