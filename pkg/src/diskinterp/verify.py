"""Independent numerical audits of interpolants and peak functions.

Each check re-measures one certificate-level claim on its own grid or sample
and records the grid parameters, tolerance, and seed it used, so a report is
reproducible and tightenable. Checks are pure and deterministic given their
parameters.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Mapping, Union

import numpy as np

from .circle import BoundaryData, FiniteBoundarySet
from .fatou import FatouFunction, eval_fatou
from .interpolate import Interpolant, eval_interpolant

Evaluable = Union[FatouFunction, Interpolant]

DEFAULT_GRID_SIZE = 1 << 16
DEFAULT_SUP_TOL = 1e-9
DEFAULT_IDENTITY_TOL = 1e-10
MIN_SUP_CHECK_GRID = 1 << 12
MIN_QUAD_POINTS = 1 << 10
MIN_INTERIOR_SAMPLES = 1000
INTERIOR_SHRINK = 1e-9  # random interior samples stay within radius 1 - this


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    measured: float
    threshold: float
    params: Mapping[str, object]


@dataclass(frozen=True)
class VerificationReport:
    checks: tuple[CheckResult, ...]

    @property
    def overall(self) -> bool:
        return all(c.passed for c in self.checks)

    def failed(self) -> tuple[CheckResult, ...]:
        return tuple(c for c in self.checks if not c.passed)


def _evaluate(obj: Evaluable, zs):
    if isinstance(obj, Interpolant):
        return eval_interpolant(obj, zs)
    if isinstance(obj, FatouFunction):
        return eval_fatou(obj, zs)
    raise TypeError(f"cannot evaluate object of type {type(obj).__name__}")


def _boundary_max(obj: Evaluable, grid_size: int) -> float:
    zs = np.exp(2j * math.pi * np.arange(grid_size) / grid_size)
    return float(np.max(np.abs(_evaluate(obj, zs))))


def check_peak_values(
    obj: Evaluable,
    boundary_set: FiniteBoundarySet,
    data: BoundaryData | None,
    tol: float,
) -> CheckResult:
    """Largest mismatch on the boundary set against its targets.

    For a peak function the targets are identically 1 and the threshold is
    ``tol`` itself; for an interpolant the targets are the data values and
    the threshold adds the certificate's truncation bound.
    """
    if tol < 0.0:
        raise ValueError("tol must be non-negative")
    zs = boundary_set.complex_points()
    vals = np.asarray(_evaluate(obj, zs))
    if isinstance(obj, Interpolant):
        if data is None:
            raise ValueError("interpolant check needs the boundary data")
        targets = data.value_array()
        threshold = obj.certificate.residual_bound_theoretical + tol
    else:
        targets = np.ones(len(boundary_set), dtype=complex)
        threshold = tol
    measured = float(np.max(np.abs(vals - targets)))
    return CheckResult(
        name="peak_values",
        passed=measured <= threshold,
        measured=measured,
        threshold=threshold,
        params={"n_points": len(boundary_set), "tol": float(tol)},
    )


def check_boundary_sup(
    obj: Evaluable, bound: float, grid_size: int, tol: float
) -> CheckResult:
    """Maximum modulus over a uniform boundary grid against ``bound + tol``."""
    if grid_size < MIN_SUP_CHECK_GRID:
        raise ValueError(f"grid_size must be >= {MIN_SUP_CHECK_GRID}")
    measured = _boundary_max(obj, grid_size)
    threshold = float(bound) + float(tol)
    return CheckResult(
        name="boundary_sup",
        passed=measured <= threshold,
        measured=measured,
        threshold=threshold,
        params={"grid_size": int(grid_size), "bound": float(bound), "tol": float(tol)},
    )


def check_max_modulus(
    obj: Evaluable,
    interior_samples: int,
    grid_size: int,
    tol: float,
    seed: int = 0,
) -> CheckResult:
    """Interior maximum (seeded uniform disk samples) against the boundary
    grid maximum plus ``tol``; an analyticity witness."""
    if interior_samples < MIN_INTERIOR_SAMPLES:
        raise ValueError(f"interior_samples must be >= {MIN_INTERIOR_SAMPLES}")
    if grid_size < MIN_SUP_CHECK_GRID:
        raise ValueError(f"grid_size must be >= {MIN_SUP_CHECK_GRID}")
    rng = np.random.default_rng(seed)
    radii = (1.0 - INTERIOR_SHRINK) * np.sqrt(rng.uniform(size=interior_samples))
    phases = rng.uniform(0.0, 2.0 * math.pi, size=interior_samples)
    zs = radii * np.exp(1j * phases)
    measured = float(np.max(np.abs(_evaluate(obj, zs))))
    threshold = _boundary_max(obj, grid_size) + float(tol)
    return CheckResult(
        name="max_modulus",
        passed=measured <= threshold,
        measured=measured,
        threshold=threshold,
        params={
            "interior_samples": int(interior_samples),
            "grid_size": int(grid_size),
            "tol": float(tol),
            "seed": int(seed),
        },
    )


def check_cauchy_identity(
    obj: Evaluable,
    z0: complex,
    radius: float,
    quad_points: int,
    tol: float,
    name: str = "cauchy_identity",
) -> CheckResult:
    """Contour mean (1/2pi) int g(r e^(it)) r e^(it)/(r e^(it) - z0) dt
    against g(z0).

    On a uniform periodic grid the trapezoid rule collapses to the plain
    node average, which converges geometrically for integrands analytic in
    a strip around the contour.
    """
    z0 = complex(z0)
    if not (abs(z0) < radius < 1.0):
        raise ValueError("need |z0| < radius < 1")
    if quad_points < MIN_QUAD_POINTS:
        raise ValueError(f"quad_points must be >= {MIN_QUAD_POINTS}")
    w = radius * np.exp(2j * math.pi * np.arange(quad_points) / quad_points)
    mean = np.mean(_evaluate(obj, w) * w / (w - z0))
    measured = float(abs(mean - _evaluate(obj, z0)))
    return CheckResult(
        name=name,
        passed=measured <= tol,
        measured=measured,
        threshold=float(tol),
        params={
            "z0_re": float(z0.real),
            "z0_im": float(z0.imag),
            "radius": float(radius),
            "quad_points": int(quad_points),
            "tol": float(tol),
        },
    )


def cauchy_sample_points(
    seed: int, count: int
) -> tuple[tuple[complex, float], ...]:
    """Seeded (z0, radius) pairs with radius - |z0| >= 0.1 and radius < 0.9."""
    rng = np.random.default_rng(seed)
    pairs = []
    for _ in range(count):
        radius = float(rng.uniform(0.3, 0.9))
        r0 = (radius - 0.1) * math.sqrt(float(rng.uniform()))
        phase = float(rng.uniform(0.0, 2.0 * math.pi))
        pairs.append((r0 * complex(math.cos(phase), math.sin(phase)), radius))
    return tuple(pairs)


def verify_interpolant(
    interpolant: Interpolant,
    data: BoundaryData,
    *,
    grid_size: int = DEFAULT_GRID_SIZE,
    seed: int = 0,
    sup_tol: float = DEFAULT_SUP_TOL,
    residual_tol: float = 1e-12,
    identity_tol: float = DEFAULT_IDENTITY_TOL,
    interior_samples: int = 10_000,
    quad_points: int = 4096,
    cauchy_pairs: int = 10,
) -> VerificationReport:
    """Full audit of a pipeline output: value matching on the set, boundary
    sup against sup + eta, the maximum-modulus inequality, and a batch of
    seeded contour-integral identities."""
    cert = interpolant.certificate
    checks = [
        check_peak_values(interpolant, data.set, data, residual_tol),
        check_boundary_sup(
            interpolant, cert.sup_norm_input + cert.eta, grid_size, sup_tol
        ),
        check_max_modulus(
            interpolant, interior_samples, grid_size, sup_tol, seed=seed
        ),
    ]
    for i, (z0, radius) in enumerate(cauchy_sample_points(seed, cauchy_pairs)):
        checks.append(
            check_cauchy_identity(
                interpolant,
                z0,
                radius,
                quad_points,
                identity_tol,
                name=f"cauchy_identity_{i:02d}",
            )
        )
    return VerificationReport(tuple(checks))
