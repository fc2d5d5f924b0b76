"""Command-line front end and file formats.

Three subcommands:

* ``fatou``        peak-function boundary table from a peaks file
* ``interpolate``  full certified pipeline run, certificate JSON out
* ``verify``       re-run a certificate's problem and compare field by field

Problem files are JSON objects with the ProblemSpec field names; angles are
radians, complex values are split into re/im. Certificates serialize floats
with shortest round-trip precision and fixed key order, so identical inputs
produce byte-identical files. Exit codes: 0 success, 2 parse error,
3 validation error, 4 certification/verification failure.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from dataclasses import dataclass

import numpy as np

from .circle import BoundaryData, FiniteBoundarySet
from .errors import CertificationError, NoContractionError
from .fatou import build_fatou, eval_fatou
from .interpolate import Interpolant, eval_interpolant, iterative_interpolant
from .verify import VerificationReport, verify_interpolant

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_VALIDATION = 3
EXIT_CERTIFICATION = 4

GRID_ENV_VAR = "DISKINTERP_GRID_SIZE"
MIN_GRID_SIZE = 4096
DEFAULT_N_MAX = 20
DEFAULT_SAFETY_MARGIN = 1e-9
DEFAULT_SEED = 0
FIELD_MATCH_TOL = 1e-12


class ParseFailure(Exception):
    """Malformed input file (bad JSON, wrong structure or types)."""


class ValidationFailure(Exception):
    """Well-formed input violating a domain invariant."""


def default_grid_size() -> int:
    """Default boundary grid size, overridable via the environment."""
    raw = os.environ.get(GRID_ENV_VAR)
    if raw is None:
        return 1 << 16
    try:
        return int(raw)
    except ValueError as exc:
        raise ValidationFailure(
            f"{GRID_ENV_VAR} must be an integer, got {raw!r}"
        ) from exc


def _require_number(obj, key, where) -> float:
    val = obj.get(key)
    if isinstance(val, bool) or not isinstance(val, (int, float)):
        raise ParseFailure(f"{where}: field {key!r} must be a number")
    return float(val)


def _require_int(obj, key, where, default=None) -> int:
    val = obj.get(key, default)
    if val is None:
        raise ParseFailure(f"{where}: missing integer field {key!r}")
    if isinstance(val, bool) or not isinstance(val, int):
        raise ParseFailure(f"{where}: field {key!r} must be an integer")
    return int(val)


def _optional_number(obj, key, where, default) -> float:
    if key not in obj:
        return float(default)
    return _require_number(obj, key, where)


@dataclass(frozen=True)
class ProblemSpec:
    """Validated interpolation problem: points, budget, and run parameters."""

    points: tuple[tuple[float, float, float], ...]  # (theta, value_re, value_im)
    eta: float
    n_max: int
    grid_size: int
    safety_margin: float
    seed: int

    @classmethod
    def from_json_obj(cls, obj) -> "ProblemSpec":
        if not isinstance(obj, dict):
            raise ParseFailure("problem must be a JSON object")
        raw_points = obj.get("points")
        if not isinstance(raw_points, list):
            raise ParseFailure("problem: 'points' must be a list")
        points = []
        for i, entry in enumerate(raw_points):
            if not isinstance(entry, dict):
                raise ParseFailure(f"problem: points[{i}] must be an object")
            where = f"points[{i}]"
            points.append(
                (
                    _require_number(entry, "theta", where),
                    _require_number(entry, "value_re", where),
                    _require_number(entry, "value_im", where),
                )
            )
        if "eta" not in obj:
            raise ParseFailure("problem: missing field 'eta'")
        spec = cls(
            points=tuple(points),
            eta=_require_number(obj, "eta", "problem"),
            n_max=_require_int(obj, "n_max", "problem", DEFAULT_N_MAX),
            grid_size=_require_int(obj, "grid_size", "problem", default_grid_size()),
            safety_margin=_optional_number(
                obj, "safety_margin", "problem", DEFAULT_SAFETY_MARGIN
            ),
            seed=_require_int(obj, "seed", "problem", DEFAULT_SEED),
        )
        spec.validate()
        return spec

    def validate(self) -> None:
        if not self.points:
            raise ValidationFailure("problem: 'points' must be non-empty")
        for theta, re, im in self.points:
            if not (
                math.isfinite(theta) and math.isfinite(re) and math.isfinite(im)
            ):
                raise ValidationFailure("problem: point fields must be finite")
        if not (math.isfinite(self.eta) and self.eta > 0.0):
            raise ValidationFailure("problem: eta must be positive")
        if self.n_max < 1:
            raise ValidationFailure("problem: n_max must be at least 1")
        if self.grid_size < MIN_GRID_SIZE:
            raise ValidationFailure(
                f"problem: grid_size must be >= {MIN_GRID_SIZE}"
            )
        if not (math.isfinite(self.safety_margin) and self.safety_margin > 0.0):
            raise ValidationFailure("problem: safety_margin must be positive")
        try:
            self.boundary_data()
        except ValueError as exc:
            raise ValidationFailure(f"problem: {exc}") from exc

    def boundary_data(self) -> BoundaryData:
        return BoundaryData.from_pairs(
            (p[0] for p in self.points),
            (complex(p[1], p[2]) for p in self.points),
        )

    def to_json_obj(self) -> dict:
        return {
            "points": [
                {"theta": t, "value_re": re, "value_im": im}
                for t, re, im in self.points
            ],
            "eta": self.eta,
            "n_max": self.n_max,
            "grid_size": self.grid_size,
            "safety_margin": self.safety_margin,
            "seed": self.seed,
        }


def _load_json(path: str):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise ParseFailure(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ParseFailure(f"{path}: invalid JSON: {exc}") from exc


def _write_text(path: str | None, text: str) -> None:
    if path is None:
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)


def _fmt(x: float) -> str:
    return repr(float(x))


def _grid_csv(thetas: np.ndarray, values: np.ndarray) -> str:
    lines = ["theta,re,im,abs"]
    for t, v in zip(thetas, values):
        v = complex(v)
        lines.append(
            f"{_fmt(t)},{_fmt(v.real)},{_fmt(v.imag)},{_fmt(abs(v))}"
        )
    return "\n".join(lines) + "\n"


def _certificate_payload(
    spec: ProblemSpec, interpolant: Interpolant, report: VerificationReport
) -> dict:
    cert = interpolant.certificate
    return {
        "problem": spec.to_json_obj(),
        "certificate": {
            "sup_norm_input": float(cert.sup_norm_input),
            "eta": float(cert.eta),
            "grid_size": int(cert.grid_size),
            "measured_boundary_sup": float(cert.measured_boundary_sup),
            "residual_bound_theoretical": float(cert.residual_bound_theoretical),
            "measured_max_residual_on_E": float(cert.measured_max_residual_on_E),
            "safety_margin": float(cert.safety_margin),
            "n_stages": len(interpolant.stages),
            "stage_powers": [int(s.power) for s in interpolant.stages],
            "stage_epsilons": [float(s.epsilon) for s in interpolant.stages],
        },
        "report": {
            "overall": bool(report.overall),
            "checks": [
                {
                    "name": c.name,
                    "passed": bool(c.passed),
                    "measured": float(c.measured),
                    "threshold": float(c.threshold),
                    "params": {k: v for k, v in c.params.items()},
                }
                for c in report.checks
            ],
        },
    }


def _parse_peaks_file(path: str) -> FiniteBoundarySet:
    obj = _load_json(path)
    if not isinstance(obj, dict) or "thetas" not in obj:
        raise ParseFailure(f"{path}: expected an object with a 'thetas' list")
    thetas = obj["thetas"]
    if not isinstance(thetas, list) or any(
        isinstance(t, bool) or not isinstance(t, (int, float)) for t in thetas
    ):
        raise ParseFailure(f"{path}: 'thetas' must be a list of numbers")
    if not thetas:
        raise ValidationFailure(f"{path}: peak set must be non-empty")
    if any(not math.isfinite(float(t)) for t in thetas):
        raise ValidationFailure(f"{path}: peak angles must be finite")
    try:
        return FiniteBoundarySet.from_thetas(float(t) for t in thetas)
    except ValueError as exc:
        raise ValidationFailure(f"{path}: {exc}") from exc


def cmd_fatou(args) -> int:
    peaks = _parse_peaks_file(args.peaks_file)
    fatou = build_fatou(peaks)
    k = args.eval_grid
    if k < 1:
        raise ValidationFailure("--eval-grid must be at least 1")
    thetas = 2.0 * math.pi * np.arange(k) / k
    values = eval_fatou(fatou, np.exp(1j * thetas))
    _write_text(args.out, _grid_csv(thetas, np.atleast_1d(values)))
    return EXIT_OK


def _run_pipeline(spec: ProblemSpec):
    data = spec.boundary_data()
    interpolant = iterative_interpolant(
        data, spec.eta, spec.n_max, spec.grid_size, spec.safety_margin
    )
    report = verify_interpolant(
        interpolant, data, grid_size=spec.grid_size, seed=spec.seed
    )
    return data, interpolant, report


def cmd_interpolate(args) -> int:
    spec = ProblemSpec.from_json_obj(_load_json(args.problem_file))
    try:
        _, interpolant, report = _run_pipeline(spec)
    except (CertificationError, NoContractionError) as exc:
        print(f"certification failure: {exc}", file=sys.stderr)
        return EXIT_CERTIFICATION
    payload = _certificate_payload(spec, interpolant, report)
    _write_text(args.out, json.dumps(payload, indent=2) + "\n")
    if args.grid_out is not None:
        thetas = 2.0 * math.pi * np.arange(spec.grid_size) / spec.grid_size
        values = eval_interpolant(interpolant, np.exp(1j * thetas))
        _write_text(args.grid_out, _grid_csv(thetas, values))
    if not report.overall:
        for c in report.failed():
            print(
                f"check failed: {c.name} measured={c.measured!r} "
                f"threshold={c.threshold!r}",
                file=sys.stderr,
            )
        return EXIT_CERTIFICATION
    return EXIT_OK


def _compare_value(path: str, stored, fresh) -> str | None:
    """None when equal (numbers within FIELD_MATCH_TOL), else the field path."""
    if isinstance(fresh, bool) or isinstance(stored, bool):
        return None if stored is fresh else path
    if isinstance(fresh, (int, float)):
        if isinstance(stored, bool) or not isinstance(stored, (int, float)):
            return path
        if isinstance(fresh, int) and isinstance(stored, int):
            return None if stored == fresh else path
        return (
            None
            if abs(float(stored) - float(fresh)) <= FIELD_MATCH_TOL
            else path
        )
    if isinstance(fresh, str):
        return None if stored == fresh else path
    if isinstance(fresh, list):
        if not isinstance(stored, list) or len(stored) != len(fresh):
            return path
        for i, (s, f) in enumerate(zip(stored, fresh)):
            bad = _compare_value(f"{path}[{i}]", s, f)
            if bad is not None:
                return bad
        return None
    if isinstance(fresh, dict):
        if not isinstance(stored, dict) or set(stored) != set(fresh):
            return path
        for key in fresh:
            bad = _compare_value(f"{path}.{key}", stored[key], fresh[key])
            if bad is not None:
                return bad
        return None
    return None if stored == fresh else path


def cmd_verify(args) -> int:
    stored = _load_json(args.certificate_file)
    if not isinstance(stored, dict) or not {
        "problem",
        "certificate",
        "report",
    } <= set(stored):
        raise ParseFailure(
            f"{args.certificate_file}: not a certificate file "
            "(needs problem/certificate/report)"
        )
    spec = ProblemSpec.from_json_obj(_load_json(args.problem_file))
    recorded = ProblemSpec.from_json_obj(stored["problem"])
    if recorded != spec:
        for field in ("seed", "eta", "n_max", "grid_size", "safety_margin", "points"):
            if getattr(recorded, field) != getattr(spec, field):
                print(
                    f"verification failure: problem field {field!r} differs "
                    "between certificate and problem file",
                    file=sys.stderr,
                )
                return EXIT_CERTIFICATION
    try:
        _, interpolant, report = _run_pipeline(spec)
    except (CertificationError, NoContractionError) as exc:
        print(f"verification failure: pipeline failed: {exc}", file=sys.stderr)
        return EXIT_CERTIFICATION
    fresh = _certificate_payload(spec, interpolant, report)
    for section in ("certificate", "report"):
        bad = _compare_value(section, stored[section], fresh[section])
        if bad is not None:
            print(
                f"verification failure: field {bad!r} does not reproduce",
                file=sys.stderr,
            )
            return EXIT_CERTIFICATION
    print("certificate verified")
    return EXIT_OK


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="diskinterp",
        description=(
            "Boundary interpolation on finite circle sets with measured "
            "bound certificates."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_fatou = sub.add_parser(
        "fatou", help="tabulate a peak function on a boundary grid"
    )
    p_fatou.add_argument("peaks_file", help="JSON file {\"thetas\": [...]}")
    p_fatou.add_argument(
        "--eval-grid", type=int, default=1024, help="number of grid rows"
    )
    p_fatou.add_argument("--out", default=None, help="output CSV (default stdout)")
    p_fatou.set_defaults(func=cmd_fatou)

    p_interp = sub.add_parser(
        "interpolate", help="run the certified interpolation pipeline"
    )
    p_interp.add_argument("problem_file", help="JSON problem file")
    p_interp.add_argument(
        "--out", default=None, help="certificate JSON (default stdout)"
    )
    p_interp.add_argument(
        "--grid-out", default=None, help="optional boundary evaluation CSV"
    )
    p_interp.set_defaults(func=cmd_interpolate)

    p_verify = sub.add_parser(
        "verify", help="re-run a certificate's problem and compare"
    )
    p_verify.add_argument("certificate_file", help="certificate JSON")
    p_verify.add_argument("problem_file", help="JSON problem file")
    p_verify.set_defaults(func=cmd_verify)

    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ParseFailure as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except ValidationFailure as exc:
        print(f"validation error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION


if __name__ == "__main__":
    sys.exit(main())
