"""JSON command-line front end.

A job document names a ring, a command and a matrix of entry literals::

    {"ring": "quaternion-exact", "command": "inverse",
     "matrix": [["1", "i"], ["j", "k"]]}

The report is written to stdout.  Exit status is 0 when the computation
succeeded, 2 when it ran into a degenerate or undefined case (partial
results are still reported) and 1 on errors.
"""
from __future__ import annotations

import argparse
import json
import math
import sys
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from . import weights as W
from .charpoly import cayley_hamilton_residual, char_poly_all, char_poly_row, row_poly_divergence
from .errors import NcSpectralError, ParseError, Singular, Undefined, VandermondeSingular
from .fock import BandOperator, FockRing
from .matrix import MatrixRing, NcMatrix, mat_inverse_elimination, mat_multiply
from .parsing import parse_fock
from .quasidet import (
    homological_residuals,
    mat_inverse_quasidet,
    quasideterminant,
    scaling_check,
    sylvester_reduce,
)
from .quaternion import Quaternion, QuaternionRing, format_quaternion
from .ring import ComplexRing, RationalRing, ToleranceConfig
from .spectral import (
    lagrange_coeffs,
    lagrange_eval,
    main_identity_residual,
    matrix_function,
    solve_eigen_diagonals,
    spectral_decompose,
    vandermonde_qdet,
)

__all__ = ["JobSpec", "Report", "make_ring", "parse_entry", "serialize", "run", "main"]

RINGS = ("rational", "complex", "quaternion-exact", "quaternion-float", "fock")
COMMANDS = ("qdet", "inverse", "charpoly", "ch-verify", "spectral", "funcmat", "identities")
EXIT_OK, EXIT_ERROR, EXIT_PARTIAL = 0, 1, 2
SIG_DIGITS = 12


@dataclass
class JobSpec:
    ring: str
    command: str
    matrix: list | None = None
    tolerance: float | None = None
    probe_levels: int | None = None
    guard_band: int | None = None
    options: dict = field(default_factory=dict)

    @classmethod
    def from_dict(cls, doc: dict) -> "JobSpec":
        known = {"ring", "command", "matrix", "tolerance", "probe_levels", "guard_band", "options"}
        extra = set(doc) - known
        if extra:
            raise ValueError(f"unknown job fields: {', '.join(sorted(extra))}")
        return cls(
            ring=doc.get("ring"),
            command=doc.get("command"),
            matrix=doc.get("matrix"),
            tolerance=doc.get("tolerance"),
            probe_levels=doc.get("probe_levels"),
            guard_band=doc.get("guard_band"),
            options=dict(doc.get("options") or {}),
        )

    @property
    def config(self) -> ToleranceConfig:
        base = ToleranceConfig()
        return ToleranceConfig(
            abs_tol=self.tolerance if self.tolerance is not None else base.abs_tol,
            probe_levels=self.probe_levels if self.probe_levels is not None else base.probe_levels,
            guard_band=self.guard_band if self.guard_band is not None else base.guard_band,
        )


@dataclass
class Report:
    command: str
    ring: str
    status: str = "ok"
    message: str | None = None
    results: dict = field(default_factory=dict)
    residuals: dict = field(default_factory=dict)

    @property
    def exit_code(self) -> int:
        return {"ok": EXIT_OK, "degenerate": EXIT_PARTIAL, "undefined": EXIT_PARTIAL}.get(self.status, EXIT_ERROR)

    def to_dict(self) -> dict:
        return {
            "command": self.command,
            "ring": self.ring,
            "status": self.status,
            "message": self.message,
            "results": self.results,
            "residuals": {k: _num(v) for k, v in self.residuals.items()},
        }


# -- literals ---------------------------------------------------------------------


def make_ring(name: str, cfg: ToleranceConfig | None = None):
    cfg = cfg or ToleranceConfig()
    if name == "rational":
        return RationalRing(cfg)
    if name == "complex":
        return ComplexRing(cfg)
    if name == "quaternion-exact":
        return QuaternionRing(exact=True, cfg=cfg)
    if name == "quaternion-float":
        return QuaternionRing(exact=False, cfg=cfg)
    if name == "fock":
        return FockRing(cfg)
    raise ValueError(f"unknown ring {name!r}; expected one of {', '.join(RINGS)}")


def _complex_literal(value):
    if isinstance(value, (list, tuple)) and len(value) == 2:
        return complex(float(value[0]), float(value[1]))
    if isinstance(value, str):
        try:
            return complex(value.replace(" ", "").replace("i", "j"))
        except ValueError:
            raise ParseError(f"bad complex literal {value!r}", value, 0, "number or [re, im]") from None
    if value is None:
        return complex("nan")
    return complex(value)


def parse_entry(text, ring):
    """Turn a JSON literal into an element of ``ring``."""
    if isinstance(ring, RationalRing):
        if isinstance(text, bool) or not isinstance(text, (int, str)):
            raise ParseError(f"exact rationals are written as integers or 'p/q' strings, got {text!r}", str(text), 0)
        try:
            return Fraction(text.strip()) if isinstance(text, str) else Fraction(text)
        except (ValueError, ZeroDivisionError):
            raise ParseError(f"bad rational literal {text!r}", str(text), 0, "integer or 'p/q'") from None
    if isinstance(ring, ComplexRing):
        return _complex_literal(text)
    if isinstance(ring, QuaternionRing):
        return Quaternion.parse(text, exact=ring.exact)
    if isinstance(ring, FockRing):
        if isinstance(text, dict):
            bands = text.get("bands")
            if not isinstance(bands, dict):
                raise ParseError("tabulated operators need a 'bands' object", json.dumps(text), 0, "bands")
            start = int(text.get("start", 0))
            return BandOperator(
                {int(s): W.Table(start, np.array([_complex_literal(v) for v in vals])) for s, vals in bands.items()}
            )
        if isinstance(text, (int, float)) and not isinstance(text, bool):
            return BandOperator.scalar(Fraction(text) if isinstance(text, int) else text)
        if isinstance(text, str):
            return parse_fock(text)
        raise ParseError(f"cannot read an oscillator entry from {text!r}", str(text), 0, "expression string")
    raise TypeError(f"no literal syntax for {ring!r}")


def parse_matrix(rows, ring) -> NcMatrix:
    if not isinstance(rows, list) or not rows or not all(isinstance(r, list) for r in rows):
        raise ValueError("matrix must be a non-empty list of rows")
    return NcMatrix(ring, [[parse_entry(e, ring) for e in row] for row in rows])


# -- serialization ----------------------------------------------------------------


def _num(x):
    """Round to 12 significant digits, normalizing negative zero; keep ``None``."""
    if x is None:
        return None
    if isinstance(x, (list, tuple)):
        return [_num(v) for v in x]
    x = float(x)
    if not math.isfinite(x):
        return None
    y = float(f"{x:.{SIG_DIGITS}g}")
    return 0.0 if y == 0 else y


def _clean(z: complex) -> complex:
    # components far below the printed precision are round-off
    cut = 1e-12 * max(1.0, abs(z))
    return complex(z.real if abs(z.real) > cut else 0.0, z.imag if abs(z.imag) > cut else 0.0)


def _complex_out(z):
    z = complex(z)
    if math.isnan(z.real) or math.isnan(z.imag):
        return None
    z = _clean(z)
    re, im = _num(z.real), _num(z.imag)
    return re if im == 0 else [re, im]


def serialize(x, ring, pretty: bool = False, levels: int | None = None):
    """JSON-ready form of a ring element (or matrix) that :func:`parse_entry` reads back."""
    if isinstance(x, NcMatrix):
        return [[serialize(e, x.ring, pretty, levels) for e in row] for row in x.data]
    if isinstance(x, Fraction) or (isinstance(x, int) and not isinstance(x, bool)):
        return str(Fraction(x))
    if isinstance(x, (float, complex)):
        z = _clean(complex(x))
        if pretty:
            return _pretty_complex(z)
        return [_num(z.real), _num(z.imag)]
    if isinstance(x, Quaternion):
        if pretty:
            if not x.exact:
                cut = 1e-12 * max(1.0, max(abs(c) for c in x.components))
                x = Quaternion(*(_num(c if abs(c) > cut else 0.0) for c in x.components), exact=False)
            return format_quaternion(x)
        if x.exact:
            return [str(c) for c in x.components]
        cut = 1e-12 * max(1.0, max(abs(c) for c in x.components))
        return [_num(c if abs(c) > cut else 0.0) for c in x.components]
    if isinstance(x, BandOperator):
        top = levels if levels is not None else (ring.cfg.window if isinstance(ring, FockRing) else 20)
        bands = {}
        for s in x.shifts:
            w = x.weight(s)
            vals = []
            for n in range(top + 1):
                try:
                    vals.append(_complex_out(w.evaluate(n)))
                except NcSpectralError:
                    vals.append(None)
            # levels whose output falls outside the window are null
            if any(v != 0.0 for v in vals if v is not None):
                bands[str(s)] = vals
        if pretty:
            return " + ".join(f"{_pretty_table(v)}*S^{s}" if s != "0" else _pretty_table(v) for s, v in bands.items()) or "0"
        return {"start": 0, "bands": bands}
    raise TypeError(f"cannot serialize {type(x).__name__}")


def _pretty_complex(z):
    re, im = _num(z.real), _num(z.imag)
    if im == 0:
        return f"{re:.{SIG_DIGITS}g}"
    if re == 0:
        return f"{im:.{SIG_DIGITS}g}i"
    return f"{re:.{SIG_DIGITS}g}{'+' if im > 0 else '-'}{abs(im):.{SIG_DIGITS}g}i"


def _pretty_table(vals):
    def one(v):
        if v is None:
            return "nan"
        if isinstance(v, list):
            return _pretty_complex(complex(*v))
        return f"{v:.{SIG_DIGITS}g}"

    return "d[" + ", ".join(one(v) for v in vals) + "]"


def _poly_out(p, ring, pretty):
    return {
        "row": p.row,
        "coeffs": [serialize(c, ring, pretty) for c in p.coeffs],
        "degenerate": p.degenerate,
        "note": p.free_parameter_note,
    }


# -- commands ---------------------------------------------------------------------


def _opt_int(opts, key, default=None):
    v = opts.get(key, default)
    if v is None:
        raise ValueError(f"option {key!r} is required")
    if isinstance(v, bool) or not isinstance(v, int):
        raise ValueError(f"option {key!r} must be an integer")
    return v


def _scale(opts):
    v = opts.get("scale", 1)
    if isinstance(v, list):
        return complex(float(v[0]), float(v[1]))
    if isinstance(v, str):
        return _complex_literal(v)
    return v


def _cmd_qdet(A, ring, opts, rep, pretty):
    i, j = _opt_int(opts, "i"), _opt_int(opts, "j")
    method = opts.get("method", "elimination")
    rep.results["qdet"] = serialize(quasideterminant(A, i, j, method=method), ring, pretty)


def _cmd_inverse(A, ring, opts, rep, pretty):
    B = mat_inverse_elimination(A)
    rep.results["elimination"] = serialize(B, ring, pretty)
    R = MatrixRing(ring, A.rows)
    rep.residuals["left"] = R.norm(mat_multiply(B, A) - R.one)
    rep.residuals["right"] = R.norm(mat_multiply(A, B) - R.one)
    try:
        Q = mat_inverse_quasidet(A)
    except (Undefined, Singular) as exc:
        # e.g. diagonal matrices: off-diagonal quasideterminants do not exist
        rep.results["quasideterminant"] = None
        rep.status, rep.message = "undefined", f"quasideterminant route: {exc}"
        return
    rep.results["quasideterminant"] = serialize(Q, ring, pretty)
    rep.residuals["route_difference"] = R.norm(B - Q)


def _polys(A, opts):
    row = opts.get("row")
    if row is None:
        return char_poly_all(A)
    return [char_poly_row(A, _opt_int(opts, "row"))]


def _cmd_charpoly(A, ring, opts, rep, pretty):
    polys = _polys(A, opts)
    rep.results["polynomials"] = [_poly_out(p, ring, pretty) for p in polys]
    if any(p.degenerate for p in polys):
        rep.status = "degenerate"
        rep.message = "; ".join(f"row {p.row}: {p.free_parameter_note}" for p in polys if p.degenerate)


def _cmd_ch_verify(A, ring, opts, rep, pretty):
    polys = char_poly_all(A)
    rep.results["polynomials"] = [_poly_out(p, ring, pretty) for p in polys]
    res = cayley_hamilton_residual(A, polys)
    rep.results["divergence"] = row_poly_divergence(polys, ring)
    rep.residuals["cayley_hamilton"] = MatrixRing(ring, A.rows).norm(res)


def _decompose(A, ring, opts):
    polys = char_poly_all(A)
    roots = opts.get("roots")
    if roots is not None:
        roots = [[parse_entry(r, ring) for r in row] for row in roots]
    eig = solve_eigen_diagonals(A, polys, opts.get("strategy", "auto"), roots)
    return polys, eig, spectral_decompose(A, eig)


def _cmd_spectral(A, ring, opts, rep, pretty):
    polys, eig, dec = _decompose(A, ring, opts)
    rep.results["xs"] = [serialize(x, ring, pretty) for x in eig.xs]
    rep.results["projectors"] = [serialize(P, ring, pretty) for P in dec.projectors]
    for key, val in dec.residual_report.items():
        if isinstance(val, list):
            val = max((v for v in val if v is not None), default=None)
        rep.residuals[key] = val
    if any(p.degenerate for p in polys):
        rep.message = "; ".join(f"row {p.row}: {p.free_parameter_note}" for p in polys if p.degenerate)


def _cmd_funcmat(A, ring, opts, rep, pretty):
    func = opts.get("func", "exp")
    scale = _scale(opts)
    _, _, dec = _decompose(A, ring, opts)
    F = matrix_function(A, dec, func, scale)
    rep.results["matrix"] = serialize(F, F.ring, pretty)
    rep.results["func"] = func
    rep.results["scale"] = _complex_out(scale)


def _elements(opts, key, ring):
    if key not in opts:
        raise ValueError(f"option {key!r} is required")
    return [parse_entry(v, ring) for v in opts[key]]


_SCALING_DEFAULTS = {
    "rational": ("2", "3"),
    "complex": ([1, 2], [3, -1]),
    "quaternion-exact": ("1 + 2i + 3j + 4k", "2 - i + k"),
    "quaternion-float": ("1 + 2i + 3j + 4k", "2 - i + k"),
    "fock": ("2", "3"),
}


def _cmd_identities(A, ring, opts, rep, pretty, ring_name):
    which = opts.get("which", "homological")
    if which == "homological":
        hr = homological_residuals(A, samples=opts.get("samples"), seed=opts.get("seed", 0))
        rep.results.update(total=hr.total, skipped=hr.skipped)
        rep.residuals["homological"] = hr.max_norm(ring)
    elif which == "sylvester":
        k = _opt_int(opts, "k", 1)
        C = sylvester_reduce(A, k)
        worst, skipped = 0.0, 0
        for i in range(k + 1, A.rows + 1):
            for j in range(k + 1, A.cols + 1):
                try:
                    d = quasideterminant(A, i, j) - quasideterminant(C, i - k, j - k)
                except Undefined:
                    skipped += 1
                    continue
                worst = max(worst, ring.norm(d))
        rep.results["skipped"] = skipped
        rep.residuals["sylvester"] = worst
    elif which == "scaling":
        dl, dm = _SCALING_DEFAULTS[ring_name]
        lam = parse_entry(opts.get("lam", dl), ring)
        mu = parse_entry(opts.get("mu", dm), ring)
        sr = scaling_check(A, lam, mu, _opt_int(opts, "i", 1), _opt_int(opts, "j", 1))
        rep.residuals["scaling"] = max(ring.norm(r) for r in sr.all_residuals())
    elif which == "main":
        xs, z = _elements(opts, "xs", ring), parse_entry(opts["z"], ring)
        n = len(xs)
        ms = opts.get("m", list(range(n, n + 5)))
        ms = [ms] if isinstance(ms, int) else ms
        worst = 0.0
        for m in ms:
            worst = max(worst, ring.norm(main_identity_residual(xs, z, m, ring)))
        rep.results["m"] = ms
        rep.results["v_n"] = serialize(vandermonde_qdet(xs, z, None, ring), ring, pretty)
        rep.residuals["main_identity"] = worst
    elif which == "interpolation":
        xs, z = _elements(opts, "xs", ring), parse_entry(opts["z"], ring)
        n = len(xs)
        Wc = lagrange_coeffs(xs, ring)
        delta = 0.0
        for i in range(1, n + 1):
            for j, xj in enumerate(xs, 1):
                target = ring.one if i == j else ring.zero
                delta = max(delta, ring.norm(lagrange_eval(Wc, i, xj, ring) - target))
        power = 0.0
        for p in range(n):
            total = ring.zero
            for i, xi in enumerate(xs, 1):
                total = total + ring.power(xi, p) * lagrange_eval(Wc, i, z, ring)
            power = max(power, ring.norm(total - ring.power(z, p)))
        rep.results["coefficients"] = serialize(Wc, ring, pretty)
        rep.residuals["kronecker"] = delta
        rep.residuals["power_sums"] = power
    else:
        raise ValueError(f"unknown identity {which!r}")


def run(job: JobSpec, pretty: bool = False) -> Report:
    """Execute one job; failures are captured in the report rather than raised."""
    rep = Report(command=str(job.command), ring=str(job.ring))
    try:
        if job.command not in COMMANDS:
            raise ValueError(f"unknown command {job.command!r}; expected one of {', '.join(COMMANDS)}")
        ring = make_ring(job.ring, job.config)
        opts = job.options
        needs_matrix = not (job.command == "identities" and opts.get("which") in ("main", "interpolation"))
        A = None
        if needs_matrix:
            if job.matrix is None:
                raise ValueError("this command needs a matrix")
            A = parse_matrix(job.matrix, ring)
            if job.command != "qdet" and not A.is_square:
                raise ValueError(f"command {job.command!r} needs a square matrix")
        if job.command == "identities":
            _cmd_identities(A, ring, opts, rep, pretty, job.ring)
        else:
            handler = {
                "qdet": _cmd_qdet,
                "inverse": _cmd_inverse,
                "charpoly": _cmd_charpoly,
                "ch-verify": _cmd_ch_verify,
                "spectral": _cmd_spectral,
                "funcmat": _cmd_funcmat,
            }[job.command]
            handler(A, ring, opts, rep, pretty)
    except (Undefined, VandermondeSingular) as exc:
        rep.status, rep.message = "undefined", str(exc)
    except ParseError as exc:
        rep.status = "error"
        rep.message = f"parse error: {exc}"
        rep.results["parse_error"] = {"text": exc.text, "position": exc.position, "expected": exc.expected}
    except (NcSpectralError, ValueError, TypeError, KeyError) as exc:
        rep.status, rep.message = "error", f"{type(exc).__name__}: {exc}"
    return rep


def dumps_report(rep: Report, pretty: bool = False) -> str:
    return json.dumps(rep.to_dict(), indent=2 if pretty else None, sort_keys=True) + "\n"


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="ncspectral", description="Quasideterminants and noncommutative spectral decomposition.")
    p.add_argument("--in", dest="infile", help="job JSON file (default: stdin)")
    p.add_argument("--ring", choices=RINGS, help="override the job's ring")
    p.add_argument("--command", choices=COMMANDS, help="override the job's command")
    p.add_argument("--tol", type=float, help="absolute tolerance for floating backends")
    p.add_argument("--probe", type=int, help="number of Fock levels probed")
    p.add_argument("--pretty", action="store_true", help="human-readable entries and indented JSON")
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        text = open(args.infile).read() if args.infile else sys.stdin.read()
        doc = json.loads(text)
        if not isinstance(doc, dict):
            raise ValueError("job document must be a JSON object")
        job = JobSpec.from_dict(doc)
    except (OSError, ValueError) as exc:
        rep = Report(command=str(args.command), ring=str(args.ring), status="error", message=f"bad job: {exc}")
        sys.stdout.write(dumps_report(rep, args.pretty))
        return rep.exit_code
    if args.ring:
        job.ring = args.ring
    if args.command:
        job.command = args.command
    if args.tol is not None:
        job.tolerance = args.tol
    if args.probe is not None:
        job.probe_levels = args.probe
    try:
        job.config
    except ValueError as exc:
        rep = Report(command=str(job.command), ring=str(job.ring), status="error", message=f"bad job: {exc}")
        sys.stdout.write(dumps_report(rep, args.pretty))
        return rep.exit_code
    rep = run(job, pretty=args.pretty)
    sys.stdout.write(dumps_report(rep, args.pretty))
    return rep.exit_code


if __name__ == "__main__":
    sys.exit(main())
