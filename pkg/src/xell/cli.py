"""
Command-line interface for the X_l polynomial toolkit.

Usage:
    python -m xell eval --family L1 --ell 1 --n 0 --g 1 --x 0
    python -m xell coeffs --family J1 --ell 2 --n 1 --g 1 --h 2
    python -m xell table --family L1 --ell 1 --g 1 --n-max 3
    python -m xell check all --quick
    python -m xell check limit --pair J2L1 --ell 2 --n 1 --g 1.5

Records go to stdout as newline-delimited JSON (or CSV with a header row);
logs go to stderr.
"""

import argparse
import logging
import math
import sys
from typing import Dict, List, Literal, Optional, Sequence

from pydantic import BaseModel, Field, ValidationError

from .config import VerifyConfig
from .errors import DomainError, InvalidParams, NoConvergence, XellError
from .families import ETA, Family, Kind, ParamSet, norm_closed, xpoly
from .quadrature import gram_matrix
from .reports import CSV_COLUMNS, CheckReport, summarize, to_csv, to_json_line
from .schrodinger import HALF_PI, SystemSpec, eigenfunction, eta, potential
from .verify import (
    CHECK_CLASSES,
    check_class,
    coincidence_check,
    eigen_check,
    limit_check_base,
    limit_check_family,
    mirror_check,
    orthogonality_check,
    run_battery,
    shape_check,
    sign_check,
    spectrum_check,
)

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_INVALID = 2
EXIT_DOMAIN = 3
EXIT_NO_CONVERGENCE = 4
EXIT_ERROR = 5

FAILURE_CODES: Dict[str, int] = {
    "ortho": 10,
    "eigen": 11,
    "shape": 12,
    "mirror": 13,
    "limit": 14,
    "spectrum": 15,
    "sign": 16,
    "coincidence": 17,
}


# Command and record models


class Command(BaseModel):
    """Validated command-line request."""

    command: Literal["eval", "coeffs", "table", "check"]
    family: Optional[Family] = None
    ell: Optional[int] = Field(default=None, ge=0)
    n: Optional[int] = Field(default=None, ge=0)
    g: Optional[float] = None
    h: Optional[float] = None
    x: Optional[float] = None
    n_max: Optional[int] = Field(default=None, ge=0)
    which: Optional[Literal["ortho", "eigen", "shape", "mirror", "limit", "spectrum", "sign", "coincidence", "all"]] = None
    pair: Optional[Literal["J1L2", "J2L1"]] = None
    alpha: Optional[float] = None
    sign: Literal[1, -1] = 1
    k: int = Field(default=4, ge=1)
    scope: Literal["quick", "full"] = "quick"
    format: Literal["json", "csv"] = "json"
    tol: Optional[float] = Field(default=None, gt=0)
    jobs: int = Field(default=1, ge=1)

    def params(self) -> ParamSet:
        if self.g is None:
            raise InvalidParams("--g is required")
        return ParamSet(self.g, self.h)

    def spec(self) -> SystemSpec:
        if self.family is None:
            raise InvalidParams("--family is required")
        ell = 0 if self.family.is_classical and self.ell is None else self.ell
        if ell is None:
            raise InvalidParams("--ell is required")
        return SystemSpec(self.family, ell, self.params())

    @property
    def targeted(self) -> bool:
        """True when parameter flags select a single check instead of the battery."""
        return any(v is not None for v in (self.family, self.g, self.h, self.pair, self.alpha))


class EvalRecord(BaseModel):
    family: str
    ell: int
    n: int
    params: Dict[str, float]
    x: float
    eta: float
    P: float
    phi: Optional[float]
    U: Optional[float]
    E: float


class CoeffRecord(BaseModel):
    family: str
    ell: int
    n: int
    params: Dict[str, float]
    variable: str = ETA
    degree: int
    coeffs: List[float]


class TableRow(BaseModel):
    n: int
    E: float
    norm_closed: float
    norm_quadrature: float
    gap: float


# Subcommands


def _emit(records: Sequence[dict], fmt: str, columns: Optional[List[str]] = None) -> None:
    if fmt == "csv":
        columns = columns or (list(records[0].keys()) if records else [])
        sys.stdout.write(to_csv(records, columns))
    else:
        for record in records:
            sys.stdout.write(to_json_line(record) + "\n")


def cmd_eval(cmd: Command) -> int:
    if cmd.x is None:
        raise InvalidParams("--x is required")
    spec = cmd.spec()
    n = cmd.n or 0
    x = cmd.x
    coordinate = float(eta(spec.kind, x))
    upper = math.inf if spec.kind is Kind.LAGUERRE else HALF_PI
    interior = 0 < x < upper
    record = EvalRecord(
        family=spec.family.value,
        ell=spec.ell,
        n=n,
        params=spec.params.as_dict(),
        x=x,
        eta=coordinate,
        P=float(xpoly(spec.family, spec.ell, n, spec.params).poly(coordinate)),
        phi=float(eigenfunction(spec, n, x)) if interior else None,
        U=float(potential(spec, x)) if interior else None,
        E=spec.energy(n),
    )
    _emit([record.model_dump()], cmd.format)
    return EXIT_OK


def cmd_coeffs(cmd: Command) -> int:
    spec = cmd.spec()
    n = cmd.n or 0
    built = xpoly(spec.family, spec.ell, n, spec.params)
    record = CoeffRecord(
        family=spec.family.value,
        ell=spec.ell,
        n=n,
        params=spec.params.as_dict(),
        degree=built.degree,
        coeffs=built.poly.coeffs.tolist(),
    )
    if cmd.format == "csv":
        rows = [{"power": k, "coefficient": c} for k, c in enumerate(record.coeffs)]
        _emit(rows, "csv", ["power", "coefficient"])
    else:
        _emit([record.model_dump()], "json")
    return EXIT_OK


def cmd_table(cmd: Command, config: VerifyConfig) -> int:
    spec = cmd.spec()
    n_max = 5 if cmd.n_max is None else cmd.n_max
    gram = gram_matrix(spec, n_max, rtol=config.quad_rtol, cap=config.quad_cap)
    rows = []
    for n in range(n_max + 1):
        closed = norm_closed(spec.family, spec.ell, n, spec.params)
        quad = float(gram[n, n])
        rows.append(
            TableRow(n=n, E=spec.energy(n), norm_closed=closed, norm_quadrature=quad, gap=abs(quad - closed) / closed)
        )
    _emit([row.model_dump() for row in rows], cmd.format, list(TableRow.model_fields))
    return EXIT_OK


def _targeted_check(cmd: Command, config: VerifyConfig) -> List[CheckReport]:
    which = cmd.which
    ell = 1 if cmd.ell is None else cmd.ell
    n = 0 if cmd.n is None else cmd.n
    if which in ("mirror", "coincidence"):
        params = cmd.params()
        if params.h is None:
            raise InvalidParams(f"check {which} requires both --g and --h")
        if which == "mirror":
            return [mirror_check(ell, n, params.g, params.h, config)]
        return [coincidence_check(5 if cmd.n_max is None else cmd.n_max, params.g, params.h, config)]
    if which == "limit":
        if cmd.pair is not None:
            return [limit_check_family(cmd.pair, ell, n, cmd.params().g, config=config)]
        if cmd.alpha is None:
            raise InvalidParams("check limit needs --pair or --alpha")
        return [limit_check_base(n, cmd.alpha, cmd.sign, config=config)]

    spec = cmd.spec()
    if which == "ortho":
        return [orthogonality_check(spec, 5 if cmd.n_max is None else cmd.n_max, config)]
    if which == "eigen":
        return [eigen_check(spec, 4 if cmd.n_max is None else cmd.n_max, config)]
    if which == "shape":
        return [shape_check(spec, config)]
    if which == "sign":
        return [sign_check(spec, config)]
    if which == "spectrum":
        return [spectrum_check(spec, cmd.k, config=config)]
    raise InvalidParams(f"check {which} does not take parameter flags")


def _failure_code(reports: Sequence[CheckReport]) -> int:
    failed = {check_class(r.check) for r in reports if not r.passed}
    if not failed:
        return EXIT_OK
    if len(failed) == 1:
        return FAILURE_CODES[failed.pop()]
    return EXIT_FAILED


def cmd_check(cmd: Command, config: VerifyConfig) -> int:
    which = cmd.which or "all"
    if cmd.tol is not None:
        for key in config.tolerances:
            if which == "all" or check_class(key.split("_")[0]) == which:
                config = config.with_tolerance(key, cmd.tol)

    if which != "all" and cmd.targeted:
        reports = _targeted_check(cmd, config)
    else:
        selected = set(CHECK_CLASSES) if which == "all" else {which}
        reports = run_battery(cmd.scope, config, selected)

    records = [r.record() for r in reports]
    summary = summarize(reports)
    if cmd.format == "csv":
        _emit(records, "csv", CSV_COLUMNS)
        print(f"summary: {summary.passed}/{summary.total} passed", file=sys.stderr)
    else:
        _emit(records, "json")
        sys.stdout.write(to_json_line({"summary": summary.model_dump()}) + "\n")
    return _failure_code(reports)


# Parser


def _add_system_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--family", type=str, default=None, help="L, J, L1, L2, J1 or J2")
    parser.add_argument("--ell", type=int, default=None, help="Deformation degree l")
    parser.add_argument("--n", type=int, default=None, help="Eigenpolynomial index n")
    parser.add_argument("--g", type=float, default=None, help="Coupling g")
    parser.add_argument("--h", type=float, default=None, help="Coupling h (Jacobi families)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="xell", description="Exceptional Laguerre and Jacobi polynomials")
    parser.add_argument("-v", "--verbose", action="count", default=0, help="More logging on stderr")
    parser.add_argument("--format", choices=["json", "csv"], default="json")
    sub = parser.add_subparsers(dest="command", required=True)

    eval_cmd = sub.add_parser("eval", help="Evaluate P, phi, U and E at one point")
    _add_system_flags(eval_cmd)
    eval_cmd.add_argument("--x", type=float, default=None)

    coeffs_cmd = sub.add_parser("coeffs", help="Coefficients of P_{l,n} in eta (ascending)")
    _add_system_flags(coeffs_cmd)

    table_cmd = sub.add_parser("table", help="Energies and norms for n = 0..n_max")
    _add_system_flags(table_cmd)
    table_cmd.add_argument("--n-max", dest="n_max", type=int, default=None)

    check_cmd = sub.add_parser("check", help="Run verification checks")
    check_cmd.add_argument("which", choices=list(CHECK_CLASSES) + ["all"])
    _add_system_flags(check_cmd)
    check_cmd.add_argument("--n-max", dest="n_max", type=int, default=None)
    check_cmd.add_argument("--pair", choices=["J1L2", "J2L1"], default=None)
    check_cmd.add_argument("--alpha", type=float, default=None, help="Laguerre index for the base limit")
    check_cmd.add_argument("--sign", type=int, choices=[1, -1], default=1)
    check_cmd.add_argument("--k", type=int, default=4, help="Number of FD eigenvalues")
    check_cmd.add_argument("--tol", type=float, default=None, help="Override the tolerance of the selected checks")
    check_cmd.add_argument("--jobs", type=int, default=1)
    scope = check_cmd.add_mutually_exclusive_group()
    scope.add_argument("--quick", dest="scope", action="store_const", const="quick")
    scope.add_argument("--full", dest="scope", action="store_const", const="full")
    check_cmd.set_defaults(scope="quick")

    # --format is accepted after the subcommand too
    for cmd in (eval_cmd, coeffs_cmd, table_cmd, check_cmd):
        cmd.add_argument("--format", choices=["json", "csv"], default=argparse.SUPPRESS)
    return parser


def _configure_logging(verbosity: int) -> None:
    level = logging.WARNING if verbosity == 0 else logging.INFO if verbosity == 1 else logging.DEBUG
    logging.basicConfig(stream=sys.stderr, level=level, format="%(levelname)s %(name)s: %(message)s")


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_INVALID if e.code else EXIT_OK
    _configure_logging(args.verbose)

    fields = {k: v for k, v in vars(args).items() if k in Command.model_fields and v is not None}
    try:
        cmd = Command.model_validate(fields)
    except ValidationError as e:
        print(f"error: invalid arguments: {e}", file=sys.stderr)
        return EXIT_INVALID

    try:
        quick = cmd.command == "check" and cmd.scope == "quick"
        scope = VerifyConfig.quick if quick else VerifyConfig.full
        config = scope(jobs=cmd.jobs)
        config.validate()
        if cmd.command == "eval":
            return cmd_eval(cmd)
        if cmd.command == "coeffs":
            return cmd_coeffs(cmd)
        if cmd.command == "table":
            return cmd_table(cmd, config)
        return cmd_check(cmd, config)
    except InvalidParams as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INVALID
    except DomainError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_DOMAIN
    except NoConvergence as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_NO_CONVERGENCE
    except XellError as e:
        print(f"error: {type(e).__name__}: {e}", file=sys.stderr)
        return EXIT_ERROR
    except ValueError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INVALID
