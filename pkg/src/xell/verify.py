"""Verification checks: orthogonality, eigen-equations, shape invariance,
mirror and l=1 identities, infinite-coupling limits and FD spectra.

Every check returns a CheckReport; the battery runner turns library
errors into failing reports so one bad combination never hides the rest.
"""

import logging
import math
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np
from scipy.linalg import eigh_tridiagonal

from .config import VerifyConfig
from .errors import GridTooCoarse, InvalidParams, XellError
from .families import ETA, Family, ParamSet, norm_closed, xi, xpoly
from .polynomials import Polynomial, count_sign_changes, jacobi_edge, laguerre, poly_reflect
from .quadrature import gram_matrix
from .reports import CheckReport
from .schrodinger import (
    HALF_PI,
    SystemSpec,
    annihilation_residual,
    eigenfunction,
    interior_points,
    potential,
    schrodinger_residual,
    shape_invariance_residual,
    w_ell,
)

logger = logging.getLogger(__name__)

LIMIT_PAIRS: Dict[str, Tuple[Family, Family, bool]] = {
    "J1L2": (Family.J1, Family.L2, True),
    "J2L1": (Family.J2, Family.L1, False),
}


def _config(config: Optional[VerifyConfig]) -> VerifyConfig:
    return config if config is not None else VerifyConfig.from_env()


def _spec_params(spec: SystemSpec) -> dict:
    return {"family": spec.family.value, "ell": spec.ell, **spec.params.as_dict()}


def _coeff_deviation(p: Polynomial, q: Polynomial) -> float:
    """Largest coefficient difference relative to the coefficient scale."""
    diff = (p - q).coeffs
    scale = max(1.0, float(np.max(np.abs(p.coeffs), initial=0.0)), float(np.max(np.abs(q.coeffs), initial=0.0)))
    return float(np.max(np.abs(diff), initial=0.0)) / scale


def _relative(a: np.ndarray, b: np.ndarray) -> float:
    return float(np.max(np.abs(a - b) / np.maximum(1.0, np.abs(b))))


BOUND_FACTOR = 10.0
ROUND_OFF = 1e-12


def _fit_slope(levels: Sequence[float], errors: Sequence[float]) -> Optional[float]:
    """Log-log slope of error against 1/level; None when the errors are at round-off."""
    errors = np.asarray(errors, dtype=float)
    if np.all(errors <= 1e-14):
        return None
    inverse = 1.0 / np.asarray(levels, dtype=float)
    safe = np.maximum(errors, 1e-300)
    return float(np.polyfit(np.log(inverse), np.log(safe), 1)[0])


def _bound_ratio(levels: Sequence[float], errors: Sequence[float]) -> Optional[float]:
    """Error at the last level over the power law fitted to the earlier levels."""
    errors = np.asarray(errors, dtype=float)
    if np.all(errors <= 1e-14):
        return None
    inverse = 1.0 / np.asarray(levels, dtype=float)
    safe = np.log(np.maximum(errors, 1e-300))
    head = slice(0, len(errors) - 1) if len(errors) >= 3 else slice(None)
    slope, intercept = np.polyfit(np.log(inverse[head]), safe[head], 1)
    return float(errors[-1] / math.exp(intercept + slope * math.log(inverse[-1])))


def _monotone(errors: Sequence[float]) -> bool:
    """Non-increasing until the errors reach round-off."""
    return all(b <= a or b <= ROUND_OFF for a, b in zip(errors, errors[1:]))


def _limit_metric(slopes: Sequence[Optional[float]], monotone: bool, bound_ratio: Optional[float]) -> float:
    """max |slope - 1|; inf when errors grow or overshoot the extrapolated bound."""
    if not monotone or (bound_ratio is not None and bound_ratio > BOUND_FACTOR):
        return math.inf
    fitted = [abs(s - 1.0) for s in slopes if s is not None]
    return max(fitted) if fitted else 0.0


def orthogonality_check(spec: SystemSpec, n_max: int = 5, config: Optional[VerifyConfig] = None) -> CheckReport:
    """Gram matrix against the closed-form norms."""
    config = _config(config)
    gram = gram_matrix(spec, n_max, rtol=config.quad_rtol, cap=config.quad_cap)
    diag = np.diag(gram)
    closed = np.array([norm_closed(spec.family, spec.ell, n, spec.params) for n in range(n_max + 1)])
    diag_gap = np.abs(diag - closed) / closed
    scale = np.sqrt(np.outer(np.abs(diag), np.abs(diag)))
    off = np.abs(gram - np.diag(diag)) / scale
    metric = float(max(diag_gap.max(), off.max()))
    return CheckReport(
        check="ortho",
        params={**_spec_params(spec), "n_max": n_max},
        metric=metric,
        tolerance=config.tolerance("ortho"),
        max_error=metric,
        values=diag.tolist(),
        details={
            "closed_form": closed.tolist(),
            "max_diag_gap": float(diag_gap.max()),
            "max_offdiag": float(off.max()),
            "symmetry": float(np.max(np.abs(gram - gram.T)) / np.max(np.abs(diag))),
        },
    )


def eigen_check(spec: SystemSpec, n_max: int = 4, config: Optional[VerifyConfig] = None) -> CheckReport:
    """Schrodinger residuals for n <= n_max plus annihilation of the groundstate."""
    config = _config(config)
    points = interior_points(spec, config.interior_points)
    per_level = []
    all_residuals = []
    for n in range(n_max + 1):
        phi = np.abs(eigenfunction(spec, n, points))
        floor = 1e-3 * float(phi.max())
        residual = np.abs(schrodinger_residual(spec, n, points, floor=floor))
        per_level.append(float(residual.max()))
        all_residuals.append(residual)
    annihilation = float(np.max(annihilation_residual(spec, points)))
    stacked = np.concatenate(all_residuals)
    metric = max(max(per_level), annihilation)
    return CheckReport(
        check="eigen",
        params={**_spec_params(spec), "n_max": n_max},
        metric=metric,
        tolerance=config.tolerance("eigen"),
        max_error=metric,
        rms_error=float(np.sqrt(np.mean(stacked**2))),
        values=per_level,
        details={
            "energies": [spec.energy(n) for n in range(n_max + 1)],
            "annihilation": annihilation,
            "x_range": [float(points.min()), float(points.max())],
        },
    )


def shape_check(spec: SystemSpec, config: Optional[VerifyConfig] = None) -> CheckReport:
    config = _config(config)
    points = interior_points(spec, config.interior_points)
    residual = np.abs(shape_invariance_residual(spec, points))
    metric = float(residual.max())
    return CheckReport(
        check="shape",
        params=_spec_params(spec),
        metric=metric,
        tolerance=config.tolerance("shape"),
        max_error=metric,
        rms_error=float(np.sqrt(np.mean(residual**2))),
        details={"E1": spec.energy(1)},
    )


def eta_samples(spec: SystemSpec, count: int = 10_000) -> np.ndarray:
    """Dense samples of the physical eta-domain."""
    if spec.kind.value == "L":
        return np.logspace(-6, math.log10(200.0), count)
    return np.linspace(-1.0, 1.0, count + 2)[1:-1]


def sign_check(spec: SystemSpec, config: Optional[VerifyConfig] = None) -> CheckReport:
    """xi_l(eta; lambda) and xi_l(eta; lambda + delta) keep one sign on the domain."""
    config = _config(config)
    samples = eta_samples(spec)
    changes = {}
    for label, params in (("lambda", spec.params), ("lambda+delta", spec.params.shifted())):
        deform = xi(spec.family, spec.ell, params, ETA, spec.enforce_ordering)
        changes[label] = count_sign_changes(deform, samples)
        values = np.abs(np.asarray(deform(samples)))
        changes[f"min_abs_{label}"] = float(values.min())
    metric = float(changes["lambda"] + changes["lambda+delta"])
    return CheckReport(
        check="sign",
        params=_spec_params(spec),
        metric=metric,
        tolerance=config.tolerance("sign"),
        details=changes,
    )


def mirror_check(ell: int, n: int, g: float, h: float, config: Optional[VerifyConfig] = None) -> CheckReport:
    """J2 at (g, h) against the reflected J1 at (h, g)."""
    config = _config(config)
    params = ParamSet(g, h)
    j2 = SystemSpec(Family.J2, ell, params)
    j1 = SystemSpec(Family.J1, ell, params.swapped())

    xi2 = xi(Family.J2, ell, params)
    xi1 = xi(Family.J1, ell, params.swapped())
    xi_dev = _coeff_deviation(xi2, (-1) ** ell * poly_reflect(xi1))

    p2 = xpoly(Family.J2, ell, n, params).poly
    p1 = xpoly(Family.J1, ell, n, params.swapped()).poly
    p_dev = _coeff_deviation(p2, (-1) ** (ell + n) * poly_reflect(p1))

    points = interior_points(j2, config.interior_points)
    u_dev = _relative(np.asarray(potential(j2, points)), np.asarray(potential(j1, HALF_PI - points)))

    h2 = norm_closed(Family.J2, ell, n, params)
    h1 = norm_closed(Family.J1, ell, n, params.swapped())
    norm_dev = abs(h2 - h1) / h1

    details = {"xi": xi_dev, "P": p_dev, "U": u_dev, "norm": norm_dev}
    if ell == 1:
        first = xi(Family.J1, 1, params, enforce_ordering=False)
        details["xi1_sum"] = _coeff_deviation(first, -xi2)
    metric = max(details.values())
    return CheckReport(
        check="mirror",
        params={"ell": ell, "n": n, "g": g, "h": h},
        metric=metric,
        tolerance=config.tolerance("mirror"),
        max_error=metric,
        details=details,
    )


def coincidence_check(n_max: int, g: float, h: float, config: Optional[VerifyConfig] = None) -> CheckReport:
    """The l = 1 members of the first and second sets agree up to sign."""
    config = _config(config)
    lag = ParamSet(g)
    jac = ParamSet(g, h)
    xi_l = _coeff_deviation(xi(Family.L1, 1, lag), -xi(Family.L2, 1, lag))
    xi_j = _coeff_deviation(
        xi(Family.J1, 1, jac, enforce_ordering=False), -xi(Family.J2, 1, jac, enforce_ordering=False)
    )
    p_l = max(
        _coeff_deviation(xpoly(Family.L1, 1, n, lag).poly, -xpoly(Family.L2, 1, n, lag).poly)
        for n in range(n_max + 1)
    )
    spec1 = SystemSpec(Family.L1, 1, lag)
    spec2 = SystemSpec(Family.L2, 1, lag)
    points = interior_points(spec1, config.interior_points)
    u_dev = _relative(np.asarray(potential(spec2, points)), np.asarray(potential(spec1, points)))
    coefficient = max(xi_l, xi_j, p_l)
    metric = max(coefficient, u_dev)
    return CheckReport(
        check="coincidence",
        params={"n_max": n_max, "g": g, "h": h},
        metric=metric,
        tolerance=config.tolerance("coincidence"),
        max_error=metric,
        details={"xi_L": xi_l, "xi_J": xi_j, "P_L": p_l, "U_L": u_dev, "coefficient": coefficient},
    )


def limit_check_base(
    n: int,
    alpha: float,
    sign: int = 1,
    beta_schedule: Optional[Sequence[float]] = None,
    config: Optional[VerifyConfig] = None,
    x_grid: Optional[np.ndarray] = None,
) -> CheckReport:
    """P_n^(alpha, +-beta)(1 - 2x/beta) -> L_n^(alpha)(+-x) as beta -> inf."""
    config = _config(config)
    if not 0 <= n <= 8:
        raise InvalidParams(f"Base limit check supports 0 <= n <= 8, got n={n}")
    if sign not in (1, -1):
        raise InvalidParams(f"sign must be +1 or -1, got {sign}")
    schedule = tuple(beta_schedule or config.limit_beta_schedule)
    x = np.linspace(0.1, 5.0, 50) if x_grid is None else np.asarray(x_grid, dtype=float)
    target = np.asarray(laguerre(n, alpha)(sign * x))
    errors = []
    for beta in schedule:
        # 1 - 2x/beta in the edge variable z = (1 - X)/2 is exactly x/beta
        value = np.asarray(jacobi_edge(n, alpha, sign * beta)(x / beta))
        errors.append(float(np.max(np.abs(value - target))))
    slope = _fit_slope(schedule, errors)
    monotone = _monotone(errors)
    bound_ratio = _bound_ratio(schedule, errors)
    if not monotone:
        logger.warning("Base limit n=%d alpha=%g: errors not monotone in beta", n, alpha)
    metric = _limit_metric([slope], monotone, bound_ratio)
    details = {"monotone": monotone}
    if bound_ratio is not None:
        details["bound_ratio"] = bound_ratio
    return CheckReport(
        check="limit_base",
        params={"n": n, "alpha": alpha, "sign": sign},
        metric=metric,
        tolerance=config.tolerance("limit"),
        max_error=errors[-1],
        levels=list(schedule),
        values=errors,
        slope=slope,
        details=details,
    )


def _limit_errors(jspec: SystemSpec, lspec: SystemSpec, n: int, h: float, xl: np.ndarray) -> Dict[str, float]:
    g, ell = lspec.params.g, lspec.ell
    x = xl / math.sqrt(h)
    z = np.sin(x) ** 2
    eta_l = xl * xl

    xi_l = np.asarray(lspec.xi_poly(eta_l))
    xi_j = np.asarray(jspec.xi_poly(z))
    w_l = np.asarray(w_ell(lspec, xl)[0])
    w_j = np.asarray(w_ell(jspec, x)[0]) + 0.5 * (g + ell) * math.log(h)
    u_l = np.asarray(potential(lspec, xl))
    u_j = np.asarray(potential(jspec, x)) / h
    p_l = np.asarray(lspec.eigenpolynomial(n)(eta_l))
    p_j = np.asarray(jspec.eigenpolynomial(n)(z))
    e_l = lspec.energy(n)
    e_j = jspec.energy(n) / h
    return {
        "xi": float(np.max(np.abs(xi_j - xi_l)) / max(1.0, np.max(np.abs(xi_l)))),
        "w": float(np.max(np.abs(w_j - w_l))),
        "U": float(np.max(np.abs(u_j - u_l)) / max(1.0, np.max(np.abs(u_l)))),
        "P": float(np.max(np.abs(p_j - p_l)) / max(1.0, np.max(np.abs(p_l)))),
        "E": abs(e_j - e_l),
    }


def limit_check_family(
    pair: str,
    ell: int,
    n: int,
    g: float,
    h_schedule: Optional[Sequence[float]] = None,
    config: Optional[VerifyConfig] = None,
    xl_grid: Optional[np.ndarray] = None,
) -> CheckReport:
    """Infinite-coupling limit h -> inf with x = x_L / sqrt(h) of a DPT family onto an oscillator family."""
    config = _config(config)
    if pair not in LIMIT_PAIRS:
        raise InvalidParams(f"Unknown limit pair {pair!r}; expected one of {sorted(LIMIT_PAIRS)}")
    jfam, lfam, strict = LIMIT_PAIRS[pair]
    if ell == 0:
        jfam, lfam = Family.J, Family.L
    schedule = tuple(h_schedule or config.limit_h_schedule)
    xl = np.linspace(0.5, 3.0, 25) if xl_grid is None else np.asarray(xl_grid, dtype=float)
    if float(xl.max()) / math.sqrt(min(schedule)) >= HALF_PI:
        raise InvalidParams(f"x_L grid leaves the DPT domain at h={min(schedule)}")

    lspec = SystemSpec(lfam, ell, ParamSet(g))
    components: Dict[str, List[float]] = {}
    for h in schedule:
        jspec = SystemSpec(jfam, ell, ParamSet(g, h), enforce_ordering=strict)
        for name, err in _limit_errors(jspec, lspec, n, h, xl).items():
            components.setdefault(name, []).append(err)

    slopes = {name: _fit_slope(schedule, errs) for name, errs in components.items()}
    combined = [max(errs[i] for errs in components.values()) for i in range(len(schedule))]
    monotone = all(_monotone(errs) for name, errs in components.items() if slopes[name] is not None)
    bound_ratio = _bound_ratio(schedule, combined)
    metric = _limit_metric(list(slopes.values()), monotone, bound_ratio)
    if not monotone:
        logger.warning("Limit %s l=%d n=%d g=%g: errors not monotone in h", pair, ell, n, g)
    return CheckReport(
        check="limit_family",
        params={"pair": pair, "ell": ell, "n": n, "g": g},
        metric=metric,
        tolerance=config.tolerance("limit"),
        max_error=combined[-1],
        levels=list(schedule),
        values=combined,
        slope=_fit_slope(schedule, combined),
        details={"components": components, "slopes": slopes, "monotone": monotone, "bound_ratio": bound_ratio},
    )


def _fd_eigenvalues(spec: SystemSpec, x_lo: float, x_hi: float, n_points: int, k: int) -> np.ndarray:
    x = np.linspace(x_lo, x_hi, n_points + 2)[1:-1]
    dx = (x_hi - x_lo) / (n_points + 1)
    diag = 2.0 / dx**2 + np.asarray(potential(spec, x))
    off = np.full(n_points - 1, -1.0 / dx**2)
    return eigh_tridiagonal(diag, off, eigvals_only=True, select="i", select_range=(0, k - 1))


def fd_spectrum(
    spec: SystemSpec,
    x_lo: float,
    x_hi: float,
    n_points: int,
    k: int,
    refine_tol: Optional[float] = 1e-2,
) -> np.ndarray:
    """Lowest k eigenvalues of the central-difference -d^2/dx^2 + U_l with Dirichlet walls."""
    if not x_lo < x_hi:
        raise ValueError(f"Empty grid: x_lo={x_lo}, x_hi={x_hi}")
    if not 1 <= k < n_points:
        raise ValueError(f"Need 1 <= k < n_points, got k={k}, n_points={n_points}")
    values = _fd_eigenvalues(spec, x_lo, x_hi, n_points, k)
    if refine_tol is not None:
        finer = _fd_eigenvalues(spec, x_lo, x_hi, 2 * n_points, 1)
        shift = abs(finer[0] - values[0])
        if shift > refine_tol:
            raise GridTooCoarse(
                f"Groundstate moved by {shift:.3e} > {refine_tol:g} when doubling {n_points} points"
            )
    return np.sort(values)


def default_fd_grid(spec: SystemSpec, n_points: int = 4000) -> Tuple[float, float, int]:
    if spec.kind.value == "L":
        return 1e-3, 12.0, n_points
    return 1e-3, HALF_PI - 1e-3, n_points


def spectrum_check(
    spec: SystemSpec,
    k: int,
    grid: Optional[Tuple[float, float, int]] = None,
    config: Optional[VerifyConfig] = None,
) -> CheckReport:
    """FD eigenvalues against E_n(lambda + l*delta), with the observed convergence order."""
    config = _config(config)
    x_lo, x_hi, n_points = grid or default_fd_grid(spec, config.fd_points)
    exact = np.array([spec.energy(n) for n in range(k)])
    fine = fd_spectrum(spec, x_lo, x_hi, n_points, k)
    coarse = fd_spectrum(spec, x_lo, x_hi, n_points // 2, k, refine_tol=None)
    fine_err = np.abs(fine - exact)
    coarse_err = np.abs(coarse - exact)
    top = int(np.argmax(coarse_err))
    order = math.log2(coarse_err[top] / fine_err[top]) if fine_err[top] > 0 else None
    tolerance = config.tolerance("spectrum_L" if spec.kind.value == "L" else "spectrum_J")
    metric = float(fine_err.max())
    return CheckReport(
        check="spectrum",
        params={**_spec_params(spec), "k": k, "x_lo": x_lo, "x_hi": x_hi, "n_points": n_points},
        metric=metric,
        tolerance=tolerance,
        max_error=metric,
        levels=[float(n_points // 2), float(n_points)],
        values=fine.tolist(),
        details={"exact": exact.tolist(), "coarse": coarse.tolist(), "order": order},
    )


# Battery ---------------------------------------------------------------------

CHECK_CLASSES = ("ortho", "eigen", "shape", "sign", "mirror", "coincidence", "limit", "spectrum")

QUICK_SYSTEMS = (
    (Family.L1, ParamSet(1.5)),
    (Family.L2, ParamSet(1.5)),
    (Family.J1, ParamSet(1.0, 2.0)),
    (Family.J2, ParamSet(2.0, 1.0)),
)

FULL_SYSTEMS = tuple(
    [(f, ParamSet(g)) for f in (Family.L1, Family.L2) for g in (0.7, 1.5, 3.0)]
    + [(Family.J1, ParamSet(g, h)) for g, h in ((1.0, 2.0), (0.5, 3.0))]
    + [(Family.J2, ParamSet(h, g)) for g, h in ((1.0, 2.0), (0.5, 3.0))]
)


def check_class(check: str) -> str:
    return "limit" if check.startswith("limit") else check


def _guarded(name: str, params: dict, tolerance: float, thunk: Callable[[], CheckReport]) -> CheckReport:
    """Run one check; library and numerical errors become a failing report."""
    try:
        return thunk()
    except (ValueError, ArithmeticError) as e:
        logger.warning("Check %s %s failed: %s", name, params, e, exc_info=not isinstance(e, XellError))
        return CheckReport(
            check=name,
            params=params,
            metric=math.inf,
            tolerance=tolerance,
            error=f"{type(e).__name__}: {e}",
        )


def battery(scope: str = "quick", config: Optional[VerifyConfig] = None, which: Optional[set] = None):
    """(name, params, tolerance, thunk) for every check in the scope."""
    config = _config(config)
    which = set(which or CHECK_CLASSES)
    quick = scope == "quick"
    systems = QUICK_SYSTEMS if quick else FULL_SYSTEMS
    ells = (1, 2) if quick else (1, 2, 3)
    n_ortho, n_eigen = (3, 3) if quick else (5, 4)
    jobs = []

    def add(name, params, thunk):
        if check_class(name) in which:
            tol_key = name if name in config.tolerances else check_class(name)
            if tol_key == "spectrum":
                tol_key = "spectrum_L" if params.get("family", "L").startswith("L") else "spectrum_J"
            jobs.append((name, params, config.tolerance(tol_key), thunk))

    for family, params in systems:
        for ell in ells:
            p = {"family": family.value, "ell": ell, **params.as_dict()}
            spec = lambda family=family, ell=ell, params=params: SystemSpec(family, ell, params)  # noqa: E731
            add("ortho", {**p, "n_max": n_ortho}, lambda s=spec: orthogonality_check(s(), n_ortho, config))
            add("eigen", {**p, "n_max": n_eigen}, lambda s=spec: eigen_check(s(), n_eigen, config))
            add("shape", p, lambda s=spec: shape_check(s(), config))
            add("sign", p, lambda s=spec: sign_check(s(), config))

    mirror_params = ((2.0, 0.5),) if quick else ((2.0, 0.5), (3.0, 1.0))
    mirror_ns = (3,) if quick else range(5)
    for g, h in mirror_params:
        for ell in ells:
            for n in mirror_ns:
                add("mirror", {"ell": ell, "n": n, "g": g, "h": h},
                    lambda ell=ell, n=n, g=g, h=h: mirror_check(ell, n, g, h, config))

    coincidences = ((1.5, 2.0),) if quick else ((0.7, 2.0), (1.5, 3.0), (3.0, 1.0))
    for g, h in coincidences:
        add("coincidence", {"n_max": 5, "g": g, "h": h}, lambda g=g, h=h: coincidence_check(5, g, h, config))

    base_cases = [(2, 0.5)] if quick else [(1, 0.5), (2, 0.5), (4, 0.5), (2, 2.0), (4, 2.0)]
    for n, alpha in base_cases:
        for sign in (1, -1):
            add("limit_base", {"n": n, "alpha": alpha, "sign": sign},
                lambda n=n, alpha=alpha, sign=sign: limit_check_base(n, alpha, sign, config=config))

    family_cases = (
        [("J1L2", 1, 0, 1.0), ("J2L1", 2, 1, 1.5)]
        if quick
        else [(pair, ell, n, 1.5) for pair in LIMIT_PAIRS for ell in (0, 1, 2) for n in (0, 1, 2)]
    )
    for pair, ell, n, g in family_cases:
        add("limit_family", {"pair": pair, "ell": ell, "n": n, "g": g},
            lambda pair=pair, ell=ell, n=n, g=g: limit_check_family(pair, ell, n, g, config=config))

    spectra = (
        (Family.L2, 2, ParamSet(1.5), 4),
        (Family.J1, 1, ParamSet(1.0, 2.0), 3),
    )
    for family, ell, params, k in spectra:
        p = {"family": family.value, "ell": ell, **params.as_dict(), "k": k}
        add("spectrum", p,
            lambda family=family, ell=ell, params=params, k=k: spectrum_check(
                SystemSpec(family, ell, params), k, config=config))

    return jobs


def run_battery(
    scope: str = "quick",
    config: Optional[VerifyConfig] = None,
    which: Optional[set] = None,
) -> List[CheckReport]:
    """Run the battery and return reports in deterministic order."""
    config = _config(config)
    config.validate()
    jobs = battery(scope, config, which)
    logger.info("Running %d checks (%s scope, %d workers)", len(jobs), scope, config.jobs)
    run = lambda job: _guarded(*job)  # noqa: E731
    if config.jobs > 1:
        with ThreadPoolExecutor(max_workers=config.jobs) as pool:
            reports = list(pool.map(run, jobs))
    else:
        reports = [run(job) for job in jobs]
    return sorted(reports, key=CheckReport.sort_key)
