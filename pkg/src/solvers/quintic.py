"""
The pivot quintic and its monotone reparameterization.

Fix a pivot cap k. Adjacent caps are Mobius images of z = z_k through the
fixed half-angle cotangents y_{k-1}, y_{k+1}; the volume balance

    g_{k-1} (q_{k-1} - q_k) = g_{k+1} (q_k - q_{k+1})

then reduces to F_k(z) = 0 with

    T_k(X) = (X + y_{k-1})^3 ((X - 1.5 y_{k+1})^2 + 0.75 y_{k+1}^2 + 1)
    U_k(X) = (X - y_{k+1})^3 ((X + 1.5 y_{k-1})^2 + 0.75 y_{k-1}^2 + 1)
    F_k    = (1 + d_k)/2 T_k + (1 - d_k)/2 U_k

Substituting xi = (y_+ - z) / (y_- + z) turns F_k = 0 into f(xi) = g_-/g_+
where f = xi^3 H / R is a strictly increasing bijection of the real line,
so the root is unique and bracketing always succeeds.
"""
import math

import numpy as np
import sympy as sp
from numpy.polynomial import Polynomial

from config.logging_config import get_logger
from src.errors import ConvergenceError, InvalidInputError
from src.geometry import ReducedVolumes, Tensions
from src.solvers.regime import angle_laws

logger = get_logger(__name__)


def _check_pivot(k: int) -> None:
    if k not in (1, 2, 3):
        raise InvalidInputError(f"pivot index must be 1, 2 or 3, got {k}")


def pivot_cotangents(k: int, tensions: Tensions) -> tuple[float, float]:
    """(y_minus, y_plus) = (y_{k-1}, y_{k+1}) for pivot k."""
    _check_pivot(k)
    y = angle_laws(tensions).cot_half
    return y[(k - 2) % 3], y[k % 3]


def pivot_ratio(k: int, volumes: ReducedVolumes) -> float:
    """g_{k-1} / g_{k+1}, the target value of f."""
    _check_pivot(k)
    g = volumes.g
    return g[(k - 2) % 3] / g[k % 3]


def build_quintic(k: int, tensions: Tensions, volumes: ReducedVolumes) -> np.ndarray:
    """
    Coefficients of the monic quintic F_k, highest degree first.

    Raises:
        RegimeError: outside the interior regime
    """
    y_minus, y_plus = pivot_cotangents(k, tensions)
    d = volumes.d[k - 1]
    X = Polynomial([0.0, 1.0])
    T = (X + y_minus) ** 3 * ((X - 1.5 * y_plus) ** 2 + 0.75 * y_plus**2 + 1.0)
    U = (X - y_plus) ** 3 * ((X + 1.5 * y_minus) ** 2 + 0.75 * y_minus**2 + 1.0)
    F = 0.5 * (1.0 + d) * T + 0.5 * (1.0 - d) * U
    return F.coef[::-1].copy()


def _h_poly(xi, ym, yp):
    return (ym * ym + 1.0) * xi * xi + (3.0 * ym * ym + yp * ym + 2.0) * xi + (
        yp * yp + 3.0 * ym * ym + 3.0 * yp * ym + 1.0
    )


def _r_poly(xi, ym, yp):
    return (3.0 * yp * yp + ym * ym + 3.0 * yp * ym + 1.0) * xi * xi + (
        3.0 * yp * yp + yp * ym + 2.0
    ) * xi + (yp * yp + 1.0)


def monotone_ratio(xi, y_minus: float, y_plus: float):
    """f(xi) = xi^3 H(xi) / R(xi); R > 0 on the whole real line."""
    return xi**3 * (_h_poly(xi, y_minus, y_plus) / _r_poly(xi, y_minus, y_plus))


def monotone_derivative(xi, y_minus: float, y_plus: float):
    """
    f'(xi) = S / R^2 with S = 3 delta xi^2 (xi + 1)^2 ((xi + eta)^2 + theta).

    delta, theta > 0 so f' >= 0 with isolated zeros at xi = 0 and xi = -1.
    """
    ym, yp = y_minus, y_plus
    delta = (ym * ym + 1.0) * (3.0 * yp * yp + ym * ym + 3.0 * yp * ym + 1.0)
    eta = (yp * ym * (yp * yp + ym * ym + 3.0 * yp * ym) + yp * yp + ym * ym + 1.0) / delta
    theta = (
        (ym + yp) ** 2
        * (yp * yp + ym * ym + yp * ym + 1.0)
        * (2.0 * yp * yp * ym * ym + 3.0 * yp * yp + 3.0 * ym * ym + yp * ym + 3.0)
        / delta**2
    )
    r = _r_poly(xi, ym, yp)
    s = 3.0 * delta * xi**2 * (xi + 1.0) ** 2 * ((xi + eta) ** 2 + theta)
    return s / (r * r)


def solve_monotone(
    y_minus: float,
    y_plus: float,
    ratio: float,
    *,
    bisection_width: float = 1e-3,
    max_iterations: int = 200,
) -> float:
    """
    Unique xi with f(xi) = ratio.

    Bracket by doubling, bisect to bisection_width, then safeguarded Newton
    with the closed-form derivative.

    Raises:
        InvalidInputError: if y_minus or y_plus is not positive
        ConvergenceError: if the iteration limit is reached before the residual target
    """
    if not (y_minus > 0 and y_plus > 0):
        raise InvalidInputError(
            f"cotangents must be positive, got ({y_minus}, {y_plus})"
        )
    if not math.isfinite(ratio):
        raise InvalidInputError(f"ratio must be finite, got {ratio}")
    if ratio == 0.0:
        return 0.0

    def residual(xi: float) -> float:
        return monotone_ratio(xi, y_minus, y_plus) - ratio

    target = 1e-12 * max(1.0, abs(ratio))
    lo, hi = -1.0, 1.0
    for _ in range(1100):
        if residual(hi) >= 0:
            break
        lo, hi = hi, 2.0 * hi
    for _ in range(1100):
        if residual(lo) <= 0:
            break
        lo, hi = 2.0 * lo, lo

    iterations = 0
    while hi - lo > bisection_width * max(1.0, abs(lo), abs(hi)):
        mid = 0.5 * (lo + hi)
        if residual(mid) < 0:
            lo = mid
        else:
            hi = mid
        iterations += 1

    xi = 0.5 * (lo + hi)
    for _ in range(max_iterations):
        value = residual(xi)
        if value == 0.0:
            return xi
        if value < 0:
            lo = xi
        else:
            hi = xi
        slope = monotone_derivative(xi, y_minus, y_plus)
        step = value / slope if slope > 0 else math.inf
        candidate = xi - step
        if not (lo < candidate < hi):
            candidate = 0.5 * (lo + hi)
        if abs(candidate - xi) <= 4.0 * np.finfo(float).eps * max(1.0, abs(xi)):
            xi = candidate
            break
        xi = candidate
        iterations += 1

    final = abs(residual(xi))
    if final > target:
        raise ConvergenceError(
            "monotone solve did not reach tolerance",
            {
                "y_minus": y_minus,
                "y_plus": y_plus,
                "ratio": ratio,
                "xi": xi,
                "residual": final,
                "iterations": iterations,
            },
        )
    return xi


def z_from_xi(xi: float, y_minus: float, y_plus: float) -> float:
    return (y_plus - xi * y_minus) / (1.0 + xi)


def pivot_root(k: int, tensions: Tensions, volumes: ReducedVolumes) -> float:
    """The unique real root z_k* of F_k, via the monotone solve."""
    y_minus, y_plus = pivot_cotangents(k, tensions)
    xi = solve_monotone(y_minus, y_plus, pivot_ratio(k, volumes))
    return z_from_xi(xi, y_minus, y_plus)


def real_root_count(coefficients) -> int:
    """
    Number of distinct real roots by Sturm sequence in exact arithmetic.

    Float coefficients are converted to their exact binary rationals, so
    the count certifies the polynomial actually evaluated.
    """
    X = sp.Symbol("X")
    poly = sp.Poly([sp.Rational(float(c)) for c in coefficients], X, domain=sp.QQ)
    return int(poly.count_roots())
