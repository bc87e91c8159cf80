"""Floating-point ground truth for the elliptic billiard.

Elliptic integrals come in two independent flavours, Carlson symmetric
forms (production path) and the arithmetic-geometric mean (cross-check),
both hand-built in float64.  On top of them: rotation numbers of confocal
caustics, the action-angle boundary parametrization, a specular billiard
map, and the tangency parameter of the confocal family for an arbitrary
chord.  High-precision twins of the coordinate change (mpmath) back the
oracles that sit below float64 resolution.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import mpmath


class TangentRayError(ValueError):
    """Ray has no transversal second intersection with the boundary."""


class DegenerateChordError(ValueError):
    """Chord endpoints coincide or the line is otherwise degenerate."""


class NoConfocalTangentError(ValueError):
    """The line is tangent to no ellipse of the confocal family."""


@dataclass(frozen=True)
class EllipseParams:
    """Ellipse with semi-major axis a (default 1) and eccentricity e."""

    e: float
    a: float = 1.0

    def __post_init__(self):
        if not (0.0 <= self.e < 1.0):
            raise ValueError(f"eccentricity must lie in [0,1), got {self.e}")
        if self.a <= 0:
            raise ValueError("semi-major axis must be positive")

    @property
    def b(self) -> float:
        return self.a * math.sqrt(1.0 - self.e * self.e)

    @property
    def c_lin(self) -> float:
        return self.a * self.e


@dataclass(frozen=True)
class CausticParam:
    """Confocal caustic with parameter lambda in (0, b)."""

    lam: float
    ellipse: EllipseParams

    def __post_init__(self):
        if not (0.0 < self.lam < self.ellipse.b):
            raise ValueError(f"lambda must lie in (0, b), got {self.lam}")

    @property
    def k_mod(self) -> float:
        E = self.ellipse
        return math.sqrt((E.a**2 - E.b**2) / (E.a**2 - self.lam**2))


@dataclass(frozen=True)
class RayState:
    """Boundary angle plus a unit direction pointing strictly inward."""

    phi: float
    direction: tuple[float, float]

    def __post_init__(self):
        dx, dy = self.direction
        norm = math.hypot(dx, dy)
        if abs(norm - 1.0) > 1e-9:
            raise ValueError("direction must be a unit vector")


# -- elliptic integrals ------------------------------------------------------


def carlson_rf(x: float, y: float, z: float) -> float:
    """Carlson's symmetric integral R_F by duplication, ~machine accuracy."""
    if min(x, y, z) < 0:
        raise ValueError("arguments must be non-negative")
    a = (x + y + z) / 3.0
    q = (3.0 * 2.220446049250313e-16) ** (-1.0 / 8.0) * max(
        abs(a - x), abs(a - y), abs(a - z)
    )
    f = 1.0
    while q >= abs(a) * f:
        sx, sy, sz = math.sqrt(x), math.sqrt(y), math.sqrt(z)
        lam = sx * sy + sx * sz + sy * sz
        x = (x + lam) / 4.0
        y = (y + lam) / 4.0
        z = (z + lam) / 4.0
        a = (a + lam) / 4.0
        f *= 4.0
    big_a = a
    x_dev = ((x + y + z) / 3.0 - x) / big_a
    y_dev = ((x + y + z) / 3.0 - y) / big_a
    z_dev = -(x_dev + y_dev)
    e2 = x_dev * y_dev - z_dev * z_dev
    e3 = x_dev * y_dev * z_dev
    return (
        1.0
        + e3 * (1.0 / 14.0 + 3.0 * e3 / 104.0)
        + e2 * (-1.0 / 10.0 + e2 / 24.0 - 3.0 * e3 / 44.0 - 5.0 * e2 * e2 / 208.0 + e2 * e3 / 16.0)
    ) / math.sqrt(big_a)


def agm(a: float, b: float) -> float:
    """Arithmetic-geometric mean, the independent route to K."""
    for _ in range(64):
        a, b = (a + b) / 2.0, math.sqrt(a * b)
        if abs(a - b) <= 1e-16 * abs(a):
            break
    return a


def complete_K(k: float) -> float:
    """Complete elliptic integral of the first kind, modulus convention."""
    if not (0.0 <= k < 1.0):
        raise ValueError(f"modulus must lie in [0,1), got {k}")
    if k == 0.0:
        return math.pi / 2.0
    return carlson_rf(0.0, 1.0 - k * k, 1.0)


def complete_K_agm(k: float) -> float:
    if not (0.0 <= k < 1.0):
        raise ValueError(f"modulus must lie in [0,1), got {k}")
    return math.pi / (2.0 * agm(1.0, math.sqrt(1.0 - k * k)))


def elliptic_F(phi: float, k: float) -> float:
    """Incomplete integral of 1/sqrt(1 - k^2 sin^2 tau) from 0 to phi.

    Extended to all real phi by half-period additivity:
    F(phi + pi) = F(phi) + 2K.
    """
    if not (0.0 <= k < 1.0):
        raise ValueError(f"modulus must lie in [0,1), got {k}")
    half_periods = math.floor(phi / math.pi + 0.5)
    r = phi - half_periods * math.pi  # in [-pi/2, pi/2)
    out = 0.0
    if half_periods != 0:
        out += 2.0 * half_periods * complete_K(k)
    if r != 0.0:
        s, c = math.sin(abs(r)), math.cos(abs(r))
        val = s * carlson_rf(c * c, 1.0 - k * k * s * s, 1.0)
        out += math.copysign(val, r)
    return out


# -- caustics and the action-angle parameter ---------------------------------


def caustic_modulus(lam: float, E: EllipseParams) -> float:
    return CausticParam(lam, E).k_mod


def rotation_number(lam: float, e: float, a: float = 1.0) -> float:
    """Rotation number of the caustic tangent orbits, strictly in (0, 1/2)."""
    E = EllipseParams(e, a)
    k = caustic_modulus(lam, E)
    return elliptic_F(math.asin(lam / E.b), k) / (2.0 * complete_K(k))


def lambda_of_omega(e: float, omega: float, a: float = 1.0) -> float:
    """Inverse of rotation_number by bisection on the monotone branch."""
    if not (0.0 < omega < 0.5):
        raise ValueError(f"rotation number must lie in (0, 1/2), got {omega}")
    E = EllipseParams(e, a)
    lo, hi = 1e-14 * E.b, E.b * (1.0 - 1e-14)
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if rotation_number(mid, e, a) < omega:
            lo = mid
        else:
            hi = mid
        if hi - lo < 1e-16 * E.b:
            break
    return 0.5 * (lo + hi)


def theta_of_phi(phi: float, lam: float, e: float, a: float = 1.0) -> float:
    """Action-angle parameter of the boundary point at elliptic angle phi.

    The amplitude of the defining elliptic integral is anchored at the
    minor axis: only there is the billiard advance along C_lambda exactly
    uniform (anchoring at the major axis leaves a phase-locked wobble of
    order e^2; see the rotation tests).  Strictly increasing in phi, fixes
    the quarter points, and maps [0, 2pi) onto [0, 2pi).
    """
    E = EllipseParams(e, a)
    k = caustic_modulus(lam, E)
    big_k = complete_K(k)
    return (math.pi / 2.0) * (elliptic_F(phi - math.pi / 2.0, k) + big_k) / big_k


def phi_of_theta(theta: float, lam: float, e: float, a: float = 1.0) -> float:
    """Numeric inverse of theta_of_phi by bisection (monotone)."""
    lo, hi = theta - math.pi / 2.0, theta + math.pi / 2.0
    for _ in range(120):
        mid = 0.5 * (lo + hi)
        if theta_of_phi(mid, lam, e, a) < theta:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


# -- billiard map ---------------------------------------------------------------


def boundary_point(E: EllipseParams, phi: float) -> tuple[float, float]:
    return (E.a * math.cos(phi), E.b * math.sin(phi))


def _inward_normal(E: EllipseParams, x: float, y: float) -> tuple[float, float]:
    nx, ny = -x / E.a**2, -y / E.b**2
    norm = math.hypot(nx, ny)
    return nx / norm, ny / norm


def billiard_step(ray: RayState, E: EllipseParams) -> RayState:
    """Next boundary hit with specular reflection.

    The chord equation along P + t*d is quadratic with one root at t = 0;
    the transversal root is taken in closed form and refused when the ray
    is tangent (no forward intersection).
    """
    px, py = boundary_point(E, ray.phi)
    dx, dy = ray.direction
    quad_a = (dx / E.a) ** 2 + (dy / E.b) ** 2
    quad_b = 2.0 * (px * dx / E.a**2 + py * dy / E.b**2)
    t = -quad_b / quad_a
    if t <= 1e-12 * E.a:
        raise TangentRayError("no transversal second intersection")
    qx, qy = px + t * dx, py + t * dy
    phi_next = math.atan2(qy / E.b, qx / E.a) % (2.0 * math.pi)
    nx, ny = _inward_normal(E, qx, qy)
    dot = dx * nx + dy * ny
    rx, ry = dx - 2.0 * dot * nx, dy - 2.0 * dot * ny
    norm = math.hypot(rx, ry)
    return RayState(phi_next, (rx / norm, ry / norm))


def caustic_of_chord(p1: tuple[float, float], p2: tuple[float, float], E: EllipseParams) -> float:
    """Confocal parameter of the family member tangent to the chord's line.

    For the line u x + v y = w (unit normal), the tangency condition of the
    confocal ellipse with parameter lambda gives
    lambda^2 = a^2 u^2 + b^2 v^2 - w^2.
    """
    dx, dy = p2[0] - p1[0], p2[1] - p1[1]
    norm = math.hypot(dx, dy)
    if norm < 1e-15 * E.a:
        raise DegenerateChordError("chord endpoints coincide")
    u, v = -dy / norm, dx / norm
    w = u * p1[0] + v * p1[1]
    rad = E.a**2 * u * u + E.b**2 * v * v - w * w
    if rad < -1e-12 * E.a**2:
        raise NoConfocalTangentError("line meets no confocal ellipse of the family")
    return math.sqrt(max(rad, 0.0))


def launch_tangent(phi0: float, lam: float, E: EllipseParams, forward: bool = True) -> RayState:
    """Ray from the boundary point at phi0 tangent to the caustic C_lambda.

    Of the two tangent lines from the point, picks the one advancing the
    boundary angle counterclockwise (or clockwise with forward=False).
    """
    px, py = boundary_point(E, phi0)
    ca = math.sqrt(E.a**2 - lam**2)
    cb = math.sqrt(E.b**2 - lam**2)
    gx, gy = px / ca, py / cb
    r = math.hypot(gx, gy)
    if r <= 1.0:
        raise ValueError("boundary point lies inside or on the caustic")
    delta = math.atan2(gy, gx)
    spread = math.acos(1.0 / r)
    best = None
    for sign in (+1.0, -1.0):
        t = delta + sign * spread
        qx, qy = ca * math.cos(t), cb * math.sin(t)
        dx, dy = qx - px, qy - py
        norm = math.hypot(dx, dy)
        if norm < 1e-15:
            continue
        cross = px * dy - py * dx
        if (cross > 0.0) == forward:
            best = RayState(phi0 % (2.0 * math.pi), (dx / norm, dy / norm))
    if best is None:
        raise ValueError("failed to construct a tangent launch direction")
    return best


def orbit(ray: RayState, E: EllipseParams, steps: int) -> list[RayState]:
    states = [ray]
    for _ in range(steps):
        states.append(billiard_step(states[-1], E))
    return states


def caustic_deviation(lam: float, e: float, steps: int, phi0: float = 0.37) -> float:
    """Max deviation of the recomputed tangency parameter along an orbit."""
    E = EllipseParams(e)
    states = orbit(launch_tangent(phi0, lam, E), E, steps)
    worst = 0.0
    for s0, s1 in zip(states, states[1:]):
        lam_chord = caustic_of_chord(boundary_point(E, s0.phi), boundary_point(E, s1.phi), E)
        worst = max(worst, abs(lam_chord - lam))
    return worst


def _unwrap_increasing(angles: list[float]) -> list[float]:
    out = [angles[0]]
    for a in angles[1:]:
        while a <= out[-1]:
            a += 2.0 * math.pi
        out.append(a)
    return out


def verify_theta_rotation(lam: float, e: float, steps: int, phi0: float = 0.37) -> float:
    """Max |delta theta - 2 pi omega| along a tangent orbit."""
    E = EllipseParams(e)
    omega = rotation_number(lam, e)
    states = orbit(launch_tangent(phi0, lam, E), E, steps)
    phis = _unwrap_increasing([s.phi for s in states])
    thetas = [theta_of_phi(p, lam, e) for p in phis]
    target = 2.0 * math.pi * omega
    return max(abs(t1 - t0 - target) for t0, t1 in zip(thetas, thetas[1:]))


def orbit_closure_error(q: int, e: float, phi0: float = 0.37) -> float:
    """Distance between start and end point of a rotation-number-1/q orbit."""
    lam = lambda_of_omega(e, 1.0 / q)
    E = EllipseParams(e)
    states = orbit(launch_tangent(phi0, lam, E), E, q)
    x0, y0 = boundary_point(E, states[0].phi)
    x1, y1 = boundary_point(E, states[-1].phi)
    return math.hypot(x1 - x0, y1 - y0)


# -- high-precision twins (mpmath) -----------------------------------------------


def _mp_ellipf_ext(phi, k2, big_k, mp):
    half_periods = mp.floor(phi / mp.pi + mp.mpf(1) / 2)
    r = phi - half_periods * mp.pi
    val = 2 * half_periods * big_k
    if r != 0:
        val += mp.sign(r) * mp.ellipf(abs(r), k2)
    return val


def _mp_theta_of_phi(phi, lam, e, mp):
    k2 = (e * e) / (1 - lam * lam)
    big_k = mp.ellipk(k2)
    return (mp.pi / 2) * (_mp_ellipf_ext(phi - mp.pi / 2, k2, big_k, mp) + big_k) / big_k


def phi_of_theta_hp(theta, lam: float, e: float, dps: int = 40):
    """High-precision inverse coordinate change, bisection under mpmath."""
    mp = mpmath.mp
    old = mp.dps
    mp.dps = dps
    try:
        theta = mp.mpf(theta)
        lam_, e_ = mp.mpf(lam), mp.mpf(e)
        lo, hi = theta - 1, theta + 1
        for _ in range(int(dps * 3.5) + 20):
            mid = (lo + hi) / 2
            if _mp_theta_of_phi(mid, lam_, e_, mp) < theta:
                lo = mid
            else:
                hi = mid
        return (lo + hi) / 2
    finally:
        mp.dps = old


def _deviation_shifted(theta_tilde, lam: float, e: float, dps: int, mp):
    """phi - theta in the minor-axis-anchored variable the series lives in."""
    theta = theta_tilde + mp.pi / 2
    return phi_of_theta_hp(theta, lam, e, dps) - theta


def phi_deviation_profile(lam: float, e: float, n_grid: int, order: int, dps: int = 40):
    """Max residual of phi(theta) - theta against the order-N exact series.

    Returns (max_abs_residual, s) with s = e^2/(1 - lambda^2); evaluated in
    mpmath so that residuals far below float64 resolution remain visible.
    The comparison runs in the minor-axis-anchored angle, where the series
    coefficients apply verbatim; the max residual is shift-invariant.
    """
    from .coeffs import phi_series

    mp = mpmath.mp
    old = mp.dps
    mp.dps = dps
    try:
        e_, lam_ = mp.mpf(e), mp.mpf(lam)
        s = (e_ * e_) / (1 - lam_ * lam_)
        series = phi_series(order)
        worst = mp.mpf(0)
        for i in range(n_grid):
            theta = 2 * mp.pi * (i + mp.mpf(1) / 3) / n_grid
            dev = _deviation_shifted(theta, lam, e, dps, mp)
            model = mp.mpf(0)
            for j in range(1, order + 1):
                model += series.coeffs[j].eval_mp(theta, mp) * s**j
            worst = max(worst, abs(dev - model))
        return worst, s
    finally:
        mp.dps = old


def sine_projection_of_phi(lam: float, e: float, l: int, n_grid: int = 128, dps: int = 40):
    """(1/pi) * integral of (phi(theta) - theta) sin(2 l theta) over a period.

    Computed in the minor-axis-anchored angle.  Trapezoidal quadrature of a
    smooth periodic integrand converges geometrically; used as the
    independent fit oracle for the expansion coefficients.
    """
    mp = mpmath.mp
    old = mp.dps
    mp.dps = dps
    try:
        total = mp.mpf(0)
        for i in range(n_grid):
            theta = 2 * mp.pi * i / n_grid
            total += _deviation_shifted(theta, lam, e, dps, mp) * mp.sin(2 * l * theta)
        return total * 2 / n_grid
    finally:
        mp.dps = old
