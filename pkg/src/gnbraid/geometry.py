"""Plane geometry on complex numbers: orientation, circumcircles, circles tangent to |z| = 1."""

from __future__ import annotations

import cmath
import math
from typing import NamedTuple

import numpy as np

COLLINEAR_EPS = 1e-10


class Collinear(ValueError):
    """The three points have no circumcircle (orientation below threshold)."""


class Circle(NamedTuple):
    center: complex
    radius: float

    def tangency_point(self) -> complex:
        """Closest point of contact with the absolute |z| = 1 (internal tangency)."""
        if abs(self.center) == 0:
            raise ValueError("a concentric circle has no distinguished tangency point")
        return self.center + self.radius * self.center / abs(self.center)

    def tangency_residual(self) -> float:
        """|c| + r - 1: zero exactly when the circle is internally tangent to |z| = 1."""
        return abs(self.center) + self.radius - 1.0


def orientation(p: complex, q: complex, r: complex) -> float:
    """det[q - p, r - p]; positive for a counterclockwise triple."""
    return ((q - p).conjugate() * (r - p)).imag


def circumcircle(p: complex, q: complex, r: complex, eps: float = COLLINEAR_EPS) -> Circle:
    """Circle through three points.

    Raises Collinear when |det| <= eps * (largest squared side length).
    """
    b, c = q - p, r - p
    d = 2.0 * (b.conjugate() * c).imag
    scale = max(abs(b), abs(c), abs(c - b)) ** 2
    if abs(d) <= 2.0 * eps * scale:
        raise Collinear(f"points {p}, {q}, {r} are collinear")
    bb, cc = abs(b) ** 2, abs(c) ** 2
    # center offset solves 2 Re(conj(b) z) = |b|^2, 2 Re(conj(c) z) = |c|^2
    z = 1j * (cc * b - bb * c) / d
    return Circle(p + z, abs(z))


def tangent_circles_through(a: complex, b: complex) -> list[Circle]:
    """The two circles through a and b that are internally tangent to |z| = 1."""
    if abs(a) >= 1 or abs(b) >= 1 or a == b:
        raise ValueError("need two distinct points strictly inside the unit disc")
    m = (a + b) / 2
    u = 1j * (b - a) / abs(b - a)
    # r(s) = (1 + |a|^2 - 2 Re(c conj a)) / 2 is linear in s for c = m + s u;
    # equate r(s)^2 with |c(s) - a|^2
    r0 = (1 + abs(a) ** 2 - 2 * (m * a.conjugate()).real) / 2
    r1 = -(u * a.conjugate()).real
    d0 = m - a
    # |d0 + s u|^2 = |d0|^2 + 2 s Re(d0 conj u) + s^2
    coeffs = [r1**2 - 1.0, 2 * r0 * r1 - 2 * (d0 * u.conjugate()).real, r0**2 - abs(d0) ** 2]
    out = []
    for s in np.roots(coeffs):
        if abs(s.imag) > 1e-9:
            continue
        c = m + s.real * u
        circ = Circle(c, abs(c - a))
        if abs(circ.tangency_residual()) < 1e-9:
            out.append(circ)
    out.sort(key=lambda circ: (circ.center.real, circ.center.imag))
    return out


def ccw_angle_from_tangency(p: complex, circle: Circle) -> float:
    """Angle in [0, 2pi) swept counterclockwise from the tangency point to p."""
    x = circle.tangency_point()
    return (cmath.phase(p - circle.center) - cmath.phase(x - circle.center)) % (2 * math.pi)


def precedes(a: complex, b: complex, circle: Circle, tol: float = 1e-7) -> bool:
    """True iff a comes before b walking counterclockwise from the tangency point."""
    for p in (a, b):
        if abs(abs(p - circle.center) - circle.radius) > tol * max(1.0, circle.radius):
            raise ValueError(f"point {p} is not on the circle {circle}")
    return ccw_angle_from_tangency(a, circle) < ccw_angle_from_tangency(b, circle)


def order_from_tangency(points: dict[int, complex], circle: Circle) -> tuple[int, ...]:
    """Labels of ``points`` sorted counterclockwise from the tangency point."""
    return tuple(sorted(points, key=lambda k: ccw_angle_from_tangency(points[k], circle)))


def order_along_line(points: dict[int, complex]) -> tuple[int, ...]:
    """Labels of (nearly) collinear points in their order along the line.

    The direction is taken between the two farthest points, so the middle
    point is always second.
    """
    labels = list(points)
    best = max(
        ((abs(points[x] - points[y]), x, y) for i, x in enumerate(labels) for y in labels[i + 1 :]),
    )
    _, x, y = best
    d = points[y] - points[x]
    return tuple(sorted(labels, key=lambda k: ((points[k] - points[x]) * d.conjugate()).real))
