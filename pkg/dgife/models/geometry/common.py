# -*- coding: utf-8 -*-
# Copyright 2024 Halltic eSolutions S.L.
# License AGPL-3.0 or later (http://www.gnu.org/licenses/agpl).

"""

Interface curve given as the zero set of a level set function.

Points with a negative level set value belong to the minus sub-domain,
points with a positive value to the plus sub-domain. Intersections with
mesh segments are found by scanning the level set for sign changes and
bisecting inside the bracket, so no derivative is needed.

"""

import abc
import enum
import math
from dataclasses import dataclass

import numpy as np

from ...exception import DegenerateGradient, MultipleRoots

TOL_ON = 1e-12
TOL_ROOT = 1e-12
TOL_GRAD = 1e-10
ROOT_SAMPLES = 16
BISECTION_STEPS = 60


class Side(enum.IntEnum):
    MINUS = -1
    ON = 0
    PLUS = 1


class InterfaceCurve(abc.ABC):
    """ Level set description of the interface """

    tol_on = TOL_ON

    @abc.abstractmethod
    def level_set(self, x, y):
        """ Value of the level set, vectorized over ``x`` and ``y`` """

    @abc.abstractmethod
    def gradient(self, x, y):
        """ Gradient of the level set, an array with a trailing axis of 2 """

    @abc.abstractmethod
    def sample(self, count):
        """ ``count`` points on the curve, used to check mesh resolution """

    @abc.abstractmethod
    def perimeter(self):
        """ Length of the curve """

    def sides(self, x, y):
        """ Vectorized side of points, -1, 0 or 1 """
        phi = np.asarray(self.level_set(x, y), dtype=float)
        sides = np.sign(phi).astype(np.int8)
        sides[np.abs(phi) <= self.tol_on] = Side.ON
        return sides


class EllipseCurve(InterfaceCurve):
    """ Ellipse ``r(x, y) = 1`` with

    r^2 = (x - x0)^2 / a^2 + (y - y0)^2 / b^2

    and level set ``r^2 - 1``.
    """

    def __init__(self, center=(0.0, 0.0), a=1.0, b=1.0, tol_on=TOL_ON):
        if a <= 0.0 or b <= 0.0:
            raise ValueError('Semi axes must be positive, got a=%s b=%s' % (a, b))
        self.center = (float(center[0]), float(center[1]))
        self.a = float(a)
        self.b = float(b)
        self.tol_on = tol_on

    def __repr__(self):
        return 'EllipseCurve(center=%r, a=%r, b=%r)' % (self.center, self.a, self.b)

    def radius(self, x, y):
        x = np.asarray(x, dtype=float)
        y = np.asarray(y, dtype=float)
        return np.sqrt(((x - self.center[0]) / self.a) ** 2 + ((y - self.center[1]) / self.b) ** 2)

    def level_set(self, x, y):
        x = np.asarray(x, dtype=float)
        y = np.asarray(y, dtype=float)
        return ((x - self.center[0]) / self.a) ** 2 + ((y - self.center[1]) / self.b) ** 2 - 1.0

    def gradient(self, x, y):
        x = np.asarray(x, dtype=float)
        y = np.asarray(y, dtype=float)
        return np.stack([2.0 * (x - self.center[0]) / self.a ** 2,
                         2.0 * (y - self.center[1]) / self.b ** 2], axis=-1)

    def point_at(self, angle):
        angle = np.asarray(angle, dtype=float)
        return np.stack([self.center[0] + self.a * np.cos(angle),
                         self.center[1] + self.b * np.sin(angle)], axis=-1)

    def perimeter(self):
        # Ramanujan
        a, b = self.a, self.b
        return math.pi * (3.0 * (a + b) - math.sqrt((3.0 * a + b) * (a + 3.0 * b)))

    def sample(self, count):
        return self.point_at(np.linspace(0.0, 2.0 * math.pi, count, endpoint=False))


@dataclass(frozen=True)
class CoefficientField:
    """ Piecewise constant diffusion coefficient """
    beta_minus: float
    beta_plus: float

    def __post_init__(self):
        if self.beta_minus <= 0.0 or self.beta_plus <= 0.0:
            raise ValueError('Diffusion coefficients must be positive, got (%s, %s)'
                             % (self.beta_minus, self.beta_plus))

    @property
    def beta_min(self):
        return min(self.beta_minus, self.beta_plus)

    @property
    def beta_max(self):
        return max(self.beta_minus, self.beta_plus)

    def __call__(self, sides):
        """ Coefficient for an array of sides, points on the curve get the minus value """
        return np.where(np.asarray(sides) > 0, self.beta_plus, self.beta_minus)


def side_of(curve, point):
    phi = float(curve.level_set(point[0], point[1]))
    if phi < -curve.tol_on:
        return Side.MINUS
    if phi > curve.tol_on:
        return Side.PLUS
    return Side.ON


def _sample_signs(curve, p0, p1, samples):
    t = np.linspace(0.0, 1.0, samples + 1)
    points = p0[:, None, :] + t[None, :, None] * (p1 - p0)[:, None, :]
    phi = curve.level_set(points[..., 0], points[..., 1])
    signs = np.sign(phi).astype(np.int8)
    signs[np.abs(phi) <= curve.tol_on] = 0
    return t, signs


def scan_segments(curve, p0, p1, samples=ROOT_SAMPLES):
    """ Count level set sign changes along a batch of segments

    Zero samples are skipped, so a change is counted between the two
    nearest samples with a strict sign.

    :return: ``(changes, bracket_lo, bracket_hi)`` where the brackets are
             the parameters around the first change (NaN without change)
    """
    p0 = np.asarray(p0, dtype=float)
    p1 = np.asarray(p1, dtype=float)
    t, signs = _sample_signs(curve, p0, p1, samples)
    n = signs.shape[0]
    changes = np.zeros(n, dtype=int)
    bracket_lo = np.full(n, np.nan)
    bracket_hi = np.full(n, np.nan)
    last_sign = np.zeros(n, dtype=np.int8)
    last_t = np.zeros(n)
    for k in range(samples + 1):
        current = signs[:, k]
        change = (current != 0) & (last_sign != 0) & (current != last_sign)
        first = change & (changes == 0)
        bracket_lo[first] = last_t[first]
        bracket_hi[first] = t[k]
        changes += change
        strict = current != 0
        last_sign = np.where(strict, current, last_sign)
        last_t = np.where(strict, t[k], last_t)
    return changes, bracket_lo, bracket_hi


def bisect_segments(curve, p0, p1, lo, hi, steps=BISECTION_STEPS):
    """ Vectorized bisection of the level set on ``[lo, hi]`` brackets """
    p0 = np.asarray(p0, dtype=float)
    p1 = np.asarray(p1, dtype=float)
    lo = np.array(lo, dtype=float)
    hi = np.array(hi, dtype=float)
    delta = p1 - p0

    def phi_at(t):
        points = p0 + t[:, None] * delta
        return curve.level_set(points[:, 0], points[:, 1])

    sign_lo = np.sign(phi_at(lo))
    for _ in range(steps):
        if np.all(hi - lo <= TOL_ROOT * 1e-3):
            break
        middle = 0.5 * (lo + hi)
        value = phi_at(middle)
        same = np.sign(value) == sign_lo
        lo = np.where(same, middle, lo)
        hi = np.where(same, hi, middle)
    t = 0.5 * (lo + hi)
    return t, p0 + t[:, None] * delta


def segment_intersection(curve, p0, p1, samples=ROOT_SAMPLES):
    """ Crossing point of the interface with the segment ``p0``-``p1``

    :return: the crossing as a 2D array, the end point lying on the curve
             when there is no strict sign change, or None
    :raises MultipleRoots: when the scan finds more than one crossing
    """
    p0 = np.asarray(p0, dtype=float)
    p1 = np.asarray(p1, dtype=float)
    if np.allclose(p0, p1, rtol=0.0, atol=0.0):
        raise ValueError('Degenerate segment at %s' % (p0,))
    changes, lo, hi = scan_segments(curve, p0[None], p1[None], samples)
    side0 = side_of(curve, p0)
    side1 = side_of(curve, p1)
    on_ends = int(side0 == Side.ON) + int(side1 == Side.ON)
    if changes[0] > 1 or (changes[0] == 1 and on_ends):
        raise MultipleRoots(p0, p1, int(changes[0]) + on_ends)
    if changes[0] == 1:
        _, point = bisect_segments(curve, p0[None], p1[None], lo, hi)
        return point[0]
    if side0 == Side.ON:
        return p0.copy()
    if side1 == Side.ON:
        return p1.copy()
    return None


def unit_normal(curve, point):
    """ Normal pointing from the minus into the plus sub-domain """
    gradient = np.asarray(curve.gradient(point[0], point[1]), dtype=float)
    norm = float(np.hypot(gradient[0], gradient[1]))
    if norm < TOL_GRAD:
        raise DegenerateGradient(point, norm)
    return gradient / norm
