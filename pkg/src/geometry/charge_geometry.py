"""
Central charge geometry for Mass Growth Lab
Phases, the weight function g_t, left hulls (HN polygons) and mass sums
"""
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, List, Sequence, Tuple, Union

from loguru import logger

from src.utils.errors import ChargeDomainError

Number = Union[int, Fraction, float]
Phase = Union[Fraction, float]

PHASE_TOLERANCE = 1e-9


def _exact(value: Number) -> Number:
    """Promote ints to Fraction so exact arithmetic stays exact"""
    if isinstance(value, bool):
        raise TypeError("bool is not a charge coordinate")
    if isinstance(value, int):
        return Fraction(value)
    return value


@dataclass(frozen=True, eq=False)
class Charge:
    """A complex number with rational (exact) or float coordinates"""
    re: Number
    im: Number

    def __post_init__(self):
        object.__setattr__(self, 're', _exact(self.re))
        object.__setattr__(self, 'im', _exact(self.im))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Charge):
            return NotImplemented
        return self.re == other.re and self.im == other.im

    def __hash__(self) -> int:
        return hash((self.re, self.im))

    @classmethod
    def from_complex(cls, z: complex) -> 'Charge':
        return cls(float(z.real), float(z.imag))

    @property
    def is_exact(self) -> bool:
        return isinstance(self.re, Fraction) and isinstance(self.im, Fraction)

    @property
    def is_zero(self) -> bool:
        return self.re == 0 and self.im == 0

    def __add__(self, other: 'Charge') -> 'Charge':
        return Charge(self.re + other.re, self.im + other.im)

    def __sub__(self, other: 'Charge') -> 'Charge':
        return Charge(self.re - other.re, self.im - other.im)

    def __neg__(self) -> 'Charge':
        return Charge(-self.re, -self.im)

    def scale(self, factor: Number) -> 'Charge':
        return Charge(self.re * factor, self.im * factor)

    def times(self, other: 'Charge') -> 'Charge':
        """Complex multiplication"""
        return Charge(self.re * other.re - self.im * other.im,
                      self.re * other.im + self.im * other.re)

    def norm_squared(self) -> Number:
        return self.re * self.re + self.im * self.im

    def __abs__(self) -> float:
        return math.hypot(float(self.re), float(self.im))

    def to_complex(self) -> complex:
        return complex(float(self.re), float(self.im))

    def to_pair(self) -> List[float]:
        return [float(self.re), float(self.im)]


ZERO = Charge(0, 0)


def in_upper_half(z: Charge) -> bool:
    """Membership in bH = {r e^{i pi phi} : r > 0, phi in (0, 1]}"""
    return z.im > 0 or (z.im == 0 and z.re < 0)


def ensure_upper_half(z: Charge) -> Charge:
    if z.is_zero:
        raise ChargeDomainError("charge must be nonzero")
    if not in_upper_half(z):
        raise ChargeDomainError(f"charge ({z.re}, {z.im}) is outside the semi-closed upper half-plane")
    return z


@dataclass(frozen=True, eq=False)
class UpperHalfCharge(Charge):
    """A nonzero charge in bH"""

    def __post_init__(self):
        super().__post_init__()
        ensure_upper_half(self)


def cross(a: Charge, b: Charge) -> Number:
    """z-component of a x b; positive when b lies counterclockwise of a"""
    return a.re * b.im - a.im * b.re


def phase(z: Charge) -> Phase:
    """(1/pi) arg z with arg in (0, pi]; exact on the axes and diagonals"""
    ensure_upper_half(z)
    if z.is_exact:
        if z.im == 0:
            return Fraction(1)
        if z.re == 0:
            return Fraction(1, 2)
        if z.re == z.im:
            return Fraction(1, 4)
        if z.re == -z.im:
            return Fraction(3, 4)
    return math.atan2(float(z.im), float(z.re)) / math.pi


def shifted_phase(z: Charge, shift: int) -> Phase:
    """Phase of an object with heart charge z shifted by [shift]"""
    return phase(z) + shift


def compare_phase(a: Charge, b: Charge) -> int:
    """Sign of phase(a) - phase(b) for a, b in bH"""
    ensure_upper_half(a)
    ensure_upper_half(b)
    if a.is_exact and b.is_exact:
        c = cross(b, a)
        return (c > 0) - (c < 0)
    diff = float(phase(a)) - float(phase(b))
    if abs(diff) <= PHASE_TOLERANCE:
        return 0
    return 1 if diff > 0 else -1


def g_t(z: Charge, t: float) -> float:
    """g_t(z) = |z| e^{phase(z) t}"""
    return abs(z) * math.exp(float(phase(z)) * t)


def gt_triangle_defect(z1: Charge, z2: Charge, t: float) -> float:
    """g_t(z1) + g_t(z2) - g_t(z1 + z2); never negative"""
    return g_t(z1, t) + g_t(z2, t) - g_t(z1 + z2, t)


def slope_defect_function(x: float, t: float) -> float:
    """f(x) = (e^{xt} - cos(pi x)) / sin(pi x) on (-1, 0) and (0, 1)"""
    if x == 0 or abs(x) >= 1:
        raise ChargeDomainError(f"x must satisfy 0 < |x| < 1, got {x}")
    # e^{xt} - cos(pi x) without cancellation near x = 0
    numerator = math.expm1(x * t) + 2.0 * math.sin(math.pi * x / 2.0) ** 2
    return numerator / math.sin(math.pi * x)


@dataclass(frozen=True)
class HNPolygon:
    """Extremal path 0 = z_0, z_1, ..., z_k = Z(E) of a Harder-Narasimhan polygon"""
    extremal_points: Tuple[Charge, ...]

    @property
    def total(self) -> Charge:
        return self.extremal_points[-1]

    def edges(self) -> List[Charge]:
        pts = self.extremal_points
        return [pts[i] - pts[i - 1] for i in range(1, len(pts))]

    def edge_phases(self) -> List[Phase]:
        return [phase(edge) for edge in self.edges()]


def left_hull(subobject_charges: Iterable[Charge], total: Charge) -> HNPolygon:
    """Left boundary of the convex hull of the charges, from 0 to total.

    Every charge must lie in bH + {0}. The walk only visits points p with
    total - p in bH + {0}, the charges a subobject of an object of charge
    total can have; it picks, from the current vertex, the forward point of
    maximal edge phase, the farthest one on ties. Any other point must end
    up on or right of the path, otherwise the hull has no left chain ending
    at total and ChargeDomainError is raised.
    """
    points = set(subobject_charges)
    if not points:
        raise ValueError("left_hull needs at least the points 0 and total")
    if ZERO not in points:
        raise ValueError("input set must contain 0")
    if total not in points:
        raise ValueError("input set must contain total")
    if total.is_zero:
        return HNPolygon((ZERO,))

    ensure_upper_half(total)
    for p in points:
        if not p.is_zero:
            ensure_upper_half(p)
    reachable = {p for p in points if p == total or in_upper_half(total - p)}

    path = [ZERO]
    current = ZERO
    while current != total:
        best = None
        for p in reachable:
            step = p - current
            if step.is_zero or not in_upper_half(step):
                continue
            if best is None:
                best = p
                continue
            best_step = best - current
            order = compare_phase(step, best_step)
            if order > 0 or (order == 0 and step.norm_squared() > best_step.norm_squared()):
                best = p
        if best is None:
            raise ChargeDomainError("left hull walk stalled before reaching total")
        path.append(best)
        current = best

    polygon = HNPolygon(tuple(path))
    for p in points - reachable:
        if not right_of_path(polygon, p):
            raise ChargeDomainError(f"({p.re}, {p.im}) lies left of the hull path to ({total.re}, {total.im})")
    logger.debug(f"left_hull: {len(points)} points -> {len(path)} extremal points")
    return polygon


def right_of_path(polygon: HNPolygon, point: Charge) -> bool:
    """Signed-area test against every edge of the extremal path"""
    pts = polygon.extremal_points
    return all(cross(b - a, point - a) <= 0 for a, b in zip(pts, pts[1:]))


def polygon_contains(polygon: HNPolygon, point: Charge) -> bool:
    """Whether point can be a charge inside the HN polygon of an object of charge total.

    The HN polygon lies on or right of the extremal path, and every charge in
    it splits total into two charges of bH + {0}; both conditions are checked.
    """
    pts = polygon.extremal_points
    total = polygon.total
    if len(pts) == 1:
        return point.is_zero
    for part in (point, total - point):
        if not part.is_zero and not in_upper_half(part):
            return False
    return right_of_path(polygon, point)


def mass_from_factors(factors: Sequence[Tuple[Charge, Phase]], t: float) -> float:
    """Sum of |Z(A_i)| e^{phi_i t} over semistable factors with decreasing phases"""
    total = 0.0
    previous = None
    for charge, factor_phase in factors:
        if previous is not None and not factor_phase < previous:
            raise ValueError(f"factor phases must strictly decrease ({previous} then {factor_phase})")
        previous = factor_phase
        total += abs(charge) * math.exp(float(factor_phase) * t)
    return total
