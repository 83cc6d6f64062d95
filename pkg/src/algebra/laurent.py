"""
Integer Laurent polynomials in u = e^{-t}
Degree m stands for cohomological degree m, so P_t(M) = sum_k dim H^k(M) u^k
"""
import math
from typing import Dict, Iterable, Iterator, Mapping, Optional, Tuple, Union


class LaurentPoly:
    """Immutable finite map degree -> nonzero integer coefficient"""

    __slots__ = ('_coeffs',)

    def __init__(self, coefficients: Optional[Mapping[int, int]] = None):
        coeffs: Dict[int, int] = {}
        for degree, value in (coefficients or {}).items():
            if value:
                coeffs[int(degree)] = int(value)
        object.__setattr__(self, '_coeffs', coeffs)

    def __setattr__(self, name, value):
        raise AttributeError("LaurentPoly is immutable")

    @classmethod
    def monomial(cls, coefficient: int = 1, degree: int = 0) -> 'LaurentPoly':
        return cls({degree: coefficient})

    @classmethod
    def zero(cls) -> 'LaurentPoly':
        return cls()

    @classmethod
    def one(cls) -> 'LaurentPoly':
        return cls({0: 1})

    # -- inspection -------------------------------------------------------
    def items(self) -> Iterator[Tuple[int, int]]:
        return iter(sorted(self._coeffs.items()))

    @property
    def coefficients(self) -> Dict[int, int]:
        return dict(sorted(self._coeffs.items()))

    def coefficient(self, degree: int) -> int:
        return self._coeffs.get(degree, 0)

    def is_zero(self) -> bool:
        return not self._coeffs

    def is_monomial(self) -> bool:
        return len(self._coeffs) == 1

    def is_nonnegative(self) -> bool:
        return all(c > 0 for c in self._coeffs.values())

    @property
    def min_degree(self) -> Optional[int]:
        return min(self._coeffs) if self._coeffs else None

    @property
    def max_degree(self) -> Optional[int]:
        return max(self._coeffs) if self._coeffs else None

    # -- ring structure ---------------------------------------------------
    def __add__(self, other: Union['LaurentPoly', int]) -> 'LaurentPoly':
        other = _coerce(other)
        result = dict(self._coeffs)
        for degree, value in other._coeffs.items():
            result[degree] = result.get(degree, 0) + value
        return LaurentPoly(result)

    __radd__ = __add__

    def __neg__(self) -> 'LaurentPoly':
        return LaurentPoly({d: -c for d, c in self._coeffs.items()})

    def __sub__(self, other: Union['LaurentPoly', int]) -> 'LaurentPoly':
        return self + (-_coerce(other))

    def __rsub__(self, other: Union['LaurentPoly', int]) -> 'LaurentPoly':
        return _coerce(other) - self

    def __mul__(self, other: Union['LaurentPoly', int]) -> 'LaurentPoly':
        if isinstance(other, int):
            return self.scale(other)
        result: Dict[int, int] = {}
        for d1, c1 in self._coeffs.items():
            for d2, c2 in other._coeffs.items():
                result[d1 + d2] = result.get(d1 + d2, 0) + c1 * c2
        return LaurentPoly(result)

    __rmul__ = __mul__

    def scale(self, factor: int) -> 'LaurentPoly':
        return LaurentPoly({d: c * factor for d, c in self._coeffs.items()})

    def shift_degree(self, m: int) -> 'LaurentPoly':
        """u^m * p"""
        return LaurentPoly({d + m: c for d, c in self._coeffs.items()})

    def __eq__(self, other: object) -> bool:
        if isinstance(other, int):
            other = LaurentPoly.monomial(other, 0)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self._coeffs == other._coeffs

    def __hash__(self) -> int:
        return hash(frozenset(self._coeffs.items()))

    # -- evaluation -------------------------------------------------------
    def evaluate(self, t: float) -> float:
        """sum_m c_m e^{-m t}; may overflow for very large coefficients, see log_evaluate"""
        return math.fsum(c * math.exp(-d * t) for d, c in self._coeffs.items())

    def log_evaluate(self, t: float) -> float:
        """log of evaluate(t), computed without overflow; requires a positive value"""
        if not self._coeffs:
            raise ValueError("log of the zero polynomial")
        logs = [(math.log(abs(c)) - d * t, 1 if c > 0 else -1) for d, c in self._coeffs.items()]
        top = max(value for value, _ in logs)
        scaled = math.fsum(sign * math.exp(value - top) for value, sign in logs)
        if scaled <= 0:
            raise ValueError(f"polynomial is not positive at t={t}")
        return top + math.log(scaled)

    def evaluate_at_minus_one(self) -> int:
        """Specialization u = -1 (Euler characteristic / K-theory class)"""
        return sum(c if d % 2 == 0 else -c for d, c in self._coeffs.items())

    def value_at_one(self) -> int:
        return sum(self._coeffs.values())

    # -- display ----------------------------------------------------------
    def to_dict(self) -> Dict[str, int]:
        return {str(d): c for d, c in sorted(self._coeffs.items())}

    def __str__(self) -> str:
        if not self._coeffs:
            return "0"
        terms = []
        for degree, coeff in sorted(self._coeffs.items()):
            if degree == 0:
                body = str(abs(coeff))
            else:
                power = "u" if degree == 1 else f"u^{degree}"
                body = power if abs(coeff) == 1 else f"{abs(coeff)}*{power}"
            sign = "-" if coeff < 0 else "+"
            terms.append((sign, body))
        first_sign, first_body = terms[0]
        text = ("-" if first_sign == "-" else "") + first_body
        for sign, body in terms[1:]:
            text += f" {sign} {body}"
        return text

    def __repr__(self) -> str:
        return f"LaurentPoly({self.coefficients})"


def _coerce(value: Union[LaurentPoly, int]) -> LaurentPoly:
    if isinstance(value, LaurentPoly):
        return value
    if isinstance(value, int):
        return LaurentPoly.monomial(value, 0)
    raise TypeError(f"cannot combine LaurentPoly with {type(value).__name__}")


def geometric_sum(ratio: LaurentPoly, k: int) -> LaurentPoly:
    """sum_{l=0}^{k-1} ratio^l"""
    if k < 0:
        raise ValueError("k must be nonnegative")
    total = LaurentPoly.zero()
    power = LaurentPoly.one()
    for _ in range(k):
        total = total + power
        power = power * ratio
    return total


def poly_sum(polys: Iterable[LaurentPoly]) -> LaurentPoly:
    total = LaurentPoly.zero()
    for p in polys:
        total = total + p
    return total
