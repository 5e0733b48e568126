"""
Sparse multivariate polynomials over the complex numbers.

Monomials are tuples of (variable index, exponent) pairs sorted by variable index, so equal
monomials compare equal. Generated relations only ever carry integer coefficients; those are
kept as Python ints so printing and matching stay exact.
"""

from numbers import Number
from typing import Callable, Dict, Iterable, List, Mapping, Optional, Sequence, Tuple, Union

import numpy as np

Monomial = Tuple[Tuple[int, int], ...]
Coefficient = Union[int, complex]
ONE: Monomial = ()


def _normalize(value: Coefficient) -> Coefficient:
    if isinstance(value, complex):
        if value.imag == 0 and value.real == int(value.real):
            return int(value.real)
        return value
    if isinstance(value, float):
        return int(value) if value == int(value) else complex(value)
    return value


def _multiply_monomials(a: Monomial, b: Monomial) -> Monomial:
    powers: Dict[int, int] = dict(a)
    for var, exp in b:
        powers[var] = powers.get(var, 0) + exp
    return tuple(sorted(powers.items()))


class Polynomial:
    """An immutable sparse polynomial."""

    __slots__ = ("terms",)

    def __init__(self, terms: Optional[Mapping[Monomial, Coefficient]] = None):
        cleaned = {}
        for monomial, coeff in (terms or {}).items():
            coeff = _normalize(coeff)
            if coeff != 0:
                cleaned[monomial] = coeff
        object.__setattr__(self, "terms", cleaned)

    def __setattr__(self, name, value):
        raise AttributeError("Polynomial is immutable")

    @classmethod
    def constant(cls, value: Coefficient) -> "Polynomial":
        return cls({ONE: value})

    @classmethod
    def variable(cls, index: int) -> "Polynomial":
        return cls({((index, 1),): 1})

    @staticmethod
    def _coerce(other) -> "Polynomial":
        if isinstance(other, Polynomial):
            return other
        if isinstance(other, Number):
            return Polynomial.constant(other)
        raise TypeError(f"cannot combine Polynomial with {type(other).__name__}")

    def __add__(self, other) -> "Polynomial":
        other = self._coerce(other)
        terms = dict(self.terms)
        for monomial, coeff in other.terms.items():
            terms[monomial] = terms.get(monomial, 0) + coeff
        return Polynomial(terms)

    __radd__ = __add__

    def __neg__(self) -> "Polynomial":
        return Polynomial({m: -c for m, c in self.terms.items()})

    def __sub__(self, other) -> "Polynomial":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "Polynomial":
        return self._coerce(other) - self

    def __mul__(self, other) -> "Polynomial":
        other = self._coerce(other)
        terms: Dict[Monomial, Coefficient] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = _multiply_monomials(m1, m2)
                terms[m] = terms.get(m, 0) + c1 * c2
        return Polynomial(terms)

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if isinstance(other, Number):
            other = Polynomial.constant(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self) -> int:
        return hash(frozenset(self.terms.items()))

    def is_zero(self) -> bool:
        return not self.terms

    @property
    def degree(self) -> int:
        return max((sum(exp for _, exp in m) for m in self.terms), default=0)

    def variables(self) -> List[int]:
        return sorted({var for m in self.terms for var, _ in m})

    def coefficients_are_integers(self) -> bool:
        return all(isinstance(c, int) for c in self.terms.values())

    def derivative(self, index: int) -> "Polynomial":
        terms: Dict[Monomial, Coefficient] = {}
        for monomial, coeff in self.terms.items():
            powers = dict(monomial)
            exp = powers.get(index, 0)
            if exp == 0:
                continue
            if exp == 1:
                del powers[index]
            else:
                powers[index] = exp - 1
            m = tuple(sorted(powers.items()))
            terms[m] = terms.get(m, 0) + coeff * exp
        return Polynomial(terms)

    def evaluate(self, values: Sequence[complex]) -> complex:
        total = 0j
        for monomial, coeff in self.terms.items():
            term = complex(coeff)
            for var, exp in monomial:
                term *= values[var] ** exp
            total += term
        return total

    def gradient(self, values: Sequence[complex], size: int) -> np.ndarray:
        """Analytic partial derivatives at a point, as a dense vector of length size."""
        grad = np.zeros(size, dtype=complex)
        for monomial, coeff in self.terms.items():
            for position, (var, exp) in enumerate(monomial):
                term = complex(coeff) * exp * values[var] ** (exp - 1)
                for other_position, (other, other_exp) in enumerate(monomial):
                    if other_position != position:
                        term *= values[other] ** other_exp
                grad[var] += term
        return grad

    def rename(self, mapping: Mapping[int, int]) -> "Polynomial":
        """Substitute variable indices; the map must be injective on this polynomial's variables."""
        terms: Dict[Monomial, Coefficient] = {}
        for monomial, coeff in self.terms.items():
            m = tuple(sorted((mapping[var], exp) for var, exp in monomial))
            terms[m] = terms.get(m, 0) + coeff
        return Polynomial(terms)

    def to_string(self, name: Callable[[int], str]) -> str:
        """Render like 'w6 - u3*u1'; terms ordered by degree, then by variable names."""
        if not self.terms:
            return "0"

        def key(item):
            monomial, _ = item
            return (sum(exp for _, exp in monomial), [name(var) for var, _ in monomial])

        pieces = []
        for monomial, coeff in sorted(self.terms.items(), key=key):
            factors = "*".join(name(var) if exp == 1 else f"{name(var)}^{exp}" for var, exp in monomial)
            pieces.append(_format_term(coeff, factors))
        text = pieces[0]
        for piece in pieces[1:]:
            text += " - " + piece[1:] if piece.startswith("-") else " + " + piece
        return text

    def __repr__(self) -> str:
        return f"Polynomial({self.to_string(lambda i: f'x{i}')})"


def _format_term(coeff: Coefficient, factors: str) -> str:
    if isinstance(coeff, int):
        if not factors:
            return str(coeff)
        if coeff == 1:
            return factors
        if coeff == -1:
            return "-" + factors
        return f"{coeff}*{factors}"
    text = f"({coeff.real:g}{coeff.imag:+g}i)"
    return f"{text}*{factors}" if factors else text


def product(polys: Iterable[Polynomial]) -> Polynomial:
    result = Polynomial.constant(1)
    for poly in polys:
        result = result * poly
    return result
