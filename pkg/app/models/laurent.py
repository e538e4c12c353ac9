"""Exact Laurent polynomials in q with integer coefficients."""

import re
from collections import defaultdict
from collections.abc import Iterable, Mapping
from dataclasses import dataclass
from functools import reduce

from app.core.exceptions import (
    EmptyDimensionProfileError,
    InvalidQuantumIntegerError,
    LaurentFormatError,
    OddDegreeError,
)

_TERM_SPLIT = re.compile(r"(?<!\^)(?=[+-])")
_TERM = re.compile(r"^(?P<sign>[+-]?)(?P<coeff>\d+)?(?:\*?(?P<q>q)(?:\^(?P<exp>-?\d+))?)?$")


@dataclass(frozen=True)
class LaurentPoly:
    """Sparse Laurent polynomial; ``terms`` is sorted by exponent with no zero entries."""

    terms: tuple[tuple[int, int], ...] = ()

    @classmethod
    def from_dict(cls, coefficients: Mapping[int, int]) -> "LaurentPoly":
        """Build the canonical form, dropping zero coefficients."""
        return cls(tuple(sorted((e, c) for e, c in coefficients.items() if c != 0)))

    @classmethod
    def monomial(cls, exponent: int, coefficient: int = 1) -> "LaurentPoly":
        return cls.from_dict({exponent: coefficient})

    @classmethod
    def constant(cls, value: int) -> "LaurentPoly":
        return cls.monomial(0, value)

    @property
    def coefficients(self) -> dict[int, int]:
        return dict(self.terms)

    def coefficient(self, exponent: int) -> int:
        return self.coefficients.get(exponent, 0)

    def is_zero(self) -> bool:
        return not self.terms

    def is_palindromic(self) -> bool:
        """True when the coefficient of q^k equals that of q^-k for every k."""
        coefficients = self.coefficients
        return all(coefficients.get(-e, 0) == c for e, c in self.terms)

    def __add__(self, other: "LaurentPoly") -> "LaurentPoly":
        return add(self, other)

    def __mul__(self, other: "LaurentPoly") -> "LaurentPoly":
        return mul(self, other)

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly(tuple((e, -c) for e, c in self.terms))

    def __sub__(self, other: "LaurentPoly") -> "LaurentPoly":
        return add(self, -other)

    def __pow__(self, power: int) -> "LaurentPoly":
        if power < 0:
            raise ValueError("negative powers are not Laurent polynomials in general")
        result = ONE
        base = self
        while power:
            if power & 1:
                result = mul(result, base)
            base = mul(base, base)
            power >>= 1
        return result

    def __str__(self) -> str:
        return render(self)


ZERO = LaurentPoly()
ONE = LaurentPoly.constant(1)


def add(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    """Coefficient-wise sum."""
    total: defaultdict[int, int] = defaultdict(int)
    for exponent, coefficient in (*a.terms, *b.terms):
        total[exponent] += coefficient
    return LaurentPoly.from_dict(total)


def mul(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    """Convolution product."""
    product: defaultdict[int, int] = defaultdict(int)
    for ea, ca in a.terms:
        for eb, cb in b.terms:
            product[ea + eb] += ca * cb
    return LaurentPoly.from_dict(product)


def total(polys: Iterable[LaurentPoly]) -> LaurentPoly:
    return reduce(add, polys, ZERO)


def eval_at_one(a: LaurentPoly) -> int:
    """Value at q = 1, the sum of all coefficients."""
    return sum(c for _, c in a.terms)


def quantum_int(n: int) -> LaurentPoly:
    """[n] = q^(-n+1) + q^(-n+3) + ... + q^(n-1)."""
    if n < 1:
        raise InvalidQuantumIntegerError(n)
    return LaurentPoly.from_dict({k: 1 for k in range(-n + 1, n, 2)})


def symmetrized_poincare(dims: Iterable[tuple[int, int]]) -> LaurentPoly:
    """Symmetrized Poincare polynomial with t = q^2.

    ``dims`` lists (degree, dimension) pairs. With d the top degree carrying a
    nonzero dimension, degree k contributes dim * q^(k - d/2).
    """
    profile: defaultdict[int, int] = defaultdict(int)
    for degree, dim in dims:
        if degree < 0 or dim < 0:
            raise ValueError(f"degree and dimension must be nonnegative: {(degree, dim)}")
        if degree % 2:
            raise OddDegreeError(degree)
        profile[degree] += dim
    nonzero = [degree for degree, dim in profile.items() if dim]
    if not nonzero:
        raise EmptyDimensionProfileError()
    shift = max(nonzero) // 2
    return LaurentPoly.from_dict({k - shift: dim for k, dim in profile.items()})


def _render_term(exponent: int, magnitude: int) -> str:
    if exponent == 0:
        return str(magnitude)
    power = "q" if exponent == 1 else f"q^{exponent}"
    return power if magnitude == 1 else f"{magnitude}*{power}"


def render(a: LaurentPoly) -> str:
    """Render as ``c*q^e`` terms in increasing exponent order, e.g. ``q^-2 + 1 + q^2``."""
    if a.is_zero():
        return "0"
    parts: list[str] = []
    for index, (exponent, coefficient) in enumerate(a.terms):
        body = _render_term(exponent, abs(coefficient))
        if index == 0:
            parts.append(body if coefficient > 0 else f"-{body}")
        else:
            parts.append(f"{'+' if coefficient > 0 else '-'} {body}")
    return " ".join(parts)


def parse(text: str) -> LaurentPoly:
    """Inverse of :func:`render`; also accepts unsorted and repeated terms."""
    compact = text.replace(" ", "")
    if compact in ("", "0"):
        return ZERO
    coefficients: defaultdict[int, int] = defaultdict(int)
    for raw in _TERM_SPLIT.split(compact):
        if not raw:
            continue
        match = _TERM.match(raw)
        if match is None or (match["coeff"] is None and match["q"] is None):
            raise LaurentFormatError(raw)
        magnitude = int(match["coeff"]) if match["coeff"] is not None else 1
        if match["q"] is None:
            exponent = 0
        else:
            exponent = int(match["exp"]) if match["exp"] is not None else 1
        coefficients[exponent] += -magnitude if match["sign"] == "-" else magnitude
    return LaurentPoly.from_dict(coefficients)
