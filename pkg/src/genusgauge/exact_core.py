"""Exact arithmetic foundations.

Rationals are :class:`fractions.Fraction` (always reduced, positive
denominator, zero stored as ``0/1``).  Laurent polynomials in one variable
``u`` with integer coefficients are stored sparsely as an exponent map.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Iterable, Iterator, Mapping

from .errors import DomainError, InvalidDivisorError, InvalidModulusError, ParameterError, PoleError

Rat = Fraction


def as_rat(value) -> Fraction:
    """Coerce an int, Fraction or ``"a/b"`` string to an exact rational."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise ParameterError(f"not a rational: {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise ParameterError(f"not a rational: {value!r}") from exc
    raise ParameterError(f"not an exact rational: {value!r}")


def format_rat(x: Fraction) -> str:
    """Render ``x`` as ``"a/b"`` (or ``"a"`` for integers)."""
    x = as_rat(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def lnr(m: int, p: int) -> int:
    """Least nonnegative residue of ``m`` modulo an even modulus ``p``."""
    if p <= 0 or p % 2:
        raise InvalidModulusError(f"modulus must be a positive even integer, got {p}")
    return m % p


def floor_div(a: int, b: int) -> int:
    """``floor(a / b)`` for ``b > 0``, rounding toward minus infinity."""
    if b <= 0:
        raise InvalidDivisorError(f"divisor must be positive, got {b}")
    return a // b


@dataclass(frozen=True)
class LaurentPoly:
    """Integer Laurent polynomial in ``u``; ``coeffs`` maps exponent to a nonzero coefficient."""

    coeffs: Mapping[int, int] = field(default_factory=dict)

    def __post_init__(self) -> None:
        clean = {}
        for exp, c in self.coeffs.items():
            if not isinstance(exp, int) or not isinstance(c, int):
                raise ParameterError("Laurent exponents and coefficients must be integers")
            if c:
                clean[exp] = c
        object.__setattr__(self, "coeffs", clean)

    @classmethod
    def _trusted(cls, coeffs: dict[int, int]) -> LaurentPoly:
        # skips validation; callers pass int keys and values
        out = object.__new__(cls)
        object.__setattr__(out, "coeffs", {e: c for e, c in coeffs.items() if c})
        return out

    @classmethod
    def monomial(cls, c: int = 1, m: int = 0) -> LaurentPoly:
        return cls({m: c})

    @classmethod
    def from_exponents(cls, exponents: Iterable[int]) -> LaurentPoly:
        """Sum of ``u**e`` over ``exponents`` (repeats accumulate)."""
        return cls._trusted(Counter(exponents))

    def terms(self) -> Iterator[tuple[int, int]]:
        """(exponent, coefficient) pairs in increasing exponent order."""
        return iter(sorted(self.coeffs.items()))

    def is_zero(self) -> bool:
        return not self.coeffs

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = LaurentPoly.monomial(other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(tuple(self.terms()))

    def __add__(self, other: LaurentPoly | int) -> LaurentPoly:
        if isinstance(other, int):
            other = LaurentPoly.monomial(other)
        acc = dict(self.coeffs)
        for e, c in other.coeffs.items():
            acc[e] = acc.get(e, 0) + c
        return LaurentPoly._trusted(acc)

    __radd__ = __add__

    def __neg__(self) -> LaurentPoly:
        return LaurentPoly._trusted({e: -c for e, c in self.coeffs.items()})

    def __sub__(self, other: LaurentPoly | int) -> LaurentPoly:
        if isinstance(other, int):
            other = LaurentPoly.monomial(other)
        return self + (-other)

    def __rsub__(self, other: int) -> LaurentPoly:
        return LaurentPoly.monomial(other) - self

    def __mul__(self, other: LaurentPoly | int) -> LaurentPoly:
        if isinstance(other, int):
            return LaurentPoly({e: c * other for e, c in self.coeffs.items()})
        acc: dict[int, int] = {}
        for e1, c1 in self.coeffs.items():
            for e2, c2 in other.coeffs.items():
                acc[e1 + e2] = acc.get(e1 + e2, 0) + c1 * c2
        return LaurentPoly(acc)

    __rmul__ = __mul__

    def mul_monomial(self, c: int, m: int) -> LaurentPoly:
        """Multiply by ``c * u**m``."""
        return LaurentPoly._trusted({e + m: c * v for e, v in self.coeffs.items()})

    def coefficient_sum(self) -> int:
        return sum(self.coeffs.values())

    def eval_int(self, x: int) -> Fraction:
        if x == 0 and any(e < 0 for e in self.coeffs):
            raise PoleError("negative exponent evaluated at u = 0")
        return sum((c * Fraction(x) ** e for e, c in self.coeffs.items()), Fraction(0))

    def eval_sign(self) -> int:
        """Value at ``u = -1``."""
        return sum(c if e % 2 == 0 else -c for e, c in self.coeffs.items())

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for e, c in self.terms():
            if e == 0:
                body = str(abs(c))
            else:
                mono = "u" if e == 1 else f"u^{e}"
                body = mono if abs(c) == 1 else f"{abs(c)}*{mono}"
            sign = "-" if c < 0 else "+"
            parts.append((sign, body))
        first_sign, first = parts[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out

    def to_json(self) -> dict[str, int]:
        return {str(e): c for e, c in self.terms()}


def geom_sum(q: int) -> LaurentPoly:
    """The Laurent polynomial ``(1 - u**q) / (1 - u)`` for ``q != 0``."""
    if q == 0:
        raise DomainError("geom_sum is undefined at q = 0")
    if q > 0:
        return LaurentPoly.from_exponents(range(q))
    return -LaurentPoly.from_exponents(range(q, 0))


@dataclass(frozen=True)
class AbGroup:
    """Finitely generated abelian group ``Z^rank + Z/d1 + Z/d2 + ...`` with ``d1 | d2 | ...``."""

    rank: int
    torsion: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        if self.rank < 0:
            raise ParameterError("rank must be nonnegative")
        object.__setattr__(self, "torsion", _invariant_factors(self.torsion))

    def mod2_dimension(self) -> int:
        """Dimension of ``Hom(G, Z/2)`` over ``Z/2``."""
        return self.rank + sum(1 for d in self.torsion if d % 2 == 0)

    def order_of_torsion(self) -> int:
        out = 1
        for d in self.torsion:
            out *= d
        return out

    def __str__(self) -> str:
        parts = [f"Z^{self.rank}"] if self.rank else []
        parts += [f"Z/{d}" for d in self.torsion]
        return " + ".join(parts) if parts else "0"


def _invariant_factors(orders: Iterable[int]) -> tuple[int, ...]:
    """Canonical divisibility chain for a product of cyclic groups of the given orders."""
    prime_powers: dict[int, list[int]] = {}
    for n in orders:
        if n < 1:
            raise ParameterError(f"torsion order must be positive, got {n}")
        p = 2
        while n > 1:
            if p * p > n:
                p = n
            if n % p == 0:
                pk = 1
                while n % p == 0:
                    n //= p
                    pk *= p
                prime_powers.setdefault(p, []).append(pk)
            p += 1
    if not prime_powers:
        return ()
    length = max(len(v) for v in prime_powers.values())
    factors = [1] * length
    for powers in prime_powers.values():
        powers.sort()
        for idx, pk in enumerate(powers):
            factors[length - len(powers) + idx] *= pk
    return tuple(d for d in factors if d > 1)


def coprime(a: int, b: int) -> bool:
    return gcd(a, b) == 1
