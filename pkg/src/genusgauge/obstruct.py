"""Feasibility checks for embedding a non-orientable surface (genus h, normal Euler number e).

Every checker returns a :class:`Verdict` listing *all* violated conditions.
Condition names are short ASCII formulas so that the CLI can print them and
tests can match on them.  Apart from :func:`lens_feasible`, a feasible verdict
only means that none of the implemented obstructions applies, and the verdict
says so through ``exact=False``.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Mapping, Sequence, Union

from .dedekind import big_n, check_gparams
from .errors import OrientationError, OutOfHypothesisError, ParameterError
from .exact_core import as_rat, format_rat
from .floer import SpincQLabel, q_bundle_d


class PhiRestriction(enum.Enum):
    TRIVIAL = "trivial"
    NONTRIVIAL = "nontrivial"
    UNKNOWN = "unknown"

    @classmethod
    def parse(cls, value) -> PhiRestriction:
        if isinstance(value, PhiRestriction):
            return value
        try:
            return cls(str(value).strip().lower())
        except ValueError as exc:
            raise ParameterError(f"phi restriction must be trivial, nontrivial or unknown, got {value!r}") from exc


@dataclass(frozen=True)
class Verdict:
    feasible: bool
    violated: tuple[str, ...] = ()
    certificate: dict | None = None
    exact: bool = False
    witness: dict | None = None

    @classmethod
    def from_checks(cls, checks: Sequence[tuple[str, bool]], **extra) -> Verdict:
        violated = tuple(name for name, ok in checks if not ok)
        return cls(feasible=not violated, violated=violated, **extra)

    def __and__(self, other: Verdict) -> Verdict:
        violated = self.violated + tuple(v for v in other.violated if v not in self.violated)
        return Verdict(not violated, violated, exact=self.exact and other.exact)

    def to_json(self) -> dict:
        return {
            "feasible": self.feasible,
            "violated": list(self.violated),
            "certificate": self.certificate,
            "exact": self.exact,
            "witness": self.witness,
        }


# -- query contexts --------------------------------------------------------------


@dataclass(frozen=True)
class LensCobordism:
    k: int
    q: int

    def __post_init__(self) -> None:
        check_gparams(self.k, self.q)


@dataclass(frozen=True)
class GenericCobordism:
    delta: Fraction
    phi_restriction: PhiRestriction = PhiRestriction.UNKNOWN
    k_c: int | None = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "delta", _check_half_integer(self.delta))
        object.__setattr__(self, "phi_restriction", PhiRestriction.parse(self.phi_restriction))
        if self.k_c not in (None, 0, 1):
            raise ParameterError(f"k_c must be 0, 1 or unknown, got {self.k_c!r}")


@dataclass(frozen=True)
class ClosedDefinite:
    b: int
    ell: int

    def __post_init__(self) -> None:
        _check_definite(self.b, self.ell)


@dataclass(frozen=True)
class ClosedSpin:
    sigma: int
    b_plus: int
    b_minus: int

    def __post_init__(self) -> None:
        _check_spin(self.sigma, self.b_plus, self.b_minus)


@dataclass(frozen=True)
class HomologySphere:
    pass


Context = Union[LensCobordism, GenericCobordism, ClosedDefinite, ClosedSpin, HomologySphere]


@dataclass(frozen=True)
class EmbedQuery:
    h: int
    e: int
    context: Context = field(default_factory=HomologySphere)

    def __post_init__(self) -> None:
        _check_h(self.h)
        if not isinstance(self.e, int):
            raise ParameterError(f"e must be an integer, got {self.e!r}")


@dataclass(frozen=True)
class RhoInput:
    rho_alpha: Fraction
    rho_alphatau: Fraction
    kpow: int = 0

    def __post_init__(self) -> None:
        object.__setattr__(self, "rho_alpha", as_rat(self.rho_alpha))
        object.__setattr__(self, "rho_alphatau", as_rat(self.rho_alphatau))
        if not isinstance(self.kpow, int) or self.kpow < 0:
            raise ParameterError(f"kpow must be a nonnegative integer, got {self.kpow!r}")

    @classmethod
    def from_difference(cls, diff, kpow: int = 0) -> RhoInput:
        return cls(Fraction(0), as_rat(diff), kpow)

    @property
    def difference(self) -> Fraction:
        return self.rho_alphatau - self.rho_alpha


# -- validation helpers ------------------------------------------------------------


def _check_h(h) -> None:
    if not isinstance(h, int) or isinstance(h, bool) or h < 1:
        raise ParameterError(f"h must be a positive integer, got {h!r}")


def _check_half_integer(x) -> Fraction:
    x = as_rat(x)
    if (2 * x).denominator != 1:
        raise ParameterError(f"Delta must be an integer or half-integer, got {format_rat(x)}")
    return x


def _check_even(e: int) -> None:
    if e % 2:
        raise ParameterError(f"e must be even here, got {e}")


def _check_definite(b: int, ell: int) -> None:
    if b < 0 or ell < 0:
        raise ParameterError("b and l must be nonnegative")
    if ell > b:
        raise ParameterError(f"l={ell} exceeds b={b}")


def _check_spin(sigma: int, b_plus: int, b_minus: int) -> None:
    if b_plus < 0 or b_minus < 0:
        raise ParameterError("b+ and b- must be nonnegative")
    if sigma != b_plus - b_minus:
        raise ParameterError(f"sigma={sigma} differs from b+ - b- = {b_plus - b_minus}")
    if sigma < 0:
        raise OrientationError("sigma < 0: reverse the orientation of the 4-manifold (e -> -e, b+ <-> b-) and retry")


# -- cobordisms between rational homology spheres ------------------------------------


def mbound_check(delta, h: int, e: int, phi_restriction=PhiRestriction.UNKNOWN) -> Verdict:
    delta = _check_half_integer(delta)
    phi = PhiRestriction.parse(phi_restriction)
    _check_h(h)
    two_delta = int(2 * delta)
    slack = 2 * h - 2 * two_delta
    checks = [("h >= 2*Delta", h >= two_delta)]
    if (h % 2 == 0 and phi is PhiRestriction.NONTRIVIAL) or (h % 2 == 1 and phi is PhiRestriction.TRIVIAL):
        checks.append(("h >= 2*Delta + 1", h >= two_delta + 1))
    checks.append(("|e| <= 2h - 4*Delta", abs(e) <= slack))
    checks.append(("e == 2h - 4*Delta (mod 4)", (e - slack) % 4 == 0))
    return Verdict.from_checks(checks)


def lens_feasible(k: int, q: int, h: int, e: int) -> Verdict:
    """Exact answer for L(2k, q) x I: feasible iff realized by the minimal surface plus RP^2 summands."""
    check_gparams(k, q)
    _check_h(h)
    n = big_n(k, q)
    ell = h - n
    checks = [
        ("h >= N", h >= n),
        ("|e| <= 2(h - N)", abs(e) <= 2 * ell),
        ("e == 2(h - N) (mod 4)", (e - 2 * ell) % 4 == 0),
    ]
    verdict = Verdict.from_checks(checks, exact=True)
    if not verdict.feasible:
        return verdict
    plus, rem_plus = divmod(2 * ell + e, 4)
    minus, rem_minus = divmod(2 * ell - e, 4)
    if rem_plus or rem_minus or plus < 0 or minus < 0:
        raise AssertionError(f"certificate counts not natural numbers for h={h}, e={e}, N={n}")
    cert = {"base_genus": n, "extra_genus": ell, "counts": [plus, minus]}
    return Verdict(True, (), cert, exact=True)


def euler_congruence(k_c: int, h: int) -> int:
    """Residue mod 4 forced on e by the self-linking bit ``k_c``."""
    if k_c not in (0, 1):
        raise ParameterError(f"k_c must be 0 or 1, got {k_c!r}")
    _check_h(h)
    return (2 * k_c + 2 * h) % 4


def k_c_lens(k: int, q: int) -> int:
    """Twice the self-linking of the order-2 class in L(2k, q), as 0 or 1."""
    check_gparams(k, q)
    p = 2 * k
    qbar = pow(q, -1, p)
    lk = Fraction(-qbar * k * k, p) % 1
    twice = 2 * lk
    assert twice.denominator == 1
    return int(twice) % 2


def twist_bound_detail(d0, d1_twisted, h: int, e: int, label) -> dict:
    if isinstance(label, str):
        label = SpincQLabel.parse(label)
    if label.extendible:
        raise ParameterError("the twist bound concerns the non-extendible labels t0, t1 only")
    _check_h(h)
    half = Fraction(h - 1, 2)
    lower = q_bundle_d(h, e, label, "top") - half
    upper = q_bundle_d(h, e, label, "bot") + half
    middle = as_rat(d1_twisted) - as_rat(d0)
    ordered = lower <= middle <= upper
    congruent = all(((a - b) / 2).denominator == 1 for a, b in ((lower, middle), (middle, upper), (lower, upper)))
    return {"lower": lower, "middle": middle, "upper": upper, "ordered": ordered, "congruent": congruent}


def twist_bound_holds(d0, d1_twisted, h: int, e: int, label) -> bool:
    detail = twist_bound_detail(d0, d1_twisted, h, e, label)
    return detail["ordered"] and detail["congruent"]


# -- d-invariant tables and RP^2 ----------------------------------------------------


def _normalize_table(d_table, moduli):
    if isinstance(d_table, Mapping):
        items = dict(d_table)
    else:
        items = dict(enumerate(d_table))
    if moduli is None:
        n = len(items)
        table = {(s % n,): as_rat(v) for s, v in items.items()}
        moduli = (n,)
    else:
        moduli = tuple(moduli)
        table = {}
        for s, v in items.items():
            s = (s,) if isinstance(s, int) else tuple(s)
            table[tuple(x % m for x, m in zip(s, moduli))] = as_rat(v)
    size = 1
    for m in moduli:
        size *= m
    if len(table) != size:
        raise ParameterError(f"d-table has {len(table)} entries, expected {size}")
    return table, moduli


def rp2_test(d_table, phi, subgroup=None, moduli=None) -> bool:
    """Whether some coset ``s0 + K`` has d(s + phi) - d(s) = 1/2 throughout.

    ``d_table`` is a list (cyclic group) or a map from group elements to d.
    ``K`` defaults to the subgroup of doubles ``2x``; pass ``subgroup``
    explicitly for other choices.  ``False`` obstructs an essential smooth RP^2.
    """
    table, moduli = _normalize_table(d_table, moduli)
    phi = (phi,) if isinstance(phi, int) else tuple(phi)
    phi = tuple(x % m for x, m in zip(phi, moduli))

    def add(a, b):
        return tuple((x + y) % m for x, y, m in zip(a, b, moduli))

    zero = tuple(0 for _ in moduli)
    if phi == zero or add(phi, phi) != zero:
        raise ParameterError("phi must be an element of order 2")
    if subgroup is None:
        sub = {add(s, s) for s in table}
    else:
        sub = {tuple(x % m for x, m in zip((s,) if isinstance(s, int) else s, moduli)) for s in subgroup}
        if zero not in sub or any(add(a, b) not in sub for a, b in product(sub, sub)):
            raise ParameterError("subgroup is not closed under addition")
    half = Fraction(1, 2)
    for s0 in table:
        if all(table[add(add(s0, s), phi)] - table[add(s0, s)] == half for s in sub):
            return True
    return False


def theta_lens(k: int, q: int) -> Fraction:
    """Normalized rational genus of the order-2 class in L(2k, q)."""
    return Fraction(big_n(k, q) - 2, 2)


def rho_q_bundle(h: int, e: int) -> Fraction:
    """rho-invariant of Q(h, e) for a twisted representation; defined for even e."""
    _check_h(h)
    if e % 2:
        raise OutOfHypothesisError(f"e={e} is odd; the rho formula needs even e")
    return Fraction(-e, 2)


def gsign_bound(kpow: int, h: int) -> int:
    return 2 ** kpow * h if kpow >= 1 else 2 * h


def gsign_check(rho: RhoInput, h: int, e: int) -> bool:
    _check_h(h)
    _check_even(e)
    bound = gsign_bound(rho.kpow, h)
    return -bound <= rho.difference + Fraction(e, 2) <= bound


def rho_bound(rho_tau_abs, h: int, e: int, k_c: int | None = None) -> Verdict:
    """Bounds from a single rho-invariant, optionally with the mod-4 congruence from ``k_c``."""
    rho = as_rat(rho_tau_abs)
    if rho < 0:
        raise ParameterError("|rho| must be nonnegative")
    _check_h(h)
    _check_even(e)
    checks = [
        ("h >= |rho|/2", h >= rho / 2),
        ("|e| <= 2(2h - |rho|)", abs(e) <= 2 * (2 * h - rho)),
    ]
    if k_c is not None:
        checks.append(("e == 2k_c + 2h (mod 4)", e % 4 == euler_congruence(k_c, h)))
    return Verdict.from_checks(checks)


# -- closed 4-manifolds ------------------------------------------------------------


def definite_check(b: int, ell: int, h: int, e: int) -> Verdict:
    """Positive-definite closed 4-manifold with b2 = b; ``ell`` is the least square of a lift of the surface class.

    The upper bound is applied only for ``ell == b >= 1``.
    """
    _check_definite(b, ell)
    _check_h(h)
    checks = [
        ("e == l - 2h (mod 4)", (e - ell + 2 * h) % 4 == 0),
        ("e >= l - 2h", e >= ell - 2 * h),
    ]
    if ell == b and b >= 1:
        checks.append(("e <= 9b + 10h - 16", e <= 9 * b + 10 * h - 16))
    return Verdict.from_checks(checks)


def sphere_check(h: int, e: int) -> Verdict:
    _check_h(h)
    return Verdict.from_checks([("e == 2h (mod 4)", (e - 2 * h) % 4 == 0), ("|e| <= 2h", abs(e) <= 2 * h)])


def _spin_conditions(sigma: int, b_plus: int, b_minus: int, h: int, ep: int) -> list[tuple[str, bool]]:
    checks = [
        ("e' == sigma (mod 16)", (ep - sigma) % 16 == 0),
        ("e' <= sigma + 8(b+ + h - 2)", ep <= sigma + 8 * (b_plus + h - 2)),
    ]
    if ep < 0:
        checks.append(("e' >= sigma - 8(b- + h - 2)", ep >= sigma - 8 * (b_minus + h - 2)))
    if ep == 0:
        checks.append(("0 >= sigma - 8(b- + h - 1)", 0 >= sigma - 8 * (b_minus + h - 1)))
    return checks


def spin_check(sigma: int, b_plus: int, b_minus: int, h: int, e: int) -> Verdict:
    """Characteristic surface in a closed spin 4-manifold with signature ``sigma >= 0``.

    Tries ``k = 0..h`` with e' = e + 2h - 4k; the first admissible ``k`` is the witness.
    """
    _check_spin(sigma, b_plus, b_minus)
    _check_h(h)
    failures = {}
    for k in range(h + 1):
        ep = e + 2 * h - 4 * k
        bad = [name for name, ok in _spin_conditions(sigma, b_plus, b_minus, h, ep) if not ok]
        if not bad:
            aux_b2 = h - 1 + abs(ep) if ep != 0 else h + 1
            witness = {"k": k, "e_prime": ep, "sigma_Z": -ep, "b2_Z": aux_b2}
            return Verdict(True, (), witness=witness)
        failures[k] = bad
    return Verdict(False, ("some k in [0, h] gives an admissible e'",), witness={"failed": failures})


def spin_cor(sigma: int, b_plus: int, b_minus: int, h: int, e: int) -> Verdict:
    _check_spin(sigma, b_plus, b_minus)
    _check_h(h)
    lower = min(-2 * h, sigma - 8 * (b_minus - 2) - 10 * h)
    upper = sigma + 8 * (b_plus - 2) + 10 * h
    return Verdict.from_checks([
        ("e == sigma + 2h (mod 4)", (e - sigma - 2 * h) % 4 == 0),
        ("e >= min(-2h, sigma - 8(b- - 2) - 10h)", e >= lower),
        ("e <= sigma + 8(b+ - 2) + 10h", e <= upper),
    ])


# -- dispatch ---------------------------------------------------------------------


def decide(query: EmbedQuery) -> Verdict:
    ctx, h, e = query.context, query.h, query.e
    if isinstance(ctx, LensCobordism):
        return lens_feasible(ctx.k, ctx.q, h, e)
    if isinstance(ctx, GenericCobordism):
        verdict = mbound_check(ctx.delta, h, e, ctx.phi_restriction)
        if ctx.k_c is not None:
            verdict = verdict & Verdict.from_checks(
                [("e == 2k_c + 2h (mod 4)", e % 4 == euler_congruence(ctx.k_c, h))]
            )
        return verdict
    if isinstance(ctx, ClosedDefinite):
        return definite_check(ctx.b, ctx.ell, h, e)
    if isinstance(ctx, ClosedSpin):
        return spin_check(ctx.sigma, ctx.b_plus, ctx.b_minus, h, e)
    if isinstance(ctx, HomologySphere):
        return sphere_check(h, e)
    raise ParameterError(f"unknown context {ctx!r}")


def e_window(context: Context, h: int) -> tuple[int, int] | None:
    """A range of e outside which ``decide`` is infeasible, or None when the checks leave e unbounded above."""
    if isinstance(context, (LensCobordism, HomologySphere)):
        return -2 * h, 2 * h
    if isinstance(context, GenericCobordism):
        slack = int(2 * h - 4 * context.delta)
        return -slack, slack
    if isinstance(context, ClosedSpin):
        s, bp, bm = context.sigma, context.b_plus, context.b_minus
        return min(-2 * h, s - 8 * (bm - 2) - 10 * h), s + 8 * (bp - 2) + 10 * h
    if isinstance(context, ClosedDefinite):
        if context.ell == context.b and context.b >= 1:
            return context.ell - 2 * h, 9 * context.b + 10 * h - 16
        return None
    raise ParameterError(f"unknown context {context!r}")


def region(context: Context, h_max: int, e_max: int | None = None) -> list[tuple[int, int, bool]]:
    """All feasible (h, e, exact) with 1 <= h <= h_max, ordered by h then e.

    ``e_max`` caps |e| and is required when the context does not bound e.
    """
    if h_max < 1:
        raise ParameterError("h_max must be at least 1")
    rows = []
    for h in range(1, h_max + 1):
        window = e_window(context, h)
        if window is None:
            if e_max is None:
                raise ParameterError("e is unbounded above in this context; pass an explicit e bound")
            lo, hi = -e_max, e_max
        else:
            lo, hi = window
            if e_max is not None:
                lo, hi = max(lo, -e_max), min(hi, e_max)
        for e in range(lo, hi + 1):
            verdict = decide(EmbedQuery(h, e, context))
            if verdict.feasible:
                rows.append((h, e, verdict.exact))
    return rows
