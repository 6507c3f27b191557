"""Grid verification of the identities satisfied by g, G, P and Q.

Each checker works on a single value of ``k`` so grids can be split across
worker processes and merged afterwards; :func:`verify_identities` is the
sequential driver.  All comparisons are exact (integers ``2g`` or Laurent
polynomials).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd
from typing import Callable, Iterable

import numpy as np

from .dedekind import p_poly, q_poly, twice_g_table
from .exact_core import geom_sum

IDENTITIES = (
    "negation",
    "step",
    "antisymmetry",
    "palindrome",
    "maximizer_location",
    "recurrence",
    "g_recurrence",
    "reciprocity",
    "poly_recurrence",
    "poly_reflection",
    "carlitz",
    "sign_evaluation",
)

UNCHECKED_NOTES = (
    "g_recurrence is not checked for q < 0: G(2k+2q, q) = G(2k, q) + 1/2 fails there (k=3, q=-1)",
    "reciprocity and carlitz use positive j and k only",
)


@dataclass(frozen=True)
class Counterexample:
    identity: str
    params: tuple[int, ...]
    lhs: str
    rhs: str


@dataclass
class IdentityReport:
    checked: dict[str, int] = field(default_factory=dict)
    counterexamples: list[Counterexample] = field(default_factory=list)
    notes: tuple[str, ...] = UNCHECKED_NOTES

    @property
    def total_checked(self) -> int:
        return sum(self.checked.values())

    @property
    def ok(self) -> bool:
        return not self.counterexamples

    def record(self, name: str, count: int) -> None:
        self.checked[name] = self.checked.get(name, 0) + count

    def fail(self, name: str, params: tuple[int, ...], lhs, rhs) -> None:
        self.counterexamples.append(Counterexample(name, params, str(lhs), str(rhs)))

    def merge(self, other: IdentityReport) -> IdentityReport:
        out = IdentityReport(dict(self.checked), list(self.counterexamples), self.notes)
        for name, n in other.checked.items():
            out.record(name, n)
        out.counterexamples.extend(other.counterexamples)
        out.counterexamples.sort(key=lambda c: (c.identity, c.params))
        return out

    def summary(self) -> dict:
        return {
            "checked": dict(sorted(self.checked.items())),
            "total_checked": self.total_checked,
            "failures": len(self.counterexamples),
            "first_counterexample": None
            if self.ok
            else vars(self.counterexamples[0]) | {"params": list(self.counterexamples[0].params)},
            "notes": list(self.notes),
        }


@dataclass(frozen=True)
class IdentityGrid:
    """Parameter bounds: ``1 <= k <= k_max`` and ``1 <= j <= j_max`` for the two-parameter reciprocities."""

    k_max: int = 60
    j_max: int = 60
    identities: tuple[str, ...] = IDENTITIES


def _odd_coprime(lo: int, hi: int, k: int) -> list[int]:
    """Odd ``q`` in ``[lo, hi]`` coprime to ``2k``."""
    return [q for q in range(lo, hi + 1) if q % 2 and gcd(q, 2 * k) == 1]


def _compare(report: IdentityReport, name: str, params_of, lhs: np.ndarray, rhs: np.ndarray) -> None:
    report.record(name, len(lhs))
    bad = np.nonzero(lhs != rhs)[0]
    for idx in bad[:3]:
        report.fail(name, params_of(int(idx)), f"2g={int(lhs[idx])}", f"2g={int(rhs[idx])}")


def check_negation(k: int, grid: IdentityGrid, report: IdentityReport) -> None:
    """g(2k, -q, i) = g(2k, q, i + q + k)."""
    i = np.arange(-2 * k, 2 * k)
    for q in _odd_coprime(-2 * k + 1, 2 * k - 1, k):
        _compare(report, "negation", lambda n, q=q: (k, q, int(i[n])),
                 twice_g_table(k, -q, i), twice_g_table(k, q, i + q + k))


def check_step(k: int, grid: IdentityGrid, report: IdentityReport) -> None:
    """g(2k, q, i) - g(2k, q, i + q) = (-1)**floor(i/k)."""
    i = np.arange(-2 * k, 2 * k)
    sign = 1 - 2 * ((i // k) % 2)
    for q in _odd_coprime(-2 * k + 1, 2 * k - 1, k):
        lhs = twice_g_table(k, q, i) - twice_g_table(k, q, i + q)
        _compare(report, "step", lambda n, q=q: (k, q, int(i[n])), lhs, 2 * sign)


def check_antisymmetry(k: int, grid: IdentityGrid, report: IdentityReport) -> None:
    """g(2k, q, i + k) = -g(2k, q, i)."""
    i = np.arange(-2 * k, 2 * k)
    for q in _odd_coprime(-2 * k + 1, 2 * k - 1, k):
        _compare(report, "antisymmetry", lambda n, q=q: (k, q, int(i[n])),
                 twice_g_table(k, q, i + k), -twice_g_table(k, q, i))


def check_palindrome(k: int, grid: IdentityGrid, report: IdentityReport) -> None:
    """g(2k, q, i) = g(2k, q, q - 1 - i)."""
    i = np.arange(-2 * k, 2 * k)
    for q in _odd_coprime(-2 * k + 1, 2 * k - 1, k):
        _compare(report, "palindrome", lambda n, q=q: (k, q, int(i[n])),
                 twice_g_table(k, q, i), twice_g_table(k, q, q - 1 - i))


def check_maximizer_location(k: int, grid: IdentityGrid, report: IdentityReport) -> None:
    """For 0 < q < 2k every maximizer in [0, 2k) lies in [0, q), and one lies in [0, (q-1)/2]."""
    i = np.arange(2 * k)
    for q in _odd_coprime(1, 2 * k - 1, k):
        values = twice_g_table(k, q, i)
        argmax = np.nonzero(values == values.max())[0]
        report.record("maximizer_location", 1)
        if argmax.max() >= q or argmax.min() > (q - 1) // 2:
            report.fail("maximizer_location", (k, q), f"argmax={argmax.tolist()}", f"<= {(q - 1) // 2}")


def check_recurrence(k: int, grid: IdentityGrid, report: IdentityReport) -> None:
    """g(2k + 2q, q, i) = g(2k, q, i) + 1/2 whenever k + q > 0 and -k <= i < k + q."""
    for q in _odd_coprime(-k + 1, grid.k_max, k):
        i = np.arange(-k, k + q)
        _compare(report, "recurrence", lambda n, q=q, i=i: (k, q, int(i[n])),
                 twice_g_table(k + q, q, i), twice_g_table(k, q, i) + 1)


def _brute_twice_big_g(k: int, q: int) -> int:
    return int(twice_g_table(k, q, np.arange(2 * k)).max())


def check_g_recurrence(k: int, grid: IdentityGrid, report: IdentityReport) -> None:
    """G(2k + 2q, q) = G(2k, q) + 1/2 = G(2k, -q) + 1/2 for positive q coprime to 2k."""
    for q in _odd_coprime(1, grid.k_max, k):
        big = _brute_twice_big_g(k + q, q)
        base = _brute_twice_big_g(k, q)
        neg = _brute_twice_big_g(k, -q)
        report.record("g_recurrence", 1)
        if not big == base + 1 == neg + 1:
            report.fail("g_recurrence", (k, q), f"2G={big}", f"2G+1={base + 1},{neg + 1}")


def check_reciprocity(k: int, grid: IdentityGrid, report: IdentityReport) -> None:
    """h(j, k, i) + h(k, j, i) = 1/2 with h(k, j, i) = g(2k, j - k, i), for 0 <= i < j + k."""
    for j in range(1, grid.j_max + 1):
        if gcd(j, k) != 1 or (j - k) % 2 == 0:
            continue
        i = np.arange(0, j + k)
        lhs = twice_g_table(j, k - j, i) + twice_g_table(k, j - k, i)
        _compare(report, "reciprocity", lambda n, j=j, i=i: (k, j, int(i[n])), lhs, np.ones_like(lhs))


def check_poly_recurrence(k: int, grid: IdentityGrid, report: IdentityReport) -> None:
    """P(2k + 2q, q, i) - P(2k, q, i) = (1 - u**q)/(1 - u) for odd q with k + q > 0, -k <= i < k + q.

    Coprimality is not required here.
    """
    for q in range(-k + 1, k + 1):
        if q % 2 == 0:
            continue
        rhs = geom_sum(q)
        for i in range(-k, k + q):
            lhs = p_poly(k + q, q, i) - p_poly(k, q, i)
            report.record("poly_recurrence", 1)
            if lhs != rhs:
                report.fail("poly_recurrence", (k, q, i), lhs, rhs)


def check_poly_reflection(k: int, grid: IdentityGrid, report: IdentityReport) -> None:
    """P(2k, q, i) = u**q P(2k, -q, i - q) for odd q."""
    for q in range(-k, k + 1):
        if q % 2 == 0:
            continue
        for i in range(-k, k):
            lhs = p_poly(k, q, i)
            rhs = p_poly(k, -q, i - q).mul_monomial(1, q)
            report.record("poly_reflection", 1)
            if lhs != rhs:
                report.fail("poly_reflection", (k, q, i), lhs, rhs)


def check_carlitz(k: int, grid: IdentityGrid, report: IdentityReport) -> None:
    """u**(j-1) Q(j, k, i) - u**(k-1) Q(k, j, i) = (u**k - u**j)/(1 - u) for 0 <= i < j + k."""
    for j in range(1, grid.j_max + 1):
        if gcd(j, k) != 1 or (j - k) % 2 == 0:
            continue
        rhs = geom_sum(j - k).mul_monomial(1, k)
        for i in range(j + k):
            lhs = q_poly(j, k, i).mul_monomial(1, j - 1) - q_poly(k, j, i).mul_monomial(1, k - 1)
            report.record("carlitz", 1)
            if lhs != rhs:
                report.fail("carlitz", (k, j, i), lhs, rhs)


def check_sign_evaluation(k: int, grid: IdentityGrid, report: IdentityReport) -> None:
    """P(2k, q, i) at u = -1 equals 2 g(2k, q, i), and its coefficients sum to k."""
    i_values = np.arange(-k, k)
    for q in _odd_coprime(1, 2 * k - 1, k):
        twice = twice_g_table(k, q, i_values)
        for n, i in enumerate(range(-k, k)):
            poly = p_poly(k, q, i)
            report.record("sign_evaluation", 1)
            if poly.eval_sign() != twice[n] or poly.coefficient_sum() != k:
                report.fail("sign_evaluation", (k, q, i), poly, f"2g={int(twice[n])}")


CHECKERS: dict[str, Callable[[int, IdentityGrid, IdentityReport], None]] = {
    "negation": check_negation,
    "step": check_step,
    "antisymmetry": check_antisymmetry,
    "palindrome": check_palindrome,
    "maximizer_location": check_maximizer_location,
    "recurrence": check_recurrence,
    "g_recurrence": check_g_recurrence,
    "reciprocity": check_reciprocity,
    "poly_recurrence": check_poly_recurrence,
    "poly_reflection": check_poly_reflection,
    "carlitz": check_carlitz,
    "sign_evaluation": check_sign_evaluation,
}


def verify_for_k(k: int, grid: IdentityGrid) -> IdentityReport:
    report = IdentityReport()
    for name in grid.identities:
        CHECKERS[name](k, grid, report)
    return report


def verify_identities(grid: IdentityGrid = IdentityGrid(), ks: Iterable[int] | None = None) -> IdentityReport:
    """Run every identity in ``grid`` for each ``k`` and merge the reports."""
    unknown = set(grid.identities) - set(CHECKERS)
    if unknown:
        raise ValueError(f"unknown identities: {sorted(unknown)}")
    report = IdentityReport()
    for k in ks if ks is not None else range(1, grid.k_max + 1):
        report = report.merge(verify_for_k(k, grid))
    return report
