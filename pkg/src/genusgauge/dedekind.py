"""Generalized Dedekind sums g(2k, q, i), their maximum G, and the recursions N and I.

Conventions: ``k >= 1`` and ``q`` coprime to ``2k`` (so ``q`` is odd).  ``i``
and ``q`` may be any integers; every formula uses the mathematical floor and
the least nonnegative residue, so no silent shifting takes place.

Internally most routines work with ``2*g``, which is always an integer.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import CapError, NumericalConsistencyError, ParameterError
from .exact_core import LaurentPoly, coprime, floor_div, lnr

DEFAULT_MAX_K = 500
MAX_K_ENV = "GENUSGAUGE_MAX_K"


def check_gparams(k: int, q: int) -> None:
    if not isinstance(k, int) or not isinstance(q, int) or isinstance(k, bool):
        raise ParameterError("k and q must be integers")
    if k < 1:
        raise ParameterError(f"k must be positive, got {k}")
    if not coprime(q, 2 * k):
        raise ParameterError(f"q={q} is not coprime to 2k={2 * k}")


def residue_sum(k: int, q: int, i: int) -> int:
    """``sum_{j<k} [i + q j]`` with residues taken mod ``2k``."""
    p = 2 * k
    return sum((i + q * j) % p for j in range(k))


def twice_g(k: int, q: int, i: int) -> int:
    """``2 * g(2k, q, i)`` from the residue-sum definition, as an exact integer."""
    check_gparams(k, q)
    num = k * (2 * k - 1) - 2 * residue_sum(k, q, i)
    out, rem = divmod(num, k)
    if rem:
        raise ArithmeticError(f"2g(2*{k},{q},{i}) is not an integer")
    return out


def g_def(k: int, q: int, i: int) -> Fraction:
    """g(2k, q, i) = (2k-1)/2 - (1/k) * sum_{j=0}^{k-1} [i + q j]."""
    check_gparams(k, q)
    return Fraction(2 * k - 1, 2) - Fraction(residue_sum(k, q, i), k)


def g_sign(k: int, q: int, i: int) -> Fraction:
    """g(2k, q, i) as half a sum of signs ``(-1)**floor((i + q j)/k)``."""
    check_gparams(k, q)
    total = sum(-1 if floor_div(i + q * j, k) % 2 else 1 for j in range(k))
    return Fraction(total, 2)


def max_k_cap() -> int:
    raw = os.environ.get(MAX_K_ENV)
    if raw is None:
        return DEFAULT_MAX_K
    try:
        cap = int(raw)
    except ValueError as exc:
        raise ParameterError(f"{MAX_K_ENV} must be an integer, got {raw!r}") from exc
    if cap < 1:
        raise ParameterError(f"{MAX_K_ENV} must be positive")
    return cap


def roots_tolerance(k: int) -> float:
    return 1e-9 if k <= 200 else 1e-7


def _unit(n: int, k: int) -> complex:
    # exp(i*pi*n/k) with n already reduced mod 2k
    theta = math.pi * n / k
    return complex(math.cos(theta), math.sin(theta))


def g_roots(k: int, q: int, i: int, cap: int | None = None) -> float:
    """Floating point g(2k, q, i) from the sum over roots of ``zeta**k = -1``.

    Raises CapError when ``k`` exceeds the cap (``GENUSGAUGE_MAX_K``, default
    500) and NumericalConsistencyError when the imaginary part of the sum
    does not vanish to within tolerance.
    """
    check_gparams(k, q)
    cap = max_k_cap() if cap is None else cap
    if k > cap:
        raise CapError(f"k={k} exceeds the roots-of-unity cap {cap}")
    p = 2 * k
    re_parts, im_parts = [], []
    for m in range(k):
        a = 2 * m + 1
        z = _unit(a % p, k)
        zq = _unit(a * q % p, k)
        zi = _unit(a * (i + 1) % p, k)
        term = zi / ((z - 1) * (zq - 1))
        re_parts.append(term.real)
        im_parts.append(term.imag)
    value = complex(math.fsum(re_parts), math.fsum(im_parts)) * (-2.0 / k)
    tol = roots_tolerance(k)
    if abs(value.imag) > tol:
        raise NumericalConsistencyError(f"imaginary part {value.imag:.3e} exceeds {tol:g}")
    return value.real


# -- batch (numpy) evaluation over many i at once --------------------------------


def _grid(k: int, q: int, i_values) -> np.ndarray:
    """Matrix of ``i + q j`` for ``j < k``; int32 when that cannot overflow."""
    i_arr = np.asarray(i_values, dtype=np.int64)
    bound = (int(np.abs(i_arr).max()) if i_arr.size else 0) + abs(q) * k
    dtype = np.int32 if bound < 2**31 - 1 else np.int64
    j = np.arange(k, dtype=dtype)
    return i_arr.astype(dtype)[:, None] + dtype(q) * j[None, :]


def twice_g_table(k: int, q: int, i_values) -> np.ndarray:
    """``2 g(2k,q,i)`` for every ``i`` in ``i_values`` via the residue-sum definition."""
    check_gparams(k, q)
    residues = _grid(k, q, i_values) % (2 * k)
    num = k * (2 * k - 1) - 2 * residues.sum(axis=1, dtype=np.int64)
    if np.any(num % k):
        raise ArithmeticError("2g is not integral")
    return num // k


def twice_g_sign_table(k: int, q: int, i_values) -> np.ndarray:
    """``2 g(2k,q,i)`` for every ``i`` via the sign-sum formula."""
    check_gparams(k, q)
    odd = (_grid(k, q, i_values) // k) & 1
    return k - 2 * odd.sum(axis=1, dtype=np.int64)


def g_roots_table(k: int, q: int, i_values, cap: int | None = None) -> np.ndarray:
    """Complex roots-of-unity sums for every ``i`` (pairwise summation along the root axis)."""
    check_gparams(k, q)
    cap = max_k_cap() if cap is None else cap
    if k > cap:
        raise CapError(f"k={k} exceeds the roots-of-unity cap {cap}")
    p = 2 * k
    w = np.exp(1j * np.pi * np.arange(p) / k)
    a = 2 * np.arange(k, dtype=np.int64) + 1
    coeff = 1.0 / ((w[a % p] - 1.0) * (w[(a * q) % p] - 1.0))
    i_arr = np.asarray(i_values, dtype=np.int64)
    # the exponent only sees (i + 1) mod 2k, so evaluate each residue once
    residues, back = np.unique((i_arr + 1) % p, return_inverse=True)
    idx = (a[None, :] * residues[:, None]) % p
    values = (w[idx] * coeff[None, :]).sum(axis=1) * (-2.0 / k)
    return values[back.reshape(-1)]


# -- the maximum G ---------------------------------------------------------------


@dataclass(frozen=True)
class GResult:
    """Value of G(2k, q) together with how ``q`` was normalized and a maximizing index."""

    value: Fraction
    k: int
    q: int
    q_star: int
    folded: bool
    argmax: int


def normalize_q(k: int, q: int) -> tuple[int, bool]:
    """Reduce ``q`` into ``(0, 2k)`` and fold to ``min(q, 2k - q)``.

    Returns the normalized value and whether the fold ``q -> 2k - q`` was used.
    """
    check_gparams(k, q)
    r = lnr(q, 2 * k)
    if r <= k:
        return r, False
    return 2 * k - r, True


def _fast_scan(k: int, q: int) -> tuple[int, int]:
    """Return ``(2*G, argmax)`` scanning ``0 <= i <= (q-1)/2`` for ``0 < q <= k``.

    Consecutive values differ by exactly one: ``g(i+1) = g(i) + 1`` when the
    unique ``j`` in ``[0, 2k)`` with ``i + q j = -1 (mod 2k)`` is below ``k``,
    and ``g(i) - 1`` otherwise.
    """
    p = 2 * k
    residues = (q * np.arange(k, dtype=np.int64)) % p
    start = (k * (2 * k - 1) - 2 * int(residues.sum())) // k
    span = (q - 1) // 2
    if span == 0:
        return start, 0
    qinv = pow(q, -1, p)
    i = np.arange(span, dtype=np.int64)
    j0 = ((-1 - i) * qinv) % p
    steps = np.where(j0 < k, 2, -2)
    walk = np.cumsum(steps)
    best = int(walk.max())
    if best > 0:
        return start + best, int(walk.argmax()) + 1
    return start, 0


def big_g_detail(k: int, q: int, method: str = "fast") -> GResult:
    """G(2k, q) = max_i g(2k, q, i) with metadata.

    ``method="fast"`` normalizes ``q`` (G is invariant under ``q -> -q``) and
    scans only ``0 <= i <= (q*-1)/2``; ``method="brute"`` scans all of
    ``[0, 2k)`` with the unnormalized ``q``.
    """
    check_gparams(k, q)
    q_star, folded = normalize_q(k, q)
    if method == "fast":
        twice, arg = _fast_scan(k, q_star)
        if q_star != lnr(q, 2 * k):
            # g(2k, -q*, i) = g(2k, q*, i + q* + k)
            arg = lnr(arg - q_star - k, 2 * k)
    elif method == "brute":
        values = twice_g_table(k, q, np.arange(2 * k))
        arg = int(values.argmax())
        twice = int(values[arg])
    else:
        raise ParameterError(f"unknown method {method!r}")
    return GResult(Fraction(twice, 2), k, q, q_star, folded, arg)


def big_g(k: int, q: int, method: str = "fast") -> Fraction:
    """G(2k, q), the maximum over ``i`` of g(2k, q, i)."""
    return big_g_detail(k, q, method).value


def big_n(k: int, q: int) -> int:
    """Minimal genus N(2k, q) of a non-orientable surface in L(2k, q).

    N(2, 1) = 1 and N(2k, q) = N(2(k - q), q') + 1 where ``q'`` is ``+-q``
    reduced into ``[1, k - q]``.
    """
    q, _ = normalize_q(k, q)
    n = 1
    while k > 1:
        if not 1 <= q < k:
            raise AssertionError(f"no valid reduction for k={k}, q={q}")
        k -= q
        r = q % (2 * k)
        q = min(r, 2 * k - r)
        n += 1
    if q != 1:
        raise AssertionError("recursion did not reach N(2,1)")
    return n


def big_i(k: int, q: int) -> int:
    """A maximizing index I(2k, q) with g(2k, q, I) = G(2k, q), for ``q > 0``."""
    check_gparams(k, q)
    if q <= 0:
        raise ParameterError("I(2k, q) is defined for q > 0")
    offset = 0
    while not (k == 1 and q == 1):
        if q > 2 * k:
            q = lnr(q, 2 * k)
        elif q < k:
            k -= q
        elif k < q < 2 * k:
            offset += q - k
            q = 2 * k - q
        else:
            raise AssertionError(f"unreachable state k={k}, q={q}")
    return offset


# -- Laurent polynomials -----------------------------------------------------------


def p_poly(k: int, q: int, i: int) -> LaurentPoly:
    """P(2k, q, i) = sum_{j<k} u**floor((i + q j)/k); ``q`` odd but not necessarily coprime."""
    if k < 1:
        raise ParameterError(f"k must be positive, got {k}")
    if q % 2 == 0:
        raise ParameterError(f"q must be odd, got {q}")
    return LaurentPoly.from_exponents([(i + q * j) // k for j in range(k)])


def q_poly(k: int, j: int, i: int) -> LaurentPoly:
    """Q(k, j, i) = sum_{l<k} u**(floor((i + j l)/k) - l) for coprime ``j, k`` of opposite parity."""
    if k < 1 or j < 1:
        raise ParameterError("j and k must be positive")
    if not coprime(j, k) or (j - k) % 2 == 0:
        raise ParameterError(f"j={j}, k={k} must be coprime and of opposite parity")
    return LaurentPoly.from_exponents([(i + j * l) // k - l for l in range(k)])
