"""Correction terms of lens spaces, of circle bundles over non-orientable surfaces, and of #n S1xS2."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction

from .dedekind import big_g, check_gparams, g_def
from .errors import ParameterError
from .exact_core import AbGroup, coprime, lnr


class SpincQLabel(enum.Enum):
    """Torsion spin^c structures on the circle bundle Q(h, e).

    T0 and T1 do not extend over the disk bundle; U0 and U1 do.
    """

    T0 = "t0"
    T1 = "t1"
    U0 = "u0"
    U1 = "u1"

    @property
    def extendible(self) -> bool:
        return self in (SpincQLabel.U0, SpincQLabel.U1)

    @property
    def index(self) -> int:
        return int(self.value[1])

    def flipped(self) -> SpincQLabel:
        """Same family, index ``1 - a``."""
        return SpincQLabel(self.value[0] + str(1 - self.index))

    @classmethod
    def parse(cls, text: str) -> SpincQLabel:
        try:
            return cls(text.strip().lower())
        except ValueError as exc:
            raise ParameterError(f"unknown spin^c label {text!r}; expected t0, t1, u0 or u1") from exc


class Which(enum.Enum):
    BOT = "bot"
    TOP = "top"

    @classmethod
    def parse(cls, text) -> Which:
        if isinstance(text, Which):
            return text
        try:
            return cls(str(text).strip().lower())
        except ValueError as exc:
            raise ParameterError(f"expected 'bot' or 'top', got {text!r}") from exc


@dataclass(frozen=True)
class LensSpace:
    """L(p, q) with ``p`` even; ``q`` is stored reduced into ``(0, p)``."""

    p: int
    q: int
    q_given: int

    @classmethod
    def make(cls, p: int, q: int) -> LensSpace:
        if p < 2 or p % 2:
            raise ParameterError(f"p must be a positive even integer, got {p}")
        if not coprime(p, q):
            raise ParameterError(f"q={q} is not coprime to p={p}")
        return cls(p, lnr(q, p), q)

    @property
    def k(self) -> int:
        return self.p // 2

    @property
    def normalized(self) -> bool:
        return self.q != self.q_given


@dataclass(frozen=True)
class BundleQ:
    h: int
    e: int

    def __post_init__(self) -> None:
        _check_h(self.h)


def _check_h(h: int) -> None:
    if not isinstance(h, int) or h < 1:
        raise ParameterError(f"h must be a positive integer, got {h!r}")


def _check_k(k: int) -> None:
    if not isinstance(k, int) or k < 1:
        raise ParameterError(f"k must be a positive integer, got {k!r}")


def d_lens_2k1(k: int, s: int) -> Fraction:
    """d(L(2k, 1), s) = 1/4 - (s - k)**2 / (2k), ``s`` read mod 2k."""
    _check_k(k)
    s = lnr(s, 2 * k)
    return Fraction(1, 4) - Fraction((s - k) ** 2, 2 * k)


def d_diff_half(k: int, q: int, i: int) -> Fraction:
    """Change of d on -L(2k, q) when spin^c structure ``i`` is twisted by the order-2 class."""
    return g_def(k, q, i)


def d_step(p: int, q: int, i: int) -> Fraction:
    """Change of d on -L(p, q) going from index ``i`` to ``i + q``."""
    if p < 1 or not coprime(p, q):
        raise ParameterError(f"need gcd(q, p) = 1 with p positive, got p={p}, q={q}")
    if not 0 <= i < p:
        raise ParameterError(f"index {i} outside [0, {p})")
    return Fraction(p - 1 - 2 * i, p)


def d_step_chain(k: int, q: int, i: int) -> Fraction:
    """Sum of ``k`` consecutive steps i, i+q, ... with indices reduced mod 2k."""
    check_gparams(k, q)
    p = 2 * k
    return sum((d_step(p, q, lnr(i + m * q, p)) for m in range(k)), Fraction(0))


def delta_lens(k: int, q: int) -> Fraction:
    """Maximal d-change under the order-2 twist on L(2k, q)."""
    return big_g(k, q)


def d_lens_2k1_twist_diff(k: int, s: int) -> Fraction:
    """d(L(2k,1), s + k) - d(L(2k,1), s) for ``0 <= s < k``."""
    _check_k(k)
    if not 0 <= s < k:
        raise ParameterError(f"s must lie in [0, {k}), got {s}")
    return Fraction(k, 2) - s


def q_bundle_d(h: int, e: int, label: SpincQLabel, which) -> Fraction:
    """Bottom or top correction term of Q(h, e) at a torsion spin^c label."""
    _check_h(h)
    which = Which.parse(which)
    if isinstance(label, str):
        label = SpincQLabel.parse(label)
    if label.extendible:
        half = Fraction(h - 1, 2)
        return -half if which is Which.BOT else half
    a = label.index
    if which is Which.TOP and h % 2 == 0:
        a = 1 - a
    return Fraction(e - 2, 4) + a


def s1s2_d(n: int, which) -> Fraction:
    """Bottom/top correction term of the connected sum of ``n`` copies of S1 x S2."""
    if not isinstance(n, int) or n < 0:
        raise ParameterError(f"n must be a nonnegative integer, got {n!r}")
    half = Fraction(n, 2)
    return -half if Which.parse(which) is Which.BOT else half


def h1_of_q(h: int, e: int) -> AbGroup:
    """First integral homology of Q(h, e)."""
    _check_h(h)
    return AbGroup(h - 1, (2, 2) if e % 2 == 0 else (4,))


def h1_mod2_dimension(h: int, e: int) -> int:
    """dim H^1(Q(h, e); Z/2) read off the Gysin sequence: multiplication by e mod 2 kills one generator when e is odd."""
    _check_h(h)
    return h + 1 if e % 2 == 0 else h
