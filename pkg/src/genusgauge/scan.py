"""Batch verification families with optional process-level parallelism.

A family splits its grid into independent units (usually one ``k`` each).
Units run in any order, on any number of workers; partial results are merged
and sorted by parameter tuple so the final report does not depend on
scheduling.
"""

from __future__ import annotations

import time
from concurrent.futures import FIRST_COMPLETED, ProcessPoolExecutor, wait
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Callable

from .dedekind import big_g_detail, big_n
from .floer import (
    SpincQLabel,
    d_diff_half,
    d_lens_2k1_twist_diff,
    d_step_chain,
    delta_lens,
    q_bundle_d,
    s1s2_d,
)
from .identities import IDENTITIES, IdentityGrid, verify_for_k
from .obstruct import euler_congruence, k_c_lens

FAMILIES = ("two_g_equals_n", "appendix_identities", "carlitz", "tdbundle_consistency", "congruence_coherence")

DEFAULT_BOUNDS = {
    "two_g_equals_n": {"max_p": 2000, "brute_max_p": 200},
    "appendix_identities": {"max": 60},
    "carlitz": {"max": 60},
    "tdbundle_consistency": {"h_max": 20, "e_max": 40, "step_max_p": 60, "twist_max_k": 100},
    "congruence_coherence": {"max_p": 500, "h_max": 4},
}


@dataclass
class Partial:
    counts: dict[str, int] = field(default_factory=dict)
    failures: list[tuple[tuple, str]] = field(default_factory=list)

    def tick(self, name: str, n: int = 1) -> None:
        self.counts[name] = self.counts.get(name, 0) + n

    def expect(self, name: str, ok: bool, params: tuple, detail: str = "") -> None:
        self.tick(name)
        if not ok:
            self.failures.append(((name,) + params, detail))


@dataclass
class ScanReport:
    family: str
    bounds: dict
    counts: dict[str, int]
    failures: list[tuple[tuple, str]]
    units_done: int
    units_total: int
    elapsed: float

    @property
    def checked(self) -> int:
        return sum(self.counts.values())

    @property
    def complete(self) -> bool:
        return self.units_done == self.units_total

    @property
    def ok(self) -> bool:
        return self.complete and not self.failures

    def to_json(self) -> dict:
        first = None
        if self.failures:
            params, detail = self.failures[0]
            first = {"params": list(params), "detail": detail}
        return {
            "family": self.family,
            "bounds": self.bounds,
            "checked": self.checked,
            "passed": self.checked - len(self.failures),
            "failures": len(self.failures),
            "counts": dict(sorted(self.counts.items())),
            "first_counterexample": first,
            "complete": self.complete,
            "units_done": self.units_done,
            "units_total": self.units_total,
        }

    def summary_line(self) -> str:
        line = f"{self.family}: checked {self.checked}, failures {len(self.failures)}"
        if not self.complete:
            line += f" (partial: {self.units_done}/{self.units_total} units)"
        return line


# -- families -------------------------------------------------------------------


def _two_g_units(b: dict) -> list:
    return list(range(1, b["max_p"] // 2 + 1))


def _two_g_run(k: int, b: dict) -> Partial:
    out = Partial()
    brute = 2 * k <= b["brute_max_p"]
    for q in range(1, 2 * k):
        if gcd(q, 2 * k) != 1:
            continue
        fast = big_g_detail(k, q, "fast").value
        n = big_n(k, q)
        out.expect("2G = N", 2 * fast == n, (k, q), f"2G={2 * fast}, N={n}")
        if brute:
            slow = big_g_detail(k, q, "brute").value
            out.expect("fast G = brute G", fast == slow, (k, q), f"fast={fast}, brute={slow}")
    return out


def _identity_units(b: dict) -> list:
    return list(range(1, b["max"] + 1))


def _identity_run(k: int, b: dict, names: tuple[str, ...]) -> Partial:
    grid = IdentityGrid(k_max=b["max"], j_max=b["max"], identities=names)
    report = verify_for_k(k, grid)
    out = Partial(dict(report.checked))
    for c in report.counterexamples:
        out.failures.append(((c.identity,) + c.params, f"{c.lhs} != {c.rhs}"))
    return out


def _appendix_run(k: int, b: dict) -> Partial:
    return _identity_run(k, b, tuple(n for n in IDENTITIES if n != "carlitz"))


def _carlitz_run(k: int, b: dict) -> Partial:
    return _identity_run(k, b, ("carlitz",))


def _tdbundle_units(b: dict) -> list:
    return list(range(1, b["h_max"] + 1))


LABELS = tuple(SpincQLabel)


def _tdbundle_run(h: int, b: dict) -> Partial:
    """Properties of the bundle correction terms at genus ``h``, plus lens-space spot checks keyed by the same index."""
    out = Partial()
    for e in range(-b["e_max"], b["e_max"] + 1):
        for lab in LABELS:
            bot = q_bundle_d(h, e, lab, "bot")
            top = q_bundle_d(h, e, lab, "top")
            shifted = top - (h - 1)
            out.expect("top/bot gap", bot >= shifted, (h, e, lab.value), f"bot={bot}, top={top}")
            out.expect("top/bot mod 2", ((bot - shifted) / 2).denominator == 1, (h, e, lab.value))
            if lab.extendible or h % 2 == 0:
                partner = lab
            else:
                partner = lab.flipped()
            dual = -q_bundle_d(h, -e, partner, "bot")
            out.expect("duality", top == dual, (h, e, lab.value), f"top={top}, -bot(dual)={dual}")
            if not lab.extendible:
                step = q_bundle_d(h, e + 1, lab, "bot") - bot
                out.expect("linearity", step == Fraction(1, 4), (h, e, lab.value), f"step={step}")
    # use h as a convenient index for the smaller lens-space families
    for m in range(0, h + 1):
        for which in ("bot", "top"):
            out.expect("additivity", s1s2_d(m + h, which) == s1s2_d(m, which) + s1s2_d(h, which), (h, m))
    for k in _share(h, b["h_max"], b["step_max_p"] // 2):
        for q in range(1, 2 * k):
            if gcd(q, 2 * k) != 1:
                continue
            for i in range(2 * k):
                chain, half = d_step_chain(k, q, i), d_diff_half(k, q, i)
                out.expect("step composition", chain == half, (k, q, i), f"{chain} != {half}")
    for k in _share(h, b["h_max"], b["twist_max_k"]):
        best = max(d_lens_2k1_twist_diff(k, s) for s in range(k))
        out.expect("twist maximum", best == delta_lens(k, 1), (k,), f"{best} != {delta_lens(k, 1)}")
    return out


def _share(unit: int, n_units: int, top: int) -> range:
    """Values in 1..top assigned to ``unit`` when dealt round-robin across ``n_units``."""
    return range(unit, top + 1, n_units)


def _coherence_units(b: dict) -> list:
    return list(range(1, b["max_p"] // 2 + 1))


def _coherence_run(k: int, b: dict) -> Partial:
    out = Partial()
    for q in range(1, 2 * k):
        if gcd(q, 2 * k) != 1:
            continue
        n, kc = big_n(k, q), k_c_lens(k, q)
        out.expect("N = k_c (mod 2)", n % 2 == kc, (k, q), f"N={n}, k_c={kc}")
        for h in range(1, b["h_max"] + 1):
            out.expect("euler residue", euler_congruence(kc, h) == (2 * h - 2 * n) % 4, (k, q, h))
    return out


RUNNERS: dict[str, tuple[Callable, Callable]] = {
    "two_g_equals_n": (_two_g_units, _two_g_run),
    "appendix_identities": (_identity_units, _appendix_run),
    "carlitz": (_identity_units, _carlitz_run),
    "tdbundle_consistency": (_tdbundle_units, _tdbundle_run),
    "congruence_coherence": (_coherence_units, _coherence_run),
}


def _run_unit(family: str, unit, bounds: dict) -> Partial:
    return RUNNERS[family][1](unit, bounds)


def resolve_bounds(family: str, overrides: dict | None = None) -> dict:
    if family not in RUNNERS:
        raise ValueError(f"unknown scan family {family!r}; choose from {', '.join(FAMILIES)}")
    bounds = dict(DEFAULT_BOUNDS[family])
    for key, value in (overrides or {}).items():
        if value is None:
            continue
        if key not in bounds:
            raise ValueError(f"family {family} has no bound {key!r}")
        if value < 1:
            raise ValueError(f"bound {key} must be positive")
        bounds[key] = value
    return bounds


def run_scan(family: str, overrides: dict | None = None, workers: int = 1, time_limit: float | None = None) -> ScanReport:
    bounds = resolve_bounds(family, overrides)
    units = RUNNERS[family][0](bounds)
    start = time.monotonic()
    deadline = None if time_limit is None else start + time_limit
    partials: list[Partial] = []
    if workers <= 1:
        for unit in units:
            if deadline is not None and time.monotonic() > deadline:
                break
            partials.append(_run_unit(family, unit, bounds))
    else:
        pool = ProcessPoolExecutor(max_workers=workers)
        timed_out = False
        try:
            pending = {pool.submit(_run_unit, family, unit, bounds) for unit in units}
            while pending:
                remaining = None if deadline is None else max(0.0, deadline - time.monotonic())
                done, pending = wait(pending, timeout=remaining, return_when=FIRST_COMPLETED)
                partials.extend(f.result() for f in done)
                if pending and deadline is not None and time.monotonic() > deadline:
                    timed_out = True
                    break
        finally:
            if timed_out:
                # running units cannot be cancelled; stop their workers outright
                for proc in list(getattr(pool, "_processes", {}).values()):
                    proc.terminate()
            pool.shutdown(wait=not timed_out, cancel_futures=True)
    counts: dict[str, int] = {}
    failures: list[tuple[tuple, str]] = []
    for part in partials:
        for name, n in part.counts.items():
            counts[name] = counts.get(name, 0) + n
        failures.extend(part.failures)
    failures.sort(key=lambda f: f[0])
    return ScanReport(family, bounds, counts, failures, len(partials), len(units), time.monotonic() - start)
