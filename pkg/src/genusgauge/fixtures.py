"""Regression corpus of known values, stored as ``name | operation | params | expected | provenance`` lines."""

from __future__ import annotations

from dataclasses import dataclass
from importlib import resources
from pathlib import Path
from typing import Callable

from .dedekind import big_g, big_i, big_n
from .errors import GenusGaugeError
from .exact_core import as_rat, format_rat
from .floer import q_bundle_d, s1s2_d
from .obstruct import (
    HomologySphere,
    LensCobordism,
    RhoInput,
    gsign_check,
    lens_feasible,
    mbound_check,
    region,
    rho_bound,
    rho_q_bundle,
    rp2_test,
)

PROVENANCE_TAGS = ("PUBLISHED", "ELEMENTARY", "COMPUTED")
RHO_SEARCH_LIMIT = 64


class FixtureError(Exception):
    """Missing or malformed fixture file."""


@dataclass(frozen=True)
class Fixture:
    name: str
    operation: str
    params: dict[str, str]
    expected: str
    provenance: str
    line: int

    @property
    def tag(self) -> str:
        return self.provenance.split(":", 1)[0].strip()


@dataclass(frozen=True)
class FixtureResult:
    fixture: Fixture
    got: str
    passed: bool


def _int(p, key):
    return int(p[key])


def _verdict_word(v) -> str:
    return "feasible" if v.feasible else "infeasible"


def _bool_word(b: bool) -> str:
    return "true" if b else "false"


def _rho_min_h(p) -> str:
    rho, e = as_rat(p["rho"]), _int(p, "e")
    k_c = int(p["k_c"]) if "k_c" in p else None
    for h in range(1, RHO_SEARCH_LIMIT + 1):
        if rho_bound(rho, h, e, k_c).feasible:
            return str(h)
    return "none"


def _lens_certificate(p) -> str:
    v = lens_feasible(_int(p, "k"), _int(p, "q"), _int(p, "h"), _int(p, "e"))
    return ",".join(map(str, v.certificate["counts"])) if v.feasible else "none"


OPERATIONS: dict[str, Callable[[dict], str]] = {
    "G": lambda p: format_rat(big_g(_int(p, "k"), _int(p, "q"))),
    "N": lambda p: str(big_n(_int(p, "k"), _int(p, "q"))),
    "I": lambda p: str(big_i(_int(p, "k"), _int(p, "q"))),
    "lens_feasible": lambda p: _verdict_word(lens_feasible(_int(p, "k"), _int(p, "q"), _int(p, "h"), _int(p, "e"))),
    "lens_certificate": _lens_certificate,
    "lens_region": lambda p: ",".join(
        f"{h}:{e}" for h, e, _ in region(LensCobordism(_int(p, "k"), _int(p, "q")), _int(p, "h_max"))
    ),
    "rp2_test": lambda p: _bool_word(rp2_test([as_rat(x) for x in p["table"].split(",")], _int(p, "phi"))),
    "gsign": lambda p: _bool_word(
        gsign_check(RhoInput(p["rho_alpha"], p["rho_alphatau"], _int(p, "kpow")), _int(p, "h"), _int(p, "e"))
    ),
    "rho_min_h": _rho_min_h,
    "rho_bound": lambda p: _verdict_word(rho_bound(as_rat(p["rho"]), _int(p, "h"), _int(p, "e"))),
    "mbound": lambda p: _verdict_word(mbound_check(as_rat(p["delta"]), _int(p, "h"), _int(p, "e"), p.get("phi", "unknown"))),
    "qd": lambda p: format_rat(q_bundle_d(_int(p, "h"), _int(p, "e"), p["label"], p["which"])),
    "s1s2": lambda p: format_rat(s1s2_d(_int(p, "n"), p["which"])),
    "rhoq": lambda p: format_rat(rho_q_bundle(_int(p, "h"), _int(p, "e"))),
    "sphere_region": lambda p: ",".join(
        str(e) for h, e, _ in region(HomologySphere(), _int(p, "h")) if h == _int(p, "h")
    ),
}


def default_path() -> Path:
    return Path(str(resources.files("genusgauge") / "data" / "fixtures.txt"))


def parse_fixtures(text: str) -> list[Fixture]:
    out = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        fields = [f.strip() for f in line.split("|")]
        if len(fields) != 5:
            raise FixtureError(f"line {lineno}: expected 5 '|'-separated fields, got {len(fields)}")
        name, op, params_text, expected, provenance = fields
        if op not in OPERATIONS:
            raise FixtureError(f"line {lineno}: unknown operation {op!r}")
        params = {}
        for item in filter(None, (s.strip() for s in params_text.split(";"))):
            key, sep, value = item.partition("=")
            if not sep:
                raise FixtureError(f"line {lineno}: parameter {item!r} is not key=value")
            params[key.strip()] = value.strip()
        fixture = Fixture(name, op, params, expected, provenance, lineno)
        if fixture.tag not in PROVENANCE_TAGS:
            raise FixtureError(f"line {lineno}: provenance must start with one of {PROVENANCE_TAGS}")
        if fixture.tag == "PUBLISHED" and ":" not in provenance:
            raise FixtureError(f"line {lineno}: PUBLISHED fixtures need a citation after the tag")
        out.append(fixture)
    if not out:
        raise FixtureError("fixture file holds no records")
    return out


def load_fixtures(path: str | Path | None = None) -> list[Fixture]:
    path = Path(path) if path is not None else default_path()
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise FixtureError(f"cannot read fixture file {path}: {exc}") from exc
    return parse_fixtures(text)


def replay(fixtures: list[Fixture]) -> list[FixtureResult]:
    results = []
    for fx in fixtures:
        try:
            got = OPERATIONS[fx.operation](fx.params)
        except (GenusGaugeError, KeyError, ValueError) as exc:
            got = f"error: {exc}"
        results.append(FixtureResult(fx, got, got == fx.expected))
    return results
