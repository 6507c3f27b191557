"""Exact tools for non-orientable surfaces in lens-space cobordisms and closed 4-manifolds."""

from .dedekind import big_g, big_i, big_n, g_def, g_roots, g_sign, p_poly, q_poly
from .exact_core import AbGroup, LaurentPoly, Rat, format_rat, geom_sum, lnr
from .floer import SpincQLabel, d_lens_2k1, delta_lens, q_bundle_d, s1s2_d
from .obstruct import EmbedQuery, Verdict, decide, lens_feasible, mbound_check

__version__ = "0.1.0"

__all__ = [
    "AbGroup",
    "EmbedQuery",
    "LaurentPoly",
    "Rat",
    "SpincQLabel",
    "Verdict",
    "big_g",
    "big_i",
    "big_n",
    "d_lens_2k1",
    "decide",
    "delta_lens",
    "format_rat",
    "g_def",
    "g_roots",
    "g_sign",
    "geom_sum",
    "lens_feasible",
    "lnr",
    "mbound_check",
    "p_poly",
    "q_bundle_d",
    "q_poly",
    "s1s2_d",
]
