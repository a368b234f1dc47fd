"""Tropical psi-class intersections on M0,n.

Structured inputs are plain dicts in the same JSON shapes the ``psifw`` command
accepts; results come back as dicts with integers encoded as decimal strings.
"""

import json as _json

from . import _psifw
from ._psifw import PsifwError

__all__ = [
    "PsifwError",
    "firework",
    "min_profile",
    "trop_curve",
    "ray_crossings",
    "stable_intersection",
    "local_mult",
    "lattice_index",
    "run_checks",
]


def _dump(x):
    return x if isinstance(x, str) else _json.dumps(x)


def firework(config, base=None, max_level=None, threads=1, oracle=False):
    """Run the firework recursion and return the report dict."""
    b = None if base is None else str(base)
    return _json.loads(_psifw.firework(_dump(config), b, max_level, threads, oracle))


def min_profile(tree, spec):
    return _json.loads(_psifw.min_profile(_dump(tree), _dump(spec)))


def trop_curve(curve):
    return _json.loads(_psifw.trop_curve(_dump(curve)))


def ray_crossings(curve, rays):
    return [int(x) for x in _psifw.ray_crossings(_dump(curve), [tuple(r) for r in rays])]


def stable_intersection(a, b, translation=None, seed=0):
    t = None if translation is None else (str(translation[0]), str(translation[1]))
    return _json.loads(_psifw.stable_intersection(_dump(a), _dump(b), t, seed))


def local_mult(star_sigma, sigma, star_tropx, facet=None, seed=0):
    return int(_psifw.local_mult(_dump(star_sigma), sigma, _dump(star_tropx), facet, seed))


def lattice_index(sub, ambient_rank):
    """Index of the lattice spanned by ``sub`` in Z^ambient_rank, or None if infinite."""
    v = _psifw.lattice_index(sub, ambient_rank)
    return None if v is None else int(v)


def run_checks(threads=1):
    return _json.loads(_psifw.run_checks(threads))
