"""Exact valuations on polyhedral cones, fans and central hyperplane arrangements.

Thin wrapper around the compiled extension. Numeric entries may be ints,
strings ("p/q") or fractions.Fraction; they are passed to the exact core as
rational strings.
"""

import json as _json

from conival._core import (
    CRITERION_COUNT,
    Arrangement,
    CheckReport,
    Cone,
    Fan,
    IndicatorElement,
    ParseError,
    klivans_swartz,
    moreau_fan,
    regions,
    run_criterion,
    zaslavsky,
)
from conival import _core

__all__ = [
    "CRITERION_COUNT",
    "Arrangement",
    "CheckReport",
    "Cone",
    "Fan",
    "IndicatorElement",
    "ParseError",
    "arrangement",
    "chi",
    "cone",
    "cone_from_halfspaces",
    "evaluate",
    "exceptional",
    "flats",
    "intrinsic_volumes",
    "klivans_swartz",
    "moreau_fan",
    "project",
    "regions",
    "run_criterion",
    "verify",
    "vk",
    "vk_arrangement",
    "zaslavsky",
]


def _strs(rows):
    return [[str(x) for x in row] for row in rows]


def _vec(entries):
    return [str(x) for x in entries]


def cone(ambient_dim, rays=(), lineality=()):
    """Cone generated by rays and a lineality space."""
    return Cone.from_rays(ambient_dim, _strs(rays), _strs(lineality))


def cone_from_halfspaces(ambient_dim, equations=(), inequalities=()):
    """Cone cut out by e.x = 0 and a.x <= 0 constraints."""
    return Cone.from_halfspaces(ambient_dim, _strs(equations), _strs(inequalities))


def arrangement(ambient_dim, normals):
    """Central arrangement with the given hyperplane normals."""
    return Arrangement(ambient_dim, _strs(normals))


def chi(a):
    """Characteristic polynomial: dict with integer `coefficients` (low degree
    first) and a rendered `display` string."""
    out = _json.loads(_core.chi_json(a))
    out["coefficients"] = [int(c) for c in out["coefficients"]]
    return out


def flats(a):
    """Flats of the arrangement: list of dicts with dim, mobius and basis."""
    out = _json.loads(_core.flats_json(a))["flats"]
    for f in out:
        f["mobius"] = int(f["mobius"])
    return out


def project(c, point):
    """Metric projection of a point onto a cone: dict with the projected
    point (rational strings), face_dim, active set and distance_sq."""
    return _json.loads(_core.project_json(c, _vec(point)))


def intrinsic_volumes(cone_or_fan, samples=100000, seed=0, z=4.0):
    """Monte Carlo spherical intrinsic volumes with z-sigma confidence radii."""
    if isinstance(cone_or_fan, Fan):
        raw = _core.fan_intrinsic_volumes_json(cone_or_fan, samples, seed, z)
    else:
        raw = _core.intrinsic_volumes_json(cone_or_fan, samples, seed, z)
    return _json.loads(raw)


def vk(c, k):
    """The indicator element V_k of a cone."""
    return _core.vk(c, k)


def vk_arrangement(a, k):
    """Sum of V_k over the closed regions of an arrangement."""
    return _core.vk_arrangement(a, k)


def exceptional(a):
    """Exceptional arrangement: the hyperplanes where V_k exceeds w_k."""
    return _core.exceptional(a)


def evaluate(element, point):
    """Exact integer value of an indicator element at a rational point."""
    return int(element.evaluate(_vec(point)))


def verify(theorem, obj, normal=None, k=-1):
    """Run one verification. Arrangement theorems: key, vk-arr, ks-classes.
    Cone theorems: vk-val (needs normal), polar-duality, hug-kabluchko,
    sommerville, moreau-iso. k < 0 means every applicable k."""
    if isinstance(obj, Arrangement):
        return _core.verify_arrangement(theorem, obj, k)
    return _core.verify_cone(theorem, obj, _vec(normal or []), k)
