"""Parabolic basin laboratory (C++ core)."""

import json

from ._parabasin import (
    ParabasinError,
    ParabolicMap,
    analyze_parabolic,
    classify_direction,
    distance_exact,
    enumerate_q,
    forward_orbit,
    path_length,
    preimages,
)
from . import _parabasin


def construct_pacman(f, theta0):
    return json.loads(_parabasin._construct_pacman(f, theta0))


def verify_theorem(f, C, q, k_max=20, l_max=10, direction=0):
    return json.loads(_parabasin._verify_theorem(f, C, q, k_max, l_max, direction))


def prop3_disjointness(f, R, theta0, resolution=256, n_max=20000):
    return json.loads(_parabasin._prop3(f, R, theta0, resolution, n_max))


__all__ = [
    "ParabasinError",
    "ParabolicMap",
    "analyze_parabolic",
    "classify_direction",
    "construct_pacman",
    "distance_exact",
    "enumerate_q",
    "forward_orbit",
    "path_length",
    "preimages",
    "prop3_disjointness",
    "verify_theorem",
]
