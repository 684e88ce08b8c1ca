import math

import pytest

import parabasin as pb


def test_vectors_of_quadratic():
    f = pb.analyze_parabolic([0, 1, 1])
    assert f.m == 1
    assert f.attraction == [complex(-1, 0)]
    assert f.repulsion == [complex(1, 0)]


def test_linear_map_rejected():
    with pytest.raises(pb.ParabasinError, match="Linear"):
        pb.analyze_parabolic([0, 1])


def test_orbit_matches_direct_iteration():
    f = pb.analyze_parabolic([0, 1, 1])
    points, status = pb.forward_orbit(f, -0.5, 3)
    z = -0.5
    for p in points:
        assert p == pytest.approx(z, abs=0)
        z = z + z * z
    assert status == "Undecided"


def test_double_preimage():
    f = pb.analyze_parabolic([0, 1, 1])
    roots = pb.preimages(f, -0.25)
    assert all(abs(r + 0.5) < 1e-12 for r in roots)


def test_slit_plane_distance():
    assert pb.distance_exact("slit", -1, -4) == pytest.approx(math.log(2), abs=1e-12)
    assert pb.path_length("halfplane", [1j, 2j]) == pytest.approx(math.log(2), abs=1e-9)


def test_small_certificate():
    f = pb.analyze_parabolic([0, 1, 1])
    cert = pb.verify_theorem(f, 2.0, -0.5, 0, 0)
    assert cert["pass"] is True
    assert cert["certified"] == 1
    assert cert["global_min"] >= 2.0


def test_pacman_radii_ordering():
    f = pb.analyze_parabolic([0, 1, 1])
    c = pb.construct_pacman(f, 0.1)
    assert c["R0_prime"] < c["R0"] < c["r0"]
