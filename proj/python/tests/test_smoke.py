import math

import pytest

import pycauchy as pc


def test_determinant_identity():
    for gp in (-3.0, -0.5, 0.0, 0.7, 4.2):
        for mu in (0.1, 1.0, 7.5):
            det = pc.determinant(pc.assemble_system(gp, mu))
            expected = -mu * (1 + gp * gp) ** 2
            assert abs(det - expected) <= 1e-12 * abs(expected)


def test_normal_and_theta():
    n = pc.normal_at(1.0, pc.Orientation.DomainBelow)
    assert n[0] == pytest.approx(-1 / math.sqrt(2))
    assert n[1] == pytest.approx(1 / math.sqrt(2))
    assert pc.theta(0.0) == 1.0


def test_traction_on_flat_boundary():
    # Couette u = (x2, 0), p = 0: sigma nu = (mu, 0) on x2 = 0.
    t = pc.traction_from_gradient(0.0, 0.0, 1.0, 0.0, 0.0, 2.0)
    assert t[0] == pytest.approx(2.0)
    assert t[1] == pytest.approx(0.0)


def test_solve_recovers_gradient():
    gp, mu = 0.4, 1.7
    f = [0.3, -1.2, 0.8, 2.5]
    a = pc.assemble_system(gp, mu)
    rhs = [sum(a[i][j] * f[j] for j in range(4)) for i in range(4)]
    x = pc.solve_system(gp, mu, rhs)
    assert x == pytest.approx(f, abs=1e-12)


def test_stencil_is_fourth_order():
    def err(n):
        h = 1.0 / n
        xs = [(i - 2) * h for i in range(n + 5)]
        d = pc.tangential_derivative([math.sin(x) for x in xs], h)
        return max(abs(v - math.cos(k * h)) for k, v in enumerate(d))

    assert 12.0 <= err(32) / err(64) <= 20.0


def test_round_trip_with_injected_derivatives():
    assert "trigonometric" in pc.flows()
    d = pc.generate("trigonometric", "sine", "variable", "sine", 40)
    patch = d["patch"]
    dn = pc.stress_to_dn(patch, d["u1"], d["u2"], d["t1"], d["t2"], d["g_prime"], d["h_prime"])
    assert dn["first_node"] == 0
    assert dn["dnu1"] == pytest.approx(d["dnu1"], abs=1e-10)
    assert dn["dnu2"] == pytest.approx(d["dnu2"], abs=1e-10)
    assert dn["p"] == pytest.approx(d["p"], abs=1e-10)
    st = pc.dn_to_stress(patch, d["u1"], d["u2"], dn["dnu1"], dn["dnu2"], dn["p"],
                         d["g_prime"], d["h_prime"])
    assert st["t1"] == pytest.approx(d["t1"], abs=1e-10)
    assert st["t2"] == pytest.approx(d["t2"], abs=1e-10)


def test_stencil_conversion_trims_margins():
    d = pc.generate("couette", curve="flat", nodes=20)
    st = pc.dn_to_stress(d["patch"], d["u1"], d["u2"], d["dnu1"], d["dnu2"], d["p"])
    assert st["first_node"] == 2
    assert len(st["t1"]) == 16
    assert len(st["patch"]) == 16
    assert st["max_residual"] <= 1e-12


def test_partition_circle():
    patches = pc.partition("circle:1", max_slope=1.0, nodes=32)
    assert len(patches) >= 4
    for p in patches:
        audit = pc.audit_patch(p)
        assert audit.ok
        assert p.orientation == pc.Orientation.DomainAbove


def test_errors():
    with pytest.raises(KeyError):
        pc.generate("no-such-flow")
    with pytest.raises(ValueError):
        pc.make_patch("square:1")
    with pytest.raises(ValueError):
        pc.partition("circle:1", max_slope=0.0)
