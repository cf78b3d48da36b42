from fractions import Fraction

import pytest

import fqg


def test_kp_axioms_and_haar():
    g = fqg.kp()
    assert g.dim == 8
    assert all(g.verify().values())
    assert all(g.verify_haar().values())
    assert not g.is_cocommutative()
    assert g.haar(g.unit()).to_fraction() == 1


def test_sekine_catalog_dimensions():
    g = fqg.sekine(5)
    irreps = fqg.irreps(g)
    assert len(irreps) == 2 * 5 + 5 * 4 // 2
    assert sum(u.d ** 2 for u in irreps) == g.dim
    assert all(fqg.is_corep(g, u) for u in irreps)


def test_fundamental_moments():
    g = fqg.kp()
    chi = fqg.kp_fundamental(g).power(3).character()
    rows = dict(fqg.star_moments(g, chi, 4))
    assert rows["aa"].to_fraction() == 1
    assert rows["aaaa"].to_fraction() == 4
    assert rows["a"].to_fraction() == 0


def test_cumulant_of_even_powers():
    g = fqg.kp()
    x = fqg.kp_fundamental(g)
    k = fqg.cumulant(g, [x.power(2).character(), x.power(4).character()])
    assert k.to_fraction() == 2


def test_closed_forms():
    # h(chi^2) = 1 and h(chi^4) = 0, so the joint moment equals the cumulant.
    assert fqg.kp_joint_closed_form([2, 4]) == Fraction(2)
    assert fqg.dual_moments(4, [2, 2], derived=True) == 8
    assert fqg.dual_moments(4, [2, 2], derived=False) == 2


def test_cyclotomic_values():
    z = fqg.Cyclo.root_of_unity(5)
    c = z + z.conj()
    assert c.is_real()
    assert abs(complex(c) - 0.6180339887) < 1e-9
    assert (c * c + c - fqg.Cyclo(1)) == fqg.Cyclo(0)


def test_fixture_round_trip_and_errors():
    g = fqg.dual_sekine(3)
    h = fqg.from_json(g.to_json())
    assert h.dim == g.dim
    assert h.to_json() == g.to_json()
    with pytest.raises(fqg.FormatError):
        fqg.from_json('{"dim": 2')
    with pytest.raises(ValueError):
        fqg.from_json('{"dim": 1}')
    with pytest.raises(fqg.FormatError):
        fqg.load("/nonexistent/fixture.json")


def test_quick_criterion():
    out = fqg.run_criterion(3)
    assert out["passed"]
    assert out["criterion"] == 3
    assert "ThDist" in fqg.theorem_ids()
