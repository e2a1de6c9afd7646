"""Cover data: validation, Riemann-Hurwitz genus, canonical constructions."""

import pytest

from equideform.cover import BranchOrbit, CoverData
from equideform.divisors import QuotientDivisor
from equideform.errors import (
    BadCanonicalDegreeError,
    MissingPhiError,
    NonIntegralGenusError,
    NotEffectiveError,
    SmallCharacteristicError,
    UnramifiedError,
    ValidationError,
)
from equideform.ramification import RamificationFiltration


def weakly(p, r, g_y=0):
    """Order-p cover with r weakly ramified orbits on a genus-g_y quotient."""
    orbit = RamificationFiltration.from_lower_jumps(p, (1,))
    return CoverData(p, 1, g_y, (orbit,) * r, cyclic=True)


def test_genus_by_riemann_hurwitz():
    # y^p - y = x^N analogue: one orbit, jump at N, genus-0 quotient
    cases = {(2, 5): 2, (3, 4): 3, (5, 3): 4, (7, 3): 6, (5, 7): 12}
    for (p, big_n), g in cases.items():
        orbit = RamificationFiltration.from_lower_jumps(p, (big_n,))
        cover = CoverData(p, 1, 0, (orbit,))
        assert cover.genus_x() == g
        assert cover.cyclic  # inferred from the filtration pattern


def test_weakly_ramified_genus():
    # d = 2(p-1) per orbit; 2g - 2 = -2p + 2r(p-1)
    assert weakly(5, 2).genus_x() == 4
    assert weakly(7, 2).genus_x() == 6
    assert weakly(3, 3, g_y=0).genus_x() == 4
    assert weakly(2, 3, g_y=1).genus_x() == 4


def test_branch_orbit_accessors():
    orbit = BranchOrbit(RamificationFiltration.from_lower_jumps(5, (3,)))
    assert orbit.e0 == 5
    assert orbit.different == 16
    assert not orbit.is_weakly_ramified()


def test_orbit_sizes():
    orbit = RamificationFiltration.from_lower_jumps(2, (1,))
    cover = CoverData(2, 3, 0, (orbit,) * 3)
    assert cover.order == 8
    assert cover.e0(0) == 2
    assert cover.orbit_size(0) == 4
    assert cover.e0("extra") == 1 and cover.orbit_size("extra") == 8


def test_validation_errors():
    orbit = RamificationFiltration.from_lower_jumps(2, (1,))
    with pytest.raises(ValidationError):
        CoverData(9, 1, 0, (orbit,))
    with pytest.raises(ValidationError):
        CoverData(2, 0, 0, (orbit,))
    with pytest.raises(ValidationError):
        CoverData(2, 1, -1, (orbit,))
    with pytest.raises(ValidationError):
        CoverData(3, 1, 0, (orbit,))  # characteristic mismatch
    with pytest.raises(ValidationError):
        CoverData(2, 1, 0, (RamificationFiltration(2, ()),))  # unramified orbit
    big = RamificationFiltration.from_lower_jumps(2, (1, 3))  # e_0 = 4
    with pytest.raises(ValidationError):
        CoverData(2, 1, 0, (big,))  # e_0 does not divide |G|


def test_cyclic_flag_semantics():
    drop2 = RamificationFiltration(3, ((2, 9),))  # drops 9 -> 1 in one jump
    cover = CoverData(3, 2, 1, (drop2,))
    assert cover.cyclic is False  # inferred: pattern does not fit
    with pytest.raises(ValidationError):
        CoverData(3, 2, 1, (drop2,), cyclic=True)
    # outside knowledge may override a fitting pattern in the other direction
    orbit = RamificationFiltration.from_lower_jumps(3, (1,))
    assert CoverData(3, 2, 0, (orbit,) * 4, cyclic=False).cyclic is False


def test_odd_riemann_hurwitz_rejected():
    # p = 2, one weakly ramified orbit: 2g - 2 = -4 + 2 = -2 is fine,
    # but a single jump-2 orbit gives d = 3 and 2g - 2 = -1
    orbit = RamificationFiltration.from_lower_jumps(2, (2,))
    with pytest.raises(NonIntegralGenusError):
        CoverData(2, 1, 0, (orbit,))


def test_ramification_divisors():
    orbit = RamificationFiltration.from_lower_jumps(5, (3,))
    cover = CoverData(5, 1, 0, (orbit,))
    r = cover.ramification_divisor()
    assert r.coeff(0) == 16
    assert r.degree_x() == 16
    assert cover.reduced_ramification().coeff(0) == 1


def test_canonical_divisor_x():
    orbit = RamificationFiltration.from_lower_jumps(5, (3,))
    cover = CoverData(5, 1, 0, (orbit,))
    k_y = QuotientDivisor(cover, {0: -1, "unram:infinity": -1})
    k_x = cover.canonical_divisor_x(k_y)
    # pullback multiplies the branch coefficient by e_0; unramified labels
    # keep their per-point coefficient and weight by orbit size in degree_x
    assert k_x.coeff(0) == -5 + 16 == 11
    assert k_x.coeff("unram:infinity") == -1
    assert k_x.degree_x() == 2 * cover.genus_x() - 2 == 6
    with pytest.raises(BadCanonicalDegreeError):
        cover.canonical_divisor_x(QuotientDivisor(cover, {0: -1}))
    with pytest.raises(TypeError):
        cover.canonical_divisor_x({0: -2})


def test_effective_canonical_single_orbit():
    orbit = RamificationFiltration.from_lower_jumps(5, (3,))
    cover = CoverData(5, 1, 0, (orbit,))
    d = cover.effective_canonical()
    # -2 + (e_2 - 1) + (e_3 - 1) = -2 + 4 + 4
    assert d.coeff(0) == 6
    assert d.degree_x() == 6


def test_effective_canonical_two_orbits():
    orbit = RamificationFiltration.from_lower_jumps(5, (1,))
    cover = CoverData(5, 1, 0, (orbit, orbit))
    d = cover.effective_canonical(orbit_pair=(0, 1))
    # d_j - e_0 = 8 - 5 = 3 on each named orbit
    assert d.coeff(0) == 3 and d.coeff(1) == 3
    assert d.degree_x() == 2 * cover.genus_x() - 2 == 6
    with pytest.raises(ValidationError):
        cover.effective_canonical(orbit_pair=(0, 0))


def test_effective_canonical_guards():
    weak = RamificationFiltration.from_lower_jumps(5, (1,))
    with pytest.raises(NotEffectiveError):
        # single weakly ramified orbit: the r = 1 coefficient is -2
        CoverData(5, 1, 0, (weak,)).effective_canonical()
    with pytest.raises(SmallCharacteristicError):
        weakly(3, 3).effective_canonical()
    deep = RamificationFiltration.from_lower_jumps(5, (3,))
    with pytest.raises(MissingPhiError):
        CoverData(5, 1, 1, (deep,)).effective_canonical()
    with pytest.raises(UnramifiedError):
        CoverData(5, 1, 2, ()).effective_canonical()


def test_effective_canonical_higher_genus_quotient():
    orbit = RamificationFiltration.from_lower_jumps(5, (1,))
    cover = CoverData(5, 1, 1, (orbit, orbit))
    phi = QuotientDivisor(cover, {})  # degree 0 = 2g_Y - 2 on a curve of genus 1
    d = cover.effective_canonical(phi=phi)
    assert d.coeff(0) == 8 and d.coeff(1) == 8
    assert d.degree_x() == 2 * cover.genus_x() - 2
    bad = QuotientDivisor(cover, {0: 1, "unram:q": -1})
    with pytest.raises(ValidationError):
        cover.effective_canonical(phi=bad)  # touches the branch locus


def test_json_round_trip():
    orbit = RamificationFiltration.from_lower_jumps(3, (1,))
    cover = CoverData(3, 2, 1, (orbit, orbit), cyclic=False)
    data = cover.to_json()
    assert data["p"] == 3 and data["log_order"] == 2
    assert data["cyclic"] is False
    assert CoverData.from_json(data) == cover
    with pytest.raises(ValidationError):
        CoverData.from_json([1, 2])
    with pytest.raises(ValidationError):
        CoverData.from_json({"p": 3})
    with pytest.raises(ValidationError):
        CoverData.from_json(
            {"p": 3, "log_order": 1, "genus_quotient": 0, "orbits": [{}]}
        )
    bad = dict(data)
    bad["cyclic"] = "yes"
    with pytest.raises(ValidationError):
        CoverData.from_json(bad)
