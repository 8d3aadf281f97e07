import pytest
from fractions import Fraction

from hypothesis import given, strategies as st

from combstab import (
    BundleData,
    CombCurve,
    Polarization,
    SubsheafProfile,
    component_euler,
    component_eulers,
    format_rational,
    parse_rational,
    slope,
    total_euler,
    validate_polarization,
)


@pytest.mark.parametrize(
    "genus,rank,degree,expected",
    [
        (2, 2, 1, -1),
        (0, 1, 0, 1),   # structure sheaf of a rational curve
        (1, 3, 0, 0),   # degree-0 bundle on a genus-1 curve
        (3, 2, 7, 3),
    ],
)
def test_component_euler(genus, rank, degree, expected):
    assert component_euler(genus, rank, degree) == expected


def test_total_euler_worked():
    curve = CombCurve((2, 2))
    assert component_eulers(curve, BundleData(2, (1, 1))) == (-1, -1)
    assert total_euler(curve, BundleData(2, (1, 1))) == -4
    assert component_eulers(curve, BundleData(2, (5, 1))) == (3, -1)
    assert total_euler(curve, BundleData(2, (5, 1))) == 0


def test_total_euler_length_mismatch():
    with pytest.raises(ValueError):
        total_euler(CombCurve((2, 2)), BundleData(1, (1, 2, 3)))


curves = st.lists(st.integers(0, 5), min_size=2, max_size=5).map(
    lambda gs: CombCurve(tuple(gs))
)


@st.composite
def curve_and_bundle(draw):
    curve = draw(curves)
    rank = draw(st.integers(1, 4))
    degrees = draw(
        st.lists(
            st.integers(-15, 15),
            min_size=curve.num_components,
            max_size=curve.num_components,
        )
    )
    return curve, BundleData(rank, tuple(degrees))


@st.composite
def curve_bundle_polarization(draw):
    curve, bundle = draw(curve_and_bundle())
    num = curve.num_components
    den = draw(st.integers(num, 48))
    cuts = sorted(
        draw(
            st.lists(
                st.integers(1, den - 1),
                min_size=num - 1,
                max_size=num - 1,
                unique=True,
            )
        )
    )
    parts = [b - a for a, b in zip([0] + cuts, cuts + [den])]
    return curve, bundle, Polarization(tuple(Fraction(p, den) for p in parts))


@given(curve_and_bundle())
def test_total_euler_matches_plain_summation(cb):
    curve, bundle = cb
    n = bundle.rank
    by_hand = (
        sum(d + n * (1 - g) for g, d in zip(curve.genera, bundle.multidegree))
        - n * (curve.num_components - 1)
    )
    assert total_euler(curve, bundle) == by_hand


@given(curve_and_bundle())
def test_telescoping_when_every_component_euler_is_rank(cb):
    # chi_j = n for every j forces the total to telescope down to n.
    curve, bundle = cb
    n = bundle.rank
    adjusted = BundleData(n, tuple(n * g for g in curve.genera))
    assert component_eulers(curve, adjusted) == (n,) * curve.num_components
    assert total_euler(curve, adjusted) == n


@given(curve_bundle_polarization())
def test_full_rank_slope_is_total_over_rank(cbw):
    curve, bundle, w = cbw
    assert validate_polarization(w) == []
    profile = SubsheafProfile(
        multirank=(bundle.rank,) * curve.num_components,
        euler=total_euler(curve, bundle),
    )
    assert slope(profile, w) == Fraction(total_euler(curve, bundle), bundle.rank)


def test_slope_worked():
    w = Polarization.from_strings(["1/2", "1/2"])
    assert slope(SubsheafProfile((2, 2), -4), w) == -2
    assert slope(SubsheafProfile((1, 2), 0), w) == 0


def test_slope_rejects_zero_weighted_rank():
    w = Polarization((Fraction(0), Fraction(1)))
    with pytest.raises(ValueError):
        slope(SubsheafProfile((1, 0), 3), w)


def test_validate_polarization():
    assert validate_polarization(Polarization.from_strings(["1/2", "1/2"])) == []
    bad_sum = validate_polarization(Polarization.from_strings(["1/2", "1/3"]))
    assert bad_sum == ["weights sum to 5/6, not 1"]
    degenerate = validate_polarization(Polarization((Fraction(1), Fraction(0))))
    assert any("w_1" in v for v in degenerate)
    assert any("w_2" in v for v in degenerate)
    assert len(degenerate) == 2


def test_structural_validation():
    with pytest.raises(ValueError):
        CombCurve((2,))
    with pytest.raises(ValueError):
        CombCurve((2, -1))
    with pytest.raises(ValueError):
        BundleData(0, (1, 1))
    with pytest.raises(ValueError):
        SubsheafProfile((0, 0), 1)
    with pytest.raises(TypeError):
        Polarization((0.5, 0.5))


def test_arithmetic_genus_is_genus_sum():
    assert CombCurve((2, 3, 4)).arithmetic_genus == 9
    assert CombCurve((0, 0)).arithmetic_genus == 0


@pytest.mark.parametrize(
    "text,value",
    [("1/2", Fraction(1, 2)), ("-3/4", Fraction(-3, 4)), ("7", Fraction(7)), ("2/4", Fraction(1, 2))],
)
def test_parse_rational(text, value):
    assert parse_rational(text) == value


@pytest.mark.parametrize("text", ["0.5", "1/0", "x", "1e3", ""])
def test_parse_rational_rejects(text):
    with pytest.raises(ValueError):
        parse_rational(text)


@given(st.fractions())
def test_rational_round_trip(q):
    assert parse_rational(format_rational(q)) == q


def test_format_rational_integers_are_plain():
    assert format_rational(Fraction(4, 2)) == "2"
    assert format_rational(Fraction(-3, 1)) == "-3"
    assert format_rational(Fraction(-3, 4)) == "-3/4"
