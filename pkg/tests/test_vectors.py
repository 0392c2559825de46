from decimal import Decimal
from fractions import Fraction

import pytest

from tcnorm.errors import MassNotZero, NotAPlan, UnknownVertex, ValidationError
from tcnorm.vectors import EdgeFlow, MassFunction, TransportPlan, as_mass, format_rational, to_fraction


@pytest.mark.parametrize(
    "value, expected",
    [(3, Fraction(3)), ("3/4", Fraction(3, 4)), (0.1, Fraction(1, 10)), (Decimal("0.25"), Fraction(1, 4))],
)
def test_to_fraction(value, expected):
    assert to_fraction(value) == expected


@pytest.mark.parametrize("value", [True, "abc", "1/0", None, float("nan"), float("inf"), Decimal("NaN")])
def test_to_fraction_rejects(value):
    with pytest.raises(ValidationError):
        to_fraction(value)


def test_format_rational():
    assert format_rational(Fraction(3, 2)) == "3/2"
    assert format_rational(Fraction(-4)) == "-4"


def test_sparse_drops_zeros_and_defaults():
    phi = EdgeFlow({0: 1, 1: 0})
    assert dict(phi) == {0: 1} and phi[5] == 0
    assert phi + EdgeFlow({0: -1}) == {}
    assert (phi * 3)[0] == 3 and (-phi)[0] == -1


def test_mass_function_must_balance():
    f = MassFunction({"a": 2, "b": -1, "c": -1})
    assert f.positive == {"a"} and f.negative == {"b", "c"}
    with pytest.raises(MassNotZero):
        MassFunction({"a": 1})
    with pytest.raises(MassNotZero):
        f + {"a": 1}


def test_plan_boundary():
    plan = TransportPlan({("a", "b"): 2, ("b", "c"): 1})
    assert plan.boundary() == {"a": 2, "b": -1, "c": -1}
    assert plan.total_mass() == 3
    with pytest.raises(NotAPlan):
        TransportPlan({("a", "b"): -1})


def test_as_mass_checks_vertices():
    with pytest.raises(UnknownVertex):
        as_mass({"z": 1, "a": -1}, {"a": 0})
