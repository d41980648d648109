import random

import pytest
from hypothesis import given, settings, strategies as st

from uqgalois import homspace, pol, uq
from uqgalois.casimir import make_quotient
from uqgalois.freealg import PresentationError, random_element
from uqgalois.parser import ParseError, parse_expression, parse_scalar, render
from uqgalois.scalar import Q, S, lambda_constant

CONTEXTS = {
    "Uq(1,-1)": lambda: uq.make_uq(1, -1),
    "Uq(0,0)": lambda: uq.make_uq(0, 0),
    "A(1,1;2)": lambda: make_quotient((1, 1, 2)),
    "A(-1,0;-1)": lambda: make_quotient((-1, 0, -1)),
    "B(1,1;1)": lambda: homspace.make_B(1, 1, 1),
    "B(0,-1;0)": lambda: homspace.make_B(0, -1, 0),
    "Pol(+)": lambda: pol.make_pol("+"),
    "Pol(0)": lambda: pol.make_pol("0"),
    "Pol(sl2c)": lambda: pol.make_pol("sl2c"),
}
COEFFS = [1, Q, S.inverse(), lambda_constant(), (Q + 1) / (S**3 - 2), -S**5 / 7]


def _decorated(pres, rng):
    x = random_element(pres, rng, 4)
    c = rng.choice(COEFFS)
    return x.map_coefficients(lambda v: v * c)


@pytest.mark.parametrize("name", sorted(CONTEXTS))
def test_round_trip_200(name):
    pres = CONTEXTS[name]()
    rng = random.Random(f"roundtrip:{name}")
    for _ in range(200):
        x = _decorated(pres, rng)
        assert parse_expression(pres, render(x)) == x


@settings(max_examples=50, deadline=None)
@given(st.integers(0, 2**32), st.sampled_from(sorted(CONTEXTS)))
def test_round_trip_property(seed, name):
    pres = CONTEXTS[name]()
    x = _decorated(pres, random.Random(seed))
    assert parse_expression(pres, render(x)) == x


def test_context_examples():
    U = uq.make_uq(1, -1)
    K, Ki = U.gen("K"), U.gen("Ki")
    assert parse_expression(U, "E*F - F*E") == (K * K + Ki * Ki).scale(lambda_constant())
    B = homspace.make_B(1, 1, 1)
    assert parse_expression(B, "xs*x") == B.gen("z") - B.gen("z") ** 2 - B.scalar(Q * Q)
    for f in CONTEXTS.values():
        pres = f()
        assert parse_expression(pres, "1") == pres.one()


def test_grammar():
    U = uq.make_uq(1)
    K = U.gen("K")
    assert parse_expression(U, "K^-2") == U.gen("Ki") ** 2
    assert parse_expression(U, "K^-1") == parse_expression(U, "Ki")
    assert parse_expression(U, "(K + 1)^2") == K * K + K.scale(2) + U.one()
    assert parse_expression(U, "s*E") == U.gen("E").scale(S)
    assert parse_scalar("s^2") == Q
    assert parse_scalar("(q - 1/q)^-1") == lambda_constant()
    assert parse_scalar("1/(q - q^-1)") == lambda_constant()


@pytest.mark.parametrize("text", ["E*+", "E**F", "(E", "E F", "E^"])
def test_syntax_errors_carry_position(text):
    with pytest.raises(ParseError) as exc:
        parse_expression(uq.make_uq(1), text)
    assert "position" in str(exc.value)


def test_unknown_generator():
    with pytest.raises((ParseError, PresentationError)):
        parse_expression(uq.make_uq(1), "x")


def test_negative_power_of_noninvertible():
    with pytest.raises(ParseError):
        parse_expression(uq.make_uq(1), "E^-1")
