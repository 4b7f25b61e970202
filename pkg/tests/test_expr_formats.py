import json
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings

from gen import pcpolys, rand_admissible, rand_columns, weyl_elements
from surjpoly.backends import ProductAlgebra, ShiftAlgebra, WeylAlgebra
from surjpoly.expr import Bracket, Num, ParseError, Pow, Prod, Sum, Var, parse, parse_element, parse_pc, parse_weyl
from surjpoly.formats import (
    FormatError,
    element_from_json,
    element_to_json,
    poly_from_json,
    poly_to_json,
    trace_from_json,
    witness_from_json,
    witness_to_json,
)
from surjpoly.pcpoly import ONE, TWO, PCPoly, multilinear, word_power, x_power_marked
from surjpoly.solver import replay, solve, verify


class TestGrammar:
    def test_precedence(self):
        assert parse("1 + 2*X1^3") == Sum(((1, Num(Fraction(1))),
                                           (1, Prod((Num(Fraction(2)), Pow(Var("X1", 6), 3))))))
        assert parse("[V,X1]_2") == Bracket(Var("V", 1), Var("X1", 3), 2)
        assert parse("-X1") == Sum(((-1, Var("X1", 1)),))

    def test_examples(self):
        assert parse_pc("[V,X1]*X2") == word_power((1, 2), (1, 0))
        assert parse_pc("[U,[V,X1]_2]") == x_power_marked(1, (2,))
        assert parse_weyl("1/2*v^2*w - w").terms == {(2, 1): Fraction(1, 2), (0, 1): -1}
        assert parse_pc("[V,X1]_0") == PCPoly.x(1, 1)
        assert parse_pc("(X1 + X2)^2", 2) == parse_pc("X1*X1 + X1*X2 + X2*X1 + X2*X2")

    @pytest.mark.parametrize("text,pos", [("X1 +", 4), ("X1 ** X2", 4), ("[X1 X2]", 4),
                                          ("(X1", 3), ("X1 $", 3), ("X1^1/2", 3), ("", 0)])
    def test_syntax_errors_carry_position(self, text, pos):
        with pytest.raises(ParseError) as info:
            parse_pc(text, 2)
        assert info.value.pos == pos

    def test_unknown_identifiers(self):
        with pytest.raises(ParseError):
            parse_pc("X3", 2)
        with pytest.raises(ParseError):
            parse_pc("x1", 2)
        with pytest.raises(ParseError):
            parse_element("w", ShiftAlgebra())
        with pytest.raises(ParseError):
            parse_weyl("X1")

    @settings(max_examples=300, deadline=None)
    @given(pcpolys(3))
    def test_round_trip_pcpoly(self, f):
        assert parse_pc(str(f), 3) == f

    @settings(max_examples=300, deadline=None)
    @given(weyl_elements(4))
    def test_round_trip_weyl(self, x):
        assert parse_weyl(str(x)) == x

    def test_product_targets(self):
        P = ProductAlgebra([WeylAlgebra(), ShiftAlgebra(5)])
        x = parse_element("1 + v", P)
        assert x[0] == parse_weyl("1 + v")
        y = parse_element("w; v^2", P)
        assert y[0] == WeylAlgebra().w
        with pytest.raises(ParseError):
            parse_element("1;2;3", P)


class TestFormats:
    def test_multilinear_shorthand(self):
        f = poly_from_json({"[1,2]": "1", "[2,1]": "-1"})
        assert f == multilinear(2, {(1, 2): 1, (2, 1): -1})

    def test_expression_form(self):
        f = poly_from_json({"expr": "[X1,X2]", "n": 2})
        assert f == multilinear(2, {(1, 2): 1, (2, 1): -1})
        with pytest.raises(FormatError):
            poly_from_json({"expr": "V*X1", "n": 1, "r": 1})

    @pytest.mark.parametrize("seed", range(20))
    def test_admissible_round_trip(self, seed):
        rng = random.Random(seed)
        f = rand_admissible(rng, rng.randint(1, 3), rng.randint(0, 2), rng.choice([ONE, TWO]))
        assert poly_from_json(json.loads(json.dumps(poly_to_json(f)))) == f

    @pytest.mark.parametrize("bad", [[], {"[1,2": "1"}, {"[1,2]": "x"}, {"[1,2]": "1", "[1]": "1"},
                                     {"n": 2, "r": 0, "kind": "one"}, {"[1,1]": "1"}])
    def test_bad_polynomials(self, bad):
        with pytest.raises(ValueError):
            poly_from_json(bad)

    @settings(max_examples=100, deadline=None)
    @given(weyl_elements(4))
    def test_weyl_json(self, x):
        W = WeylAlgebra()
        assert element_from_json(json.loads(json.dumps(element_to_json(x, W))), W) == x

    def test_shift_json(self):
        S = ShiftAlgebra(8)
        y = rand_columns(random.Random(3))
        back = element_from_json(json.loads(json.dumps(element_to_json(y, S))), S)
        assert S.equal(back, y)
        assert S.equal(element_from_json("v^3", S), S.v ** 3)
        with pytest.raises(FormatError):
            element_from_json({"columns": {"0": {"1": "1"}}}, S)

    def test_witness_and_trace_round_trip(self):
        W = WeylAlgebra()
        f = multilinear(3, {(1, 2, 3): 1, (3, 2, 1): -1, (2, 1, 3): Fraction(1, 2)})
        a = parse_weyl("v*w^2 - 3")
        wit, trace = solve(f, a, W)
        wit2 = witness_from_json(json.loads(json.dumps(witness_to_json(wit))), W)
        assert verify(f, wit2, a)
        trace2 = trace_from_json(json.loads(json.dumps(trace.to_json())))
        assert verify(f, replay(trace2, a, W), a)
        with pytest.raises(FormatError):
            witness_from_json({"backend": "shift", "x": []}, W)
