import pytest

from app.core.errors import ContextMismatchError, ExprSyntaxError
from app.services.expr import (
    field_from_json,
    field_to_json,
    format_value,
    format_vector,
    parse,
    parse_field,
    parse_poly,
    parse_value,
    parse_vector,
    poly_from_json,
    poly_to_json,
    prefixed_to_json,
    to_text,
    tokenize,
    vector_from_json,
    vector_to_json,
)
from app.services.smash import SmashElement
from app.services.tensormod import tensor_module
from app.services.vfields import Algebra, AlgebraKind, D, VectorField


class TestParsing:
    @pytest.mark.parametrize(
        "text",
        ["3/2*t1^-2*x1*x2*D1", "[t1*D1, t1^-1*D1]", "-x1 + 2*t1", "(t1 + 1)*P2", "t2^3*D0"],
    )
    def test_canonical_text_is_stable(self, text):
        assert to_text(parse(text)) == text

    def test_whitespace_is_ignored(self):
        assert to_text(parse(" 3 / 2 *  t1 ")) == "3/2*t1"

    def test_token_columns(self):
        assert [t.column for t in tokenize("t1 + D2")] == [1, 4, 6, 8]

    @pytest.mark.parametrize(
        "text,column",
        [("t1^^2", 3), ("1/0", 3), ("t + 1", 1), ("t1 % 2", 4), ("[D1, D1", 8), ("x1^2", 3), ("D1 D1", 4)],
    )
    def test_errors_report_the_column(self, text, column):
        with pytest.raises(ExprSyntaxError) as info:
            parse(text)
        assert info.value.column == column
        assert str(info.value).endswith(f"at column {column}")

    def test_syntax_errors_are_value_errors(self):
        with pytest.raises(ValueError):
            parse("")


class TestEvaluation:
    def test_bracket_of_euler_fields(self, w10):
        assert format_value(parse_value("[t1*D1, t1^-1*D1]", w10)) == "-2*D1"

    def test_odd_bracket(self, w11):
        assert format_value(parse_value("[P1, x1*P1]", w11)) == "P1"

    def test_function_text(self, w11):
        assert format_value(parse_poly("x1*x2 - x2*x1", Algebra(AlgebraKind.WMN, 1, 2))) == "2*x1*x2"
        assert format_value(parse_poly("2*t1 + x1*x1", w11)) == "2*t1"

    def test_field_text(self, w11):
        assert parse_field("3/2*t1^-2*x1*D1", w11) == VectorField.basis(w11, D(1), (-2,), (1,), coeff="3/2")
        X = parse_field("3/2*t1^-2*x1*D1 - P1", w11)
        assert format_value(X) == "3/2*t1^-2*x1*D1 - P1"

    def test_kind_errors(self, w10):
        with pytest.raises(ContextMismatchError):
            parse_field("t1", w10)
        with pytest.raises(ContextMismatchError):
            parse_poly("D1", w10)
        with pytest.raises(ContextMismatchError):
            parse_value("t1 + D1", w10)
        with pytest.raises(ContextMismatchError):
            parse_value("D1*t1", w10)
        with pytest.raises(ContextMismatchError):
            parse_value("[t1, D1]", w10)

    def test_zero_function_is_a_zero_field(self, w10):
        assert parse_field("0", w10).is_zero()

    def test_index_out_of_range(self, w10):
        with pytest.raises(ValueError):
            parse_value("x1", w10)


class TestVectors:
    def test_fiber_index(self):
        spec = tensor_module("wmn", 1, 1, "natural", ["1/2"])
        w = parse_vector("t1^2", spec, j=1)
        assert w == spec.vector((2,), (0,), 1)
        assert format_vector(w) == "t1^2*v1"
        with pytest.raises(ValueError):
            parse_vector("t1", spec, j=2)

    def test_semidirect_module_uses_its_coefficient_ring(self):
        spec = tensor_module("wmn_d0", 1, 0, "trivial", ["0"], "1")
        assert parse_vector("t1^-1", spec) == spec.vector((-1,))


class TestJson:
    def test_field_json(self, w11):
        X = parse_field("3/2*t1^-2*x1*D1", w11)
        data = field_to_json(X)
        assert data == {"terms": [{"c": "3/2", "t": [-2], "xi": [1], "gen": "d1"}]}
        assert field_from_json(data, w11) == X

    def test_poly_json(self, ctx11):
        data = {"terms": [{"c": "1/2", "t": [1], "xi": [0]}, {"c": "1/2", "t": [1], "xi": [0]}]}
        f = poly_from_json(data, ctx11)
        assert poly_to_json(f) == {"terms": [{"c": "1", "t": [1], "xi": [0]}]}

    def test_unknown_generator(self, w11):
        with pytest.raises(ValueError):
            field_from_json({"terms": [{"c": "1", "t": [0], "xi": [0], "gen": "q1"}]}, w11)

    def test_vector_json(self):
        spec = tensor_module("wmn", 1, 1, "natural", ["1/2"])
        data = {"terms": [{"c": "2/3", "t": [-1], "xi": [1], "j": 1}]}
        w = vector_from_json(data, spec)
        assert w == spec.vector((-1,), (1,), 1, coeff="2/3")
        assert vector_to_json(w) == data

    def test_prefixed_json(self):
        x = SmashElement.d(1, 1, 1, f=(1,), r=(2,), coeff=3)
        assert prefixed_to_json(x) == [{"gen": "d1", "f": [1], "k": [2], "prefix": [0], "c": "3"}]
