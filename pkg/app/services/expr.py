"""
Expression Service

Text and JSON forms of elements.

Grammar:
    expr    := ['-'] term (('+' | '-') term)*
    term    := factor ('*' factor)*
    factor  := NUM ['/' NUM] | tK ['^' ['-'] NUM] | xA | DK | PA
             | '[' expr ',' expr ']' | '(' expr ')'

Products associate to the left; functions multiply fields from the left only.
Example: 3/2*t1^-2*x1*x2*D1
"""

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Tuple, Union

from app.core.errors import ContextMismatchError, ExprSyntaxError
from app.services.superalg import Context, Monomial, SuperPoly, format_scalar, to_scalar
from app.services.vfields import Algebra, Generator, VectorField, bracket

Value = Union[SuperPoly, VectorField]


# =============================================================================
# TOKENS
# =============================================================================

@dataclass(frozen=True)
class Token:
    kind: str       # NUM, SYM, or the punctuation character itself
    text: str
    column: int


PUNCTUATION = set("+-*/^[],()")
SYMBOL_HEADS = set("txDP")


def tokenize(text: str) -> List[Token]:
    tokens: List[Token] = []
    k = 0
    while k < len(text):
        ch = text[k]
        column = k + 1
        if ch.isspace():
            k += 1
        elif ch.isdigit():
            start = k
            while k < len(text) and text[k].isdigit():
                k += 1
            tokens.append(Token("NUM", text[start:k], column))
        elif ch in SYMBOL_HEADS:
            start = k
            k += 1
            if k >= len(text) or not text[k].isdigit():
                raise ExprSyntaxError(f"Symbol {ch!r} needs an index", column)
            while k < len(text) and text[k].isdigit():
                k += 1
            tokens.append(Token("SYM", text[start:k], column))
        elif ch in PUNCTUATION:
            tokens.append(Token(ch, ch, column))
            k += 1
        else:
            raise ExprSyntaxError(f"Unexpected character {ch!r}", column)
    tokens.append(Token("END", "", len(text) + 1))
    return tokens


# =============================================================================
# SYNTAX TREE
# =============================================================================

@dataclass(frozen=True)
class Num:
    value: Fraction


@dataclass(frozen=True)
class TSym:
    index: int
    power: int = 1


@dataclass(frozen=True)
class XSym:
    index: int


@dataclass(frozen=True)
class Gen:
    tag: str        # 'd' or 'p'
    index: int


@dataclass(frozen=True)
class Product:
    factors: Tuple["Expr", ...]


@dataclass(frozen=True)
class Sum:
    terms: Tuple[Tuple[int, "Expr"], ...]   # (sign, term)


@dataclass(frozen=True)
class Bracket:
    left: "Expr"
    right: "Expr"


Expr = Union[Num, TSym, XSym, Gen, Product, Sum, Bracket]


class _Parser:
    def __init__(self, text: str):
        self.tokens = tokenize(text)
        self.pos = 0

    @property
    def current(self) -> Token:
        return self.tokens[self.pos]

    def take(self, kind: Optional[str] = None) -> Token:
        token = self.current
        if kind is not None and token.kind != kind:
            found = token.text or "end of input"
            raise ExprSyntaxError(f"Expected {kind!r}, found {found!r}", token.column)
        self.pos += 1
        return token

    def expr(self) -> Expr:
        terms = []
        sign = 1
        if self.current.kind == "-":
            self.take()
            sign = -1
        terms.append((sign, self.term()))
        while self.current.kind in ("+", "-"):
            sign = 1 if self.take().kind == "+" else -1
            terms.append((sign, self.term()))
        if len(terms) == 1 and terms[0][0] == 1:
            return terms[0][1]
        return Sum(tuple(terms))

    def term(self) -> Expr:
        factors = [self.factor()]
        while self.current.kind == "*":
            self.take()
            factors.append(self.factor())
        return factors[0] if len(factors) == 1 else Product(tuple(factors))

    def factor(self) -> Expr:
        token = self.current
        if token.kind == "NUM":
            self.take()
            value = Fraction(int(token.text))
            if self.current.kind == "/":
                self.take()
                denominator = self.take("NUM")
                if int(denominator.text) == 0:
                    raise ExprSyntaxError("Zero denominator", denominator.column)
                value /= int(denominator.text)
            return Num(value)
        if token.kind == "SYM":
            self.take()
            head, index = token.text[0], int(token.text[1:])
            if head == "t":
                power = 1
                if self.current.kind == "^":
                    caret = self.take()
                    negative = False
                    if self.current.kind == "-":
                        self.take()
                        negative = True
                    if self.current.kind != "NUM":
                        raise ExprSyntaxError("Expected an integer exponent after '^'", caret.column)
                    power = int(self.take().text) * (-1 if negative else 1)
                return TSym(index, power)
            if self.current.kind == "^":
                raise ExprSyntaxError("Powers are allowed on t-symbols only", self.current.column)
            if head == "x":
                return XSym(index)
            return Gen("d" if head == "D" else "p", index)
        if token.kind == "[":
            self.take()
            left = self.expr()
            self.take(",")
            right = self.expr()
            self.take("]")
            return Bracket(left, right)
        if token.kind == "(":
            self.take()
            inner = self.expr()
            self.take(")")
            return inner
        found = token.text or "end of input"
        raise ExprSyntaxError(f"Unexpected {found!r}", token.column)


def parse(text: str) -> Expr:
    """
    Parse element text.

    Raises:
        ExprSyntaxError: With the 1-based column of the offending token
    """
    parser = _Parser(text)
    tree = parser.expr()
    if parser.current.kind != "END":
        raise ExprSyntaxError(f"Unexpected {parser.current.text!r}", parser.current.column)
    return tree


def to_text(tree: Expr) -> str:
    """Canonical text of a syntax tree."""
    if isinstance(tree, Num):
        return format_scalar(tree.value)
    if isinstance(tree, TSym):
        return f"t{tree.index}" if tree.power == 1 else f"t{tree.index}^{tree.power}"
    if isinstance(tree, XSym):
        return f"x{tree.index}"
    if isinstance(tree, Gen):
        return f"{'D' if tree.tag == 'd' else 'P'}{tree.index}"
    if isinstance(tree, Product):
        return "*".join(_wrapped(f) for f in tree.factors)
    if isinstance(tree, Bracket):
        return f"[{to_text(tree.left)}, {to_text(tree.right)}]"
    out = ""
    for k, (sign, term) in enumerate(tree.terms):
        if k == 0:
            out += "-" if sign < 0 else ""
        else:
            out += " - " if sign < 0 else " + "
        out += _wrapped(term)
    return out


def _wrapped(tree: Expr) -> str:
    return f"({to_text(tree)})" if isinstance(tree, Sum) else to_text(tree)


# =============================================================================
# EVALUATION
# =============================================================================

def _combine(a: Value, b: Value, sign: int) -> Value:
    if type(a) is not type(b):
        raise ContextMismatchError("Cannot add a function and a vector field")
    return a + b if sign > 0 else a - b


def _multiply(a: Value, b: Value) -> Value:
    if isinstance(a, SuperPoly) and isinstance(b, SuperPoly):
        return a * b
    if isinstance(a, SuperPoly) and isinstance(b, VectorField):
        return b.left_multiply(a)
    raise ContextMismatchError("Vector fields can only be multiplied by functions on the left")


def evaluate(tree: Expr, algebra: Algebra) -> Value:
    """Evaluate to a SuperPoly of algebra.context or a VectorField of algebra."""
    ctx = algebra.context
    if isinstance(tree, Num):
        return SuperPoly.one(ctx) * tree.value
    if isinstance(tree, TSym):
        return SuperPoly.t(ctx, tree.index, tree.power)
    if isinstance(tree, XSym):
        return SuperPoly.xi(ctx, tree.index)
    if isinstance(tree, Gen):
        return VectorField.basis(algebra, Generator(tree.tag, tree.index))
    if isinstance(tree, Product):
        value = evaluate(tree.factors[0], algebra)
        for factor in tree.factors[1:]:
            value = _multiply(value, evaluate(factor, algebra))
        return value
    if isinstance(tree, Bracket):
        left, right = evaluate(tree.left, algebra), evaluate(tree.right, algebra)
        if not (isinstance(left, VectorField) and isinstance(right, VectorField)):
            raise ContextMismatchError("Brackets take two vector fields")
        return bracket(left, right)
    value = None
    for sign, term in tree.terms:
        part = evaluate(term, algebra)
        if value is None:
            value = part if sign > 0 else part * -1
        else:
            value = _combine(value, part, sign)
    return value


def parse_value(text: str, algebra: Algebra) -> Value:
    return evaluate(parse(text), algebra)


def parse_poly(text: str, algebra: Algebra) -> SuperPoly:
    value = parse_value(text, algebra)
    if not isinstance(value, SuperPoly):
        raise ContextMismatchError(f"{text!r} is a vector field, expected a function")
    return value


def parse_field(text: str, algebra: Algebra) -> VectorField:
    value = parse_value(text, algebra)
    if isinstance(value, SuperPoly):
        if value.is_zero():
            return VectorField.zero(algebra)
        raise ContextMismatchError(f"{text!r} is a function, expected a vector field")
    return value


def parse_vector(text: str, spec, j: int = 0):
    """Parse a function f and return f ⊗ v_j in the tensor module."""
    from app.services.tensormod import TensorKey
    from app.services.vfields import AlgebraKind

    algebra = spec.algebra
    if spec.kind is AlgebraKind.WMN_D0:
        algebra = Algebra(AlgebraKind.WMN, spec.m, spec.n)
    if not 0 <= j < spec.rep.dim:
        raise ValueError(f"Fiber index {j} out of range 0..{spec.rep.dim - 1}")
    f = parse_poly(text, algebra)
    return spec.zero().like({TensorKey(mono.r, mono.p, j): c for mono, c in f.items()})


# =============================================================================
# PRINTING
# =============================================================================

def format_monomial(context: Context, mono: Monomial) -> str:
    factors = []
    for label, e in zip(context.even_labels, mono.r):
        if e:
            factors.append(f"t{label}" if e == 1 else f"t{label}^{e}")
    factors += [f"x{a}" for a, bit in enumerate(mono.p, start=1) if bit]
    return "*".join(factors)


def _join(parts: List[Tuple[Fraction, str]]) -> str:
    """Signed sum of coefficient * body pieces; an empty body means a constant."""
    if not parts:
        return "0"
    out = ""
    for k, (coeff, body) in enumerate(parts):
        magnitude = abs(coeff)
        if not body:
            piece = format_scalar(magnitude)
        elif magnitude == 1:
            piece = body
        else:
            piece = f"{format_scalar(magnitude)}*{body}"
        if k == 0:
            out = ("-" if coeff < 0 else "") + piece
        else:
            out += (" - " if coeff < 0 else " + ") + piece
    return out


def format_poly(f: SuperPoly) -> str:
    items = sorted(f.terms.items())
    return _join([(c, format_monomial(f.context, mono)) for mono, c in items])


def format_field(X: VectorField) -> str:
    ctx = X.algebra.context
    items = sorted(X.terms.items(), key=lambda kv: (kv[0][1], kv[0][0]))
    parts = []
    for (mono, gen), c in items:
        body = format_monomial(ctx, mono)
        parts.append((c, f"{body}*{gen}" if body else str(gen)))
    return _join(parts)


def format_vector(w) -> str:
    parts = []
    for key, c in sorted(w.terms.items()):
        body = format_monomial(w.context, Monomial(key.r, key.p))
        parts.append((c, f"{body}*v{key.j}" if body else f"v{key.j}"))
    return _join(parts)


def _bits_text(bits) -> str:
    return "*".join(f"x{a}" for a, bit in enumerate(bits, start=1) if bit) or "1"


def format_prefixed(x) -> str:
    parts = []
    for key, c in sorted(x.terms.items(), key=lambda kv: str(kv[0])):
        head = f"{key.tag.value}{key.index}" if key.tag.value != "Z" else "Z0"
        body = f"{head}({_bits_text(key.f)}; {','.join(map(str, key.deg))})"
        if any(key.prefix):
            body = f"{_bits_text(key.prefix)}*{body}"
        parts.append((c, body))
    return _join(parts)


def _letter_text(context: Context, key) -> str:
    mono, gen = key
    body = format_monomial(context, mono)
    return f"({body}*{gen})" if body else f"({gen})"


def format_word(word, context: Optional[Context] = None) -> str:
    if not word:
        return "1"
    if context is None:
        labels = len(word[0][0].r)
        context = Context(labels, len(word[0][0].p), 0)
    return "".join(_letter_text(context, key) for key in word)


def format_cover(c) -> str:
    spec = c.spec
    parts = []
    for ((mono, gen), ukey), coeff in sorted(c.terms.items(), key=lambda kv: str(kv[0])):
        tau = format_monomial(spec.algebra.context, mono)
        u = format_monomial(spec.context, Monomial(ukey.r, ukey.p))
        parts.append((coeff, f"psi({tau + '*' if tau else ''}{gen}, {u + '*' if u else ''}v{ukey.j})"))
    return _join(parts)


# =============================================================================
# JSON FORMS
# =============================================================================

def poly_to_json(f: SuperPoly) -> Dict:
    return {"terms": [
        {"c": format_scalar(c), "t": list(mono.r), "xi": list(mono.p)} for mono, c in sorted(f.terms.items())
    ]}


def poly_from_json(data: Dict, context: Context) -> SuperPoly:
    terms = {}
    for term in data.get("terms", []):
        mono = Monomial(tuple(term["t"]), tuple(term["xi"]))
        terms[mono] = terms.get(mono, 0) + to_scalar(term["c"])
    return SuperPoly(context, terms)


def field_to_json(X: VectorField) -> Dict:
    return {"terms": [
        {"c": format_scalar(c), "t": list(mono.r), "xi": list(mono.p), "gen": f"{gen.tag}{gen.index}"}
        for (mono, gen), c in sorted(X.terms.items(), key=lambda kv: (kv[0][1], kv[0][0]))
    ]}


def field_from_json(data: Dict, algebra: Algebra) -> VectorField:
    terms = {}
    for term in data.get("terms", []):
        gen_text = term["gen"].lower()
        if gen_text[:1] not in ("d", "p") or not gen_text[1:].isdigit():
            raise ValueError(f"Unknown generator {term['gen']!r}")
        key = (Monomial(tuple(term["t"]), tuple(term["xi"])), Generator(gen_text[0], int(gen_text[1:])))
        terms[key] = terms.get(key, 0) + to_scalar(term["c"])
    return VectorField(algebra, terms)


def vector_to_json(w) -> Dict:
    return {"terms": [
        {"c": format_scalar(c), "t": list(key.r), "xi": list(key.p), "j": key.j} for key, c in sorted(w.terms.items())
    ]}


def vector_from_json(data: Dict, spec):
    from app.services.tensormod import TensorKey

    terms = {}
    for term in data.get("terms", []):
        key = TensorKey(tuple(term["t"]), tuple(term["xi"]), int(term.get("j", 0)))
        terms[key] = terms.get(key, 0) + to_scalar(term["c"])
    return spec.zero().like(terms)


def prefixed_to_json(x) -> List[Dict]:
    return [
        {
            "gen": f"{key.tag.value.lower()}{key.index}",
            "f": list(key.f),
            "k": list(key.deg),
            "prefix": list(key.prefix),
            "c": format_scalar(c),
        }
        for key, c in sorted(x.terms.items(), key=lambda kv: str(kv[0]))
    ]


def to_json(value: Value) -> Dict:
    if isinstance(value, SuperPoly):
        return poly_to_json(value)
    return field_to_json(value)


def format_value(value: Value) -> str:
    if isinstance(value, SuperPoly):
        return format_poly(value)
    return format_field(value)
