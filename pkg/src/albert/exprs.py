"""The textual expression language shared by scenario files and certificate
headers.

Grammar (informal):

    expr     := primary
    primary  := NAME call? | NAME '[' NAME ']' '/' '(' poly ')' | literal
    call     := '(' [arg {',' arg}] ')'
    arg      := NAME '=' expr | expr
    literal  := scalar | '[' expr {',' expr} ']' | '(' scalar ';' scalar ')'
    scalar   := ['-'] NUMBER ['/' NUMBER]

Field and algebra sugar:

    Q                      rationals
    F7                     prime field
    Q[s]/(s^2-(-1))        quadratic extension (variable must be s)
    Q(t)                   rational function field
    Q[x]/(x^3-3*x-1)       cubic etale algebra (any variable other than s)

Literals evaluate to raw Python data (Fraction, ("pair", a, b), lists); the
constructor registry coerces them into payloads of the appropriate ring.
"""

from __future__ import annotations

import re
from fractions import Fraction

from .errors import ScenarioParseError, UnresolvedReference
from .scalars import PrimeField, QQ, QuadraticExtension, SplitQuadratic
from .upoly import RationalFunctionField

_TOKEN_RE = re.compile(
    r"\s*(?:(?P<num>\d+)|(?P<name>[A-Za-z_][A-Za-z_0-9]*)|(?P<punct>[()\[\],=;/^*+-]))"
)


class Token:
    __slots__ = ("kind", "text", "pos")

    def __init__(self, kind, text, pos):
        self.kind = kind
        self.text = text
        self.pos = pos

    def __repr__(self):
        return f"{self.kind}:{self.text}"


def tokenize(text, line=None):
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            if text[pos:].strip() == "":
                break
            raise ScenarioParseError(
                f"unexpected character {text[pos:].strip()[0]!r}", line, pos + 1
            )
        if m.group("num"):
            tokens.append(Token("num", m.group("num"), m.start("num")))
        elif m.group("name"):
            tokens.append(Token("name", m.group("name"), m.start("name")))
        else:
            tokens.append(Token("punct", m.group("punct"), m.start("punct")))
        pos = m.end()
    return tokens


class Parser:
    def __init__(self, tokens, line=None):
        self.tokens = tokens
        self.i = 0
        self.line = line

    def peek(self, offset=0):
        idx = self.i + offset
        return self.tokens[idx] if idx < len(self.tokens) else None

    def next(self):
        tok = self.peek()
        if tok is None:
            raise ScenarioParseError("unexpected end of expression", self.line)
        self.i += 1
        return tok

    def expect(self, text):
        tok = self.next()
        if tok.text != text:
            raise ScenarioParseError(
                f"expected {text!r}, found {tok.text!r}", self.line, tok.pos + 1
            )
        return tok

    def at_end(self):
        return self.i >= len(self.tokens)

    def error(self, message):
        tok = self.peek()
        col = tok.pos + 1 if tok else None
        raise ScenarioParseError(message, self.line, col)

    # ---- expressions -> AST ------------------------------------------------
    # AST nodes: ("name", str) | ("call", str, [args], {kwargs})
    #          | ("quotient", base_ast, var, poly_coeffs)
    #          | ("ratfield", base_ast, var)
    #          | ("scalar", Fraction) | ("pair", ast, ast) | ("list", [ast])

    def parse_expr(self):
        tok = self.peek()
        if tok is None:
            self.error("empty expression")
        if tok.kind == "name":
            return self.parse_primary()
        if tok.text == "[":
            return self.parse_list()
        if tok.text == "(":
            return self.parse_paren()
        if tok.kind == "num" or tok.text == "-":
            return ("scalar", self.parse_number())
        self.error(f"unexpected token {tok.text!r}")

    def parse_primary(self):
        name = self.next().text
        nxt = self.peek()
        if nxt is not None and nxt.text == "[":
            # quotient sugar: NAME [ var ] / ( poly )
            self.next()
            var = self.next()
            if var.kind != "name":
                self.error("expected a variable name inside brackets")
            self.expect("]")
            self.expect("/")
            self.expect("(")
            coeffs = self.parse_poly_literal(var.text)
            self.expect(")")
            node = ("quotient", ("name", name), var.text, coeffs)
            return self._maybe_ratfield(node)
        if nxt is not None and nxt.text == "(":
            # rational function field sugar: a statically known field atom
            # followed by a single bare variable name, e.g. Q(t), F7(t)
            if (
                _is_field_atom(name)
                and self.peek(1) is not None
                and self.peek(1).kind == "name"
                and self.peek(2) is not None
                and self.peek(2).text == ")"
            ):
                self.next()
                var = self.next().text
                self.expect(")")
                return ("ratfield", ("name", name), var)
            self.next()
            args, kwargs = [], {}
            if self.peek() is not None and self.peek().text != ")":
                while True:
                    if (
                        self.peek().kind == "name"
                        and self.peek(1) is not None
                        and self.peek(1).text == "="
                    ):
                        key = self.next().text
                        self.next()
                        kwargs[key] = self.parse_expr()
                    else:
                        args.append(self.parse_expr())
                    if self.peek() is None:
                        self.error("unterminated argument list")
                    if self.peek().text == ",":
                        self.next()
                        continue
                    break
            self.expect(")")
            return ("call", name, args, kwargs)
        return ("name", name)

    def _maybe_ratfield(self, node):
        """Optional (var) trailer turning a field node into functions of var."""
        if (
            self.peek() is not None
            and self.peek().text == "("
            and self.peek(1) is not None
            and self.peek(1).kind == "name"
            and self.peek(2) is not None
            and self.peek(2).text == ")"
        ):
            self.next()
            var = self.next().text
            self.expect(")")
            return ("ratfield", node, var)
        return node

    def parse_number(self):
        sign = 1
        if self.peek() is not None and self.peek().text == "-":
            self.next()
            sign = -1
        tok = self.next()
        if tok.kind != "num":
            self.error("expected a number")
        value = Fraction(int(tok.text))
        if self.peek() is not None and self.peek().text == "/":
            # lookahead: denominators are bare numbers
            if self.peek(1) is not None and self.peek(1).kind == "num":
                self.next()
                den = int(self.next().text)
                if den == 0:
                    self.error("zero denominator")
                value = value / den
        return sign * value

    def parse_list(self):
        self.expect("[")
        items = []
        if self.peek() is not None and self.peek().text != "]":
            while True:
                items.append(self.parse_expr())
                if self.peek() is None:
                    self.error("unterminated list")
                if self.peek().text == ",":
                    self.next()
                    continue
                break
        self.expect("]")
        return ("list", items)

    def parse_paren(self):
        self.expect("(")
        first = self.parse_expr()
        if self.peek() is not None and self.peek().text == ";":
            self.next()
            second = self.parse_expr()
            self.expect(")")
            return ("pair", first, second)
        self.expect(")")
        return first

    def parse_poly_literal(self, var):
        """Terms like s^2-(-1), x^3-3*x-1; returns ascending coefficients."""
        coeffs = {}
        sign = Fraction(1)
        first = True
        while True:
            tok = self.peek()
            if tok is None or tok.text == ")":
                break
            if tok.text == "+":
                self.next()
                sign = Fraction(1)
                first = False
                continue
            if tok.text == "-":
                self.next()
                sign = Fraction(-1)
                first = False
                continue
            coef = Fraction(1)
            power = 0
            if tok.text == "(":
                self.next()
                coef = self.parse_number()
                self.expect(")")
            elif tok.kind == "num":
                coef = self.parse_number()
            if self.peek() is not None and self.peek().text == "*":
                self.next()
            tok = self.peek()
            if tok is not None and tok.kind == "name":
                if tok.text != var:
                    self.error(f"unexpected variable {tok.text!r} in polynomial")
                self.next()
                power = 1
                if self.peek() is not None and self.peek().text == "^":
                    self.next()
                    ptok = self.next()
                    if ptok.kind != "num":
                        self.error("expected an exponent")
                    power = int(ptok.text)
            coeffs[power] = coeffs.get(power, Fraction(0)) + sign * coef
            sign = Fraction(1)
            first = False
        if not coeffs:
            self.error("empty polynomial")
        deg = max(coeffs)
        return [coeffs.get(i, Fraction(0)) for i in range(deg + 1)]


def parse_expression(text, line=None):
    parser = Parser(tokenize(text, line), line)
    ast = parser.parse_expr()
    if not parser.at_end():
        parser.error("trailing input after expression")
    return ast


def free_names(ast, acc=None):
    """All bare identifiers referenced by an AST (call names excluded)."""
    if acc is None:
        acc = []
    kind = ast[0]
    if kind == "name":
        acc.append(ast[1])
    elif kind == "call":
        for a in ast[2]:
            free_names(a, acc)
        for a in ast[3].values():
            free_names(a, acc)
    elif kind == "quotient":
        free_names(ast[1], acc)
    elif kind == "ratfield":
        free_names(ast[1], acc)
    elif kind == "list":
        for a in ast[1]:
            free_names(a, acc)
    elif kind == "pair":
        free_names(ast[1], acc)
        free_names(ast[2], acc)
    return acc


_PRIME_FIELD_RE = re.compile(r"^F(\d+)$")


def _is_field_atom(name):
    return name == "Q" or _PRIME_FIELD_RE.match(name) is not None


#: names with fixed meanings that never need declaration
BUILTIN_ATOMS = ("Q", "switch", "conjtrans")


def is_builtin_name(name):
    return name in BUILTIN_ATOMS or _PRIME_FIELD_RE.match(name) is not None


def eval_atom(name, line=None):
    if name == "Q":
        return QQ
    m = _PRIME_FIELD_RE.match(name)
    if m:
        return PrimeField(int(m.group(1)))
    if name in ("switch", "conjtrans"):
        return ("involution", name, {})
    raise UnresolvedReference(f"undefined name {name!r}")


def coerce_scalar(ring, value, line=None):
    """Turn a literal AST evaluation result into a payload of ``ring``."""
    if isinstance(value, tuple) and value and value[0] == "pair":
        if not isinstance(ring, (QuadraticExtension, SplitQuadratic)):
            raise ScenarioParseError("pair literal outside a quadratic ring", line)
        return ring.make(
            coerce_scalar(ring.base, value[1], line),
            coerce_scalar(ring.base, value[2], line),
        )
    if isinstance(value, Fraction):
        if ring is QQ or ring == QQ:
            return value
        if isinstance(ring, PrimeField):
            num = ring.from_int(value.numerator)
            if value.denominator == 1:
                return num
            return num / ring.from_int(value.denominator)
        if isinstance(ring, (QuadraticExtension, SplitQuadratic)):
            return ring.from_base(coerce_scalar(ring.base, value, line))
        if isinstance(ring, RationalFunctionField):
            return ring.from_base(coerce_scalar(ring.base, value, line))
        raise ScenarioParseError(f"cannot coerce scalar into {ring!r}", line)
    raise ScenarioParseError(f"not a scalar literal: {value!r}", line)


def coerce_vector(ring, value, line=None):
    if not (isinstance(value, tuple) and value and value[0] == "list"):
        raise ScenarioParseError("expected a coordinate list", line)
    return tuple(coerce_scalar(ring, v, line) for v in value[1])


def literal_eval(ast, line=None):
    """Evaluate literal-only subtrees to raw data; identifiers not allowed."""
    kind = ast[0]
    if kind == "scalar":
        return ast[1]
    if kind == "pair":
        return ("pair", literal_eval(ast[1], line), literal_eval(ast[2], line))
    if kind == "list":
        return ("list", [literal_eval(a, line) for a in ast[1]])
    raise ScenarioParseError("expected a literal", line)
