"""Exact coefficient fields and sparse polynomials in x, y, z.

Coefficients are stored as plain field-native values: ``gmpy2.mpq`` over the
rationals and ``int`` in ``[0, p)`` over GF(p).  A polynomial is a dict from
monomials (3-tuples of exponents for x, y, z) to nonzero coefficients, kept
in canonical form so that equality is dict equality.  Monomials compare
lexicographically with x > y > z, which is plain tuple comparison.
"""

from __future__ import annotations

import re
from fractions import Fraction
from functools import lru_cache

import gmpy2
from gmpy2 import mpq

from .errors import (
    CharacteristicTooSmall,
    FieldMismatch,
    NotDivisible,
    NotRepresentable,
    ParseError,
)

__all__ = [
    "NEG_INF", "VARS", "Field", "RationalField", "PrimeField", "QQ", "GF",
    "parse_field", "MultiPoly", "UniPoly", "parse_poly", "parse_unipoly",
    "format_poly", "arith", "partial", "substitute", "divide_exact",
    "coeff_in", "deg_in",
]

NEG_INF = float("-inf")
VARS = ("x", "y", "z")
_ZERO_MONO = (0, 0, 0)


def var_index(var):
    """Map 'x'/'y'/'z' (or 0/1/2) to a slot index."""
    if isinstance(var, int):
        if 0 <= var < 3:
            return var
    elif var in VARS:
        return VARS.index(var)
    raise ValueError(f"unknown variable {var!r}")


# ---------------------------------------------------------------------------
# fields


class Field:
    characteristic = 0
    name = "?"

    def __call__(self, value):
        return self.convert(value)

    def __repr__(self):
        return self.name

    def __reduce__(self):
        return (parse_field, (self.name,))

    def check_invertible(self, n):
        """Raise CharacteristicTooSmall if the integer n is zero in this field."""
        if n == 0 or (self.characteristic and n % self.characteristic == 0):
            raise CharacteristicTooSmall(f"integer {n} is not invertible in {self.name}")

    def integer(self, n):
        return self.convert(int(n))


class RationalField(Field):
    """The rationals, with elements as lowest-terms ``mpq``."""

    name = "Q"
    zero = mpq(0)
    one = mpq(1)

    def convert(self, value):
        if isinstance(value, str):
            try:
                return mpq(Fraction(value.strip()))
            except (ValueError, ZeroDivisionError) as exc:
                raise ParseError(f"not a rational number: {value!r}") from exc
        if isinstance(value, Fraction):
            return mpq(value.numerator, value.denominator)
        return mpq(value)

    def reduce(self, c):
        return c

    def inv(self, a):
        if not a:
            raise ZeroDivisionError("division by zero in Q")
        return 1 / mpq(a)

    def div(self, a, b):
        if not b:
            raise ZeroDivisionError("division by zero in Q")
        return mpq(a) / b

    def fmt(self, c):
        return str(c)

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("Q")


def _is_prime(n):
    return n >= 2 and bool(gmpy2.is_prime(n))


class PrimeField(Field):
    """GF(p) with elements as canonical ints in [0, p)."""

    def __init__(self, p):
        p = int(p)
        if not _is_prime(p):
            raise ValueError(f"GF(p) needs a prime modulus, got {p}")
        self.p = p
        self.characteristic = p
        self.name = f"GF({p})"
        self.zero = 0
        self.one = 1

    def convert(self, value):
        p = self.p
        if isinstance(value, str):
            try:
                value = Fraction(value.strip())
            except (ValueError, ZeroDivisionError) as exc:
                raise ParseError(f"not a rational number: {value!r}") from exc
        if isinstance(value, (Fraction, type(mpq(0)))):
            num, den = int(value.numerator), int(value.denominator)
            if den % p == 0:
                raise NotRepresentable(f"{value} has a denominator divisible by {p}")
            return num * pow(den, -1, p) % p
        return int(value) % p

    def reduce(self, c):
        return c % self.p

    def inv(self, a):
        if a % self.p == 0:
            raise ZeroDivisionError(f"division by zero in {self.name}")
        return pow(int(a), -1, self.p)

    def div(self, a, b):
        return a * self.inv(b) % self.p

    def fmt(self, c):
        return str(c)

    def elements(self):
        return range(self.p)

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("GF", self.p))


QQ = RationalField()


@lru_cache(maxsize=None)
def GF(p):
    return PrimeField(p)


def parse_field(text):
    """Parse 'Q' or 'GF(p)' into a field object."""
    s = text.strip().replace(" ", "")
    if s in ("Q", "QQ"):
        return QQ
    m = re.fullmatch(r"GF\((\d+)\)", s)
    if m:
        try:
            return GF(int(m.group(1)))
        except ValueError as exc:
            raise ParseError(str(exc)) from exc
    raise ParseError(f"unknown field {text!r}; expected Q or GF(p)")


def _check_same_field(a, b):
    if a != b:
        raise FieldMismatch(f"field mismatch: {a.name} vs {b.name}")


# ---------------------------------------------------------------------------
# multivariate polynomials


_SHIFT = 20  # exponents stay far below 2^20
_MASK = (1 << _SHIFT) - 1


def _pack(m):
    return (m[0] << 2 * _SHIFT) | (m[1] << _SHIFT) | m[2]


def _unpack(k):
    return (k >> 2 * _SHIFT, (k >> _SHIFT) & _MASK, k & _MASK)


class MultiPoly:
    """Immutable sparse polynomial in x, y, z over a field."""

    __slots__ = ("terms", "field", "_hash")

    def __init__(self, terms=None, field=QQ):
        clean = {}
        if terms:
            for mono, c in terms.items():
                mono = tuple(int(e) for e in mono)
                if len(mono) != 3 or min(mono) < 0:
                    raise ValueError(f"bad monomial {mono}")
                c = field.convert(c)
                if c:
                    clean[mono] = c
        self.terms = clean
        self.field = field
        self._hash = None

    @classmethod
    def _raw(cls, terms, field):
        # trusted constructor: terms already canonical
        obj = object.__new__(cls)
        obj.terms = terms
        obj.field = field
        obj._hash = None
        return obj

    @classmethod
    def zero(cls, field=QQ):
        return cls._raw({}, field)

    @classmethod
    def constant(cls, c, field=QQ):
        c = field.convert(c)
        return cls._raw({_ZERO_MONO: c} if c else {}, field)

    @classmethod
    def var(cls, name, field=QQ):
        mono = [0, 0, 0]
        mono[var_index(name)] = 1
        return cls._raw({tuple(mono): field.one}, field)

    @classmethod
    def monomial(cls, mono, c=1, field=QQ):
        return cls({tuple(mono): c}, field)

    # -- basic queries ------------------------------------------------------

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def __eq__(self, other):
        if isinstance(other, MultiPoly):
            return self.field == other.field and self.terms == other.terms
        if isinstance(other, (int, Fraction, type(mpq(0)))):
            return self == MultiPoly.constant(other, self.field)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.field, frozenset(self.terms.items())))
        return self._hash

    def __repr__(self):
        return f"MultiPoly({format_poly(self)!r}, {self.field.name})"

    def __str__(self):
        return format_poly(self)

    def __reduce__(self):
        return (MultiPoly._raw, (self.terms, self.field))

    def is_zero(self):
        return not self.terms

    def is_constant(self):
        return not self.terms or (len(self.terms) == 1 and _ZERO_MONO in self.terms)

    def constant_term(self):
        return self.terms.get(_ZERO_MONO, self.field.zero)

    def constant_value(self):
        """The value of a constant polynomial; ValueError otherwise."""
        if not self.is_constant():
            raise ValueError(f"{self} is not constant")
        return self.constant_term()

    def coefficient(self, mono):
        return self.terms.get(tuple(mono), self.field.zero)

    def degree(self):
        if not self.terms:
            return NEG_INF
        return max(sum(m) for m in self.terms)

    def deg_in(self, var):
        if not self.terms:
            return NEG_INF
        i = var_index(var)
        return max(m[i] for m in self.terms)

    def free_of(self, var):
        i = var_index(var)
        return all(m[i] == 0 for m in self.terms)

    def variables(self):
        return tuple(v for i, v in enumerate(VARS) if any(m[i] for m in self.terms))

    def leading_monomial(self):
        return max(self.terms) if self.terms else None

    def leading_term(self):
        m = self.leading_monomial()
        return (m, self.terms[m]) if m is not None else None

    def sorted_terms(self):
        """Terms in descending lex order."""
        return sorted(self.terms.items(), reverse=True)

    # -- ring operations ----------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, MultiPoly):
            _check_same_field(self.field, other.field)
            return other
        return MultiPoly.constant(other, self.field)

    def __add__(self, other):
        other = self._coerce(other)
        if not other.terms:
            return self
        red = self.field.reduce
        out = dict(self.terms)
        for m, c in other.terms.items():
            s = red(out.get(m, 0) + c)
            if s:
                out[m] = s
            else:
                out.pop(m, None)
        return MultiPoly._raw(out, self.field)

    __radd__ = __add__

    def __neg__(self):
        red = self.field.reduce
        return MultiPoly._raw({m: red(-c) for m, c in self.terms.items()}, self.field)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def scale(self, c):
        c = self.field.convert(c)
        if not c:
            return MultiPoly.zero(self.field)
        red = self.field.reduce
        return MultiPoly._raw({m: red(a * c) for m, a in self.terms.items()}, self.field)

    def __mul__(self, other):
        if not isinstance(other, MultiPoly):
            return self.scale(other)
        _check_same_field(self.field, other.field)
        a, b = self.terms, other.terms
        if not a or not b:
            return MultiPoly.zero(self.field)
        if len(a) < len(b):
            a, b = b, a
        # exponents packed into one int so the inner loop adds ints, not tuples
        pa = [(_pack(m), c) for m, c in a.items()]
        out = {}
        get = out.get
        for m, c in b.items():
            km = _pack(m)
            for kn, d in pa:
                k = km + kn
                out[k] = get(k, 0) + c * d
        red = self.field.reduce
        if self.field.characteristic:
            out = {k: red(c) for k, c in out.items()}
        return MultiPoly._raw({_unpack(k): c for k, c in out.items() if c}, self.field)

    def __rmul__(self, other):
        return self.scale(other)

    def __pow__(self, n):
        n = int(n)
        if n < 0:
            raise ValueError("negative powers are not polynomials")
        result = MultiPoly.constant(1, self.field)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    # -- calculus and structure ---------------------------------------------

    def partial(self, var):
        i = var_index(var)
        red = self.field.reduce
        out = {}
        for m, c in self.terms.items():
            e = m[i]
            if e:
                k = list(m)
                k[i] = e - 1
                d = red(c * e)
                if d:
                    out[tuple(k)] = d
        return MultiPoly._raw(out, self.field)

    def coeff_in(self, var, k):
        """Coefficient of var^k, as a polynomial free of var."""
        i = var_index(var)
        out = {}
        for m, c in self.terms.items():
            if m[i] == k:
                n = list(m)
                n[i] = 0
                out[tuple(n)] = c
        return MultiPoly._raw(out, self.field)

    def substitute(self, bindings):
        return substitute(self, bindings)

    def evaluate(self, point):
        """Value at a point given as a 3-sequence of field elements."""
        total = 0
        for (a, b, c), coef in self.terms.items():
            total += coef * point[0] ** a * point[1] ** b * point[2] ** c
        return self.field.convert(total)

    def map_coefficients(self, fn):
        return MultiPoly({m: fn(c) for m, c in self.terms.items()}, self.field)

    def change_field(self, field):
        return MultiPoly({m: field.convert(c) for m, c in self.terms.items()}, field)


# ---------------------------------------------------------------------------
# module-level operation surface


def arith(op, lhs, rhs=None):
    """Dispatch a ring operation by name: add, sub, mul, neg or scale."""
    if op == "add":
        return lhs + rhs
    if op == "sub":
        return lhs - rhs
    if op == "mul":
        return lhs * rhs
    if op == "neg":
        return -lhs
    if op == "scale":
        if isinstance(rhs, MultiPoly):
            raise TypeError("scale takes a scalar right operand")
        return lhs.scale(rhs)
    raise ValueError(f"unknown operation {op!r}")


def partial(p, var):
    return p.partial(var)


def coeff_in(p, var, k):
    return p.coeff_in(var, k)


def deg_in(p, var):
    return p.deg_in(var)


def substitute(p, bindings):
    """Simultaneously replace variables by polynomials.

    ``bindings`` maps variable names (or slot indices) to MultiPoly values;
    unbound variables stay as they are.
    """
    if not bindings:
        return p
    field = p.field
    slots = {}
    for var, q in bindings.items():
        if not isinstance(q, MultiPoly):
            q = MultiPoly.constant(q, field)
        _check_same_field(field, q.field)
        slots[var_index(var)] = q
    powers = {i: [MultiPoly.constant(1, field)] for i in slots}

    def power(i, e):
        cache = powers[i]
        while len(cache) <= e:
            cache.append(cache[-1] * slots[i])
        return cache[e]

    # group terms by the exponents of the bound variables
    groups = {}
    for m, c in p.terms.items():
        key = tuple(m[i] for i in sorted(slots))
        rest = tuple(0 if i in slots else m[i] for i in range(3))
        groups.setdefault(key, {})[rest] = c
    result = MultiPoly.zero(field)
    order = sorted(slots)
    for key, rest_terms in groups.items():
        factor = MultiPoly._raw(rest_terms, field)
        for i, e in zip(order, key):
            if e:
                factor = factor * power(i, e)
        result = result + factor
    return result


def divide_exact(p, d):
    """Return q with p == q*d, or raise NotDivisible.

    Single-divisor reduction under lex order; the first leading term that the
    divisor's leading monomial does not divide proves a nonzero remainder.
    """
    _check_same_field(p.field, d.field)
    if not d:
        raise ZeroDivisionError("division by the zero polynomial")
    field = p.field
    dm, dc = d.leading_term()
    dinv = field.inv(dc)
    red = field.reduce
    rem = dict(p.terms)
    quot = {}
    dterms = list(d.terms.items())
    while rem:
        m = max(rem)
        if m[0] < dm[0] or m[1] < dm[1] or m[2] < dm[2]:
            raise NotDivisible(f"{format_poly(d)} does not divide {format_poly(p)}")
        qm = (m[0] - dm[0], m[1] - dm[1], m[2] - dm[2])
        qc = red(rem[m] * dinv)
        quot[qm] = qc
        for (a, b, c), coef in dterms:
            k = (a + qm[0], b + qm[1], c + qm[2])
            s = red(rem.get(k, 0) - qc * coef)
            if s:
                rem[k] = s
            else:
                rem.pop(k, None)
    return MultiPoly._raw(quot, field)


def divides(d, p):
    try:
        divide_exact(p, d)
    except NotDivisible:
        return False
    return True


# ---------------------------------------------------------------------------
# printing


def _format_monomial(mono, names):
    parts = []
    for name, e in zip(names, mono):
        if e == 1:
            parts.append(name)
        elif e > 1:
            parts.append(f"{name}^{e}")
    return "*".join(parts)


def _format_terms(items, field, names):
    if not items:
        return "0"
    out = []
    for idx, (mono, c) in enumerate(items):
        neg = field.characteristic == 0 and c < 0
        mag = -c if neg else c
        mstr = _format_monomial(mono, names)
        if not mstr:
            body = field.fmt(mag)
        elif mag == 1:
            body = mstr
        else:
            body = f"{field.fmt(mag)}*{mstr}"
        if idx == 0:
            out.append(f"-{body}" if neg else body)
        else:
            out.append(f" - {body}" if neg else f" + {body}")
    return "".join(out)


def format_poly(p, names=VARS):
    """Canonical text: descending lex order, explicit '*', '^' from exponent 2."""
    return _format_terms(p.sorted_terms(), p.field, names)


# ---------------------------------------------------------------------------
# parsing

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_]\w*)|(.))")


def _tokenize(text):
    tokens = []
    pos = 0
    n = len(text)
    while pos < n:
        m = _TOKEN.match(text, pos)
        if m is None:
            break
        if m.group(1) is not None:
            tokens.append(("num", m.group(1), m.start(1)))
        elif m.group(2) is not None:
            tokens.append(("var", m.group(2), m.start(2)))
        elif m.group(3) is not None:
            ch = m.group(3)
            if ch not in "+-*/^":
                raise ParseError(f"unexpected character {ch!r}", m.start(3), text)
            tokens.append(("op", ch, m.start(3)))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text, field, names):
        self.text = text
        self.field = field
        self.names = {name: i for i, name in enumerate(names)}
        self.nvars = len(names)
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def fail(self, msg, tok=None):
        tok = tok or self.peek()
        raise ParseError(msg, tok[2], self.text)

    def expect_op(self, ch):
        tok = self.peek()
        if tok[0] != "op" or tok[1] != ch:
            self.fail(f"expected {ch!r}")
        return self.take()

    def parse(self):
        terms = {}
        red = self.field.reduce
        sign, mono, coef = self.term()
        self._accumulate(terms, mono, coef if sign > 0 else -coef, red)
        while True:
            tok = self.peek()
            if tok[0] == "op" and tok[1] in "+-":
                self.take()
                sign, mono, coef = self.term()
                if tok[1] == "-":
                    sign = -sign
                self._accumulate(terms, mono, coef if sign > 0 else -coef, red)
            elif tok[0] == "end":
                break
            else:
                self.fail("expected '+', '-' or end of input")
        return {m: c for m, c in terms.items() if c}

    @staticmethod
    def _accumulate(terms, mono, coef, red):
        terms[mono] = red(terms.get(mono, 0) + coef)

    def term(self):
        sign = 1
        tok = self.peek()
        if tok[0] == "op" and tok[1] == "-":
            self.take()
            sign = -1
        mono = [0] * self.nvars
        coef = self.field.one
        coef = coef * self.factor(mono)
        while self.peek()[0] == "op" and self.peek()[1] == "*":
            self.take()
            coef = coef * self.factor(mono)
        return sign, tuple(mono), self.field.reduce(coef)

    def factor(self, mono):
        tok = self.take()
        if tok[0] == "num":
            num = int(tok[1])
            nxt = self.peek()
            if nxt[0] == "op" and nxt[1] == "/":
                self.take()
                dtok = self.take()
                if dtok[0] != "num":
                    self.fail("expected a natural-number denominator", dtok)
                den = int(dtok[1])
                if den == 0:
                    self.fail("zero denominator", dtok)
                try:
                    return self.field.convert(Fraction(num, den))
                except NotRepresentable as exc:
                    raise NotRepresentable(str(exc), tok[2], self.text) from None
            return self.field.convert(num)
        if tok[0] == "var":
            if tok[1] not in self.names:
                allowed = ", ".join(self.names)
                self.fail(f"unknown variable {tok[1]!r} (allowed: {allowed})", tok)
            idx = self.names[tok[1]]
            exp = 1
            nxt = self.peek()
            if nxt[0] == "op" and nxt[1] == "^":
                self.take()
                etok = self.take()
                if etok[0] != "num":
                    self.fail("expected a natural-number exponent", etok)
                exp = int(etok[1])
            mono[idx] += exp
            return self.field.one
        if tok[0] == "end":
            self.fail("unexpected end of input", tok)
        self.fail(f"unexpected {tok[1]!r}", tok)


def _parse_terms(text, field, names):
    return _Parser(text, field, names).parse()


def parse_poly(text, field=QQ, names=VARS):
    """Parse text into a MultiPoly.

    ``names`` gives the spelling of the three variable slots, e.g.
    ``("x", "y", "t")`` reads a shape-B outer polynomial whose third slot is
    written as t.
    """
    if len(names) != 3:
        raise ValueError("names must list three variable spellings")
    terms = _parse_terms(text, field, names)
    return MultiPoly._raw(terms, field)


# ---------------------------------------------------------------------------
# univariate polynomials


class UniPoly:
    """Immutable dense univariate polynomial; ``coeffs[i]`` multiplies symbol^i."""

    __slots__ = ("coeffs", "symbol", "field")

    def __init__(self, coeffs, field=QQ, symbol="t"):
        cs = [field.convert(c) for c in coeffs]
        while cs and not cs[-1]:
            cs.pop()
        self.coeffs = tuple(cs)
        self.field = field
        self.symbol = symbol

    @classmethod
    def monomial(cls, k, c=1, field=QQ, symbol="t"):
        return cls([0] * k + [c], field, symbol)

    def degree(self):
        return len(self.coeffs) - 1 if self.coeffs else NEG_INF

    def leading_coefficient(self):
        return self.coeffs[-1] if self.coeffs else self.field.zero

    def __getitem__(self, k):
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else self.field.zero

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        if not isinstance(other, UniPoly):
            return NotImplemented
        return self.field == other.field and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.field, self.coeffs))

    def __repr__(self):
        return f"UniPoly({str(self)!r}, {self.field.name})"

    def __str__(self):
        items = [((k,), c) for k, c in enumerate(self.coeffs) if c][::-1]
        return _format_terms(items, self.field, (self.symbol,))

    def _like(self, coeffs):
        return UniPoly(coeffs, self.field, self.symbol)

    def __add__(self, other):
        n = max(len(self.coeffs), len(other.coeffs))
        red = self.field.reduce
        return self._like([red(self[k] + other[k]) for k in range(n)])

    def __neg__(self):
        return self._like([-c for c in self.coeffs])

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, UniPoly):
            c = self.field.convert(other)
            return self._like([a * c for a in self.coeffs])
        if not self.coeffs or not other.coeffs:
            return self._like([])
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return self._like(out)

    __rmul__ = __mul__

    def __call__(self, value):
        """Evaluate at a field element or a MultiPoly (Horner)."""
        if isinstance(value, MultiPoly):
            return self.compose(value)
        acc = self.field.zero
        for c in reversed(self.coeffs):
            acc = self.field.reduce(acc * value + c)
        return acc

    def compose(self, q):
        """self(q) as a MultiPoly."""
        acc = MultiPoly.zero(q.field)
        for c in reversed(self.coeffs):
            acc = acc * q + c
        return acc

    def compose_linear(self, a, b):
        """self(a*s + b) as a UniPoly in the same symbol."""
        lin = self._like([b, a])
        acc = self._like([])
        for c in reversed(self.coeffs):
            acc = acc * lin + self._like([c])
        return acc

    def derivative(self):
        red = self.field.reduce
        return self._like([red(k * c) for k, c in enumerate(self.coeffs) if k])

    def to_multi(self, var="x"):
        """Embed as a MultiPoly in the given variable."""
        i = var_index(var)
        terms = {}
        for k, c in enumerate(self.coeffs):
            if c:
                m = [0, 0, 0]
                m[i] = k
                terms[tuple(m)] = c
        return MultiPoly._raw(terms, self.field)

    @classmethod
    def from_multi(cls, p, var, symbol=None):
        """Read a polynomial in one variable back as a UniPoly."""
        i = var_index(var)
        deg = p.deg_in(i)
        if p and any(e for m in p.terms for j, e in enumerate(m) if j != i):
            raise ValueError(f"{p} is not univariate in {VARS[i]}")
        coeffs = [p.field.zero] * (0 if deg == NEG_INF else deg + 1)
        for m, c in p.terms.items():
            coeffs[m[i]] = c
        return cls(coeffs, p.field, symbol or VARS[i])


def parse_unipoly(text, field=QQ, symbol="t"):
    """Parse a univariate polynomial written in ``symbol``."""
    terms = _parse_terms(text, field, (symbol,))
    deg = max((m[0] for m in terms), default=-1)
    coeffs = [0] * (deg + 1)
    for (k,), c in terms.items():
        coeffs[k] = c
    return UniPoly(coeffs, field, symbol)

