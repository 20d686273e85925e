"""Exact coefficient rings: rationals, prime fields, flat polynomial rings.

Polynomials are dicts from exponent tuples to nonzero coefficients
(Fraction over the rationals, canonical int representatives mod p).  The
term order everywhere is graded lexicographic with earlier variables more
significant; printing lists terms with the leading term first, and
`parse_poly(str(p), ring) == p` round-trips.
"""

import re
from dataclasses import dataclass, field
from fractions import Fraction

from koszulmf._kernel import terms_add, terms_mul, terms_neg, terms_scale

_VAR_RE = re.compile(r"[a-zA-Z][a-zA-Z0-9_]*\Z")


def _is_prime(p):
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    d = 3
    while d * d <= p:
        if p % d == 0:
            return False
        d += 2
    return True


@dataclass(frozen=True)
class RingSpec:
    """A base field, or a polynomial ring in finitely many variables over one.

    kind is one of "rationals", "prime_field", "polynomial".  Nesting depth
    is at most two: a polynomial ring's base must be a field.
    """

    kind: str
    p: int = 0
    vars: tuple = ()
    base: "RingSpec | None" = field(default=None)

    def __post_init__(self):
        if self.kind == "rationals":
            if self.p or self.vars or self.base is not None:
                raise ValueError("rationals take no parameters")
        elif self.kind == "prime_field":
            if not _is_prime(self.p):
                raise ValueError(f"prime_field characteristic {self.p} is not prime")
            if self.vars or self.base is not None:
                raise ValueError("prime_field takes only p")
        elif self.kind == "polynomial":
            if self.base is None or self.base.kind == "polynomial":
                raise ValueError("polynomial ring needs a field as base")
            if not self.vars:
                raise ValueError("polynomial ring needs at least one variable")
            seen = set()
            for v in self.vars:
                if not _VAR_RE.match(v):
                    raise ValueError(f"bad variable name {v!r}")
                if v in seen:
                    raise ValueError(f"duplicate variable {v!r}")
                seen.add(v)
            if self.p:
                raise ValueError("characteristic lives on the base field")
        else:
            raise ValueError(f"unknown ring kind {self.kind!r}")

    # --- conveniences -----------------------------------------------------

    @property
    def char(self):
        if self.kind == "prime_field":
            return self.p
        if self.kind == "polynomial":
            return self.base.char
        return 0

    @property
    def is_field(self):
        return self.kind != "polynomial"

    @property
    def varnames(self):
        return self.vars if self.kind == "polynomial" else ()

    @property
    def base_field(self):
        return self.base if self.kind == "polynomial" else self


def rationals():
    return RingSpec("rationals")


def prime_field(p):
    return RingSpec("prime_field", p=p)


def polynomial_ring(base, varnames):
    return RingSpec("polynomial", vars=tuple(varnames), base=base)


def normalize_scalar(ring, c):
    """Coerce c (int or Fraction) into the base field of `ring`."""
    p = ring.char
    if p:
        if isinstance(c, Fraction):
            if c.denominator % p == 0:
                raise ZeroDivisionError(f"denominator {c.denominator} vanishes mod {p}")
            return c.numerator * pow(c.denominator, p - 2, p) % p
        return int(c) % p
    if isinstance(c, Fraction):
        return c
    return Fraction(c)


class Poly:
    """An exact polynomial attached to a RingSpec.

    Over a bare field the exponent tuples are empty and the poly is just a
    boxed scalar, which keeps the matrix layer uniform.
    """

    __slots__ = ("ring", "terms")

    def __init__(self, ring, terms=None, _normalized=False):
        self.ring = ring
        if terms is None:
            terms = {}
        if _normalized:
            self.terms = terms
            return
        nv = len(ring.varnames)
        p = ring.char
        clean = {}
        for exps, c in terms.items():
            exps = tuple(exps)
            if len(exps) != nv:
                raise ValueError(f"exponent tuple {exps} has wrong length (want {nv})")
            if any(e < 0 for e in exps):
                raise ValueError("negative exponent")
            c = normalize_scalar(ring, c)
            if c:
                clean[exps] = c
        self.terms = clean

    # --- constructors -----------------------------------------------------

    @classmethod
    def zero(cls, ring):
        return cls(ring, {}, _normalized=True)

    @classmethod
    def const(cls, ring, c):
        c = normalize_scalar(ring, c)
        if not c:
            return cls.zero(ring)
        return cls(ring, {(0,) * len(ring.varnames): c}, _normalized=True)

    @classmethod
    def one(cls, ring):
        return cls.const(ring, 1)

    @classmethod
    def var(cls, ring, name):
        names = ring.varnames
        if name not in names:
            raise ValueError(f"{name!r} is not a variable of the ring")
        exps = tuple(1 if v == name else 0 for v in names)
        return cls(ring, {exps: normalize_scalar(ring, 1)}, _normalized=True)

    # --- arithmetic ---------------------------------------------------------

    def _check(self, other):
        if not isinstance(other, Poly):
            raise TypeError(f"expected Poly, got {type(other).__name__}")
        if other.ring != self.ring:
            raise ValueError("mixed rings")

    def __add__(self, other):
        self._check(other)
        return Poly(self.ring, terms_add(self.terms, other.terms, self.ring.char),
                    _normalized=True)

    def __sub__(self, other):
        self._check(other)
        p = self.ring.char
        return Poly(self.ring, terms_add(self.terms, terms_neg(other.terms, p), p),
                    _normalized=True)

    def __neg__(self):
        return Poly(self.ring, terms_neg(self.terms, self.ring.char), _normalized=True)

    def __mul__(self, other):
        self._check(other)
        return Poly(self.ring, terms_mul(self.terms, other.terms, self.ring.char),
                    _normalized=True)

    def scale(self, c):
        return Poly(self.ring, terms_scale(self.terms, normalize_scalar(self.ring, c),
                                           self.ring.char), _normalized=True)

    def __pow__(self, n):
        if not isinstance(n, int) or n < 0:
            raise ValueError("exponent must be a nonnegative integer")
        out = Poly.one(self.ring)
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other):
        return (isinstance(other, Poly) and other.ring == self.ring
                and other.terms == self.terms)

    def __bool__(self):
        return bool(self.terms)

    @property
    def is_zero(self):
        return not self.terms

    def constant_value(self):
        """The scalar value of a constant polynomial (0 if zero)."""
        if not self.terms:
            return normalize_scalar(self.ring, 0)
        nv = len(self.ring.varnames)
        z = (0,) * nv
        if set(self.terms) != {z}:
            raise ValueError("polynomial is not constant")
        return self.terms[z]

    # --- printing -----------------------------------------------------------

    def sorted_terms(self):
        """Terms in graded-lex order, leading term first.  Deterministic."""
        return sorted(self.terms.items(),
                      key=lambda kv: (sum(kv[0]), kv[0]), reverse=True)

    def __str__(self):
        if not self.terms:
            return "0"
        names = self.ring.varnames
        p = self.ring.char
        parts = []
        for exps, c in self.sorted_terms():
            mono = "*".join(
                v if e == 1 else f"{v}^{e}"
                for v, e in zip(names, exps) if e)
            if p:
                coeff, negative = c, False
            else:
                negative = c < 0
                coeff = -c if negative else c
            if mono and coeff == 1:
                body = mono
            elif mono:
                body = f"{coeff}*{mono}"
            else:
                body = str(coeff)
            if not parts:
                parts.append(f"-{body}" if negative else body)
            else:
                parts.append(f"- {body}" if negative else f"+ {body}")
        return " ".join(parts)

    def __repr__(self):
        return f"Poly({self})"


# ---------------------------------------------------------------------------
# parsing
# ---------------------------------------------------------------------------

class ParseError(ValueError):
    """Raised on malformed polynomial text; carries the 0-based position."""

    def __init__(self, message, position):
        super().__init__(f"{message} (at position {position})")
        self.position = position


_TOKEN_RE = re.compile(r"\s*(?:(\d+)|([a-zA-Z][a-zA-Z0-9_]*)|([-+*^()/]))")


def _tokenize(text):
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if not m or m.end() == m.start():
            break
        num, name, op = m.groups()
        tokpos = m.start() + (len(m.group()) - len(m.group().lstrip()))
        if num is not None:
            tokens.append(("num", int(num), tokpos))
        elif name is not None:
            tokens.append(("name", name, tokpos))
        else:
            tokens.append(("op", op, tokpos))
        pos = m.end()
    rest = text[pos:].strip()
    if rest:
        raise ParseError(f"unexpected character {rest[0]!r}", text.index(rest[0], pos))
    tokens.append(("end", None, len(text)))
    return tokens


class _Parser:
    def __init__(self, text, ring):
        self.tokens = _tokenize(text)
        self.i = 0
        self.ring = ring

    def peek(self):
        return self.tokens[self.i]

    def take(self):
        t = self.tokens[self.i]
        self.i += 1
        return t

    def expect_op(self, op):
        kind, val, pos = self.peek()
        if kind != "op" or val != op:
            raise ParseError(f"expected {op!r}", pos)
        return self.take()

    def parse(self):
        p = self.expr()
        kind, val, pos = self.peek()
        if kind != "end":
            raise ParseError(f"unexpected {val!r}", pos)
        return p

    def expr(self):
        p = self.term()
        while True:
            kind, val, _ = self.peek()
            if kind == "op" and val in "+-":
                self.take()
                q = self.term()
                p = p + q if val == "+" else p - q
            else:
                return p

    def term(self):
        p = self.unary()
        while True:
            kind, val, _ = self.peek()
            if kind == "op" and val == "*":
                self.take()
                p = p * self.unary()
            else:
                return p

    def unary(self):
        kind, val, _ = self.peek()
        if kind == "op" and val in "+-":
            self.take()
            q = self.unary()
            return -q if val == "-" else q
        return self.power()

    def power(self):
        base = self.atom()
        kind, val, pos = self.peek()
        if kind == "op" and val == "^":
            self.take()
            kind, val, pos = self.peek()
            if kind != "num":
                raise ParseError("exponent must be a nonnegative integer", pos)
            self.take()
            return base ** val
        return base

    def atom(self):
        kind, val, pos = self.take()
        if kind == "num":
            k2, v2, _ = self.peek()
            if k2 == "op" and v2 == "/":
                self.take()
                k3, v3, p3 = self.peek()
                if k3 != "num":
                    raise ParseError("expected integer denominator", p3)
                self.take()
                if v3 == 0:
                    raise ParseError("zero denominator", p3)
                try:
                    return Poly.const(self.ring, Fraction(val, v3))
                except ZeroDivisionError as e:
                    raise ParseError(str(e), p3) from None
            return Poly.const(self.ring, val)
        if kind == "name":
            if val not in self.ring.varnames:
                raise ParseError(f"unknown variable {val!r}", pos)
            return Poly.var(self.ring, val)
        if kind == "op" and val == "(":
            p = self.expr()
            self.expect_op(")")
            return p
        raise ParseError(f"unexpected {val!r}" if val else "unexpected end of input", pos)


def parse_poly(text, ring):
    """Parse polynomial text in the given ring.  Raises ParseError."""
    return _Parser(text, ring).parse()


def evaluate(poly, point):
    """Evaluate at a point (mapping variable name -> base-field scalar).

    Every ring variable must be assigned.  Returns a Fraction, or an int in
    [0, p) over a prime field.
    """
    ring = poly.ring
    names = ring.varnames
    missing = [v for v in names if v not in point]
    if missing:
        raise ValueError(f"point does not assign variables {missing}")
    p = ring.char
    vals = [normalize_scalar(ring, point[v]) for v in names]
    total = normalize_scalar(ring, 0)
    for exps, c in poly.terms.items():
        term = c
        for v, e in zip(vals, exps):
            if e:
                term = term * v ** e
                if p:
                    term %= p
        total = total + term
        if p:
            total %= p
    return total
