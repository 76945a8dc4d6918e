"""Sparse multivariate polynomials with exact rational coefficients.

A polynomial is a dict from exponent tuples to nonzero ``Fraction``
coefficients, tied to a :class:`VariableContext` that fixes the variable
names and their order.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .errors import ParseError

Monomial = tuple[int, ...]

_VAR_RE = re.compile(r"[A-Za-z][A-Za-z0-9_]*\Z")


class VariableContext:
    """An ordered tuple of variable names."""

    __slots__ = ("names", "_index")

    def __init__(self, names: Iterable[str]):
        names = tuple(names)
        for name in names:
            if not _VAR_RE.match(name):
                raise ValueError(f"invalid variable name {name!r}")
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate variable names in {names}")
        self.names = names
        self._index = {name: i for i, name in enumerate(names)}

    @property
    def nvars(self) -> int:
        return len(self.names)

    def index(self, name: str) -> int:
        return self._index[name]

    def __contains__(self, name: str) -> bool:
        return name in self._index

    def __eq__(self, other: object) -> bool:
        return isinstance(other, VariableContext) and self.names == other.names

    def __hash__(self) -> int:
        return hash(self.names)

    def __repr__(self) -> str:
        return f"VariableContext({', '.join(self.names)})"

    def zero(self) -> Polynomial:
        return Polynomial(self, {})

    def one(self) -> Polynomial:
        return self.const(1)

    def const(self, c) -> Polynomial:
        c = Fraction(c)
        return Polynomial(self, {(0,) * self.nvars: c} if c else {})

    def var(self, name: str) -> Polynomial:
        exps = [0] * self.nvars
        exps[self._index[name]] = 1
        return Polynomial(self, {tuple(exps): Fraction(1)})

    def gens(self) -> list[Polynomial]:
        return [self.var(name) for name in self.names]

    def parse(self, text: str) -> Polynomial:
        return parse_poly(text, self)


def _mono_mul(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x + y for x, y in zip(a, b))


class Polynomial:
    __slots__ = ("ctx", "terms")

    def __init__(self, ctx: VariableContext, terms: Mapping[Monomial, Fraction]):
        self.ctx = ctx
        self.terms = terms if isinstance(terms, dict) else dict(terms)

    # construction helpers
    def _coerce(self, other) -> Polynomial:
        if isinstance(other, Polynomial):
            if other.ctx != self.ctx:
                raise ValueError("polynomials live in different variable contexts")
            return other
        if isinstance(other, (int, Fraction)):
            return self.ctx.const(other)
        return NotImplemented

    # arithmetic
    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self.terms)
        for m, c in other.terms.items():
            v = out.get(m, 0) + c
            if v:
                out[m] = v
            else:
                out.pop(m, None)
        return Polynomial(self.ctx, out)

    __radd__ = __add__

    def __neg__(self) -> Polynomial:
        return Polynomial(self.ctx, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            c = Fraction(other)
            if not c:
                return self.ctx.zero()
            return Polynomial(self.ctx, {m: v * c for m, v in self.terms.items()})
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out: dict[Monomial, Fraction] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = _mono_mul(m1, m2)
                v = out.get(m, 0) + c1 * c2
                if v:
                    out[m] = v
                else:
                    out.pop(m, None)
        return Polynomial(self.ctx, out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> Polynomial:
        if not isinstance(k, int) or k < 0:
            raise ValueError("exponent must be a natural number")
        result = self.ctx.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = self.ctx.const(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.ctx == other.ctx and self.terms == other.terms

    def __hash__(self) -> int:
        return hash((self.ctx, frozenset(self.terms.items())))

    def __bool__(self) -> bool:
        return bool(self.terms)

    # queries
    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(not any(m) for m in self.terms)

    def constant_term(self) -> Fraction:
        return self.terms.get((0,) * self.ctx.nvars, Fraction(0))

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((sum(m) for m in self.terms), default=-1)

    def order(self) -> int:
        """Lowest total degree of a term; -1 for the zero polynomial."""
        return min((sum(m) for m in self.terms), default=-1)

    def variables(self) -> list[str]:
        used = set()
        for m in self.terms:
            used.update(i for i, e in enumerate(m) if e)
        return [self.ctx.names[i] for i in sorted(used)]

    def is_homogeneous(self, weights: Sequence[int] | None = None) -> bool:
        return self.weighted_degree(weights) is not None

    def weighted_degree(self, weights: Sequence[int] | None = None) -> int | None:
        """Common weighted degree of all terms, or None if inhomogeneous."""
        w = weights or (1,) * self.ctx.nvars
        degs = {sum(a * b for a, b in zip(m, w)) for m in self.terms}
        if len(degs) > 1:
            return None
        return degs.pop() if degs else 0

    def homogeneous_part(self, d: int) -> Polynomial:
        return Polynomial(self.ctx, {m: c for m, c in self.terms.items() if sum(m) == d})

    def truncate(self, d: int) -> Polynomial:
        """Drop all terms of total degree >= d."""
        return Polynomial(self.ctx, {m: c for m, c in self.terms.items() if sum(m) < d})

    def map_coeffs(self, fn) -> Polynomial:
        out = {}
        for m, c in self.terms.items():
            v = fn(c)
            if v:
                out[m] = v
        return Polynomial(self.ctx, out)

    def diff(self, var: str | int) -> Polynomial:
        i = var if isinstance(var, int) else self.ctx.index(var)
        out = {}
        for m, c in self.terms.items():
            e = m[i]
            if e:
                mm = list(m)
                mm[i] = e - 1
                out[tuple(mm)] = c * e
        return Polynomial(self.ctx, out)

    def substitute(self, mapping: Mapping[str, Polynomial | int | Fraction],
                   target: VariableContext | None = None) -> Polynomial:
        """Replace variables by polynomials in ``target`` (default: same context).

        Variables absent from ``mapping`` are kept; they must then exist in
        the target context.
        """
        target = target or self.ctx
        images = []
        for name in self.ctx.names:
            if name in mapping:
                img = mapping[name]
                if not isinstance(img, Polynomial):
                    img = target.const(img)
                elif img.ctx != target:
                    raise ValueError(f"image of {name} lives in a different context")
            elif name in target:
                img = target.var(name)
            else:
                img = None
            images.append(img)
        return compose(self, images, target)

    def to_str(self, order: MonomialOrder | None = None) -> str:
        if not self.terms:
            return "0"
        order = order or MonomialOrder("global", self.ctx.nvars)
        monos = sorted(self.terms, key=order.key, reverse=True)
        parts = []
        for m in monos:
            c = self.terms[m]
            sign = "-" if c < 0 else "+"
            a = abs(c)
            factors = []
            for name, e in zip(self.ctx.names, m):
                if e == 1:
                    factors.append(name)
                elif e > 1:
                    factors.append(f"{name}^{e}")
            if not factors:
                body = str(a)
            elif a == 1:
                body = "*".join(factors)
            else:
                body = f"{a}*" + "*".join(factors)
            parts.append((sign, body))
        first_sign, first = parts[0]
        if first_sign == "-" and "^" in first.split("*")[0]:
            first = "1*" + first  # "-x^2" would read as (-x)^2
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out

    def __str__(self) -> str:
        return self.to_str()

    def __repr__(self) -> str:
        return f"Polynomial({self.to_str()!r})"


def compose(p: Polynomial, images: Sequence[Polynomial | None],
            target: VariableContext) -> Polynomial:
    """Substitute ``images[i]`` for variable ``i`` of ``p``."""
    powers: list[dict[int, Polynomial]] = [{0: target.one()} for _ in images]

    def power(i: int, e: int) -> Polynomial:
        cache = powers[i]
        if e not in cache:
            best = max(k for k in cache if k < e)
            val = cache[best]
            for k in range(best + 1, e + 1):
                val = val * images[i]
                cache[k] = val
        return cache[e]

    out = target.zero()
    acc: dict[Monomial, Fraction] = {}
    for m, c in p.terms.items():
        term = target.const(c)
        for i, e in enumerate(m):
            if e:
                if images[i] is None:
                    raise ValueError(f"no image for variable {p.ctx.names[i]}")
                term = term * power(i, e)
        for mm, cc in term.terms.items():
            v = acc.get(mm, 0) + cc
            if v:
                acc[mm] = v
            else:
                acc.pop(mm, None)
    out.terms = acc
    return out


def diff(p: Polynomial, var: str | int) -> Polynomial:
    return p.diff(var)


def substitute(p: Polynomial, mapping: Mapping[str, Polynomial | int | Fraction],
               target: VariableContext | None = None) -> Polynomial:
    return p.substitute(mapping, target)


# ---------------------------------------------------------------------------
# monomial orders


@dataclass(frozen=True)
class MonomialOrder:
    """Degree reverse lexicographic order, global or local.

    ``kind`` is ``"global"`` (degrevlex: higher degree is larger) or
    ``"local"`` (negdegrevlex: lower degree is larger, so 1 > x > x^2).
    ``perm`` lists variable indices from largest to smallest; the default
    is the context order, so the first variable is the largest.
    """

    kind: str
    nvars: int
    perm: tuple[int, ...] | None = None

    def __post_init__(self):
        if self.kind not in ("global", "local"):
            raise ValueError(f"unknown order kind {self.kind!r}")
        perm = self.perm if self.perm is not None else tuple(range(self.nvars))
        if sorted(perm) != list(range(self.nvars)):
            raise ValueError("perm must be a permutation of the variable indices")
        object.__setattr__(self, "perm", tuple(perm))

    @property
    def is_local(self) -> bool:
        return self.kind == "local"

    def key(self, m: Monomial) -> tuple[int, ...]:
        """Sort key: a larger key means a larger monomial."""
        deg = sum(m)
        head = -deg if self.kind == "local" else deg
        return (head,) + tuple(-m[i] for i in reversed(self.perm))

    def compare(self, a: Monomial, b: Monomial) -> int:
        ka, kb = self.key(a), self.key(b)
        return (ka > kb) - (ka < kb)


GLOBAL = "global"
LOCAL = "local"


def compare(a: Polynomial | Monomial, b: Polynomial | Monomial, order: MonomialOrder) -> str:
    """Compare two monomials (or single-term polynomials); returns LT, EQ or GT."""
    ma, mb = _as_monomial(a), _as_monomial(b)
    c = order.compare(ma, mb)
    return {1: "GT", 0: "EQ", -1: "LT"}[c]


def _as_monomial(x) -> Monomial:
    if isinstance(x, Polynomial):
        if len(x.terms) != 1:
            raise ValueError("expected a single monomial")
        return next(iter(x.terms))
    return tuple(x)


def leading_monomial(p: Polynomial, order: MonomialOrder) -> Monomial:
    if not p.terms:
        raise ValueError("zero polynomial has no leading monomial")
    return max(p.terms, key=order.key)


# ---------------------------------------------------------------------------
# parser
#
#   expr   := term (('+'|'-') term)*
#   term   := factor ('*' factor)*
#   factor := base ('^' NAT)?
#   base   := NAT | VAR | '(' expr ')' | '-' base


class _Parser:
    def __init__(self, text: str, ctx: VariableContext):
        self.src = text.encode("utf-8")
        self.text = text
        self.ctx = ctx
        self.pos = 0

    def error(self, msg: str, pos: int | None = None):
        raise ParseError(msg, self.pos if pos is None else pos)

    def skip(self):
        src = self.src
        while self.pos < len(src) and src[self.pos] in b" \t\r\n":
            self.pos += 1

    def peek(self) -> str:
        self.skip()
        if self.pos >= len(self.src):
            return ""
        return chr(self.src[self.pos])

    def parse(self) -> Polynomial:
        if not self.src.strip():
            self.error("empty expression", 0)
        p = self.expr()
        if self.peek():
            self.error(f"unexpected character {self.peek()!r}")
        return p

    def expr(self) -> Polynomial:
        p = self.term()
        while self.peek() in ("+", "-") and self.peek():
            op = self.peek()
            self.pos += 1
            q = self.term()
            p = p + q if op == "+" else p - q
        return p

    def term(self) -> Polynomial:
        p = self.factor()
        while self.peek() == "*":
            self.pos += 1
            p = p * self.factor()
        return p

    def factor(self) -> Polynomial:
        p = self.base()
        if self.peek() == "^":
            self.pos += 1
            self.skip()
            start = self.pos
            k = self.nat()
            if k is None:
                self.error("expected a natural number after '^'", start)
            p = p ** k
        return p

    def nat(self) -> int | None:
        self.skip()
        start = self.pos
        while self.pos < len(self.src) and 48 <= self.src[self.pos] <= 57:
            self.pos += 1
        if self.pos == start:
            return None
        return int(self.src[start:self.pos])

    def base(self) -> Polynomial:
        c = self.peek()
        if not c:
            self.error("unexpected end of input")
        if c.isdigit():
            return self.ctx.const(self.nat())
        if c == "(":
            self.pos += 1
            p = self.expr()
            if self.peek() != ")":
                self.error("expected ')'")
            self.pos += 1
            return p
        if c == "-":
            self.pos += 1
            return -self.base()
        if c.isascii() and c.isalpha():
            start = self.pos
            while self.pos < len(self.src):
                ch = chr(self.src[self.pos])
                if ch.isascii() and (ch.isalnum() or ch == "_"):
                    self.pos += 1
                else:
                    break
            name = self.src[start:self.pos].decode()
            if name not in self.ctx:
                self.error(f"unknown variable {name!r}", start)
            return self.ctx.var(name)
        self.error(f"unexpected character {c!r}")


def parse_poly(text: str, ctx: VariableContext | Sequence[str]) -> Polynomial:
    """Parse ``text`` into a polynomial over the variables of ``ctx``."""
    if not isinstance(ctx, VariableContext):
        ctx = VariableContext(ctx)
    return _Parser(text, ctx).parse()
