"""Standard bases of submodules of free modules over polynomial and local rings.

Global orders use Buchberger's algorithm.  Local (negdegrevlex) orders use
Mora's tangent cone algorithm: reduction by the ecart-minimal reducer, with
the intermediate remainder added to the reducer set whenever its ecart is
smaller than the one of the reducer used.

For zero-dimensional quotients the engine watches for a highest corner:
once the leading monomials contain every monomial of degree ``K`` in every
component, Nakayama's lemma gives ``m^K O^r`` inside the module, and all
terms of degree ``>= K`` are discarded from then on.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from fractions import Fraction
from itertools import count
from math import comb
from operator import add, sub
from typing import Iterable, Sequence

import gmpy2

from .errors import ResourceLimitError
from .poly import MonomialOrder, Polynomial, VariableContext


# ---------------------------------------------------------------------------
# coefficient fields


@dataclass(frozen=True)
class Field:
    """``QQ`` (p == 0) or the prime field ``GF(p)``."""

    p: int = 0

    @property
    def name(self) -> str:
        return "QQ" if self.p == 0 else f"Fp:{self.p}"

    @property
    def is_exact_char0(self) -> bool:
        return self.p == 0

    def convert(self, c: Fraction):
        if self.p == 0:
            return gmpy2.mpq(c.numerator, c.denominator)
        den = c.denominator % self.p
        if den == 0:
            raise ValueError(f"coefficient {c} has a denominator divisible by {self.p}")
        return c.numerator * pow(den, -1, self.p) % self.p

    def to_fraction(self, c) -> Fraction:
        if self.p == 0:
            return Fraction(int(c.numerator), int(c.denominator))
        # symmetric representative keeps small integers readable
        c = int(c)
        return Fraction(c - self.p if c > self.p // 2 else c)

    def inv(self, c):
        if self.p == 0:
            return 1 / c
        return pow(int(c), -1, self.p)


QQ = Field(0)
DEFAULT_PRIME = 32003


def _is_prime(n: int) -> bool:
    return n >= 2 and gmpy2.is_prime(n)


def parse_field(text: str) -> Field:
    """Parse ``QQ`` or ``Fp:<p>``."""
    text = text.strip()
    if text == "QQ":
        return QQ
    if text.startswith("Fp"):
        rest = text[2:]
        p = DEFAULT_PRIME if rest in ("", ":") else None
        if p is None:
            if not rest.startswith(":") or not rest[1:].isdigit():
                raise ValueError(f"bad field specification {text!r}")
            p = int(rest[1:])
        if not _is_prime(p):
            raise ValueError(f"{p} is not prime")
        return Field(p)
    raise ValueError(f"bad field specification {text!r}")


# ---------------------------------------------------------------------------
# public module types


class Infinite:
    """Marker for an infinite-dimensional quotient."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "INFINITE"

    __str__ = __repr__


INFINITE = Infinite()


class ModuleElement:
    """A vector of polynomials over one variable context."""

    __slots__ = ("ctx", "components")

    def __init__(self, components: Sequence[Polynomial], ctx: VariableContext | None = None):
        comps = tuple(components)
        if ctx is None:
            if not comps:
                raise ValueError("need a context for an empty vector")
            ctx = comps[0].ctx
        for c in comps:
            if c.ctx != ctx:
                raise ValueError("components live in different contexts")
        self.ctx = ctx
        self.components = comps

    @property
    def rank(self) -> int:
        return len(self.components)

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.components)

    def __eq__(self, other) -> bool:
        return isinstance(other, ModuleElement) and self.components == other.components

    def __hash__(self) -> int:
        return hash(self.components)

    def __repr__(self) -> str:
        return "[" + ", ".join(str(c) for c in self.components) + "]"


@dataclass(frozen=True)
class ModuleOrder:
    """Monomial order on a free module.

    ``position`` is ``"TOP"`` (compare terms first, then components) or
    ``"POT"`` (components first).  ``priority`` lists component indices from
    largest to smallest; by default component 0 is largest.
    """

    ring: MonomialOrder
    position: str = "TOP"
    priority: tuple[int, ...] | None = None

    def __post_init__(self):
        if self.position not in ("TOP", "POT"):
            raise ValueError(f"unknown position rule {self.position!r}")


def local_order(nvars: int, perm: Sequence[int] | None = None) -> ModuleOrder:
    return ModuleOrder(MonomialOrder("local", nvars, tuple(perm) if perm else None))


def global_order(nvars: int, perm: Sequence[int] | None = None, position: str = "TOP") -> ModuleOrder:
    return ModuleOrder(MonomialOrder("global", nvars, tuple(perm) if perm else None), position)


@dataclass
class Caps:
    max_degree: int = 30
    max_pairs: int = 200_000
    max_work: int = 5_000_000  # term operations in the unbudgeted final pass


# ---------------------------------------------------------------------------
# encoded monomials
#
# A module monomial x^e * e_c is encoded as a tuple whose natural tuple order
# is the module order, and in which multiplication by a ring monomial is
# fieldwise addition.  The exponent fields hold negated exponents in reversed
# priority order; the degree field holds +deg (global) or -deg (local); the
# component field holds -rank_of(c) in the priority list.


class _Codec:
    def __init__(self, order: ModuleOrder, nvars: int, rank: int):
        ring = order.ring
        if ring.nvars != nvars:
            raise ValueError("order and context disagree on the number of variables")
        self.n = nvars
        self.rank = rank
        self.local = ring.is_local
        self.sign = -1 if self.local else 1
        self.rev = tuple(reversed(ring.perm))
        prio = order.priority if order.priority is not None else tuple(range(rank))
        if sorted(prio) != list(range(rank)):
            raise ValueError("priority must be a permutation of the component indices")
        self.comp_field = {c: -i for i, c in enumerate(prio)}
        self.field_comp = {-i: c for i, c in enumerate(prio)}
        if order.position == "TOP":
            self.di, self.ci, self.e0 = 0, nvars + 1, 1
        else:
            self.di, self.ci, self.e0 = 1, 0, 2
        self.eidx = tuple(range(self.e0, self.e0 + nvars))
        self.length = nvars + 2

    def encode(self, exps: Sequence[int], comp: int) -> tuple:
        k = [0] * self.length
        k[self.di] = self.sign * sum(exps)
        k[self.ci] = self.comp_field[comp]
        for j, v in enumerate(self.rev):
            k[self.e0 + j] = -exps[v]
        return tuple(k)

    def ring_key(self, exps: Sequence[int]) -> tuple:
        k = [0] * self.length
        k[self.di] = self.sign * sum(exps)
        for j, v in enumerate(self.rev):
            k[self.e0 + j] = -exps[v]
        return tuple(k)

    def decode(self, k: tuple) -> tuple[tuple[int, ...], int]:
        exps = [0] * self.n
        for j, v in enumerate(self.rev):
            exps[v] = -k[self.e0 + j]
        return tuple(exps), self.field_comp[k[self.ci]]

    def deg(self, k: tuple) -> int:
        return self.sign * k[self.di]

    def divides(self, a: tuple, b: tuple) -> bool:
        """Does monomial ``a`` divide ``b``?"""
        if a[self.ci] != b[self.ci]:
            return False
        for i in self.eidx:
            if b[i] > a[i]:
                return False
        return True

    def lcm(self, a: tuple, b: tuple) -> tuple:
        k = list(a)
        total = 0
        for i in self.eidx:
            v = a[i] if a[i] < b[i] else b[i]
            k[i] = v
            total -= v
        k[self.di] = self.sign * total
        return tuple(k)

    def coprime(self, a: tuple, b: tuple) -> bool:
        return all(a[i] == 0 or b[i] == 0 for i in self.eidx)

    def is_pure_power(self, k: tuple) -> int | None:
        """Index of the variable if ``k`` is a pure power (or -1 for the unit)."""
        nz = [j for j, i in enumerate(self.eidx) if k[i]]
        if not nz:
            return -1
        if len(nz) == 1:
            return self.rev[nz[0]]
        return None


class _Heads:
    """Lazy max-heap over the keys of a polynomial that is being reduced."""

    def __init__(self, h: dict):
        self.heap = [(_neg(k), k) for k in h]
        heapq.heapify(self.heap)
        self.fresh: list = []

    def top(self, h: dict) -> tuple:
        heap = self.heap
        for k in self.fresh:
            heapq.heappush(heap, (_neg(k), k))
        self.fresh.clear()
        while heap[0][1] not in h:
            heapq.heappop(heap)
        return heap[0][1]


def _neg(k: tuple) -> tuple:
    return tuple(-x for x in k)


class _OutOfBudget(Exception):
    pass


class _Elem:
    __slots__ = ("poly", "lm", "ecart", "redundant")

    def __init__(self, poly: dict, lm: tuple, ecart: int):
        self.poly = poly
        self.lm = lm
        self.ecart = ecart
        self.redundant = False


class _Engine:
    def __init__(self, ctx: VariableContext, rank: int, order: ModuleOrder, fld: Field, caps: Caps):
        self.ctx = ctx
        self.rank = rank
        self.order = order
        self.field = fld
        self.p = fld.p
        self.caps = caps
        self.codec = _Codec(order, ctx.nvars, rank)
        self.local = self.codec.local
        self.elems: list[_Elem] = []
        self.by_comp: dict[int, list[_Elem]] = {}
        self.pairs: list = []
        self.seq = count()
        self.hc: int | None = None
        self.pure: list[set[int]] = [set() for _ in range(rank)]
        self.unit_comp = [False] * rank
        self.pairs_done = 0
        self.forced_hc: int | None = None   # truncation at m^K chosen by the caller
        self.work_limit: int | None = None  # reductions allowed before _OutOfBudget
        self.work = 0
        self.use_corner = True   # prune at the highest corner (lengths only)

    # -- conversion ------------------------------------------------------
    def encode_element(self, e: Sequence[Polynomial]) -> dict:
        out = {}
        conv = self.field.convert
        for comp, poly in enumerate(e):
            for m, c in poly.terms.items():
                v = conv(c)
                if v:
                    out[self.codec.encode(m, comp)] = v
        return out

    def decode_element(self, d: dict) -> ModuleElement:
        comps = [dict() for _ in range(self.rank)]
        for k, v in d.items():
            exps, comp = self.codec.decode(k)
            comps[comp][exps] = self.field.to_fraction(v)
        return ModuleElement([Polynomial(self.ctx, c) for c in comps], self.ctx)

    # -- polynomial kernels ---------------------------------------------
    def _axpy(self, h: dict, c, m: tuple, g: dict, fresh: list | None = None) -> None:
        """h -= c * m * g, dropping terms beyond the highest corner.

        Keys that were absent from ``h`` are appended to ``fresh``.
        """
        if self.work_limit is not None:
            # weight by coefficient size so rational blow-up is charged too
            words = 1 if self.p else 1 + (c.numerator.bit_length() + c.denominator.bit_length()) // 64
            self.work += len(g) * words
            if self.work > self.work_limit:
                raise _OutOfBudget
        get = h.get
        p = self.p
        di = self.codec.di
        limit = -self.hc if self.hc is not None else None  # local: degree field is -deg
        for k, v in g.items():
            k2 = tuple(map(add, k, m))
            if limit is not None and k2[di] <= limit:
                continue
            old = get(k2)
            if old is None:
                nv = -c * v
                if p:
                    nv %= p
                if nv:
                    h[k2] = nv
                    if fresh is not None:
                        fresh.append(k2)
            else:
                nv = old - c * v
                if p:
                    nv %= p
                if nv:
                    h[k2] = nv
                else:
                    del h[k2]

    def _monic(self, h: dict, lm: tuple) -> dict:
        c = h[lm]
        if c == 1:
            return h
        inv = self.field.inv(c)
        if self.p:
            p = self.p
            return {k: v * inv % p for k, v in h.items()}
        return {k: v * inv for k, v in h.items()}

    def _ecart(self, h: dict, lm: tuple) -> int:
        di = self.codec.di
        if self.local:
            return lm[di] - min(k[di] for k in h)
        return max(k[di] for k in h) - lm[di]

    def _truncate(self, h: dict) -> dict:
        if self.hc is None:
            return h
        di = self.codec.di
        limit = -self.hc
        return {k: v for k, v in h.items() if k[di] > limit}

    # -- normal forms ----------------------------------------------------
    def nf(self, h: dict) -> dict:
        if self.local:
            return self._nf_mora(h)
        return self._nf_global(h)

    def _nf_global(self, h: dict) -> dict:
        codec = self.codec
        ci = codec.ci
        heads = _Heads(h)
        while h:
            lm = heads.top(h)
            red = None
            for t in self.by_comp.get(lm[ci], ()):
                if codec.divides(t.lm, lm):
                    red = t
                    break
            if red is None:
                return h
            self._axpy(h, h[lm], tuple(map(sub, lm, red.lm)), red.poly, heads.fresh)
        return h

    def _nf_mora(self, h: dict) -> dict:
        codec = self.codec
        ci = codec.ci
        h = self._truncate(h)
        extra: dict[int, list[_Elem]] = {}
        heads = _Heads(h)
        while h:
            lm = heads.top(h)
            comp = lm[ci]
            best = None
            for group in (self.by_comp.get(comp, ()), extra.get(comp, ())):
                for t in group:
                    if (best is None or t.ecart < best.ecart) and codec.divides(t.lm, lm):
                        best = t
                        if best.ecart == 0:
                            break
                if best is not None and best.ecart == 0:
                    break
            if best is None:
                return h
            if self.hc is None:
                eh = self._ecart(h, lm)
                if best.ecart > eh:
                    extra.setdefault(comp, []).append(_Elem(self._monic(dict(h), lm), lm, eh))
            self._axpy(h, h[lm], tuple(map(sub, lm, best.lm)), best.poly, heads.fresh)
        return h

    # -- main loop -------------------------------------------------------
    def _insert(self, h: dict) -> None:
        codec = self.codec
        lm = max(h)
        h = self._monic(h, lm)
        new = _Elem(h, lm, self._ecart(h, lm))
        ci = codec.ci
        comp = lm[ci]
        ideal_case = self.rank == 1

        # Gebauer-Moller update
        cands = []
        for old in self.elems:
            if old.redundant or old.lm[ci] != comp:
                continue
            cands.append((codec.lcm(old.lm, lm), old))
        kept = []
        for i, (L, old) in enumerate(cands):
            dominated = False
            for j, (L2, _) in enumerate(cands):
                if j != i and L2 != L and codec.divides(L2, L):
                    dominated = True
                    break
            if not dominated:
                kept.append((L, old))
        seen = {}
        for L, old in kept:
            coprime = ideal_case and codec.coprime(old.lm, lm)
            if L in seen:
                if coprime:
                    seen[L] = None
                continue
            seen[L] = None if coprime else old
        # chain criterion on existing pairs
        if self.pairs:
            survivors = []
            for item in self.pairs:
                _, _, L, a, b = item
                if (L[ci] == comp and codec.divides(lm, L)
                        and codec.lcm(a.lm, lm) != L and codec.lcm(b.lm, lm) != L):
                    continue
                survivors.append(item)
            if len(survivors) != len(self.pairs):
                heapq.heapify(survivors)
                self.pairs = survivors
        for L, old in seen.items():
            if old is None:
                continue
            d = codec.deg(L)
            if self.hc is not None and d >= self.hc:
                continue
            sugar = d + max(old.ecart, new.ecart)
            heapq.heappush(self.pairs, ((sugar, d), next(self.seq), L, old, new))
        for old in self.elems:
            if not old.redundant and old.lm[ci] == comp and codec.divides(lm, old.lm):
                old.redundant = True
        self.elems.append(new)
        self.by_comp.setdefault(comp, []).append(new)
        if self.local:
            self._update_corner(new)

    def _update_corner(self, new: _Elem) -> None:
        codec = self.codec
        comp = codec.field_comp[new.lm[codec.ci]]
        v = codec.is_pure_power(new.lm)
        if v is None:
            if self.hc is None:
                return
        elif v == -1:
            self.unit_comp[comp] = True
        else:
            self.pure[comp].add(v)
        n = self.ctx.nvars
        if not self.use_corner:
            return
        if not all(self.unit_comp[c] or len(self.pure[c]) == n for c in range(self.rank)):
            return
        K = 0
        for c in range(self.rank):
            stairs = self._staircase(c, None)
            if stairs:
                K = max(K, max(sum(m) for m in stairs) + 1)
        if self.hc is not None and K >= self.hc:
            return
        self.hc = K
        limit = -K
        di = codec.di
        for group in self.by_comp.values():
            keep = []
            for e in group:
                if e.lm[di] <= limit:
                    continue
                e.poly = {k: x for k, x in e.poly.items() if k[di] > limit}
                e.ecart = self._ecart(e.poly, e.lm)
                keep.append(e)
            group[:] = keep
        self.elems = [e for e in self.elems if e.lm[di] > limit]
        self.pairs = [item for item in self.pairs if item[2][di] > limit]
        heapq.heapify(self.pairs)

    def _staircase(self, comp: int, limit: int | None) -> list[tuple[int, ...]] | None:
        """Standard monomials of component ``comp`` (None if infinite)."""
        if self.unit_comp[comp]:
            return []
        codec = self.codec
        cf = codec.comp_field[comp]
        lms = [e.lm for e in self.elems if e.lm[codec.ci] == cf]
        n = self.ctx.nvars
        start = (0,) * n
        if any(codec.divides(lm, codec.encode(start, comp)) for lm in lms):
            return []
        if not (len(self.pure[comp]) == n or self.unit_comp[comp]) and self.hc is None:
            return None
        seen = {start}
        frontier = [start]
        while frontier:
            nxt = []
            for m in frontier:
                for i in range(n):
                    mm = m[:i] + (m[i] + 1,) + m[i + 1:]
                    if mm in seen:
                        continue
                    if self.hc is not None and sum(mm) >= self.hc:
                        continue
                    key = codec.encode(mm, comp)
                    if any(codec.divides(lm, key) for lm in lms):
                        continue
                    seen.add(mm)
                    nxt.append(mm)
            frontier = nxt
        return sorted(seen)

    def run(self, gens: Iterable[dict]) -> None:
        gens = [g for g in gens if g]
        gens.sort(key=lambda g: max(g), reverse=True)
        for g in gens:
            h = self.nf(dict(g))
            if h:
                self._insert(h)
        cap_deg = self.caps.max_degree
        while self.pairs:
            (_, d), _, L, a, b = heapq.heappop(self.pairs)
            if self.hc is not None and d >= self.hc:
                continue
            if d > cap_deg:
                raise ResourceLimitError(
                    f"pair degree {d} exceeds the cap of {cap_deg}; raise --max-degree")
            self.pairs_done += 1
            if self.pairs_done > self.caps.max_pairs:
                raise ResourceLimitError(f"more than {self.caps.max_pairs} pairs processed")
            s = {}
            ma = tuple(map(sub, L, a.lm))
            mb = tuple(map(sub, L, b.lm))
            self._axpy(s, -1, ma, a.poly)
            self._axpy(s, 1, mb, b.poly)
            if not s:
                continue
            h = self.nf(s)
            if h:
                self._insert(h)

    def truncated_dimension(self) -> int | None:
        """Length certified from a run modulo m^K, or None if undecided.

        Below degree K the leading monomials of T + m^K are those of T, so a
        degree below K without standard monomials bounds the staircase of T.
        """
        total = 0
        top = -1
        for c in range(self.rank):
            stairs = self._staircase(c, None)
            total += len(stairs)
            if stairs:
                top = max(top, max(sum(m) for m in stairs))
        if self.hc != self.forced_hc or top < self.forced_hc - 1:
            return total
        return None

    def dimension(self) -> int | Infinite:
        total = 0
        for c in range(self.rank):
            stairs = self._staircase(c, None)
            if stairs is None:
                return INFINITE
            total += len(stairs)
        return total


# ---------------------------------------------------------------------------
# public API


def _normalize_gens(gens, ctx: VariableContext | None, rank: int | None):
    rows = []
    for g in gens:
        if isinstance(g, ModuleElement):
            rows.append(list(g.components))
        elif isinstance(g, Polynomial):
            rows.append([g])
        else:
            rows.append(list(g))
    if ctx is None:
        for r in rows:
            if r:
                ctx = r[0].ctx
                break
    if ctx is None:
        raise ValueError("cannot infer the variable context from an empty generator list")
    if rank is None:
        if not rows:
            raise ValueError("cannot infer the rank from an empty generator list")
        rank = len(rows[0])
    for r in rows:
        if len(r) != rank:
            raise ValueError("generators have inconsistent rank")
    return rows, ctx, rank


class StandardBasis:
    """Result of :func:`standard_basis`."""

    def __init__(self, engine: _Engine):
        self._engine = engine
        self.order = engine.order
        self.field = engine.field
        self.ctx = engine.ctx
        self.rank = engine.rank
        self.corner = engine.hc

    @property
    def elements(self) -> list[ModuleElement]:
        return [self._engine.decode_element(e.poly) for e in self._engine.elems if not e.redundant]

    def leading_monomials(self) -> list[tuple[tuple[int, ...], int]]:
        eng = self._engine
        return [eng.codec.decode(e.lm) for e in eng.elems if not e.redundant]

    def reduce(self, e) -> ModuleElement:
        """Weak normal form of ``e``; zero iff ``e`` lies in the module."""
        rows, _, _ = _normalize_gens([e], self.ctx, self.rank)
        eng = self._engine
        h = eng.nf(eng.encode_element(rows[0]))
        return eng.decode_element(h)

    def contains(self, e) -> bool:
        return self.reduce(e).is_zero()

    def quotient_dim(self) -> int | Infinite:
        if not self._engine.local:
            raise ValueError("quotient_dim is defined for local orders")
        return self._engine.dimension()


def standard_basis(gens, order: ModuleOrder | None = None, field: Field = QQ,
                   caps: Caps | None = None, ctx: VariableContext | None = None,
                   rank: int | None = None) -> StandardBasis:
    """Standard basis of the module generated by ``gens``.

    ``gens`` may contain :class:`ModuleElement`, polynomials (rank 1) or
    sequences of polynomials.  The default order is local negdegrevlex
    with term-over-position.
    """
    rows, ctx, rank = _normalize_gens(gens, ctx, rank)
    order = order or local_order(ctx.nvars)
    eng = _Engine(ctx, rank, order, field, caps or Caps())
    eng.use_corner = False
    eng.run(eng.encode_element(r) for r in rows)
    return StandardBasis(eng)


def quotient_dim(gens, field: Field = QQ, caps: Caps | None = None,
                 ctx: VariableContext | None = None, rank: int | None = None,
                 perm: Sequence[int] | None = None) -> int | Infinite:
    """Dimension of ``O^r / <gens>`` over the local ring at the origin."""
    rows, ctx, rank = _normalize_gens(gens, ctx, rank)
    if rank == 0:
        return 0
    caps = caps or Caps()
    order = local_order(ctx.nvars, perm)

    def engine():
        eng = _Engine(ctx, rank, order, field, caps)
        return eng, [eng.encode_element(r) for r in rows]

    # plain Mora decides quickly in most cases, including infinite ones
    eng, enc = engine()
    eng.work_limit = MORA_BUDGET
    try:
        eng.run(enc)
        return eng.dimension()
    except _OutOfBudget:
        pass
    # otherwise work modulo m^K for growing K until the staircase certifies itself
    K = TRUNCATION_START
    while K <= caps.max_degree and rank * comb(ctx.nvars + K - 1, ctx.nvars) <= TRUNCATION_MONOMIALS:
        eng, enc = engine()
        eng.hc = eng.forced_hc = K
        eng.run(enc)
        d = eng.truncated_dimension()
        if d is not None:
            return d
        K += max(2, K // 4)
    eng, enc = engine()
    eng.work_limit = caps.max_work
    try:
        eng.run(enc)
    except _OutOfBudget:
        raise ResourceLimitError(
            f"standard basis exceeded {caps.max_work} reduction steps; "
            "the module is probably not of finite length") from None
    return eng.dimension()


MORA_BUDGET = 20_000
TRUNCATION_START = 8
TRUNCATION_MONOMIALS = 400_000


def reduce(e, sb: StandardBasis) -> ModuleElement:
    return sb.reduce(e)


def syzygies(gens, field: Field = QQ, caps: Caps | None = None,
             ctx: VariableContext | None = None) -> list[ModuleElement]:
    """Generators of the syzygy module of ``gens`` over the polynomial ring.

    Uses a position-over-term Groebner basis of the graph module
    ``(g_i, e_i)``; elements whose first block vanishes are syzygies.
    """
    rows, ctx, rank = _normalize_gens(gens, ctx, None)
    k = len(rows)
    zero = ctx.zero()
    one = ctx.one()
    aug = []
    for i, r in enumerate(rows):
        unit = [zero] * k
        unit[i] = one
        aug.append(r + unit)
    order = ModuleOrder(MonomialOrder("global", ctx.nvars), "POT")
    caps = caps or Caps(max_degree=60)
    eng = _Engine(ctx, rank + k, order, field, caps)
    eng.run(eng.encode_element(r) for r in aug)
    out = []
    for e in eng.elems:
        elem = eng.decode_element(e.poly)
        head, tail = elem.components[:rank], elem.components[rank:]
        if all(c.is_zero() for c in head):
            out.append(ModuleElement(tail, ctx))
    return out
