"""Lengths of determinantal modules over the local ring of the source.

Every invariant in the package reduces to one primitive, :func:`afd_length`:
the dimension of ``O^(p+m) / T`` where ``F = (phi, f)`` maps to ``C^p x C^m``
and ``T`` is spanned by the partials of ``F``, the fields ``(0, zeta o f)``
for ``zeta`` in Derlog(H), and ``phi_l * e_k`` for every component ``k``.
"""

from __future__ import annotations

import random
import threading
from dataclasses import dataclass, field as dc_field
from typing import Sequence

from .catalog import (MatrixSpace, derlog_cached, get_space, representation_fields,
                      restrict_to_involved)
from .errors import InputError, NotFreeDivisorError, NotTransverseError
from .linalg import frac_det, maximal_minors
from .poly import Polynomial, VariableContext, compose
from .stdbasis import INFINITE, QQ, Caps, Field, Infinite, ModuleElement, quotient_dim

# ---------------------------------------------------------------------------
# germs and settings


@dataclass(frozen=True)
class MatrixGerm:
    """``f0 : (C^n, 0) -> (M, 0)`` with optional ICIS map ``phi``."""

    space: MatrixSpace
    ctx: VariableContext
    comps: tuple[Polynomial, ...]          # chart coordinates of f0
    icis: tuple[Polynomial, ...] = ()
    weights: tuple[int, ...] | None = None

    def __post_init__(self):
        if len(self.comps) != self.space.dim:
            raise InputError(f"{self.space.name} needs {self.space.dim} coordinate functions")
        for name, c in zip(self.space.coords, self.comps):
            if c.ctx != self.ctx:
                raise InputError("germ entries live in different variable contexts")
            if c.constant_term() != 0:
                raise InputError(f"coordinate {name} has a nonzero constant term")
        for g in self.icis:
            if g.constant_term() != 0:
                raise InputError("icis components must vanish at the origin")
        if self.icis and len(self.icis) >= self.n:
            raise InputError("the icis map needs fewer components than source variables")

    @classmethod
    def from_matrix(cls, space: MatrixSpace | str, ctx: VariableContext, entries,
                    icis: Sequence[Polynomial] = (), weights=None) -> MatrixGerm:
        if isinstance(space, str):
            space = get_space(space)
        rows, cols = space.shape
        if len(entries) != rows or any(len(r) != cols for r in entries):
            raise InputError(f"{space.name} needs a {rows}x{cols} matrix")
        return cls(space, ctx, tuple(space.coordinates(entries)), tuple(icis),
                   tuple(weights) if weights else None)

    @property
    def n(self) -> int:
        return self.ctx.nvars

    @property
    def p(self) -> int:
        return len(self.icis)

    def matrix(self) -> list[list[Polynomial]]:
        return self.space.matrix(list(self.comps))

    def coord(self, name: str) -> Polynomial:
        return self.comps[self.space.coords.index(name)]

    def pullback(self, h: Polynomial) -> Polynomial:
        """``h o f0`` for ``h`` in chart coordinates (or a sub-chart)."""
        images = [self.coord(v) for v in h.ctx.names]
        return compose(h, images, self.ctx)

    def with_comps(self, comps: Sequence[Polynomial]) -> MatrixGerm:
        return MatrixGerm(self.space, self.ctx, tuple(comps), self.icis, self.weights)

    def with_icis(self, icis: Sequence[Polynomial]) -> MatrixGerm:
        return MatrixGerm(self.space, self.ctx, self.comps, tuple(icis), self.weights)

    def key(self) -> tuple:
        return (self.space.name, self.ctx.names, self.comps, self.icis)


@dataclass(frozen=True)
class Settings:
    field: Field = QQ
    caps: Caps = dc_field(default_factory=Caps)
    seed: int = 0
    generic_transform: bool = True
    perm: tuple[int, ...] | None = None   # variable priority for the local order
    flag_retries: int = 3

    def cache_key(self) -> tuple:
        return (self.field.p, self.caps.max_degree, self.caps.max_pairs, self.perm)


DEFAULT = Settings()


@dataclass(frozen=True)
class LengthResult:
    value: int | Infinite
    provenance: str
    generators: int = 0

    @property
    def finite(self) -> bool:
        return self.value is not INFINITE


class _Cache:
    """Insert-or-get memo shared by all length computations."""

    def __init__(self):
        self._data: dict = {}
        self._lock = threading.Lock()

    def get_or_compute(self, key, fn):
        with self._lock:
            if key in self._data:
                return self._data[key]
        value = fn()
        with self._lock:
            return self._data.setdefault(key, value)

    def clear(self):
        with self._lock:
            self._data.clear()

    def __len__(self):
        return len(self._data)


CACHE = _Cache()


# ---------------------------------------------------------------------------
# primitive lengths


def _length(gens: list[list[Polynomial]], ctx: VariableContext, rank: int,
            settings: Settings) -> int | Infinite:
    gens = [g for g in gens if any(not c.is_zero() for c in g)]
    if not gens:
        return INFINITE if ctx.nvars else rank
    return quotient_dim(gens, settings.field, settings.caps, ctx, rank, settings.perm)


def afd_length(ctx: VariableContext, phi: Sequence[Polynomial], f: Sequence[Polynomial],
               derlog: Sequence[ModuleElement], settings: Settings = DEFAULT) -> LengthResult:
    """Length of the module above for ``F = (phi, f)`` (see module docstring)."""
    phi, f = tuple(phi), tuple(f)
    key = ("afd", ctx.names, phi, f, tuple(tuple(z.components) for z in derlog),
           settings.cache_key())

    def compute():
        F = list(phi) + list(f)
        r = len(F)
        zero = ctx.zero()
        gens = [[c.diff(i) for c in F] for i in range(ctx.nvars)]
        for z in derlog:
            images = [compose(c, list(f), ctx) for c in z.components]
            gens.append([zero] * len(phi) + images)
        for g in phi:
            for k in range(r):
                row = [zero] * r
                row[k] = g
                gens.append(row)
        return LengthResult(_length(gens, ctx, r, settings), "AFD length", len(gens))

    return CACHE.get_or_compute(key, compute)


def khe_codim(f0: MatrixGerm, divisor, settings: Settings = DEFAULT) -> LengthResult:
    """K_{H,e}-codimension of ``f0`` for a catalog divisor (DivisorSpec)."""
    if f0.icis:
        raise InputError("khe_codim takes a germ without icis map; use afd_on_icis")
    f = [f0.coord(v) for v in divisor.involved]
    res = afd_length(f0.ctx, (), f, divisor.derlog, settings)
    return LengthResult(res.value, "K_H,e-codimension", res.generators)


def kme_codim_tau(f0: MatrixGerm, settings: Settings = DEFAULT) -> LengthResult:
    """K_{M,e}-codimension: the tangent space uses the representation fields."""
    if f0.icis:
        raise InputError("tau is only defined here for germs without icis map")
    fields = representation_fields(f0.space)
    res = afd_length(f0.ctx, (), f0.comps, fields, settings)
    return LengthResult(res.value, "K_M,e-codimension", res.generators)


def le_greuel_length(f2: Sequence[Polynomial], f1: Polynomial,
                     settings: Settings = DEFAULT) -> LengthResult:
    """``dim O / (f2 + (k+1)-minors of d(f2, f1))``, which is ``mu(f) + mu(f2)``."""
    ctx = f1.ctx
    f2 = tuple(f2)
    key = ("lg", ctx.names, f2, f1, settings.cache_key())

    def compute():
        jac = [[g.diff(i) for i in range(ctx.nvars)] for g in f2 + (f1,)]
        gens = [[g] for g in f2] + [[m] for m in maximal_minors(jac, ctx)]
        return LengthResult(_length(gens, ctx, 1, settings), "Le-Greuel length", len(gens))

    return CACHE.get_or_compute(key, compute)


def _flag_mu(phi: Sequence[Polynomial], settings: Settings) -> tuple[int | Infinite, int]:
    """Alternating flag sum, or INFINITE with the first failing step."""
    total = 0
    p = len(phi)
    for k in range(1, p + 1):
        L = le_greuel_length(phi[:k - 1], phi[k - 1], settings).value
        if L is INFINITE:
            return INFINITE, k
        total += (-1) ** (p - k) * L
    return total, 0


def _random_invertible(p: int, rng: random.Random, bound: int = 3) -> list[list[int]]:
    while True:
        M = [[rng.randint(-bound, bound) for _ in range(p)] for _ in range(p)]
        if frac_det(M) != 0:
            return M


def milnor_icis(phi: Sequence[Polynomial], settings: Settings = DEFAULT,
                ctx: VariableContext | None = None) -> LengthResult:
    """Milnor number of an ICIS by the alternating sum over the coordinate flag.

    An infinite last step after finite prefixes means phi is not an ICIS.
    An infinite earlier step is retried with seeded random linear
    combinations of the components (same ICIS, different flag).
    """
    phi = tuple(phi)
    if not phi:
        return LengthResult(0, "empty map")
    value, failed = _flag_mu(phi, settings)
    if value is not INFINITE:
        return LengthResult(value, "Le-Greuel flag")
    if failed == len(phi):
        # every proper prefix is an ICIS, so phi itself is not one
        return LengthResult(INFINITE, "Le-Greuel flag (not an ICIS)")
    rng = random.Random(settings.seed)
    for _ in range(settings.flag_retries):
        M = _random_invertible(len(phi), rng)
        mixed = tuple(sum((g * c for g, c in zip(phi, row)), phi[0].ctx.zero()) for row in M)
        value, failed = _flag_mu(mixed, settings)
        if value is not INFINITE:
            return LengthResult(value, "Le-Greuel flag (random)")
        if failed == len(phi):
            return LengthResult(INFINITE, "Le-Greuel flag (not an ICIS)")
    return LengthResult(INFINITE, "Le-Greuel flag")


# ---------------------------------------------------------------------------
# varieties named by their equations


def sign(e: int) -> int:
    """``(-1)^e`` as an int, for any integer ``e``."""
    return -1 if e % 2 else 1


def convention(n: int, p: int, k: int) -> int:
    """Value assigned to a term whose pulled-back variety is generically empty."""
    if n - p >= k:
        raise ValueError("the convention applies only when n - p < k")
    return sign(n - p - k + 1)


@dataclass(frozen=True)
class VarietyExpr:
    """``V(s_1, ..., s_q, h)``: coordinate slices followed by a divisor factor.

    All polynomials live in the chart coordinates of one matrix space.
    """

    slices: tuple[Polynomial, ...]
    divisor: Polynomial
    name: str = ""

    @property
    def codim(self) -> int:
        return len(self.slices) + 1

    def slice_names(self) -> list[str]:
        out = []
        for s in self.slices:
            vs = s.variables()
            if len(vs) != 1 or len(s.terms) != 1 or s.degree() != 1:
                raise InputError(f"slice {s} must be a single coordinate")
            out.append(vs[0])
        return out

    def restricted(self) -> tuple[Polynomial, tuple[str, ...]]:
        """Divisor restricted to the slice, in its involved coordinates."""
        zero = {v: 0 for v in self.slice_names()}
        h = self.divisor.substitute(zero) if zero else self.divisor
        if h.is_zero():
            raise InputError(f"{self.label()}: the divisor contains the slice")
        if h.is_constant():
            raise InputError(f"{self.label()}: the divisor misses the origin")
        return restrict_to_involved(h)

    def defining_codim(self, N: int) -> int:
        _, involved = self.restricted()
        return N - len(self.slices) - len(involved)

    def label(self) -> str:
        if self.name:
            return self.name
        parts = [s.to_str() for s in self.slices] + [self.divisor.to_str()]
        return "mu_{" + ",".join(parts) + "}"


def _slice_data(expr: VarietyExpr, f0: MatrixGerm):
    h_local, involved = expr.restricted()
    phi = list(f0.icis) + [f0.coord(v) for v in expr.slice_names()]
    f = [f0.coord(v) for v in involved]
    return h_local, phi, f


def _require(res: LengthResult, what: str) -> int:
    if res.value is INFINITE:
        raise NotTransverseError(f"{what} is infinite (germ not transverse off 0)")
    return res.value


def mu_of(expr: VarietyExpr, f0: MatrixGerm, settings: Settings = DEFAULT) -> int:
    """Singular Milnor number ``mu_{phi, V(slices, h)}(f0)`` for a free ``h``."""
    n, p = f0.n, f0.p
    if n - p < expr.codim:
        return convention(n, p, expr.codim)
    h_local, phi, f = _slice_data(expr, f0)
    dl = derlog_cached(h_local)
    if not dl.free:
        raise NotFreeDivisorError(f"{expr.label()}: divisor {h_local} is not free")
    L = _require(afd_length(f0.ctx, phi, f, dl.fields, settings), expr.label())
    mu_phi = _require(milnor_icis(phi, settings), f"{expr.label()} (ICIS of the slice)")
    return L - mu_phi


def mu_pair(expr: VarietyExpr, f0: MatrixGerm, settings: Settings = DEFAULT) -> int:
    """``mu_{s_1..s_q, h} + mu_{s_1..s_q}`` as a single length.

    With ``phi' = (phi, s o f0)`` the slice term is ``mu(phi')`` and the
    divisor term is ``L(phi', h) - mu(phi')``, so the sum is ``L(phi', h)``.
    """
    if not expr.slices:
        raise InputError("a pair term needs at least one slice")
    n, p = f0.n, f0.p
    base = VarietyExpr(expr.slices[:-1], expr.slices[-1])
    if n - p < expr.codim:
        return mu_of(expr, f0, settings) + mu_of(base, f0, settings)
    h_local, phi, f = _slice_data(expr, f0)
    dl = derlog_cached(h_local)
    if not dl.free:
        raise NotFreeDivisorError(f"{expr.label()}: divisor {h_local} is not free")
    label = f"({expr.label()} + {base.label()})"
    return _require(afd_length(f0.ctx, phi, f, dl.fields, settings), label)


def afd_on_icis(f0: MatrixGerm, divisor, settings: Settings = DEFAULT) -> int:
    """``mu_{phi,V}(f0)`` for a catalog divisor, using the icis map of ``f0``."""
    expr = VarietyExpr((), divisor.H, divisor.name)
    return mu_of(expr, f0, settings)
