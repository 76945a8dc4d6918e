"""Singular Milnor numbers as signed sums of lengths.

Each formula is a list of :class:`Term` records.  A term names a variety
``V(s_1, ..., s_q, h)`` by coordinate slices and a divisor factor; it is
evaluated either directly as the length of a free divisor on an ICIS, as
a pair ``mu_{s,h} + mu_{s}`` (one length), or by a nested formula applied
to a renamed germ whose ICIS map is extended by the slices.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import combinations
from typing import Sequence

from .catalog import (SPACES, apply_group_element, derlog_cached, get_divisor, get_space,
                      random_group_element, restrict_to_involved, scalar_multiple)
from .codim import DEFAULT, MatrixGerm, Settings, VarietyExpr, convention, mu_of, mu_pair, sign
from .errors import InputError, NotFreeDivisorError, NotTransverseError
from .linalg import maximal_minors
from .poly import Polynomial, VariableContext, parse_poly
from .stdbasis import INFINITE, quotient_dim

# ---------------------------------------------------------------------------
# reports


@dataclass(frozen=True)
class Term:
    label: str
    coef: int
    slices: tuple[str, ...]
    divisor: str
    pair: bool = False
    via: tuple[str, tuple[str, ...] | None] | None = None  # nested formula, coordinate map


@dataclass(frozen=True)
class TermResult:
    label: str
    coef: int
    value: int
    codim: int


@dataclass
class InvariantReport:
    kind: str
    value: int
    terms: list[TermResult]
    sign: int = 1                 # overall factor applied to the signed term sum
    meta_p: int = 0               # number of ICIS components
    transform: str | None = None  # group element used for genericity, if any
    field: str = "QQ"

    @property
    def term_sum(self) -> int:
        return sum(t.coef * t.value for t in self.terms)

    def check(self) -> bool:
        return self.value == self.sign * self.term_sum

    def lambdas(self) -> dict[int, int]:
        """Signed subtotals grouped by defining codimension."""
        out: dict[int, int] = {}
        for t in self.terms:
            out[t.codim] = out.get(t.codim, 0) + self.sign * t.coef * t.value
        return dict(sorted(out.items()))

    @property
    def meta_sign(self) -> int:
        return sign(self.meta_p)


@dataclass(frozen=True)
class Formula:
    space: str
    divisor: str                      # the variety whose invariant is computed
    terms: tuple[Term, ...] = ()
    reduce_to: tuple[str, tuple[str, ...]] | None = None


def _t(label, coef, slices, divisor, pair=False, via=None):
    return Term(label, coef, tuple(slices), divisor, pair, via)


_QA = "-b^2*f + 2*b*c*e - c^2*d"
_QF = "-a*e^2 + 2*b*c*e - c^2*d"
_DET3 = "a*d*f - a*e^2 - b^2*f + 2*b*c*e - c^2*d"
_PF = "a*f - b*e + c*d"
_QF_PERM = ("f", "e", "c", "d", "b", "a")
_V12_PERM = ("a", "c", "b", "d", "f", "e")
_V23_PERM = ("b", "a", "c", "e", "d", "f")
_BE_CD = ("b", "c", "d", "e")

FORMULAS: dict[str, Formula] = {
    "D2sy": Formula("sym2", "a*c - b^2", (
        _t("mu_{E2sy}", 1, (), "a*(a*c - b^2)"),
        _t("(mu_{a,b} + mu_{a})", -1, "a", "b", pair=True),
    )),
    "Qa": Formula("sym3", _QA, (
        _t("mu_{bd*Qa}", 1, (), f"b*d*({_QA})"),
        _t("(mu_{d,bc(bf-2ce)} + mu_{d})", -1, "d", "b*c*(b*f - 2*c*e)", pair=True),
        _t("(mu_{d,c,bf} + mu_{d,c})", 1, "dc", "b*f", pair=True),
        _t("(mu_{b,cd} + mu_{b})", -1, "b", "c*d", pair=True),
    )),
    "Qf": Formula("sym3", _QF, reduce_to=("Qa", _QF_PERM)),
    "D3sy": Formula("sym3", _DET3, (
        _t("mu_{E3sy}", 1, (), f"a*(a*d - b^2)*({_DET3})"),
        _t("mu_{(ad-b^2)Qf}", -1, (), f"(a*d - b^2)*({_QF})"),
        _t("mu_{Qf}", 1, (), _QF, via=("Qf", None)),
        _t("(mu_{a,Qa} + mu_{a})", -1, "a", _QA, pair=True, via=("Qa", None)),
        _t("(mu_{a,b,cd} + mu_{a,b})", -1, "ab", "c*d", pair=True),
    )),
    "D2": Formula("gen2", "a*d - b*c", (
        _t("mu_{E2}", 1, (), "a*b*(a*d - b*c)"),
        _t("(mu_{a,cb} + mu_{a})", -1, "a", "c*b", pair=True),
        _t("(mu_{b,ad} + mu_{b})", -1, "b", "a*d", pair=True),
    )),
    "aux_a": Formula("gen2", "a*(a*d - b*c)", (
        _t("mu_{E2}", 1, (), "a*b*(a*d - b*c)"),
        _t("(mu_{b,ad} + mu_{b})", -1, "b", "a*d", pair=True),
    )),
    "aux_ad": Formula("gen2", "a*d*(a*d - b*c)", (
        _t("mu_{E2}", 1, (), "a*b*(a*d - b*c)"),
        _t("(mu_{d,abc} + mu_{d})", 1, "d", "a*b*c", pair=True),
        _t("(mu_{b,ad} + mu_{b})", -1, "b", "a*d", pair=True),
    )),
    "V13": Formula("gen23", "(a*e - b*d)*(b*f - c*e)", (
        _t("mu_{E23}", 1, (), "a*b*(a*e - b*d)*(b*f - c*e)"),
        _t("(mu_{a,bde(bf-ce)} + mu_{a})", -1, "a", "b*d*e*(b*f - c*e)", pair=True),
        _t("(mu_{a,e,bdf} + mu_{a,e})", 1, "ae", "b*d*f", pair=True),
        _t("(mu_{b,ace} + mu_{b})", -1, "b", "a*c*e", pair=True),
    )),
    "V12": Formula("gen23", "(b*f - c*e)*(a*f - c*d)", reduce_to=("V13", _V12_PERM)),
    "V23": Formula("gen23", "(a*f - c*d)*(a*e - b*d)", reduce_to=("V13", _V23_PERM)),
    "chi23": Formula("gen23", "(a*e - b*d)*(a*f - c*d)*(b*f - c*e)", (
        _t("mu_{V123}", 1, (), "(a*e - b*d)*(a*f - c*d)*(b*f - c*e)"),
        _t("mu_{V12}", -1, (), "(b*f - c*e)*(a*f - c*d)", via=("V12", None)),
        _t("mu_{V13}", -1, (), "(a*e - b*d)*(b*f - c*e)", via=("V13", None)),
        _t("mu_{V23}", -1, (), "(a*f - c*d)*(a*e - b*d)", via=("V23", None)),
        _t("mu_{V1}", 1, (), "b*f - c*e", via=("D2", ("b", "c", "e", "f"))),
        _t("mu_{V2}", 1, (), "a*f - c*d", via=("D2", ("a", "c", "d", "f"))),
        _t("mu_{V3}", 1, (), "a*e - b*d", via=("D2", ("a", "b", "d", "e"))),
    )),
    "D4sk": Formula("sk4", _PF, (
        _t("mu_{E4sk}", 1, (), f"a*b*d*(b*e - d*c)*({_PF})"),
        _t("mu_{a,f,(be-cd)}", -1, "af", "b*e - c*d", via=("D2", _BE_CD)),
        # lambda_1
        _t("mu_{b,cd(af+cd)}", -1, "b", "c*d*(a*f + c*d)", via=("aux_ad", ("c", "a", "-f", "d"))),
        _t("mu_{d,be(af-be)}", -1, "d", "b*e*(a*f - b*e)", via=("aux_ad", ("b", "a", "f", "e"))),
        _t("mu_{a,(be-cd)}", -2, "a", "b*e - c*d", via=("D2", _BE_CD)),
        _t("mu_{f,(be-cd)}", -1, "f", "b*e - c*d", via=("D2", _BE_CD)),
        # lambda_2
        _t("mu_{be-cd}", -1, (), "b*e - c*d", via=("D2", _BE_CD)),
        _t("mu_{a,b,cd}", -1, "ab", "c*d"),
        _t("mu_{a,d,be}", -1, "ad", "b*e"),
        # lambda_3
        _t("(mu_{b,d,a} + mu_{b,d})", 1, "bd", "a", pair=True),
        _t("mu_{abd}", -1, (), "a*b*d"),
    )),
}

# the variety each command reports on, by formula name
VARIETY_NAMES = {"D2sy": "D2sy", "Qa": "Qa", "Qf": "Qf", "D3sy": "D3sy", "D2": "D2",
                 "aux_a": "a(ad-bc)", "aux_ad": "ad(ad-bc)", "V13": "V13", "V12": "V12",
                 "V23": "V23", "chi23": "V", "D4sk": "D4sk"}


# ---------------------------------------------------------------------------
# term evaluation


def _chart(space: str) -> VariableContext:
    return SPACES[space].ctx


def _expr(term: Term, space: str) -> VarietyExpr:
    ctx = _chart(space)
    slices = tuple(ctx.var(s) for s in term.slices)
    return VarietyExpr(slices, parse_poly(term.divisor, ctx), term.label)


def _mapped(f0: MatrixGerm, space: str, coords: Sequence[str] | None,
            extra_icis: Sequence[Polynomial] = ()) -> MatrixGerm:
    """Germ in ``space`` whose k-th chart coordinate is ``coords[k]`` of f0."""
    icis = tuple(f0.icis) + tuple(extra_icis)
    if coords is None:
        comps = f0.comps
    else:
        comps = []
        for name in coords:
            sign = -1 if name.startswith("-") else 1
            comps.append(f0.coord(name.lstrip("-")) * sign)
    return MatrixGerm(SPACES[space], f0.ctx, tuple(comps), icis, f0.weights)


def _single(term: Term, expr: VarietyExpr, f0: MatrixGerm, settings: Settings) -> int:
    n, p = f0.n, f0.p
    if n - p < expr.codim:
        return convention(n, p, expr.codim)
    if term.via is None:
        return mu_of(expr, f0, settings)
    name, coords = term.via
    target = FORMULAS[name]
    slices = [f0.coord(s) for s in term.slices]
    sub = _mapped(f0, target.space, coords, slices)
    return _evaluate(name, sub, settings).value


def _term_value(term: Term, f0: MatrixGerm, settings: Settings) -> TermResult:
    space = f0.space.name
    expr = _expr(term, space)
    codim = expr.defining_codim(f0.space.dim)
    if not term.pair:
        value = _single(term, expr, f0, settings)
    elif term.via is None:
        value = mu_pair(expr, f0, settings)
    else:
        base = VarietyExpr(expr.slices[:-1], expr.slices[-1])
        base_term = Term(base.label(), 1, term.slices[:-1], term.slices[-1])
        value = _single(term, expr, f0, settings) + _single(base_term, base, f0, settings)
    return TermResult(term.label, term.coef, value, codim)


def _evaluate(name: str, f0: MatrixGerm, settings: Settings) -> InvariantReport:
    """Evaluate a formula without generic-transform retries."""
    formula = FORMULAS[name]
    if f0.space.name != formula.space:
        raise InputError(f"{name} needs a germ into {formula.space}, got {f0.space.name}")
    if formula.reduce_to is not None:
        target, perm = formula.reduce_to
        inner = _evaluate(target, _mapped(f0, formula.space, perm), settings)
        return InvariantReport(name, inner.value, inner.terms, inner.sign, f0.p, None,
                               settings.field.name)
    terms = [_term_value(t, f0, settings) for t in formula.terms]
    value = sum(t.coef * t.value for t in terms)
    return InvariantReport(name, value, terms, 1, f0.p, None, settings.field.name)


def with_generic_transform(fn, f0: MatrixGerm, settings: Settings):
    """Run ``fn(germ)``; on an infinite term retry with seeded group elements.

    Returns ``(result, description of the group element or None)``.
    """
    try:
        return fn(f0), None
    except NotTransverseError as exc:
        if not settings.generic_transform:
            raise
        last = exc
    for s in range(settings.seed, settings.seed + 3):
        g = random_group_element(f0.space, s)
        moved = f0.with_comps(apply_group_element(f0.space, g, f0.comps))
        try:
            return fn(moved), g.describe()
        except NotTransverseError as exc:
            last = exc
    raise NotTransverseError(f"{last} (also after 3 generic group elements)")


def evaluate(name: str, f0: MatrixGerm, settings: Settings = DEFAULT) -> InvariantReport:
    """Evaluate the named formula, retrying with generic group elements if needed."""
    if name not in FORMULAS:
        raise InputError(f"unknown formula {name!r}")
    report, g = with_generic_transform(lambda germ: _evaluate(name, germ, settings), f0, settings)
    report.transform = g
    return report


# ---------------------------------------------------------------------------
# named entry points


def mu_D2sy(f0: MatrixGerm, settings: Settings = DEFAULT) -> InvariantReport:
    return evaluate("D2sy", f0, settings)


def mu_Qa(f0: MatrixGerm, settings: Settings = DEFAULT) -> InvariantReport:
    return evaluate("Qa", f0, settings)


def mu_Qf(f0: MatrixGerm, settings: Settings = DEFAULT) -> InvariantReport:
    return evaluate("Qf", f0, settings)


def mu_D3sy(f0: MatrixGerm, settings: Settings = DEFAULT) -> InvariantReport:
    return evaluate("D3sy", f0, settings)


def mu_D2gen(f0: MatrixGerm, settings: Settings = DEFAULT) -> InvariantReport:
    return evaluate("D2", f0, settings)


def mu_aux_gen2(f0: MatrixGerm, which: str, settings: Settings = DEFAULT) -> InvariantReport:
    names = {"a(ad-bc)": "aux_a", "ad(ad-bc)": "aux_ad"}
    if which not in names:
        raise InputError(f"which must be one of {', '.join(names)}")
    return evaluate(names[which], f0, settings)


def mu_V13(f0: MatrixGerm, settings: Settings = DEFAULT) -> InvariantReport:
    return evaluate("V13", f0, settings)


def mu_V12(f0: MatrixGerm, settings: Settings = DEFAULT) -> InvariantReport:
    return evaluate("V12", f0, settings)


def mu_V23(f0: MatrixGerm, settings: Settings = DEFAULT) -> InvariantReport:
    return evaluate("V23", f0, settings)


def mu_D4sk(f0: MatrixGerm, settings: Settings = DEFAULT) -> InvariantReport:
    return evaluate("D4sk", f0, settings)


def _chi_report(kind: str, f0: MatrixGerm, sign: int, settings: Settings) -> InvariantReport:
    report = evaluate("chi23", f0, settings)
    report.kind = kind
    report.sign = sign
    report.value = sign * report.term_sum
    return report


def chi_V_23(f0: MatrixGerm, settings: Settings = DEFAULT) -> InvariantReport:
    """Singular vanishing Euler characteristic for 2x3 matrices."""
    return _chi_report("chi", f0, sign(f0.n - f0.p - 1), settings)


def mu_cm_surface(f0: MatrixGerm, settings: Settings = DEFAULT) -> InvariantReport:
    """Milnor number of an isolated Cohen-Macaulay 2x3 surface singularity."""
    if f0.n - f0.p != 4:
        raise InputError(f"cm-surface needs n - p = 4, got n = {f0.n}, p = {f0.p}")
    return _chi_report("cm-surface", f0, -1, settings)


def b3_minus_b2(f0: MatrixGerm, settings: Settings = DEFAULT) -> InvariantReport:
    """b3 - b2 of the Milnor fibre of an isolated Cohen-Macaulay 2x3 3-fold."""
    if f0.n - f0.p != 5:
        raise InputError(f"cm-3fold needs n - p = 5, got n = {f0.n}, p = {f0.p}")
    return _chi_report("cm-3fold", f0, -1, settings)


# ---------------------------------------------------------------------------
# Jacobian-type formula for 2x2 symmetric matrices


def jacobian_formula(f0: MatrixGerm, weights: Sequence[int] | None = None,
                     settings: Settings = DEFAULT) -> InvariantReport:
    """``dim O / (modified Jac(det o f0) + 3x3 minors of df0)``.

    ``f0 = [[x, g], [g, h]]`` with ``x`` a source variable and ``g`` weighted
    homogeneous for ``weights``; the x-partial of ``det o f0`` is replaced by
    ``(2l + a0) * d/dx (det o f0) + (2l - a0) h - e(h)``.
    """
    if f0.space.name != "sym2" or f0.icis:
        raise InputError("the Jacobian formula needs a germ into sym2 without icis map")
    weights = tuple(weights or f0.weights or ())
    ctx = f0.ctx
    if len(weights) != ctx.nvars:
        raise InputError("the Jacobian formula needs one weight per source variable")
    a_entry, g, h = f0.comps
    xs = a_entry.variables()
    if len(xs) != 1 or a_entry != ctx.var(xs[0]):
        raise InputError("the (1,1) entry must be a source variable")
    x = ctx.index(xs[0])
    ell = g.weighted_degree(weights)
    if ell is None or not g.is_homogeneous(weights):
        raise InputError(f"g = {g} is not weighted homogeneous for weights {weights}")
    a0 = weights[x]
    det = a_entry * h - g * g
    euler_h = ctx.zero()
    for i, w in enumerate(weights):
        euler_h = euler_h + ctx.var(ctx.names[i]) * h.diff(i) * w
    delta = h * (2 * ell - a0) - euler_h
    gens = [det.diff(x) * (2 * ell + a0) + delta]
    gens += [det.diff(i) for i in range(ctx.nvars) if i != x]
    if ctx.nvars >= 3:
        jac = [[c.diff(i) for i in range(ctx.nvars)] for c in f0.comps]
        gens += _all_minors(jac, 3, ctx)
    value = quotient_dim([[q] for q in gens if not q.is_zero()], settings.field, settings.caps,
                         ctx, 1, settings.perm)
    label = "dim O/(modified Jac(det o f0) + 3x3 minors)"
    if value is INFINITE:
        raise NotTransverseError(f"{label} is infinite")
    term = TermResult(label, 1, value, 0)
    return InvariantReport("jacobian", value, [term], 1, 0, None, settings.field.name)


def _all_minors(matrix, k: int, ctx: VariableContext) -> list[Polynomial]:
    ncols = len(matrix[0])
    out = []
    for cols in combinations(range(ncols), k):
        out += maximal_minors([[row[c] for c in cols] for row in matrix], ctx)
    return out


# ---------------------------------------------------------------------------
# divisors by name, unions and intersections

_FORMULA_FOR_DIVISOR = {"D2sy": "D2sy", "D3sy": "D3sy", "D2": "D2", "D4sk": "D4sk",
                        "Qa": "Qa", "Qf": "Qf", "V13": "V13", "V12": "V12", "V23": "V23"}


def divisor_report(name: str, f0: MatrixGerm, settings: Settings = DEFAULT) -> InvariantReport:
    """Singular Milnor number for any catalog divisor (free or by formula)."""
    spec = get_divisor(name)
    if spec.space.name != f0.space.name:
        raise InputError(f"{name} lives in {spec.space.name}, the germ in {f0.space.name}")
    if name in _FORMULA_FOR_DIVISOR:
        return evaluate(_FORMULA_FOR_DIVISOR[name], f0, settings)
    expr = VarietyExpr((), spec.H, f"mu_{{{name}}}")
    value, g = with_generic_transform(lambda germ: mu_of(expr, germ, settings), f0, settings)
    term = TermResult(expr.name, 1, value, expr.defining_codim(spec.ambient_dim))
    return InvariantReport(name, value, [term], 1, f0.p, g, settings.field.name)


def mu_divisor(name: str, f0: MatrixGerm, settings: Settings = DEFAULT) -> int:
    return divisor_report(name, f0, settings).value


def _mu_hypersurface(H: Polynomial, f0: MatrixGerm, settings: Settings) -> int:
    """mu of V(H): a free divisor directly, otherwise by a matching catalog formula."""
    expr = VarietyExpr((), H)
    h_local, _ = restrict_to_involved(H)
    if derlog_cached(h_local).free or f0.n - f0.p < 1:
        return mu_of(expr, f0, settings)
    for name, formula_name in _FORMULA_FOR_DIVISOR.items():
        spec = get_divisor(name)
        if spec.space.name == f0.space.name and scalar_multiple(spec.H, H) is not None:
            return _evaluate(formula_name, f0, settings).value
    raise NotFreeDivisorError(f"no formula for the non-free hypersurface {H}")


def chi_intersection(names: Sequence[str], f0: MatrixGerm,
                     settings: Settings = DEFAULT) -> int:
    """Reduced Euler characteristic of the pulled-back intersection.

    Inclusion-exclusion over the unions of the listed hypersurfaces, each
    union being evaluated as a hypersurface.
    """
    specs = [get_divisor(n) for n in names]
    if not specs:
        raise InputError("need at least one divisor")
    if any(s.space.name != f0.space.name for s in specs):
        raise InputError("all divisors must live in the space of the germ")
    k = len(specs)
    n = f0.n - f0.p

    def run(germ):
        total = 0
        for r in range(1, k + 1):
            for subset in combinations(specs, r):
                H = subset[0].H
                for s in subset[1:]:
                    H = H * s.H
                total += sign(r + k) * _mu_hypersurface(H, germ, settings)
        return sign(n - k) * total

    value, _ = with_generic_transform(run, f0, settings)
    return value


# ---------------------------------------------------------------------------
# higher multiplicities of linear sections


def linear_section(space: str, k: int, seed: int, bound: int = 9) -> MatrixGerm:
    """Seeded random linear map ``C^k -> space`` as a germ."""
    sp = get_space(space)
    ctx = VariableContext(tuple(f"t{i + 1}" for i in range(k)))
    rng = random.Random(seed)
    comps = []
    for _ in range(sp.dim):
        c = ctx.zero()
        for v in ctx.names:
            c = c + ctx.var(v) * rng.randint(-bound, bound)
        comps.append(c)
    return MatrixGerm(sp, ctx, tuple(comps))


def higher_mult_computed(name: str, k: int, seed: int = 0,
                         settings: Settings = DEFAULT) -> int:
    """mu of a seeded random linear k-section (retrying other sections if needed)."""
    spec = get_divisor(name)
    N = spec.ambient_dim
    if not 0 <= k <= N - 1:
        raise InputError(f"k must lie in 0..{N - 1}")
    plain = Settings(settings.field, settings.caps, settings.seed, False, settings.perm)
    last = None
    for s in range(seed, seed + 4):
        f0 = linear_section(spec.space.name, k, s)
        try:
            return mu_divisor(name, f0, plain)
        except NotTransverseError as exc:
            last = exc
    raise NotTransverseError(f"no transverse linear section found: {last}")


# ---------------------------------------------------------------------------
# normal forms


def corank1_germ(space: str, g: str, eps: Sequence[int] | None = None, seed: int = 0,
                  gvars: Sequence[str] = ("y",)) -> MatrixGerm:
    """Corank-1 normal form: chart coordinates x1..x_{N-1} and ``sum eps_i x_i + g``.

    ``g`` is a polynomial in ``gvars``; the germ lives on C^(N-1+len(gvars)).
    """
    sp = get_space(space)
    N = sp.dim
    xs = tuple(f"x{i + 1}" for i in range(N - 1))
    ctx = VariableContext(xs + tuple(gvars))
    if eps is None:
        rng = random.Random(seed)
        eps = [rng.randint(1, 9) for _ in range(N - 1)]
    last = parse_poly(g, ctx)
    for e, v in zip(eps, xs):
        last = last + ctx.var(v) * e
    comps = [ctx.var(v) for v in xs] + [last]
    return MatrixGerm(sp, ctx, tuple(comps))


def omega_germ(k: int) -> MatrixGerm:
    """``[[x, y, z], [w, v, x + u^k]]`` on C^6."""
    ctx = VariableContext(("x", "y", "z", "w", "v", "u"))
    P = lambda s: parse_poly(s, ctx)
    entries = [[P("x"), P("y"), P("z")], [P("w"), P("v"), P(f"x + u^{k}")]]
    return MatrixGerm.from_matrix("gen23", ctx, entries)
