"""Matrix spaces, their representation vector fields and the divisor catalog."""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import product
from math import comb, gcd, lcm
from typing import Sequence

from .errors import InputError, NotFreeDivisorError
from .linalg import Echelon, det, frac_det, frac_inverse, nullspace
from .poly import Polynomial, VariableContext, parse_poly
from .stdbasis import ModuleElement, syzygies

# ---------------------------------------------------------------------------
# matrix spaces


@dataclass(frozen=True)
class MatrixSpace:
    name: str
    kind: str  # "sym", "gen" or "skew"
    shape: tuple[int, int]
    coords: tuple[str, ...]
    layout: tuple[tuple[tuple[int, int] | None, ...], ...]  # (coord index, sign)

    @property
    def dim(self) -> int:
        return len(self.coords)

    @property
    def ctx(self) -> VariableContext:
        return _ctx(self.coords)

    def matrix(self, values: Sequence) -> list[list]:
        """Full matrix with entries ``sign * values[k]`` (0 where the layout is empty)."""
        zero = values[0] * 0 if values else 0
        out = []
        for row in self.layout:
            out.append([zero if cell is None else values[cell[0]] * cell[1] for cell in row])
        return out

    def coordinates(self, matrix: Sequence[Sequence]) -> list:
        """Inverse of :meth:`matrix`; checks the symmetry pattern."""
        values: list = [None] * self.dim
        for i, row in enumerate(self.layout):
            for j, cell in enumerate(row):
                entry = matrix[i][j]
                if cell is None:
                    if entry != 0:
                        raise InputError(f"entry ({i + 1},{j + 1}) must be zero for {self.name}")
                    continue
                k, sign = cell
                val = entry * sign
                if values[k] is None:
                    values[k] = val
                elif values[k] != val:
                    kind = "skew-symmetric" if self.kind == "skew" else "symmetric"
                    raise InputError(f"matrix is not {kind} at entry ({i + 1},{j + 1})")
        return values


def _layout(rows: Sequence[Sequence[str]], coords: Sequence[str]):
    idx = {c: i for i, c in enumerate(coords)}
    out = []
    for row in rows:
        cells = []
        for s in row:
            if s == "0":
                cells.append(None)
            elif s.startswith("-"):
                cells.append((idx[s[1:]], -1))
            else:
                cells.append((idx[s], 1))
        out.append(tuple(cells))
    return tuple(out)


def _space(name, kind, rows, coords):
    return MatrixSpace(name, kind, (len(rows), len(rows[0])), tuple(coords), _layout(rows, coords))


SPACES: dict[str, MatrixSpace] = {
    "sym1": _space("sym1", "sym", [["a"]], "a"),
    "sym2": _space("sym2", "sym", [["a", "b"], ["b", "c"]], "abc"),
    "sym3": _space("sym3", "sym", [["a", "b", "c"], ["b", "d", "e"], ["c", "e", "f"]], "abcdef"),
    "gen2": _space("gen2", "gen", [["a", "b"], ["c", "d"]], "abcd"),
    "gen23": _space("gen23", "gen", [["a", "b", "c"], ["d", "e", "f"]], "abcdef"),
    "sk4": _space("sk4", "skew", [["0", "a", "b", "c"], ["-a", "0", "d", "e"],
                                  ["-b", "-d", "0", "f"], ["-c", "-e", "-f", "0"]], "abcdef"),
}


def get_space(name: str) -> MatrixSpace:
    try:
        return SPACES[name]
    except KeyError:
        raise InputError(f"unknown matrix space {name!r}") from None


@lru_cache(maxsize=None)
def _ctx(names: tuple[str, ...]) -> VariableContext:
    return VariableContext(names)


# ---------------------------------------------------------------------------
# representation vector fields


def _matmul(a, b):
    return [[sum((a[i][k] * b[k][j] for k in range(len(b))), a[i][0] * 0)
             for j in range(len(b[0]))] for i in range(len(a))]


def _transpose(a):
    return [list(r) for r in zip(*a)]


def _unit(m: int, i: int, j: int) -> list[list[int]]:
    return [[int(r == i and c == j) for c in range(m)] for r in range(m)]


def representation_fields(space: MatrixSpace | str) -> list[ModuleElement]:
    """Vector fields spanning the tangent spaces to the group orbits.

    ``A -> vA + Av^T`` for the symmetric and skew-symmetric spaces, and
    ``A -> vA`` together with ``A -> Aw`` for general matrices.
    """
    if isinstance(space, str):
        space = get_space(space)
    ctx = space.ctx
    A = space.matrix(ctx.gens())
    m, p = space.shape
    images = []
    if space.kind in ("sym", "skew"):
        for i, j in product(range(m), repeat=2):
            v = _unit(m, i, j)
            left = _matmul(v, A)
            right = _matmul(A, _transpose(v))
            images.append([[left[r][c] + right[r][c] for c in range(m)] for r in range(m)])
    else:
        for i, j in product(range(m), repeat=2):
            images.append(_matmul(_unit(m, i, j), A))
        for i, j in product(range(p), repeat=2):
            images.append(_matmul(A, _unit(p, i, j)))
    return [ModuleElement(space.coordinates(img), ctx) for img in images]


def apply_field(field: ModuleElement, h: Polynomial) -> Polynomial:
    """The derivation ``sum field_i * dh/dx_i``."""
    out = h.ctx.zero()
    for i, c in enumerate(field.components):
        if not c.is_zero():
            out = out + c * h.diff(i)
    return out


# ---------------------------------------------------------------------------
# logarithmic vector fields


@dataclass
class DerlogResult:
    fields: list[ModuleElement]
    free: bool


def euler_field(ctx: VariableContext, weights: Sequence[int] | None = None) -> ModuleElement:
    w = weights or [1] * ctx.nvars
    return ModuleElement([ctx.var(n) * wi for n, wi in zip(ctx.names, w)], ctx)


def saito_matrix(H: Polynomial, fields: Sequence[ModuleElement]) -> list[list[Polynomial]]:
    return [list(euler_field(H.ctx).components)] + [list(f.components) for f in fields]


def saito_scalar(H: Polynomial, fields: Sequence[ModuleElement]) -> Fraction | None:
    """``c`` with det(Euler field, fields) = c*H, or None."""
    if len(fields) != H.ctx.nvars - 1:
        return None
    d = det(saito_matrix(H, fields), H.ctx)
    return scalar_multiple(d, H)


def saito_check(H: Polynomial, fields: Sequence[ModuleElement]) -> bool:
    """Euler field plus ``fields`` has determinant a nonzero scalar times H."""
    return saito_scalar(H, fields) is not None


def scalar_multiple(p: Polynomial, q: Polynomial) -> Fraction | None:
    if p.is_zero() or q.is_zero() or set(p.terms) != set(q.terms):
        return None
    m = next(iter(q.terms))
    c = p.terms[m] / q.terms[m]
    if all(p.terms[k] == c * v for k, v in q.terms.items()):
        return c
    return None


def _monomials(n: int, d: int) -> list[tuple[int, ...]]:
    if n == 0:
        return [()] if d == 0 else []
    out = []
    for first in range(d, -1, -1):
        for rest in _monomials(n - 1, d - first):
            out.append((first,) + rest)
    return out


def derive_derlogH(H: Polynomial) -> DerlogResult:
    """Generators of Derlog(H) = {zeta : zeta(H) = 0}.

    For homogeneous H the syzygies of the partials are searched degree by
    degree; the search stops as soon as n-1 fields together with the Euler
    field pass Saito's criterion, which certifies that they form a basis.
    Otherwise the syzygy module is computed with a Groebner basis.
    """
    ctx = H.ctx
    n = ctx.nvars
    D = H.degree()
    if n == 0 or H.is_zero():
        raise InputError("Derlog needs a nonzero polynomial in at least one variable")
    if H.is_homogeneous() and D >= 1:
        found = _graded_derlog(H, D)
        if found is not None:
            return DerlogResult(found, True)
    partials = [H.diff(i) for i in range(n)]
    return DerlogResult(syzygies(partials, ctx=ctx), False)


def _graded_derlog(H: Polynomial, D: int) -> list[ModuleElement] | None:
    ctx = H.ctx
    n = ctx.nvars
    partials = [H.diff(i) for i in range(n)]
    gens: list[tuple[int, dict[tuple[int, tuple[int, ...]], Fraction]]] = []
    if n == 1:
        return [] if saito_check(H, []) else None
    for d in range(0, D):
        monos = _monomials(n, d)
        cols = {(i, a): k for k, (i, a) in enumerate(product(range(n), monos))}
        rows: dict[tuple[int, ...], dict[int, Fraction]] = {}
        for (i, a), k in cols.items():
            for m, c in partials[i].terms.items():
                beta = tuple(x + y for x, y in zip(a, m))
                row = rows.setdefault(beta, {})
                v = row.get(k, 0) + c
                if v:
                    row[k] = v
                else:
                    row.pop(k, None)
        sols = nullspace(list(rows.values()), len(cols))
        span = Echelon()
        for d0, g in gens:
            for mono in _monomials(n, d - d0):
                vec = {}
                for (i, a), c in g.items():
                    vec[cols[(i, tuple(x + y for x, y in zip(a, mono)))]] = c
                span.add(vec)
        inv_cols = {k: ia for ia, k in cols.items()}
        for s in sols:
            if span.add(s):
                gens.append((d, {inv_cols[k]: c for k, c in s.items()}))
                if len(gens) > n - 1:
                    return None
        if len(gens) == n - 1:
            fields = [_to_field(g, ctx) for _, g in gens]
            if saito_check(H, fields):
                return fields
    return None


def _to_field(g: dict, ctx: VariableContext) -> ModuleElement:
    """Field from a coefficient vector, scaled to primitive integer coefficients."""
    scale = lcm(*(c.denominator for c in g.values())) / Fraction(gcd(*(c.numerator for c in g.values())))
    comps = [dict() for _ in range(ctx.nvars)]
    for (i, a), c in g.items():
        comps[i][a] = c * scale
    return ModuleElement([Polynomial(ctx, c) for c in comps], ctx)


def restrict_to_involved(H: Polynomial) -> tuple[Polynomial, tuple[str, ...]]:
    """Rewrite H in the variables it actually involves (in context order)."""
    names = tuple(H.variables())
    sub = _ctx(names)
    idx = [H.ctx.index(v) for v in names]
    terms = {tuple(m[i] for i in idx): c for m, c in H.terms.items()}
    return Polynomial(sub, terms), names


@lru_cache(maxsize=None)
def derlog_cached(H: Polynomial) -> DerlogResult:
    return derive_derlogH(H)


# ---------------------------------------------------------------------------
# divisor catalog


@dataclass
class DivisorSpec:
    name: str
    space: MatrixSpace
    H: Polynomial                 # in the chart coordinates of ``space``
    involved: tuple[str, ...]      # chart coordinates that H depends on
    H_local: Polynomial            # H in the involved coordinates only
    derlog: list[ModuleElement]    # Derlog(H_local)
    free: bool
    description: str = ""

    @property
    def degree(self) -> int:
        return self.H.degree()

    @property
    def euler(self) -> ModuleElement:
        return euler_field(self.H_local.ctx)

    @property
    def ambient_dim(self) -> int:
        return self.space.dim

    @property
    def support_dim(self) -> int:
        return len(self.involved)

    @property
    def is_linear_free(self) -> bool:
        return self.free and self.degree == self.support_dim


def _sym3_Q(which: str) -> Polynomial:
    ctx = SPACES["sym3"].ctx
    a, b, c, d, e, f = ctx.gens()
    A = [[a, b, c], [b, d, e], [c, e, f]]
    if which == "a":
        A[0][0] = ctx.zero()
    else:
        A[2][2] = ctx.zero()
    return det(A, ctx)


def _catalog_polys() -> dict[str, tuple[str, Polynomial, str]]:
    s1 = SPACES["sym1"].ctx
    s2 = SPACES["sym2"].ctx
    s3 = SPACES["sym3"].ctx
    g2 = SPACES["gen2"].ctx
    g23 = SPACES["gen23"].ctx
    k4 = SPACES["sk4"].ctx
    P = parse_poly
    Qa = _sym3_Q("a")
    Qf = _sym3_Q("f")
    det3 = det(SPACES["sym3"].matrix(s3.gens()), s3)
    pf = P("a*f - b*e + c*d", k4)
    return {
        "E1sy": ("sym1", P("a", s1), "exceptional orbit variety, 1x1 symmetric"),
        "E2sy": ("sym2", P("a*(a*c - b^2)", s2), "exceptional orbit variety, 2x2 symmetric"),
        "D2sy": ("sym2", P("a*c - b^2", s2), "singular 2x2 symmetric matrices"),
        "E3sy": ("sym3", P("a*(a*d - b^2)", s3) * det3, "exceptional orbit variety, 3x3 symmetric"),
        "D3sy": ("sym3", det3, "singular 3x3 symmetric matrices"),
        "Qa": ("sym3", Qa, "det of A with a = 0"),
        "Qf": ("sym3", Qf, "det of A with f = 0"),
        "Qa-completion": ("sym3", P("b*d", s3) * Qa, "free completion b*d*Qa on the subspace a = 0"),
        "Qf-completion": ("sym3", P("a*d - b^2", s3) * Qf,
                          "free completion (ad - b^2)*Qf on the subspace f = 0"),
        "E2": ("gen2", P("a*b*(a*d - b*c)", g2), "exceptional orbit variety, 2x2 general"),
        "D2": ("gen2", P("a*d - b*c", g2), "singular 2x2 matrices"),
        "E23": ("gen23", P("a*b*(a*e - b*d)*(b*f - c*e)", g23),
                "exceptional orbit variety, 2x3 general"),
        "quiver": ("gen23", P("(a*e - b*d)*(a*f - c*d)*(b*f - c*e)", g23),
                   "union of the three maximal minors"),
        "V13": ("gen23", P("(a*e - b*d)*(b*f - c*e)", g23), "union of two maximal minors"),
        "V12": ("gen23", P("(b*f - c*e)*(a*f - c*d)", g23), "union of two maximal minors"),
        "V23": ("gen23", P("(a*f - c*d)*(a*e - b*d)", g23), "union of two maximal minors"),
        "E4sk": ("sk4", P("a*b*d*(b*e - d*c)", k4) * pf, "exceptional orbit variety, 4x4 skew"),
        "D4sk": ("sk4", pf, "Pfaffian hypersurface"),
    }


DIVISOR_NAMES = tuple(_catalog_polys())
FREE_DIVISOR_NAMES = ("E1sy", "E2sy", "E3sy", "E2", "E23", "E4sk",
                      "Qa-completion", "Qf-completion", "quiver")


def relative_invariant_fields(space: MatrixSpace, H: Polynomial) -> list[ModuleElement]:
    """Combinations of representation fields annihilating H.

    Each representation field multiplies H by a constant; the kernel of
    that character is spanned by differences of fields.
    """
    fields = representation_fields(space)
    chars = []
    for f in fields:
        image = apply_field(f, H)
        c = Fraction(0) if image.is_zero() else scalar_multiple(image, H)
        if c is None:
            raise ValueError("H is not a relative invariant")
        chars.append(c)
    basis = nullspace([{i: c for i, c in enumerate(chars) if c}], len(fields))
    out = []
    for vec in basis:
        comps = [space.ctx.zero()] * space.dim
        for i, c in vec.items():
            comps = [x + y * c for x, y in zip(comps, fields[i].components)]
        out.append(ModuleElement(comps, space.ctx))
    return out


def _local_field(field_: ModuleElement, involved: tuple[str, ...]) -> ModuleElement:
    """Restrict a chart field to the involved coordinates (must not use others)."""
    src = field_.ctx
    sub = _ctx(involved)
    comps = []
    keep = [src.index(v) for v in involved]
    for i in keep:
        poly = field_.components[i]
        terms = {}
        for m, c in poly.terms.items():
            if any(m[j] for j in range(src.nvars) if j not in keep):
                raise ValueError("field depends on a coordinate outside the support")
            terms[tuple(m[j] for j in keep)] = c
        comps.append(Polynomial(sub, terms))
    return ModuleElement(comps, sub)


@lru_cache(maxsize=None)
def get_divisor(name: str) -> DivisorSpec:
    polys = _catalog_polys()
    if name not in polys:
        raise InputError(f"unknown divisor {name!r}; known: {', '.join(polys)}")
    space_name, H, desc = polys[name]
    space = SPACES[space_name]
    H_local, involved = restrict_to_involved(H)
    if name in FREE_DIVISOR_NAMES:
        fields = _cached_fields(name, H_local)
        free = True
    else:
        try:
            if len(involved) != space.dim:
                raise ValueError("H does not involve every coordinate")
            fields = [_local_field(f, involved) for f in relative_invariant_fields(space, H)]
        except ValueError:
            fields = derive_derlogH(H_local).fields
        free = False
    return DivisorSpec(name, space, H, involved, H_local, fields, free, desc)


def _cached_fields(name: str, H_local: Polynomial) -> list[ModuleElement]:
    from . import _catalog_data

    data = _catalog_data.DERLOG.get(name)
    if data is None:
        res = derive_derlogH(H_local)
        if not res.free:
            raise NotFreeDivisorError(f"{name} failed the Saito check")
        return res.fields
    ctx = H_local.ctx
    return [ModuleElement([parse_poly(s, ctx) for s in comps], ctx) for comps in data]


def render_catalog_data() -> str:
    """Source text of the generated module holding the derived Derlog bases."""
    lines = ['"""Generated by singmat.catalog.render_catalog_data; do not edit."""', "",
             "DERLOG = {"]
    polys = _catalog_polys()
    for name in FREE_DIVISOR_NAMES:
        H_local, _ = restrict_to_involved(polys[name][1])
        res = derive_derlogH(H_local)
        if not res.free:
            raise NotFreeDivisorError(f"{name} failed the Saito check")
        lines.append(f"    {name!r}: [")
        for f in res.fields:
            comps = ", ".join(repr(_parseable(c)) for c in f.components)
            lines.append(f"        [{comps}],")
        lines.append("    ],")
    lines.append("}")
    return "\n".join(lines) + "\n"


def _parseable(p: Polynomial) -> str:
    """Render with integer coefficients only (scaled fields stay in Derlog)."""
    s = p.to_str()
    if "/" in s:
        raise ValueError(f"non-integral coefficient in {s}")
    return s


def check_catalog() -> list[tuple[str, str, bool]]:
    """Run every catalog invariant; returns (divisor, check, passed) rows."""
    rows = []
    for name in DIVISOR_NAMES:
        spec = get_divisor(name)
        H = spec.H_local
        ok = all(apply_field(z, H).is_zero() for z in spec.derlog)
        rows.append((name, "zeta(H) = 0", ok))
        e = apply_field(spec.euler, H)
        rows.append((name, "euler(H) = deg*H", e == H * spec.degree))
        if spec.free:
            c = saito_scalar(H, spec.derlog)
            label = "Saito determinant" if c is None else f"Saito determinant = {c}*H"
            rows.append((name, label, c is not None))
    pairs = [("D2sy", "E2sy"), ("D3sy", "E3sy"), ("D2", "E2"), ("D4sk", "E4sk")]
    for d_name, e_name in pairs:
        d, e = get_divisor(d_name), get_divisor(e_name)
        rows.append((f"{d_name}|{e_name}", "H_D divides H_E", _divides(d.H, e.H)))
    for name, perm_name in (("Qf", "Qf-from-Qa"), ("V12", "V12-from-V13"), ("V23", "V23-from-V13")):
        src = {"Qf": "Qa", "V12": "V13", "V23": "V13"}[name]
        H_src = get_divisor(src).H
        H_dst = get_divisor(name).H
        ctx = H_src.ctx
        perm = PERMUTATIONS[perm_name]
        images = {ctx.names[i]: ctx.var(ctx.names[j]) for i, j in enumerate(perm)}
        moved = H_src.substitute(images)
        rows.append((perm_name, "permutation maps H", scalar_multiple(moved, H_dst) is not None))
    return rows


def _divides(p: Polynomial, q: Polynomial) -> bool:
    """Does p divide q?  Membership in the principal ideal (p)."""
    from .stdbasis import global_order, standard_basis

    sb = standard_basis([p], global_order(p.ctx.nvars))
    return sb.contains(q)


# ---------------------------------------------------------------------------
# group actions


PERMUTATIONS: dict[str, tuple[int, ...]] = {
    # new coordinate k is old coordinate perm[k]
    "Qf-from-Qa": (5, 4, 2, 3, 1, 0),
    "V12-from-V13": (0, 2, 1, 3, 5, 4),
    "V23-from-V13": (1, 0, 2, 4, 3, 5),
}


def permute_for(name: str) -> tuple[int, ...]:
    try:
        return PERMUTATIONS[name]
    except KeyError:
        raise InputError(f"unknown permutation {name!r}") from None


@dataclass(frozen=True)
class GroupElement:
    """``B`` acts on the left; ``C`` (general matrices only) on the right by C^-1."""

    B: tuple[tuple[Fraction, ...], ...]
    C: tuple[tuple[Fraction, ...], ...] | None = None

    def describe(self) -> str:
        def fmt(m):
            return "[" + "; ".join(" ".join(str(x) for x in row) for row in m) + "]"

        if self.C is None:
            return f"B = {fmt(self.B)}"
        return f"B = {fmt(self.B)}, C = {fmt(self.C)}"


def apply_group_element(space: MatrixSpace | str, g: GroupElement,
                        values: Sequence[Polynomial]) -> list[Polynomial]:
    """Chart coordinates of ``B A B^T`` (sym, skew) or ``B A C^-1`` (general)."""
    if isinstance(space, str):
        space = get_space(space)
    A = space.matrix(list(values))
    B = [list(r) for r in g.B]
    if space.kind in ("sym", "skew"):
        M = _matmul(_matmul(B, A), _transpose(B))
    else:
        if g.C is None:
            raise InputError("general matrices need a right factor")
        Cinv = frac_inverse(g.C)
        M = _matmul(_matmul(B, A), Cinv)
    return space.coordinates(M)


def random_group_element(space: MatrixSpace | str, seed: int, bound: int = 10) -> GroupElement:
    """Seeded random integer element; the right factor has an integral inverse."""
    if isinstance(space, str):
        space = get_space(space)
    rng = random.Random(seed)
    m, p = space.shape

    def rand_invertible(k):
        while True:
            M = [[Fraction(rng.randint(-bound, bound)) for _ in range(k)] for _ in range(k)]
            if frac_det(M) != 0:
                return M

    B = rand_invertible(m)
    if space.kind in ("sym", "skew"):
        return GroupElement(tuple(map(tuple, B)))
    Cinv = rand_invertible(p)
    C = frac_inverse(Cinv)
    return GroupElement(tuple(map(tuple, B)), tuple(map(tuple, C)))


# ---------------------------------------------------------------------------
# higher multiplicities (closed forms)


def higher_mult(name: str, k: int) -> int:
    """Closed-form higher multiplicity mu_k for catalog divisors."""
    spec = get_divisor(name)
    N = spec.ambient_dim
    if not 0 <= k <= N - 1:
        raise InputError(f"k must lie in 0..{N - 1}")
    if name == "E4sk":
        return _elementary_symmetric([1, 1, 1, 1, 2], k)
    if name in ("D2sy", "D2", "D4sk"):
        return 1
    if name == "D3sy":
        return (1, 2, 4, 4, 2, 1)[k]
    if spec.is_linear_free:
        return comb(spec.support_dim - 1, k)
    raise InputError(f"no closed form for the higher multiplicities of {name}")


def _elementary_symmetric(xs: Sequence[int], k: int) -> int:
    from itertools import combinations

    total = 0
    for sub in combinations(xs, k):
        prod = 1
        for x in sub:
            prod *= x
        total += prod
    return total
