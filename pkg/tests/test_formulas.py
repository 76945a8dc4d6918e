import pytest

from oracles import local_length, poly_gens
from singmat.catalog import PERMUTATIONS, get_divisor, get_space
from singmat.codim import MatrixGerm, Settings, khe_codim, kme_codim_tau
from singmat.errors import InputError, NotTransverseError
from singmat.formulas import (FORMULAS, b3_minus_b2, chi_intersection, chi_V_23, corank1_germ,
                              divisor_report, evaluate, higher_mult_computed, jacobian_formula,
                              mu_aux_gen2, mu_cm_surface, mu_D2gen, mu_D2sy, mu_D3sy, mu_D4sk,
                              mu_Qa, mu_V12, mu_V13, mu_V23, omega_germ)
from singmat.poly import VariableContext, parse_poly

CHECKED = []


def checked(report):
    assert report.check(), (report.kind, report.value, report.term_sum)
    CHECKED.append(report.kind)
    return report


def germ(space, names, rows, icis=(), weights=None):
    ctx = VariableContext(names)
    entries = [[parse_poly(t, ctx) for t in row] for row in rows]
    return MatrixGerm.from_matrix(space, ctx, entries, [parse_poly(t, ctx) for t in icis],
                                  weights)


def milnor_oracle(h):
    """Milnor number of a hypersurface germ by linear algebra on its Jacobian ideal."""
    n = h.ctx.nvars
    return local_length(poly_gens([[h.diff(i)] for i in range(n)]), n, 1)


# -- small explicit germs ----------------------------------------------------------

def test_d2sy_on_morse_germ():
    f0 = germ("sym2", "xy", [["x", "y"], ["y", "x"]])
    det = parse_poly("x^2 - y^2", f0.ctx)
    assert checked(mu_D2sy(f0)).value == milnor_oracle(det) == 1


def test_d2_on_three_space():
    f0 = germ("gen2", "xyz", [["x", "y"], ["z", "x"]])
    det = parse_poly("x^2 - y*z", f0.ctx)
    assert checked(mu_D2gen(f0)).value == milnor_oracle(det) == 1


@pytest.mark.parametrize("name", ["D2sy", "Qa", "Qf", "D3sy", "D2", "aux_a", "aux_ad", "V13",
                                  "V12", "V23", "D4sk"])
def test_identity_chart_germ_is_stable(name):
    space = get_space(FORMULAS[name].space)
    ctx = VariableContext(tuple(f"x{i + 1}" for i in range(space.dim)))
    f0 = MatrixGerm(space, ctx, tuple(ctx.gens()))
    report = checked(evaluate(name, f0, Settings(generic_transform=False)))
    assert report.value == 0


@pytest.mark.parametrize("k", [1, 2, 3, 4])
def test_d2sy_plane_curves_match_jacobian_oracle(k):
    f0 = germ("sym2", "xy", [["x", "y"], ["y", f"x^{k}"]])
    det = parse_poly(f"x^{k + 1} - y^2", f0.ctx)
    assert checked(mu_D2sy(f0)).value == milnor_oracle(det) == k


# -- corank 1 normal forms ---------------------------------------------------------

FORMULA_FOR = {"D2sy": ("sym2", mu_D2sy), "D3sy": ("sym3", mu_D3sy), "D2": ("gen2", mu_D2gen),
               "D4sk": ("sk4", mu_D4sk)}


@pytest.mark.parametrize("name", sorted(FORMULA_FOR))
@pytest.mark.parametrize("g, mu_g", [("y^2", 1), ("y^3", 2), ("y^4", 3)])
def test_corank_one_mu_equals_tau(name, g, mu_g):
    space, fn = FORMULA_FOR[name]
    f0 = corank1_germ(space, g)
    assert checked(fn(f0)).value == mu_g
    assert khe_codim(f0, get_divisor(name)).value == mu_g


@pytest.mark.parametrize("name", ["D2sy", "D2"])
def test_corank_one_two_variable_g(name):
    space, fn = FORMULA_FOR[name]
    f0 = corank1_germ(space, "x^2 + y^3", gvars=("x", "y"))
    assert checked(fn(f0)).value == 2
    assert khe_codim(f0, get_divisor(name)).value == 2


def test_d4sk_generic_reduction():
    report = checked(mu_D4sk(corank1_germ("sk4", "y^3")))
    lam = report.lambdas()
    assert all(v == 0 for j, v in lam.items() if j >= 1)
    assert sum(lam.values()) == report.value == 2
    assert [abs(t.coef) for t in report.terms].count(2) == 1


def test_d4sk_uses_e4sk_twice_mu_g():
    report = checked(mu_D4sk(corank1_germ("sk4", "y^2")))
    e4 = [t for t in report.terms if t.label == "mu_{E4sk}"]
    assert [t.value for t in e4] == [2]


def test_qa_slice_vanishes_on_corank_one():
    # a o f0 is a coordinate, so mu_a = 0 and the pair reduces to mu_{a,Qa}
    report = checked(mu_D3sy(corank1_germ("sym3", "y^3")))
    (term,) = [t for t in report.terms if t.label.startswith("(mu_{a,Qa}")]
    assert term.value == 0


def test_v13_vanishes_on_corank_one():
    assert checked(mu_V13(corank1_germ("gen23", "y^3"))).value == 0


def test_qa_on_corank_one():
    assert checked(mu_Qa(corank1_germ("sym3", "y^2"))).value == 0


# -- permutation reductions --------------------------------------------------------

def _permuted(f0, perm):
    return f0.with_comps([f0.comps[j] for j in perm])


def test_v12_v23_reduce_to_v13():
    f0 = germ("gen23", "xyzwv", [["x", "y", "z"], ["w", "v", "x^2 + y^3"]])
    v12 = checked(mu_V12(f0))
    v23 = checked(mu_V23(f0))
    s = Settings()
    assert v12.value == checked(mu_V13(_permuted(f0, PERMUTATIONS["V12-from-V13"]), s)).value
    assert v23.value == checked(mu_V13(_permuted(f0, PERMUTATIONS["V23-from-V13"]), s)).value


def test_qf_reduces_to_qa():
    f0 = corank1_germ("sym3", "y^3", seed=5)
    qf = checked(evaluate("Qf", f0))
    qa = checked(mu_Qa(_permuted(f0, PERMUTATIONS["Qf-from-Qa"])))
    assert qf.value == qa.value


def test_aux_formulas_on_identity_and_errors():
    ctx = VariableContext(("x1", "x2", "x3", "x4"))
    f0 = MatrixGerm(get_space("gen2"), ctx, tuple(ctx.gens()))
    assert checked(mu_aux_gen2(f0, "a(ad-bc)")).value == 0
    with pytest.raises(InputError):
        mu_aux_gen2(f0, "b(ad-bc)")


def test_wrong_space_is_rejected():
    f0 = germ("sym2", "xy", [["x", "y"], ["y", "x"]])
    with pytest.raises(InputError):
        mu_D2gen(f0)


# -- 2x3 matrices ----------------------------------------------------------------

@pytest.mark.parametrize("k", [2, 3, 4, 5])
def test_omega_family(k):
    f0 = omega_germ(k)
    report = checked(chi_V_23(f0))
    assert report.value == -(k - 1)
    assert report.sign == -1
    assert kme_codim_tau(f0).value == k - 1


def test_chi_on_generic_corank_one():
    f0 = corank1_germ("gen23", "y^3")
    report = checked(chi_V_23(f0))
    quiver = [t for t in report.terms if t.label == "mu_{V123}"][0]
    assert report.value == (-1) ** (f0.n - 1) * quiver.value == (-1) ** (f0.n - 1) * 2


def test_cm_dimension_checks():
    f0 = germ("gen23", "xyzwv", [["x", "y", "z"], ["w", "v", "x"]])
    with pytest.raises(InputError):
        mu_cm_surface(f0)
    assert checked(b3_minus_b2(f0)).value == -1


def test_cm_surface_row_four():
    f0 = germ("gen23", "xyzw", [["x", "y", "z"], ["w", "z*x + x^2", "w + y*z"]])
    report = checked(mu_cm_surface(f0))
    assert report.value == 8
    assert kme_codim_tau(f0).value == 9


# -- Jacobian-type formula -----------------------------------------------------------

@pytest.mark.parametrize("k", [1, 2, 3, 4])
def test_jacobian_formula_plane(k):
    f0 = germ("sym2", "xy", [["x", "y"], ["y", f"x^{k}"]], weights=(2, k + 1))
    jac = checked(jacobian_formula(f0))
    assert jac.value == checked(mu_D2sy(f0)).value == k


@pytest.mark.parametrize("h", ["x + u^2", "x + u^3", "u^2 + x*y", "x*u + u^3"])
def test_jacobian_formula_three_variables(h):
    f0 = germ("sym2", "xuy", [["x", "y"], ["y", h]], weights=(1, 1, 1))
    jac = checked(jacobian_formula(f0))
    assert jac.value == checked(mu_D2sy(f0)).value


def test_jacobian_formula_rejects_non_homogeneous_g():
    f0 = germ("sym2", "xy", [["x", "y + y^2"], ["y + y^2", "x^2"]], weights=(1, 1))
    with pytest.raises(InputError):
        jacobian_formula(f0)


def test_jacobian_formula_on_non_transverse_germ():
    f0 = germ("sym2", "xy", [["x", "y"], ["y", "y^2"]], weights=(1, 1))
    with pytest.raises(NotTransverseError):
        jacobian_formula(f0)
    with pytest.raises(NotTransverseError):
        mu_D2sy(f0)


# -- intersections and free divisors ------------------------------------------------

def test_chi_intersection_of_one_hypersurface():
    f0 = corank1_germ("sym2", "y^3")
    assert chi_intersection(["D2sy"], f0) == (-1) ** (f0.n - 1) * mu_D2sy(f0).value
    assert chi_intersection(["E2sy"], f0) == (-1) ** (f0.n - 1) * khe_codim(
        f0, get_divisor("E2sy")).value


def test_chi_intersection_needs_one_space():
    f0 = corank1_germ("sym2", "y^2")
    with pytest.raises(InputError):
        chi_intersection(["D2"], f0)
    with pytest.raises(InputError):
        chi_intersection([], f0)


def test_free_divisor_report_equals_khe():
    f0 = corank1_germ("sym2", "y^3")
    report = checked(divisor_report("E2sy", f0))
    assert report.value == khe_codim(f0, get_divisor("E2sy")).value


@pytest.mark.parametrize("name, k, expected", [("D2sy", 1, 1), ("D2sy", 2, 1), ("E2sy", 1, 2),
                                               ("D2", 2, 1), ("D2", 3, 1)])
def test_higher_mult_computed_small(name, k, expected):
    assert higher_mult_computed(name, k) == expected


def test_metatheorem_sign():
    # product germ f0 x id on C^5 sliced by phi = t - x^2 against the C^4 germ
    flat = germ("gen23", "xyzw", [["z", "y", "x^2"], ["w^2", "x", "y + w^2"]])
    meta = germ("gen23", "xyzwt", [["z", "y", "t"], ["w^2", "x", "y + w^2"]], icis=["t - x^2"])
    base = checked(mu_cm_surface(flat))
    lifted = checked(mu_cm_surface(meta))
    assert lifted.value == base.value
    chi = checked(chi_V_23(meta))
    assert chi.meta_sign == -1
    assert chi.sign == (-1) ** (meta.n - meta.p - 1)


def test_every_report_was_checked():
    assert len(CHECKED) >= 40
