from pathlib import Path

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from singmat.errors import InputError
from singmat.germfile import load_germ, parse_germ, render_germ
from singmat.poly import parse_poly

GERMS = Path(__file__).resolve().parent.parent / "germs"

ROW1 = """\
# CM surface
space      = gen23
source_dim = 4
vars       = x, y, z, w
entry 1 1  = z
entry 1 2  = y
entry 1 3  = x
entry 2 1  = x
entry 2 2  = w
entry 2 3  = z^2 + y^4   # last entry
"""


def test_parse_table_row():
    f0 = parse_germ(ROW1)
    assert f0.space.name == "gen23"
    assert f0.ctx.names == ("x", "y", "z", "w")
    assert f0.coord("f") == parse_poly("z^2 + y^4", f0.ctx)
    assert f0.icis == () and f0.weights is None


def test_parse_icis_and_weights():
    text = ROW1.replace("x, y, z, w", "x, y, z, w, t").replace("= 4", "= 5")
    text += "icis = t - x^2\nweights = x:1, y:1, z:2, w:3, t:2\n"
    f0 = parse_germ(text)
    assert f0.icis == (parse_poly("t - x^2", f0.ctx),)
    assert f0.weights == (1, 1, 2, 3, 2)


@pytest.mark.parametrize("mutate, message", [
    (lambda t: t.replace("entry 2 3  = z^2 + y^4   # last entry\n", ""), "missing entry 2 3"),
    (lambda t: t + "entry 1 1 = x\n", "given twice"),
    (lambda t: t + "entry 3 1 = x\n", "outside the 2x3 matrix"),
    (lambda t: t.replace("gen23", "gen33"), "unknown space"),
    (lambda t: t.replace("= 4", "= 3"), "expected 3 variable names"),
    (lambda t: t.replace("= 4", "= four"), "source_dim must be an integer"),
    (lambda t: t.replace("z^2 + y^4", "z^2 + + y"), ":10:"),
    (lambda t: t.replace("= w\n", "= q\n"), "unknown variable"),
    (lambda t: t + "colour = red\n", "unknown key"),
    (lambda t: t + "just words\n", "expected 'key = value'"),
    (lambda t: t.replace("= x\n", "= x + 1\n", 1), "constant term"),
    (lambda t: t + "weights = x:1\n", "every variable"),
])
def test_parse_errors(mutate, message):
    with pytest.raises(InputError) as info:
        parse_germ(mutate(ROW1), "row1.germ")
    assert message in str(info.value)


def test_symmetry_is_checked():
    text = """space = sym2
source_dim = 2
vars = x, y
entry 1 1 = x
entry 1 2 = y
entry 2 1 = x
entry 2 2 = y
"""
    with pytest.raises(InputError) as info:
        parse_germ(text)
    assert "symmetric" in str(info.value)


def test_missing_file():
    with pytest.raises(InputError):
        load_germ(GERMS / "no_such.germ")


@pytest.mark.parametrize("path", sorted(GERMS.glob("*.germ")), ids=lambda p: p.name)
def test_shipped_germs_round_trip(path):
    f0 = load_germ(path)
    assert parse_germ(render_germ(f0)) == f0


coeffs = st.integers(-4, 4)


@settings(max_examples=40, deadline=None)
@given(st.lists(st.tuples(coeffs, coeffs, st.integers(1, 3)), min_size=6, max_size=6))
def test_render_round_trip(data):
    from singmat.codim import MatrixGerm
    from singmat.poly import VariableContext

    ctx = VariableContext(["x", "y", "z"])
    comps = []
    for a, b, k in data:
        comps.append(ctx.var("x") * a + ctx.var("y") ** k * b + ctx.var("z") ** (k + 1))
    f0 = MatrixGerm.from_matrix("sk4", ctx, [[ctx.zero(), comps[0], comps[1], comps[2]],
                                            [-comps[0], ctx.zero(), comps[3], comps[4]],
                                            [-comps[1], -comps[3], ctx.zero(), comps[5]],
                                            [-comps[2], -comps[4], -comps[5], ctx.zero()]])
    assert parse_germ(render_germ(f0)) == f0
