import math
import random

import pytest

from normlab import (
    BranchError,
    DimensionMismatchError,
    ExprSyntaxError,
    PoleError,
    affine_pullback,
    evaluate,
    evaluate_jet,
    parse,
    to_source,
)
from normlab.expr import BinOp, Func, Var


def test_parse_single_variable():
    expr = parse("z1", 1)
    assert expr.root == Var(1)


def test_parse_structure_sin_reciprocal():
    expr = parse("sin(1/(1-z1))", 1)
    assert isinstance(expr.root, Func) and expr.root.name == "sin"
    inner = expr.root.arg
    assert isinstance(inner, BinOp) and inner.op == "/"


def test_variable_index_exceeds_dimension():
    with pytest.raises(ExprSyntaxError):
        parse("z3", 2)


def test_unknown_identifier_and_syntax_errors():
    with pytest.raises(ExprSyntaxError):
        parse("foo(z1)", 1)
    with pytest.raises(ExprSyntaxError):
        parse("z1 +", 1)
    with pytest.raises(ExprSyntaxError):
        parse("", 1)
    err = pytest.raises(ExprSyntaxError, parse, "z1 + $", 1).value
    assert err.position == 5


def test_non_integer_exponent_rejected():
    with pytest.raises(ExprSyntaxError):
        parse("z1^1.5", 1)
    assert evaluate(parse("z1^-2", 1), (2 + 0j,)) == pytest.approx(0.25)


def test_precedence():
    # ^ binds tighter than unary minus, which binds tighter than * /
    assert evaluate(parse("-z1^2", 1), (2 + 0j,)) == -4
    assert evaluate(parse("1+2*3", 1), (0j,)) == 7
    assert evaluate(parse("2*z1^2", 1), (3 + 0j,)) == 18


def test_complex_literal_and_constants():
    assert evaluate(parse("2+3*i", 1), (0j,)) == 2 + 3j
    assert evaluate(parse("exp(i*pi)", 1), (0j,)) == pytest.approx(-1)
    assert evaluate(parse("log(e)", 1), (0j,)) == pytest.approx(1)


def test_evaluate_basics():
    assert evaluate(parse("z1^2", 1), (2 + 0j,)) == 4
    assert evaluate(parse("exp(z1)", 1), (0j,)) == 1


def test_evaluate_sin_reciprocal_near_one():
    z = complex(1 - 1 / (2 * math.pi))
    value = evaluate(parse("sin(1/(1-z1))", 1), (z,))
    assert abs(value) < 1e-12  # sin(2*pi)


def test_pole_and_branch_errors():
    with pytest.raises(PoleError):
        evaluate(parse("1/z1", 1), (0j,))
    with pytest.raises(BranchError):
        evaluate(parse("log(z1)", 1), (0j,))


def test_dimension_mismatch():
    with pytest.raises(DimensionMismatchError):
        evaluate(parse("z1", 1), (0j, 0j))


def test_jet_product():
    jet = evaluate_jet(parse("z1*z2", 2), (1 + 0j, 1 + 0j))
    assert jet.value == 1
    assert jet.gradient == (1 + 0j, 1 + 0j)


def test_jet_exp():
    jet = evaluate_jet(parse("exp(z1)", 1), (0j,))
    assert jet.value == 1
    assert jet.gradient == (1 + 0j,)


def test_jet_sin_reciprocal_analytic_derivative():
    # d/dz sin(1/(1-z)) = cos(1/(1-z)) / (1-z)^2; at z = 1 - 1/(2pi) this is (2pi)^2
    z = complex(1 - 1 / (2 * math.pi))
    jet = evaluate_jet(parse("sin(1/(1-z1))", 1), (z,))
    expected = (2 * math.pi) ** 2
    assert abs(jet.gradient[0] - expected) <= 1e-8 * expected


def _random_expr(rng: random.Random, dim: int) -> str:
    leaves = [f"z{k}" for k in range(1, dim + 1)] + ["0.5", "1+1*i", "2"]
    pool = leaves[:]
    for _ in range(rng.randint(2, 6)):
        a, b = rng.choice(pool), rng.choice(pool)
        choice = rng.random()
        if choice < 0.55:
            pool.append(f"({a}{rng.choice('+-*')}{b})")
        elif choice < 0.75:
            pool.append(f"{rng.choice(['exp', 'sin', 'cos'])}({a})")
        else:
            pool.append(f"({a}^{rng.randint(1, 3)})")
    return pool[-1]


def _fd_gradient(expr, z, h):
    grads = []
    for k in range(len(z)):
        def shift(t):
            w = list(z)
            w[k] += t
            return evaluate(expr, tuple(w))
        grads.append((shift(h) - shift(-h)) / (2 * h))
    return grads


@pytest.mark.parametrize("dim", [1, 2, 3])
def test_jet_matches_central_differences(dim):
    rng = random.Random(20240 + dim)
    for trial in range(40):
        expr = parse(_random_expr(rng, dim), dim)
        z = tuple(
            complex(rng.uniform(-0.8, 0.8), rng.uniform(-0.8, 0.8)) for _ in range(dim)
        )
        jet = evaluate_jet(expr, z)
        h = 1e-6 * (1 + max(abs(c) for c in z))
        for got, want in zip(jet.gradient, _fd_gradient(expr, z, h)):
            assert abs(got - want) <= 1e-5 * (1 + abs(want))


def test_affine_pullback_at_zero_is_base_value():
    f = parse("sin(z1)+z1^2", 1)
    g = affine_pullback(f, (0.3 + 0.1j,), 0.25)
    assert evaluate(g, (0j,)) == pytest.approx(evaluate(f, (0.3 + 0.1j,)))


def test_affine_pullback_chain_rule():
    f = parse("exp(z1*z2)", 2)
    base = (0.2 + 0.1j, -0.3 + 0.2j)
    scale = 0.5 + 0.25j
    g = affine_pullback(f, base, scale)
    zeta = (0.4 - 0.2j, 0.1 + 0.3j)
    shifted = tuple(b + scale * t for b, t in zip(base, zeta))
    jet_g = evaluate_jet(g, zeta)
    jet_f = evaluate_jet(f, shifted)
    for gg, gf in zip(jet_g.gradient, jet_f.gradient):
        assert abs(gg - scale * gf) <= 1e-12 * (1 + abs(gf))


def test_affine_pullback_remark_sequence():
    # f(z) = z with z_n = 1 - n^-3, rho_n = n^-2 gives g_n(zeta) = z_n + rho_n*zeta
    f = parse("z1", 1)
    n = 4
    g = affine_pullback(f, (complex(1 - n**-3),), n**-2)
    zeta = 0.7 - 0.2j
    assert evaluate(g, (zeta,)) == pytest.approx((1 - n**-3) + n**-2 * zeta)


def test_affine_pullback_randomized_identity():
    rng = random.Random(99)
    for _ in range(30):
        dim = rng.choice([1, 2])
        f = parse(_random_expr(rng, dim), dim)
        base = tuple(
            complex(rng.uniform(-0.5, 0.5), rng.uniform(-0.5, 0.5)) for _ in range(dim)
        )
        scale = complex(rng.uniform(0.1, 0.6), rng.uniform(-0.3, 0.3))
        zeta = tuple(
            complex(rng.uniform(-0.5, 0.5), rng.uniform(-0.5, 0.5)) for _ in range(dim)
        )
        lhs = evaluate(affine_pullback(f, base, scale), zeta)
        rhs = evaluate(f, tuple(b + scale * t for b, t in zip(base, zeta)))
        assert abs(lhs - rhs) <= 1e-12 * (1 + abs(rhs))


def test_zero_scale_rejected():
    with pytest.raises(ValueError):
        affine_pullback(parse("z1", 1), (0j,), 0)


def test_print_parse_roundtrip():
    sources = [
        "z1",
        "sin(1/(1-z1))",
        "-z1^2 + 3*z1 - 1",
        "exp(i*z1)*cos(z2)",
        "(z1+z2)^3 / (1 - z1*z2)",
        "2+3*i",
        "log(1+z1^2)",
    ]
    for src in sources:
        dim = 2 if "z2" in src else 1
        first = parse(src, dim)
        again = parse(to_source(first), dim)
        assert first == again


def test_jet_value_matches_evaluate():
    f = parse("cos(z1)/(2-z1)", 1)
    z = (0.3 + 0.4j,)
    assert evaluate_jet(f, z).value == evaluate(f, z)


def test_evaluate_overflow_raises():
    from normlab import EvaluationError

    with pytest.raises(EvaluationError):
        evaluate(parse("exp(exp(z1))", 1), (20 + 0j,))
