import random
from fractions import Fraction

import mpmath as mp
import pytest

from torsionpoly.polys import (
    MultiPoly, UniPoly, PolyError, exact_div, divides, from_text, gcd_poly,
    normalize_sign, resultant, squarefree_primitive, to_text,
)


def P(text, variables=None):
    return from_text(text, variables)


def random_poly(rng, variables, max_deg=2, max_terms=4):
    terms = {}
    for _ in range(rng.randint(1, max_terms)):
        mono = tuple(rng.randint(0, max_deg) for _ in variables)
        terms[mono] = Fraction(rng.randint(-5, 5), rng.randint(1, 4))
    return MultiPoly(variables, terms)


# -- arithmetic ---------------------------------------------------------------

def test_difference_of_squares():
    x = MultiPoly.var(["x"], "x")
    assert (x + 1) * (x - 1) == P("x^2 - 1")


def test_square_expansion_matches_repeated_multiplication():
    # (2x^2-5)^2 via pow against the long way around
    p = P("2*x^2 - 5")
    by_pow = p ** 2
    by_mul = p * p
    assert by_pow == by_mul == P("4*x^4 - 20*x^2 + 25")
    # same polynomial as 17 + 4y with y = x^4 - 5x^2 + 2
    y = P("x^4 - 5*x^2 + 2")
    assert 17 + 4 * y == by_pow


def test_additive_identity():
    rng = random.Random(0)
    p = random_poly(rng, ("x", "y"))
    assert p + MultiPoly.zero(("x", "y")) == p


def test_negative_exponent_rejected():
    p = P("x + 1")
    with pytest.raises(PolyError, match="negative exponent unsupported"):
        p ** -1


def test_ring_laws_random():
    rng = random.Random(7)
    for _ in range(100):
        a = random_poly(rng, ("x", "y"))
        b = random_poly(rng, ("x", "y"))
        c = random_poly(rng, ("x", "y"))
        assert (a + b) + c == a + (b + c)
        assert a * (b + c) == a * b + a * c
        assert a * b == b * a


def test_variable_union_merge():
    p = P("x + 1", ["x"])
    q = P("y - 2", ["y"])
    s = p + q
    assert s.vars == ("x", "y")
    assert s == P("x + y - 1", ["x", "y"])


# -- evaluation ---------------------------------------------------------------

def test_eval_reference_values():
    # tau^2 = 17 + 4y at y = -2 gives 9; branch value at x = 2 gives -2
    assert P("17 + 4*y").eval({"y": Fraction(-2)}) == 9
    assert P("x^4 - 5*x^2 + 2").eval({"x": Fraction(2)}) == -2


def test_eval_constant_term_at_zero():
    rng = random.Random(3)
    p = random_poly(rng, ("x", "y"))
    zero = {"x": Fraction(0), "y": Fraction(0)}
    assert p.eval(zero) == p.terms.get((0, 0), Fraction(0))


def test_eval_unassigned_variable_named():
    with pytest.raises(PolyError, match="y"):
        P("x + y").eval({"x": Fraction(1)})


def test_eval_complex():
    p = P("x^2 + 1")
    v = p.eval({"x": mp.mpc(0, 1)})
    assert abs(v) < 1e-30


# -- derivative ---------------------------------------------------------------

def test_derivative_power_rule():
    assert P("x^4 - 5*x^2 + 2").derivative("x") == P("4*x^3 - 10*x")


def test_derivative_of_constant_is_zero():
    p = MultiPoly.constant(("x",), 5)
    assert p.derivative("x").is_zero()


def test_derivative_finite_difference_oracle():
    rng = random.Random(11)
    p = random_poly(rng, ("x", "y"), max_deg=4, max_terms=6)
    dp = p.derivative("x")
    h = Fraction(1, 10**8)
    for _ in range(5):
        x0 = Fraction(rng.randint(-6, 6), rng.randint(1, 5))
        y0 = Fraction(rng.randint(-6, 6), rng.randint(1, 5))
        fd = (p.eval({"x": x0 + h, "y": y0}) - p.eval({"x": x0 - h, "y": y0})) / (2 * h)
        exact = dp.eval({"x": x0, "y": y0})
        scale = max(1, abs(float(exact)))
        assert abs(float(fd - exact)) / scale < 1e-6


# -- substitution ---------------------------------------------------------------

def test_substitute_reference_chain():
    ty = P("17 + 4*y", ["y"])
    branch = P("x^4 - 5*x^2 + 2", ["x"])
    assert ty.substitute("y", branch) == P("4*x^4 - 20*x^2 + 25", ["y", "x"])


def test_substitute_identity():
    rng = random.Random(5)
    p = random_poly(rng, ("x", "y"))
    assert p.substitute("x", MultiPoly.var(("x",), "x")) == p


def test_substitute_factored_form_sampling_oracle():
    # (y^2 - 4)[y := x^4-5x^2+2] equals x^2 (x^2-5)(x^2-1)(x^2-4)
    sub = P("y^2 - 4", ["y"]).substitute("y", P("x^4 - 5*x^2 + 2", ["x"]))
    x = MultiPoly.var(("x",), "x")
    expect = (x ** 2) * (x ** 2 - 5) * (x ** 2 - 1) * (x ** 2 - 4)
    assert sub == expect
    rng = random.Random(2)
    for _ in range(5):
        v = Fraction(rng.randint(1, 30), rng.randint(1, 7))
        assert sub.eval({"x": v}) == expect.eval({"x": v})


# -- resultants ---------------------------------------------------------------

def test_resultant_linear_case():
    r = resultant(P("x - 2"), P("x - 3"), "x")
    assert r.constant_value() == -1


def test_resultant_shared_root_vanishes():
    r = resultant(P("x^2 - 1"), P("x - 1"), "x")
    assert r.is_zero()


def test_resultant_constant_rejected():
    with pytest.raises(PolyError, match="nothing to eliminate"):
        resultant(P("x + 1"), P("3", ["x"]), "x")


def test_resultant_vanishes_iff_common_factor():
    rng = random.Random(13)
    for _ in range(10):
        common = random_poly(rng, ("x",), max_deg=2, max_terms=3)
        if common.degree_in("x") == 0:
            common = common + MultiPoly.var(("x",), "x")
        a = random_poly(rng, ("x",), max_deg=2, max_terms=3) * common
        b = random_poly(rng, ("x",), max_deg=2, max_terms=3) * common
        if a.degree_in("x") == 0 or b.degree_in("x") == 0:
            continue
        assert resultant(a, b, "x").is_zero()


def test_resultant_root_product_oracle():
    # Res_x(p, q) = lc(p)^deg(q) * prod q(alpha_i) over numeric roots of p
    rng = random.Random(17)
    for _ in range(8):
        while True:
            p = random_poly(rng, ("x",), max_deg=4, max_terms=5)
            q = random_poly(rng, ("x",), max_deg=4, max_terms=5)
            if p.degree_in("x") >= 1 and q.degree_in("x") >= 1:
                break
        res = resultant(p, q, "x").constant_value()
        pu = UniPoly.from_multi(p)
        qu = UniPoly.from_multi(q)
        roots = mp.polyroots([mp.mpf(c.numerator) / mp.mpf(c.denominator)
                              for c in reversed(pu.coeffs)], maxsteps=200, extraprec=80)
        prod = mp.mpf(1)
        lc = mp.mpf(pu.lead().numerator) / mp.mpf(pu.lead().denominator)
        acc = lc ** qu.degree()
        for r in roots:
            acc *= qu.eval(r)
        assert abs(acc - mp.mpf(res.numerator) / mp.mpf(res.denominator)) < 1e-6 * max(1, abs(res))


def test_resultant_multivariate_entries():
    # eliminating e from {e^2 - x e + 1, e - 2} leaves 5 - 2x
    a = P("e^2 - x*e + 1", ["e", "x"])
    b = P("e - 2", ["e", "x"])
    r = resultant(a, b, "e")
    assert r == P("5 - 2*x", ["x"])


# -- squarefree / primitive -----------------------------------------------------

def test_squarefree_strips_multiplicity():
    x = MultiPoly.var(("x",), "x")
    p = (x - 1) ** 2 * (x + 2)
    sf = squarefree_primitive(p, "x")
    assert sf == normalize_sign((x - 1) * (x + 2))


def test_squarefree_content_invariance():
    x = MultiPoly.var(("x",), "x")
    p = (x - 1) * (x + 2)
    assert squarefree_primitive(p * Fraction(7, 3), "x") == squarefree_primitive(p, "x")


def test_squarefree_zero_rejected():
    with pytest.raises(PolyError):
        squarefree_primitive(MultiPoly.zero(("x",)), "x")


def test_squarefree_drops_mainvar_free_content():
    p = P("y^2", ["y"]) * P("x^2 - 9", ["x"])
    sf = squarefree_primitive(p, "x")
    assert sf == P("x^2 - 9", ["y", "x"])


def test_gcd_poly_bivariate():
    x = MultiPoly.var(("x", "y"), "x")
    y = MultiPoly.var(("x", "y"), "y")
    g = x * y + 1
    a = g * (x + y)
    b = g * (x - y + 2)
    assert gcd_poly(a, b) == normalize_sign(g)


def test_exact_division():
    a = P("x^2 - 1")
    b = P("x - 1")
    assert exact_div(a, b) == P("x + 1")
    assert divides(b, a)
    assert not divides(P("x - 3"), a)


# -- canonical text -------------------------------------------------------------

def test_canonical_text_example_shape():
    p = P("-1*z^4 + 6*z^2 + 4*t^2 - 5", ["z", "t"])
    assert to_text(p) == "-1*z^4 + 6*z^2 + 4*t^2 - 5"


def test_text_roundtrip_random():
    rng = random.Random(23)
    for _ in range(40):
        p = random_poly(rng, ("x", "y", "z"), max_deg=3, max_terms=5)
        assert from_text(to_text(p), ("x", "y", "z")) == p


def test_text_rational_coefficients():
    p = MultiPoly(("x",), {(1,): Fraction(3, 2), (0,): Fraction(-1, 7)})
    txt = to_text(p)
    assert txt == "3/2*x - 1/7"
    assert from_text(txt, ("x",)) == p


# -- UniPoly --------------------------------------------------------------------

def test_unipoly_divmod_gcd():
    f = UniPoly("t", [(-1), 0, 1])          # t^2 - 1
    g = UniPoly("t", [1, 1])                 # t + 1
    q, r = f.divmod(g)
    assert r.is_zero() and q == UniPoly("t", [-1, 1])
    assert f.gcd(g) == g.monic()


def test_unipoly_primitive_and_squarefree():
    f = UniPoly("t", [Fraction(2, 3), Fraction(4, 3)])
    assert f.primitive() == UniPoly("t", [1, 2])
    g = UniPoly("t", [1, 2, 1])              # (t+1)^2
    assert g.squarefree() == UniPoly("t", [1, 1])


def test_unipoly_multi_roundtrip():
    f = UniPoly("t", [5, 0, -3, 1])
    assert UniPoly.from_multi(f.to_multi()) == f


def test_bareiss_matches_cofactor_expansion():
    from torsionpoly.polys import bareiss_det

    def cofactor_det(rows):
        n = len(rows)
        if n == 1:
            return rows[0][0]
        acc = MultiPoly.zero(rows[0][0].vars)
        for j in range(n):
            minor = [r[:j] + r[j + 1:] for r in rows[1:]]
            term = rows[0][j] * cofactor_det(minor)
            acc = acc + (term if j % 2 == 0 else -term)
        return acc

    rng = random.Random(41)
    for _ in range(6):
        n = rng.randint(2, 4)
        rows = [[random_poly(rng, ("x", "y"), max_deg=1, max_terms=2)
                 for _ in range(n)] for _ in range(n)]
        assert bareiss_det(rows) == cofactor_det(rows)


def test_gcd_poly_divides_common_multiple():
    rng = random.Random(43)
    for _ in range(8):
        g = random_poly(rng, ("x", "y"), max_deg=1, max_terms=2)
        if g.is_zero() or g.is_constant():
            g = g + MultiPoly.var(("x", "y"), "x")
        a = g * random_poly(rng, ("x", "y"), max_deg=1, max_terms=2)
        b = g * random_poly(rng, ("x", "y"), max_deg=1, max_terms=2)
        if a.is_zero() or b.is_zero():
            continue
        d = gcd_poly(a, b)
        assert divides(normalize_sign(g), d) or divides(g, d)
        assert divides(d, a) and divides(d, b)


def test_unipoly_divmod_property():
    rng = random.Random(47)
    for _ in range(20):
        a = UniPoly("t", [Fraction(rng.randint(-6, 6), rng.randint(1, 3))
                          for _ in range(rng.randint(1, 6))])
        b = UniPoly("t", [Fraction(rng.randint(-6, 6), rng.randint(1, 3))
                          for _ in range(rng.randint(1, 4))])
        if b.is_zero():
            continue
        q, r = a.divmod(b)
        assert q * b + r == a
        assert r.is_zero() or r.degree() < b.degree()


def test_parser_accepts_loose_whitespace_and_bare_terms():
    assert P("x^2+1") == P("x^2 + 1")
    assert P("  - x +  2 ") == P("2 - x")
    assert P("x") == MultiPoly.var(("x",), "x")
    assert P("-x^3") == -(MultiPoly.var(("x",), "x") ** 3)


def test_parser_rejects_garbage():
    import pytest as _pytest
    for bad in ("", "x +", "^2", "x^^2"):
        with _pytest.raises(PolyError):
            P(bad)


def test_resultant_nonzero_for_coprime_pairs():
    rng = random.Random(53)
    checked = 0
    while checked < 10:
        p = random_poly(rng, ("x",), max_deg=3, max_terms=4)
        q = random_poly(rng, ("x",), max_deg=3, max_terms=4)
        if p.degree_in("x") == 0 or q.degree_in("x") == 0:
            continue
        g = UniPoly.from_multi(p).gcd(UniPoly.from_multi(q))
        if g.degree() > 0:
            continue
        assert not resultant(p, q, "x").is_zero()
        checked += 1
