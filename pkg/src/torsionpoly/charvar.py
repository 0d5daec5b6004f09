"""A-polynomials and character-variety relations.

The eigenvalue-trace bridge tr = e + 1/e is realized by adjoining the
quadratic e^2 - tr*e + 1 and eliminating with resultants, never by taking
square roots.  The geometric branch of a trace relation is selected by a
numeric hint near the discrete faithful representation.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import List, Tuple

import mpmath as mp

from .numfield import rational_reconstruct, roots_numeric
from .polys import (
    MultiPoly, UniPoly, divides, exact_div, gcd_poly, normalize_sign,
    resultant, squarefree_primitive,
)

E_MU, E_LAMBDA = "em", "el"
TR_MU, TR_LAMBDA = "x", "y"


class CharVarError(ValueError):
    pass


@dataclass(frozen=True)
class APoly:
    """Normalized A-polynomial in the eigenvalue variables (em, el)."""

    poly: MultiPoly

    def eval_at(self, em, el):
        return self.poly.eval({E_MU: em, E_LAMBDA: el})


def apoly_normalize(laurent_terms: List[Tuple[int, int, object]]) -> APoly:
    """Clear a Laurent expression sum c*em^a*el^b into a normalized APoly.

    Denominators are cleared by a unit monomial, minimal exponents are shifted
    to zero and the leading graded-lex coefficient is made positive.
    """
    terms = [(a, b, Fraction(c)) for a, b, c in laurent_terms if Fraction(c) != 0]
    if not terms:
        raise CharVarError("all-zero A-polynomial input")
    min_a = min(a for a, _, _ in terms)
    min_b = min(b for _, b, _ in terms)
    shifted = {}
    for a, b, c in terms:
        key = (a - min_a, b - min_b)
        shifted[key] = shifted.get(key, Fraction(0)) + c
    poly = MultiPoly((E_MU, E_LAMBDA), shifted)
    if poly.is_zero():
        raise CharVarError("all-zero A-polynomial input")
    # quotient out any residual unit monomial after cancellation
    min_a = min(m[0] for m in poly.terms)
    min_b = min(m[1] for m in poly.terms)
    if min_a or min_b:
        poly = MultiPoly((E_MU, E_LAMBDA),
                         {(m[0] - min_a, m[1] - min_b): c for m, c in poly.terms.items()})
    return APoly(normalize_sign(poly))


@dataclass(frozen=True)
class TraceRelation:
    """Squarefree primitive polynomial relation in (x, y) = (tr_mu, tr_lambda)."""

    poly: MultiPoly


def trace_relation(A: APoly) -> TraceRelation:
    """Eliminate em then el from {A, em^2 - x*em + 1, el^2 - y*el + 1}.

    Every (tr_mu, tr_lambda) pair of a representation on A = 0 is a zero of
    the output.
    """
    allvars = (E_MU, E_LAMBDA, TR_MU, TR_LAMBDA)
    a = A.poly.with_vars(allvars)
    qm = MultiPoly(allvars, {(2, 0, 0, 0): 1, (1, 0, 1, 0): -1, (0, 0, 0, 0): 1})
    ql = MultiPoly(allvars, {(0, 2, 0, 0): 1, (0, 1, 0, 1): -1, (0, 0, 0, 0): 1})
    r1 = resultant(a, qm, E_MU)
    if r1.is_zero():
        raise CharVarError("eliminant vanished while removing em")
    r2 = resultant(r1, ql, E_LAMBDA)
    if r2.is_zero():
        raise CharVarError("trace eliminant is identically zero")
    r2 = r2.drop_vars().with_vars((TR_MU, TR_LAMBDA))
    return TraceRelation(squarefree_primitive(r2, TR_LAMBDA))


class NoGraphBranch:
    """Sentinel: the hinted component is not the graph of a polynomial in x."""

    def __init__(self, reason: str):
        self.reason = reason

    def __repr__(self):
        return f"NoGraphBranch({self.reason!r})"


def geometric_branch(R: TraceRelation, hint: Tuple[float, float],
                     tol: float = 1e-6, digits: int = 48):
    """Extract y(x) for the linear-in-y factor of R through the hint.

    Branch values at rational sample points are reconstructed exactly and the
    candidate factor is confirmed by exact division; no bivariate
    factorization is attempted.
    """
    poly = R.poly
    x0, y0 = mp.mpc(hint[0]), mp.mpc(hint[1])
    scale = max(abs(mp.mpf(c.numerator) / mp.mpf(c.denominator)) for c in poly.terms.values())
    resid = abs(poly.eval({TR_MU: x0, TR_LAMBDA: y0}))
    if resid > tol * max(1, scale):
        raise CharVarError("hint off-variety")
    deg_y = poly.degree_in(TR_LAMBDA)
    if deg_y == 0:
        raise CharVarError("relation has no y dependence")
    if deg_y == 1:
        coeffs = poly.coeffs_wrt(TR_LAMBDA)
        lead = coeffs[1].drop_vars()
        if not lead.is_constant():
            return NoGraphBranch("leading y coefficient is not constant")
        c1 = lead.constant_value()
        q = exact_div(-coeffs.get(0, MultiPoly.zero((TR_MU,))),
                      MultiPoly.constant((TR_MU,), c1))
        return UniPoly.from_multi(q.with_vars((TR_MU,)))
    # sample the hinted branch at rational x values, reconstruct y exactly
    deg_x = poly.degree_in(TR_MU)
    samples = []
    ycur = y0
    for k in range(deg_x + 1):
        xs = Fraction(hint[0]).limit_denominator(64) + Fraction(k, 16)
        ys = _branch_root(poly, xs, ycur, digits)
        if ys is None:
            return NoGraphBranch("branch continuation lost the hinted component")
        yq = rational_reconstruct(mp.re(ys), 10 ** (digits // 4))
        if yq is None or abs(mp.im(ys)) > mp.mpf(10) ** (-digits // 2):
            return NoGraphBranch("branch values are not rational; no linear factor")
        samples.append((xs, yq))
        ycur = ys
    q = _lagrange(samples)
    cand = MultiPoly.var((TR_MU, TR_LAMBDA), TR_LAMBDA) - q.to_multi((TR_MU, TR_LAMBDA))
    if divides(cand, poly):
        return q
    return NoGraphBranch("no linear-in-y factor through the hint")


def _branch_root(poly: MultiPoly, xval: Fraction, near, digits: int):
    stripe = poly.substitute(TR_MU, MultiPoly.constant((TR_MU,), xval))
    uni = UniPoly.from_multi(stripe)
    if uni.degree() < 1:
        return None
    roots = roots_numeric(uni, digits)
    return min(roots, key=lambda r: abs(r - near))


def _lagrange(samples: List[Tuple[Fraction, Fraction]]) -> UniPoly:
    acc = UniPoly(TR_MU, [])
    for i, (xi, yi) in enumerate(samples):
        term = UniPoly(TR_MU, [yi])
        for j, (xj, _) in enumerate(samples):
            if j == i:
                continue
            term = term * UniPoly(TR_MU, [-xj, 1]) * (1 / (xi - xj))
        acc = acc + term
    return acc


@dataclass(frozen=True)
class ChangeFactor:
    """Reduced rational function pair (num, den) in x with
    (tau_mu / tau_lambda)^2 = num/den on the branch."""

    num: MultiPoly
    den: MultiPoly

    def eval_at(self, x):
        return self.num.eval({TR_MU: x}) / self.den.eval({TR_MU: x})


def change_curve_sq(branch: UniPoly) -> ChangeFactor:
    """((y(x)^2 - 4) / (x^2 - 4)) * (1 / y'(x))^2 as a reduced pair."""
    if branch.degree() < 1:
        raise CharVarError("branch is constant")
    dy = branch.derivative()
    if dy.is_zero():
        raise CharVarError("branch derivative is identically zero")
    y = branch.to_multi((TR_MU,))
    x = MultiPoly.var((TR_MU,), TR_MU)
    num = y * y - 4
    den = (x * x - 4) * (dy.to_multi((TR_MU,)) ** 2)
    g = gcd_poly(num, den)
    num, den = exact_div(num, g), exact_div(den, g)
    # fix the representative: integer-primitive den with positive lead
    dnorm = normalize_sign(den)
    unit = exact_div(den, dnorm)
    return ChangeFactor(exact_div(num, unit), dnorm)


def change_curve_apoly(A: APoly, samples, tol: float = 1e-8):
    """Evaluate (el/em) * (dA/del) / (dA/dem) at points of A = 0.

    Per-sample output is either a complex ratio or an error string for
    singular points; a sample off the variety raises.
    """
    dA_m = A.poly.derivative(E_MU)
    dA_l = A.poly.derivative(E_LAMBDA)
    scale = max(abs(mp.mpf(c.numerator) / mp.mpf(c.denominator))
                for c in A.poly.terms.values())
    out = []
    for em, el in samples:
        em, el = mp.mpc(em), mp.mpc(el)
        if abs(A.eval_at(em, el)) > tol * max(1, scale) * max(1, abs(em)) ** A.poly.degree_in(E_MU):
            raise CharVarError(f"sample ({em}, {el}) violates A = 0")
        dm = dA_m.eval({E_MU: em, E_LAMBDA: el})
        dl = dA_l.eval({E_MU: em, E_LAMBDA: el})
        if abs(dm) < tol * max(1, scale):
            out.append("singular point: dA/dem vanishes")
            continue
        out.append((el / em) * dl / dm)
    return out
