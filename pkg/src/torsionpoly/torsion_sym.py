"""Symbolic torsion pipeline.

Parametrized torsion expressions are turned into torsion-trace polynomials by
resultant elimination of the auxiliary variables, transported between
peripheral curves through the change-of-curve factor, and specialized at the
discrete faithful representation.  Torsion polynomials are only defined up to
sign and rational content, so all equality contracts are on squarefree
primitive parts.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Optional, Tuple

import mpmath as mp

from .charvar import TR_MU, ChangeFactor
from .numfield import AlgebraicNumber, FieldElement, _rational_roots, roots_numeric
from .polys import MultiPoly, PolyError, UniPoly, resultant, squarefree_primitive

TAU = "tau"
TAU_OLD = "tau0"


class TorsionSymError(ValueError):
    pass


@dataclass(frozen=True)
class ParamTorsion:
    """Torsion parametrized by auxiliary variables on a constraint variety."""

    tau_expr: MultiPoly
    constraints: Tuple[MultiPoly, ...]
    aux_vars: Tuple[str, ...]
    trace_var: str
    hints: Dict[str, complex]

    @classmethod
    def create(cls, tau_expr, constraints, aux_vars, trace_var, hints,
               hint_tol: float = 1e-6):
        aux_used = [v for v in aux_vars if tau_expr.degree_in(v) > 0]
        if aux_used and not constraints:
            raise TorsionSymError("auxiliary variables without constraints")
        for c in constraints:
            val = c.eval({k: mp.mpc(v) for k, v in hints.items()})
            scale = max(abs(mp.mpf(x.numerator) / mp.mpf(x.denominator))
                        for x in c.terms.values())
            if abs(val) > hint_tol * max(1, scale):
                raise TorsionSymError(
                    f"hint violates constraint (residual {mp.nstr(abs(val), 4)})")
        return cls(tau_expr, tuple(constraints), tuple(aux_vars), trace_var,
                   dict(hints))


@dataclass(frozen=True)
class TPoly:
    """Squarefree primitive torsion-trace polynomial T(tau, trace)."""

    poly: MultiPoly
    trace_var: str

    def __post_init__(self):
        if self.poly.degree_in(TAU) == 0:
            raise TorsionSymError("torsion polynomial without tau dependence")


def _branch_samples(pt: ParamTorsion, n: int = 5, digits: int = 48):
    """Newton-refined (tau, trace) samples along the hinted branch."""
    trace0 = Fraction(mp.nstr(mp.re(mp.mpc(pt.hints[pt.trace_var])), 10)).limit_denominator(64)
    if len(pt.aux_vars) != 1 or len(pt.constraints) != 1:
        # sampling only needed for the single-parameter corpus shape
        return []
    u = pt.aux_vars[0]
    ucur = mp.mpc(pt.hints[u])
    out = []
    constraint = pt.constraints[0]
    for k in range(n):
        tv = trace0 + Fraction(k, 16)
        uni = UniPoly.from_multi(
            constraint.substitute(pt.trace_var,
                                  MultiPoly.constant((pt.trace_var,), tv)))
        roots = roots_numeric(uni, digits)
        ucur = min(roots, key=lambda r: abs(r - ucur))
        tau_val = pt.tau_expr.eval({u: ucur, pt.trace_var: mp.mpmathify(tv)})
        out.append((tau_val, mp.mpmathify(tv)))
    return out


def _check_annihilates(poly: MultiPoly, samples, trace_var: str,
                       tol: float = 1e-8):
    with mp.workdps(40):
        scale = max(abs(mp.mpf(c.numerator) / mp.mpf(c.denominator))
                    for c in poly.terms.values())
        for tau_val, tv in samples:
            mag = max(mp.mpf(1), abs(tau_val)) ** poly.degree_in(TAU) \
                * max(mp.mpf(1), abs(tv)) ** poly.degree_in(trace_var)
            val = poly.eval({TAU: tau_val, trace_var: tv})
            if abs(val) > tol * scale * mag:
                return False
    return True


def eliminate_T(pt: ParamTorsion, digits: int = 48) -> TPoly:
    """Eliminate the auxiliary variables from {tau - tau_expr, constraints}.

    The normalized eliminant is verified to vanish along the hinted branch.
    """
    allvars = (TAU,) + pt.aux_vars + (pt.trace_var,)
    elim = MultiPoly.var(allvars, TAU) - pt.tau_expr.with_vars(allvars)
    remaining = [c.with_vars(allvars) for c in pt.constraints]
    for u in pt.aux_vars:
        users = [c for c in remaining if c.degree_in(u) > 0]
        if not users:
            if elim.degree_in(u) > 0:
                raise TorsionSymError(f"no constraint eliminates {u!r}")
            continue
        pivot = users[0]
        if elim.degree_in(u) > 0:
            elim = resultant(pivot, elim, u)
        remaining = [resultant(pivot, c, u) if c.degree_in(u) > 0 else c
                     for c in remaining if c is not pivot]
        if elim.is_zero():
            raise TorsionSymError("degenerate parametrization")
    elim = elim.drop_vars().with_vars((TAU, pt.trace_var))
    if elim.is_zero() or elim.degree_in(TAU) == 0:
        raise TorsionSymError("degenerate parametrization")
    out = squarefree_primitive(elim, TAU)
    samples = _branch_samples(pt, digits=digits)
    if samples and not _check_annihilates(out, samples, pt.trace_var):
        raise TorsionSymError("hint inconsistent")
    return TPoly(out, pt.trace_var)


def transport_T(T_src: TPoly, factor: ChangeFactor, branch: UniPoly,
                new_var: str = TR_MU) -> TPoly:
    """Transport T across tau_new^2 * den = tau_old^2 * num on the branch."""
    x = branch.var
    allvars = (TAU, TAU_OLD, x)
    src = _rename(T_src.poly, TAU, TAU_OLD)
    subst = src.substitute(T_src.trace_var, branch.to_multi((x,))) \
        .drop_vars().with_vars((TAU_OLD, x)).with_vars(allvars)
    tau_new = MultiPoly.var(allvars, TAU)
    tau_old = MultiPoly.var(allvars, TAU_OLD)
    G = tau_new ** 2 * factor.den.with_vars(allvars) \
        - tau_old ** 2 * factor.num.with_vars(allvars)
    if subst.degree_in(TAU_OLD) == 0:
        raise TorsionSymError("source polynomial lost its tau dependence")
    elim = resultant(subst, G, TAU_OLD)
    if elim.is_zero():
        raise TorsionSymError("degenerate parametrization")
    elim = elim.drop_vars().with_vars((TAU, x))
    out = squarefree_primitive(elim, TAU)
    if out.degree_in(TAU) == 0:
        raise TorsionSymError("transported polynomial lost its tau dependence")
    if not _transport_vanishes(out, subst, factor, x):
        raise TorsionSymError("hint inconsistent")
    if new_var != x:
        out = _rename(out, x, new_var)
    return TPoly(out, new_var)


def _transport_vanishes(out, subst, factor, x, tol=1e-8, digits: int = 48):
    """Check annihilation of every (tau_new, x) pair over sample x values."""
    for xs in (Fraction(9, 4), Fraction(5, 2), Fraction(13, 6)):
        den_val = factor.den.eval({x: xs})
        num_val = factor.num.eval({x: xs})
        if den_val == 0:
            continue
        uni = UniPoly.from_multi(
            subst.substitute(x, MultiPoly.constant((x,), xs))
            .drop_vars().with_vars((TAU_OLD,)))
        if uni.degree() < 1:
            continue
        for told in roots_numeric(uni, digits):
            tnew = mp.sqrt(told ** 2 * mp.mpmathify(num_val) / mp.mpmathify(den_val))
            ok = any(_check_annihilates(out, [(s * tnew, mp.mpmathify(xs))], x, tol)
                     for s in (1, -1))
            if not ok:
                return False
    return True


def _rename(p: MultiPoly, old: str, new: str) -> MultiPoly:
    if old not in p.vars:
        return p
    if new in p.vars:
        raise PolyError(f"variable {new!r} already present")
    return MultiPoly(tuple(new if v == old else v for v in p.vars), p.terms)


def specialize(T: TPoly, trace_value: Fraction) -> UniPoly:
    """Exact substitution of the trace variable; primitive with positive lead."""
    sub = T.poly.substitute(T.trace_var,
                            MultiPoly.constant((T.trace_var,), Fraction(trace_value)))
    uni = UniPoly.from_multi(sub.drop_vars().with_vars((TAU,)))
    if uni.is_zero():
        raise TorsionSymError(
            f"torsion polynomial vanishes identically at trace {trace_value}")
    return uni.primitive()


@dataclass(frozen=True)
class PositiveRealRoot:
    """Root selection rule: the positive real root (4_1 longitude convention)."""

    tol: float = 1e-9


@dataclass(frozen=True)
class NearestToHint:
    """Root selection rule: nearest to a stored numeric hint."""

    hint: complex
    ambiguity_tol: float = 1e-6


@dataclass(frozen=True)
class Rho0Value:
    value: AlgebraicNumber
    branch_note: str
    field_expr: Optional[FieldElement] = None


def rho0_value(spec_poly: UniPoly, selection, digits: int = 64) -> Rho0Value:
    """Select one root of the specialized polynomial and wrap it exactly."""
    if spec_poly.degree() < 1:
        raise TorsionSymError("specialized polynomial is constant")
    sf = spec_poly.squarefree()
    roots = roots_numeric(sf, digits)
    if isinstance(selection, PositiveRealRoot):
        cands = [r for r in roots
                 if abs(mp.im(r)) < selection.tol * max(1, abs(r)) and mp.re(r) > 0]
        if not cands:
            raise TorsionSymError("no positive real root")
        if len(cands) > 1:
            raise TorsionSymError("ambiguous selection: several positive real roots")
        chosen = cands[0]
        note = "positive real root rule"
    elif isinstance(selection, NearestToHint):
        hint = mp.mpc(selection.hint)
        by_dist = sorted(roots, key=lambda r: abs(r - hint))
        chosen = by_dist[0]
        if len(by_dist) > 1:
            d0, d1 = abs(by_dist[0] - hint), abs(by_dist[1] - hint)
            if d1 - d0 < selection.ambiguity_tol * max(1, abs(chosen)):
                raise TorsionSymError("ambiguous selection: two roots near hint")
        note = f"root nearest to hint {mp.nstr(hint, 8)}"
    else:
        raise TorsionSymError(f"unknown selection rule {selection!r}")
    minpoly = _exact_minpoly_factor(sf, chosen, digits)
    return Rho0Value(AlgebraicNumber.create(minpoly, chosen, digits), note)


def _exact_minpoly_factor(sf: UniPoly, root, digits: int) -> UniPoly:
    """Exact factor of a squarefree polynomial containing the selected root.

    Rational roots are split off exactly; the remaining part is asserted
    irreducible, which the rational-root check settles through degree 3.
    """
    rationals = _rational_roots(sf, min(digits, 48))
    for q in rationals:
        if abs(mp.mpc(root) - mp.mpf(q.numerator) / mp.mpf(q.denominator)) \
                < mp.mpf(10) ** (-digits // 3):
            return UniPoly(sf.var, [-q, 1])
    rest = sf
    for q in rationals:
        rest = rest.divmod(UniPoly(sf.var, [-q, 1]))[0]
    rest = rest.primitive()
    if rest.degree() > 3:
        raise TorsionSymError(
            "cannot certify irreducibility above degree 3 without factorization")
    return rest
