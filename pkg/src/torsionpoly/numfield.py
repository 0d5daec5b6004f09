"""Exact algebraic numbers and number fields.

A NumberField is Q[x]/(f) for a monic squarefree f without rational roots,
together with one complex root chosen as the embedding.  Field membership of
an algebraic number is decided by a high-precision linear solve over all
embeddings followed by rational reconstruction, and then verified exactly
through minimal polynomials; a failed reconstruction is reported, never
guessed around.

Irreducibility of defining polynomials is asserted, not proven; squarefreeness
and absence of rational roots are checked (sufficient at the field degrees
this package ships with).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Tuple

import mpmath as mp

from .polys import UniPoly

DEFAULT_DIGITS = 64
MAX_DIGITS = 512


class NumFieldError(ValueError):
    pass


def _to_mpf(c: Fraction):
    return mp.mpf(c.numerator) / mp.mpf(c.denominator)


def _poly_norm(p: UniPoly):
    return max(abs(_to_mpf(c)) for c in p.coeffs)


def roots_numeric(p: UniPoly, digits: int = DEFAULT_DIGITS):
    """All complex roots of p with multiplicity, each with residual
    |p(root)| <= 10^-digits * max|coeff|.  Sorted by (Re, Im)."""
    if p.is_zero():
        raise NumFieldError("zero polynomial has no well-defined roots")
    if p.degree() < 1:
        return []
    target = mp.mpf(10) ** (-digits) * _poly_norm(p)
    sf = p.squarefree()
    multiple = sf.degree() < p.degree()
    dps = max(digits + 20, 30)
    while dps <= 8 * MAX_DIGITS:
        with mp.workdps(dps):
            coeffs = [_to_mpf(c) for c in reversed(sf.coeffs)]
            try:
                roots = mp.polyroots(coeffs, maxsteps=300, extraprec=3 * dps)
            except mp.libmp.NoConvergence:
                dps *= 2
                continue
            if multiple:
                roots = [r for root in roots for r in [root] * _multiplicity(p, root)]
            roots = sorted(roots, key=lambda z: (mp.re(z), mp.im(z)))
            if all(abs(p.eval(r)) <= target for r in roots):
                return [mp.mpc(r) for r in roots]
        dps *= 2
    raise NumFieldError(f"root refinement failed at {digits} digits")


def _multiplicity(p: UniPoly, root) -> int:
    """Multiplicity of a (numerically known) root via the exact gcd chain."""
    mult = 1
    g = p
    while True:
        g = g.gcd(g.derivative())
        if g.degree() <= 0:
            return mult
        if abs(g.eval(root)) > mp.mpf(10) ** (-mp.mp.dps // 2) * _poly_norm(g):
            return mult
        mult += 1


def rational_reconstruct(v, denominator_bound: int) -> Optional[Fraction]:
    """Nearest continued-fraction convergent p/q with q <= bound and
    |v - p/q| < 1/(2 q bound); None on failure."""
    x = mp.mpf(v)
    if not mp.isfinite(x):
        return None
    a0 = mp.floor(x)
    p_prev, q_prev = Fraction(1), Fraction(0)
    p_cur, q_cur = Fraction(int(a0)), Fraction(1)
    frac = x - a0
    for _ in range(200):
        if q_cur > denominator_bound:
            break
        cand = Fraction(p_cur, q_cur) if q_cur else None
        if cand is not None:
            err = abs(x - _to_mpf(cand))
            if err < mp.mpf(1) / (2 * cand.denominator * denominator_bound):
                return cand
        if frac == 0:
            break
        inv = 1 / frac
        a = mp.floor(inv)
        frac = inv - a
        p_cur, p_prev = Fraction(int(a)) * p_cur + p_prev, p_cur
        q_cur, q_prev = Fraction(int(a)) * q_cur + q_prev, q_cur
    return None


def _rational_roots(p: UniPoly, digits: int = 40) -> List[Fraction]:
    """Exact rational roots, found numerically and verified exactly."""
    if p.degree() < 1:
        return []
    prim = p.primitive()
    bound = abs(prim.lead().numerator) * 2 + 2
    found = []
    for r in roots_numeric(prim, digits):
        if abs(mp.im(r)) > mp.mpf(10) ** (-digits // 2):
            continue
        cand = rational_reconstruct(mp.re(r), bound)
        if cand is not None and prim.eval(cand) == 0 and cand not in found:
            found.append(cand)
    return found


@dataclass(frozen=True)
class NumberField:
    """Q[x]/(defining_poly) with a chosen complex embedding of x."""

    defining_poly: UniPoly
    embedding: object            # mp.mpc
    isolation_radius: object     # mp.mpf

    @classmethod
    def create(cls, poly: UniPoly, embedding_hint=None, digits: int = DEFAULT_DIGITS):
        poly = poly.primitive()
        if poly.degree() < 2:
            raise NumFieldError("defining polynomial must have degree >= 2")
        monic = poly.monic()
        if monic.gcd(monic.derivative()).degree() > 0:
            raise NumFieldError("defining polynomial is not squarefree")
        if _rational_roots(monic):
            raise NumFieldError("defining polynomial has a rational root")
        roots = roots_numeric(monic, digits)
        if embedding_hint is None:
            emb = roots[0]
        else:
            hint = mp.mpc(embedding_hint)
            emb = min(roots, key=lambda r: abs(r - hint))
        others = [r for r in roots if r is not emb]
        radius = min(abs(emb - r) for r in others) / 2
        field = cls(monic, emb, radius)
        field._check_isolation()
        return field

    @property
    def degree(self) -> int:
        return self.defining_poly.degree()

    def _check_isolation(self):
        f, fp = self.defining_poly, self.defining_poly.derivative()
        lhs = abs(f.eval(self.embedding))
        rhs = self.isolation_radius * abs(fp.eval(self.embedding)) / 2
        if not lhs < rhs:
            raise NumFieldError("root isolation certificate failed")

    def all_embeddings(self, digits: int = DEFAULT_DIGITS):
        """Roots of the defining polynomial, declared embedding first."""
        roots = roots_numeric(self.defining_poly, digits)
        roots.sort(key=lambda r: abs(r - self.embedding))
        return roots

    def element(self, coords) -> "FieldElement":
        return FieldElement(self, tuple(Fraction(c) for c in coords))

    def generator(self) -> "FieldElement":
        coords = [Fraction(0)] * self.degree
        coords[1] = Fraction(1)
        return self.element(coords)

    def from_rational(self, q) -> "FieldElement":
        coords = [Fraction(0)] * self.degree
        coords[0] = Fraction(q)
        return self.element(coords)


class FieldElement:
    """Element of a NumberField in the power basis 1, x, ..., x^(d-1)."""

    __slots__ = ("field", "coords")

    def __init__(self, field: NumberField, coords: Tuple[Fraction, ...]):
        if len(coords) != field.degree:
            raise NumFieldError("coordinate vector length != field degree")
        self.field = field
        self.coords = tuple(Fraction(c) for c in coords)

    def __eq__(self, other):
        return (isinstance(other, FieldElement)
                and self.field == other.field and self.coords == other.coords)

    def __hash__(self):
        return hash((self.field.defining_poly, self.coords))

    def __repr__(self):
        return f"FieldElement{self.coords}"

    def __add__(self, other):
        other = self._coerce(other)
        return FieldElement(self.field,
                            tuple(a + b for a, b in zip(self.coords, other.coords)))

    __radd__ = __add__

    def __neg__(self):
        return FieldElement(self.field, tuple(-a for a in self.coords))

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return FieldElement(self.field, tuple(a * other for a in self.coords))
        other = self._coerce(other)
        d = self.field.degree
        prod = [Fraction(0)] * (2 * d - 1)
        for i, a in enumerate(self.coords):
            if a == 0:
                continue
            for j, b in enumerate(other.coords):
                prod[i + j] += a * b
        return FieldElement(self.field, _reduce_power_basis(self.field, prod))

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise NumFieldError("negative powers not supported")
        result = self.field.from_rational(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def _coerce(self, other):
        if isinstance(other, FieldElement):
            if other.field != self.field:
                raise NumFieldError("elements of different fields")
            return other
        if isinstance(other, (int, Fraction)):
            return self.field.from_rational(other)
        raise NumFieldError(f"cannot coerce {other!r}")

    def embed(self, digits: int = DEFAULT_DIGITS, embedding=None):
        with mp.workdps(digits + 10):
            x = self.field.embedding if embedding is None else embedding
            acc = mp.mpc(0)
            for c in reversed(self.coords):
                acc = acc * x + _to_mpf(c)
            return acc


def _reduce_power_basis(field: NumberField, coeffs: List[Fraction]):
    f = field.defining_poly
    d = f.degree()
    work = list(coeffs)
    for k in range(len(work) - 1, d - 1, -1):
        c = work[k]
        if c == 0:
            continue
        # x^k = x^(k-d) * (x^d - f(x)) since f is monic
        for j in range(d):
            work[k - d + j] -= c * f.coeffs[j]
        work[k] = Fraction(0)
    return tuple(work[:d])


def minimal_polynomial(e: FieldElement, var: str = "tau") -> UniPoly:
    """Primitive integer minimal polynomial of a field element, positive lead."""
    d = e.field.degree
    powers = [e.field.from_rational(1)]
    for _ in range(d):
        powers.append(powers[-1] * e)
    # find least k with 1, e, ..., e^k dependent; solve exactly
    for k in range(1, d + 1):
        rows = [list(powers[i].coords) for i in range(k + 1)]
        sol = _solve_dependence(rows)
        if sol is not None:
            return UniPoly(var, sol).primitive()
    raise NumFieldError("no linear dependence found (inconsistent field)")


def _solve_dependence(rows) -> Optional[List[Fraction]]:
    """Monic dependence c_0 r_0 + ... + c_{k-1} r_{k-1} + r_k = 0, if any."""
    k = len(rows) - 1
    n = len(rows[0])
    # solve sum_{i<k} c_i rows[i] = -rows[k] by exact elimination
    A = [[rows[i][j] for i in range(k)] for j in range(n)]
    b = [-rows[k][j] for j in range(n)]
    m = len(A)
    row = 0
    where = [-1] * k
    for col in range(k):
        piv = next((i for i in range(row, m) if A[i][col] != 0), None)
        if piv is None:
            continue
        A[row], A[piv] = A[piv], A[row]
        b[row], b[piv] = b[piv], b[row]
        inv = A[row][col]
        A[row] = [x / inv for x in A[row]]
        b[row] = b[row] / inv
        for i in range(m):
            if i != row and A[i][col] != 0:
                f = A[i][col]
                A[i] = [x - f * y for x, y in zip(A[i], A[row])]
                b[i] = b[i] - f * b[row]
        where[col] = row
        row += 1
    sol = [Fraction(0)] * k
    for col in range(k):
        if where[col] >= 0:
            sol[col] = b[where[col]]
    # verify (handles inconsistent systems and free columns)
    for j in range(n):
        if sum(sol[i] * rows[i][j] for i in range(k)) != -rows[k][j]:
            return None
    return sol + [Fraction(1)]


@dataclass(frozen=True)
class AlgebraicNumber:
    """A root of a squarefree rational polynomial plus an isolating approximation."""

    minpoly: UniPoly
    approx: object        # mp.mpc
    err: object           # mp.mpf

    @classmethod
    def create(cls, minpoly: UniPoly, approx, digits: int = DEFAULT_DIGITS):
        prim = minpoly.primitive()
        if prim.gcd(prim.derivative()).degree() > 0:
            raise NumFieldError("minimal polynomial must be squarefree")
        roots = roots_numeric(prim, digits)
        root = min(roots, key=lambda r: abs(r - mp.mpc(approx)))
        others = [r for r in roots if r is not root]
        radius = min((abs(root - r) for r in others), default=mp.mpf(1)) / 2
        if others:
            lhs = abs(prim.eval(root))
            rhs = radius * abs(prim.derivative().eval(root)) / 2
            if not lhs < rhs:
                raise NumFieldError("approximation does not isolate a root")
        return cls(prim, mp.mpc(root), mp.mpf(radius))

    @property
    def degree(self):
        return self.minpoly.degree()


@dataclass(frozen=True)
class NotInField:
    """Verified or precision-final negative membership outcome."""
    reason: str
    precision: int


@dataclass(frozen=True)
class Undecided:
    """Numeric stages could not reach the required residuals."""
    reason: str
    precision: int


def express_in_field(target: AlgebraicNumber, field: NumberField,
                     digits: int = DEFAULT_DIGITS):
    """Write target as an element of the field, trying every pairing of field
    embeddings with roots of the target minimal polynomial; the result is
    verified exactly via minimal_polynomial before being returned.

    Returns a (FieldElement, note) pair, NotInField, or Undecided.
    """
    g = target.minpoly.primitive()
    d_f, d_g = field.degree, g.degree()
    if d_g == 1:
        q = -g.coeffs[0] / g.coeffs[1]
        return field.from_rational(q), "rational value"
    if d_f % d_g != 0:
        return NotInField(f"degree {d_g} does not divide field degree {d_f}", digits)

    prec = digits
    while prec <= MAX_DIGITS:
        with mp.workdps(prec + 30):
            try:
                f_roots = field.all_embeddings(prec)
                g_roots = roots_numeric(g, prec)
            except NumFieldError:
                return Undecided("root refinement failed", prec)
            bound = 10 ** max(6, prec // 4)
            # Vandermonde in the field embeddings, one solve per assignment
            V = mp.matrix([[f_roots[i] ** j for j in range(d_f)] for i in range(d_f)])
            for assign in itertools.product(range(len(g_roots)), repeat=d_f):
                if len(set(assign)) != len(g_roots):
                    continue
                rhs = mp.matrix([g_roots[a] for a in assign])
                try:
                    sol = mp.lu_solve(V, rhs)
                except ZeroDivisionError:
                    return Undecided("degenerate embedding matrix", prec)
                coords = []
                for v in sol:
                    if abs(mp.im(v)) > mp.mpf(10) ** (-prec // 3):
                        coords = None
                        break
                    c = rational_reconstruct(mp.re(v), bound)
                    if c is None:
                        coords = None
                        break
                    coords.append(c)
                if coords is None:
                    continue
                cand = field.element(coords)
                mp_cand = minimal_polynomial(cand, var=g.var)
                if g.primitive().divmod(mp_cand)[1].is_zero():
                    note = _match_note(cand, target, prec)
                    if note is not None:
                        return cand, note
        prec *= 2
    return NotInField("no rational coordinates verified", prec // 2)


def _match_note(cand: FieldElement, target: AlgebraicNumber, prec: int):
    tol = max(mp.mpf(target.err), mp.mpf(10) ** (-prec // 3))
    val = cand.embed(prec)
    if abs(val - target.approx) <= tol:
        return "matched at the declared field embedding"
    if abs(mp.conj(val) - target.approx) <= tol:
        return "matched at the conjugate of the declared field embedding"
    for emb in cand.field.all_embeddings(prec)[1:]:
        if abs(cand.embed(prec, embedding=emb) - target.approx) <= tol:
            return f"matched at the non-declared embedding x ~ {mp.nstr(emb, 8)}"
    return None
