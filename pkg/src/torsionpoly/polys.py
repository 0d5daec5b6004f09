"""Exact sparse multivariate and dense univariate polynomials over Q.

Coefficients are `fractions.Fraction`.  Term order is graded lexicographic
(total degree first, ties broken by the declared variable order), which fixes
a canonical serialization used for golden-file comparisons.  Resultants are
computed fraction-free via Bareiss elimination on the Sylvester matrix.
"""

from __future__ import annotations

import math
import re
from fractions import Fraction
from typing import Dict, Iterable, Tuple

Monomial = Tuple[int, ...]


class PolyError(ValueError):
    pass


def _as_fraction(c) -> Fraction:
    if isinstance(c, Fraction):
        return c
    if isinstance(c, int):
        return Fraction(c)
    if isinstance(c, str):
        return Fraction(c)
    raise PolyError(f"coefficient {c!r} is not exact")


def _grlex_key(mono: Monomial):
    return (sum(mono), mono)


class MultiPoly:
    """Sparse multivariate polynomial over Q with a fixed variable order."""

    __slots__ = ("vars", "terms")

    def __init__(self, variables: Iterable[str], terms: Dict[Monomial, Fraction] = None):
        self.vars: Tuple[str, ...] = tuple(variables)
        if len(set(self.vars)) != len(self.vars):
            raise PolyError("duplicate variable names")
        clean: Dict[Monomial, Fraction] = {}
        for mono, c in (terms or {}).items():
            c = _as_fraction(c)
            if len(mono) != len(self.vars):
                raise PolyError("exponent vector length mismatch")
            if any(e < 0 for e in mono):
                raise PolyError("negative exponent in monomial")
            if c != 0:
                clean[tuple(mono)] = c
        self.terms = clean

    # -- constructors -------------------------------------------------

    @classmethod
    def zero(cls, variables):
        return cls(variables, {})

    @classmethod
    def constant(cls, variables, c):
        variables = tuple(variables)
        return cls(variables, {tuple([0] * len(variables)): _as_fraction(c)})

    @classmethod
    def var(cls, variables, name):
        variables = tuple(variables)
        if name not in variables:
            raise PolyError(f"unknown variable {name!r}")
        mono = tuple(1 if v == name else 0 for v in variables)
        return cls(variables, {mono: Fraction(1)})

    # -- basic queries -------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(sum(m) == 0 for m in self.terms)

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise PolyError("not a constant polynomial")
        return next(iter(self.terms.values()), Fraction(0))

    def total_degree(self) -> int:
        return max((sum(m) for m in self.terms), default=0)

    def degree_in(self, name: str) -> int:
        i = self._index(name)
        return max((m[i] for m in self.terms), default=0)

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda kv: _grlex_key(kv[0]), reverse=True)

    def leading_coefficient(self) -> Fraction:
        if self.is_zero():
            return Fraction(0)
        return self.sorted_terms()[0][1]

    def _index(self, name: str) -> int:
        try:
            return self.vars.index(name)
        except ValueError:
            raise PolyError(f"variable {name!r} not in {self.vars}")

    def __eq__(self, other):
        if not isinstance(other, MultiPoly):
            return NotImplemented
        a, b = align(self, other)
        return a.terms == b.terms

    def __hash__(self):
        return hash((self.vars, frozenset(self.terms.items())))

    def __repr__(self):
        return f"MultiPoly({to_text(self)!r}, vars={self.vars})"

    # -- ring operations -------------------------------------------------

    def __neg__(self):
        return MultiPoly(self.vars, {m: -c for m, c in self.terms.items()})

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = MultiPoly.constant(self.vars, other)
        a, b = align(self, other)
        terms = dict(a.terms)
        for m, c in b.terms.items():
            terms[m] = terms.get(m, Fraction(0)) + c
        return MultiPoly(a.vars, terms)

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = MultiPoly.constant(self.vars, other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            c = _as_fraction(other)
            return MultiPoly(self.vars, {m: c * v for m, v in self.terms.items()})
        a, b = align(self, other)
        terms: Dict[Monomial, Fraction] = {}
        for m1, c1 in a.terms.items():
            for m2, c2 in b.terms.items():
                m = tuple(e1 + e2 for e1, e2 in zip(m1, m2))
                terms[m] = terms.get(m, Fraction(0)) + c1 * c2
        return MultiPoly(a.vars, terms)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if not isinstance(n, int):
            raise PolyError("exponent must be an integer")
        if n < 0:
            raise PolyError("negative exponent unsupported")
        result = MultiPoly.constant(self.vars, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base if n > 1 else base
            n >>= 1
        return result

    # -- calculus and evaluation ------------------------------------------

    def derivative(self, name: str) -> "MultiPoly":
        i = self._index(name)
        terms: Dict[Monomial, Fraction] = {}
        for m, c in self.terms.items():
            if m[i] == 0:
                continue
            m2 = list(m)
            m2[i] -= 1
            m2 = tuple(m2)
            terms[m2] = terms.get(m2, Fraction(0)) + c * m[i]
        return MultiPoly(self.vars, terms)

    def eval(self, assignment: dict):
        """Evaluate with values from any commutative ring (Fraction, mpc,
        complex, FieldElement).  Horner in each variable in turn."""
        occurring = self.drop_vars().vars
        missing = [v for v in occurring if v not in assignment]
        if missing:
            raise PolyError(f"unassigned variable {missing[0]!r}")
        filled = dict(assignment)
        for v in self.vars:
            filled.setdefault(v, 0)
        return _horner_eval(self, list(self.vars), filled)

    def substitute(self, name: str, q: "MultiPoly") -> "MultiPoly":
        """Exact composition p[name := q]."""
        i = self._index(name)
        merged_vars = list(self.vars)
        for v in q.vars:
            if v not in merged_vars:
                merged_vars.append(v)
        # Horner on powers of the substituted variable.
        by_deg: Dict[int, MultiPoly] = {}
        for m, c in self.terms.items():
            rest = list(m)
            d = rest[i]
            rest[i] = 0
            part = MultiPoly(self.vars, {tuple(rest): c}).with_vars(merged_vars)
            by_deg[d] = by_deg.get(d, MultiPoly.zero(merged_vars)) + part
        if not by_deg:
            return MultiPoly.zero(merged_vars)
        qm = q.with_vars(merged_vars)
        result = MultiPoly.zero(merged_vars)
        for d in range(max(by_deg), -1, -1):
            result = result * qm
            if d in by_deg:
                result = result + by_deg[d]
        return result

    def with_vars(self, new_vars) -> "MultiPoly":
        """Reindex onto a variable list that contains all current variables."""
        new_vars = tuple(new_vars)
        pos = []
        for v in self.vars:
            if v not in new_vars:
                raise PolyError(f"variable {v!r} dropped in with_vars")
            pos.append(new_vars.index(v))
        terms = {}
        for m, c in self.terms.items():
            m2 = [0] * len(new_vars)
            for p, e in zip(pos, m):
                m2[p] = e
            terms[tuple(m2)] = c
        return MultiPoly(new_vars, terms)

    def drop_vars(self) -> "MultiPoly":
        """Remove variables that no term uses."""
        used = [i for i in range(len(self.vars))
                if any(m[i] for m in self.terms)]
        if len(used) == len(self.vars):
            return self
        new_vars = tuple(self.vars[i] for i in used)
        terms = {tuple(m[i] for i in used): c for m, c in self.terms.items()}
        return MultiPoly(new_vars, terms)

    # -- coefficient views -------------------------------------------------

    def coeffs_wrt(self, name: str) -> Dict[int, "MultiPoly"]:
        """Map degree -> coefficient polynomial in the remaining variables."""
        i = self._index(name)
        rest_vars = tuple(v for j, v in enumerate(self.vars) if j != i)
        out: Dict[int, Dict[Monomial, Fraction]] = {}
        for m, c in self.terms.items():
            rest = tuple(e for j, e in enumerate(m) if j != i)
            out.setdefault(m[i], {})[rest] = c
        return {d: MultiPoly(rest_vars, t) for d, t in out.items()}

    def rational_content(self) -> Fraction:
        """Positive rational c with p/c integer-primitive; 0 for the zero poly."""
        if self.is_zero():
            return Fraction(0)
        num = 0
        den = 1
        for c in self.terms.values():
            num = math.gcd(num, abs(c.numerator))
            den = den * c.denominator // math.gcd(den, c.denominator)
        return Fraction(num, den)


def align(a: MultiPoly, b: MultiPoly) -> Tuple[MultiPoly, MultiPoly]:
    """Put two polynomials over the union variable list (left order first)."""
    if a.vars == b.vars:
        return a, b
    merged = list(a.vars)
    for v in b.vars:
        if v not in merged:
            merged.append(v)
    return a.with_vars(merged), b.with_vars(merged)


def _horner_eval(p: MultiPoly, var_order, assignment):
    if not var_order:
        return p.constant_value()
    name = var_order[-1]
    coeffs = p.coeffs_wrt(name)
    if not coeffs:
        return _zero_like(assignment[name])
    val = assignment[name]
    result = None
    for d in range(max(coeffs), -1, -1):
        if result is None:
            result = _horner_eval(coeffs[d], var_order[:-1], assignment)
            continue
        result = result * val
        if d in coeffs:
            result = result + _horner_eval(coeffs[d], var_order[:-1], assignment)
    return result


def _zero_like(val):
    return val * 0


# ---------------------------------------------------------------------------
# Exact division, gcd, squarefree
# ---------------------------------------------------------------------------

def exact_div(p: MultiPoly, q: MultiPoly) -> MultiPoly:
    """Exact quotient p/q; raises PolyError if q does not divide p."""
    p, q = align(p, q)
    if q.is_zero():
        raise PolyError("division by zero polynomial")
    if p.is_zero():
        return MultiPoly.zero(p.vars)
    qlead = q.sorted_terms()[0]
    rem = p
    quot: Dict[Monomial, Fraction] = {}
    while not rem.is_zero():
        rlead_m, rlead_c = rem.sorted_terms()[0]
        mono = tuple(a - b for a, b in zip(rlead_m, qlead[0]))
        if any(e < 0 for e in mono):
            raise PolyError("not divisible")
        c = rlead_c / qlead[1]
        quot[mono] = quot.get(mono, Fraction(0)) + c
        rem = rem - MultiPoly(p.vars, {mono: c}) * q
    return MultiPoly(p.vars, quot)


def divides(q: MultiPoly, p: MultiPoly) -> bool:
    try:
        exact_div(p, q)
        return True
    except PolyError:
        return False


def _content_wrt(p: MultiPoly, name: str) -> MultiPoly:
    coeffs = list(p.coeffs_wrt(name).values())
    g = coeffs[0]
    for c in coeffs[1:]:
        g = gcd_poly(g, c)
        if g.is_constant():
            break
    return g


def _primitive_wrt(p: MultiPoly, name: str) -> MultiPoly:
    cont = _content_wrt(p, name)
    return exact_div(p, cont.with_vars(p.vars))


def _pseudo_rem(p: MultiPoly, q: MultiPoly, name: str) -> MultiPoly:
    """Pseudo-remainder: lc(q)^(deg p - deg q + 1) * p mod q, no divisions."""
    dp, dq = p.degree_in(name), q.degree_in(name)
    if dp < dq:
        return p
    lc_q = q.coeffs_wrt(name)[dq].with_vars(q.vars)
    xv = MultiPoly.var(p.vars, name)
    rem = p
    e = dp - dq + 1
    while not rem.is_zero() and rem.degree_in(name) >= dq:
        dr = rem.degree_in(name)
        lc_r = rem.coeffs_wrt(name)[dr].with_vars(rem.vars)
        rem = lc_q * rem - lc_r * xv ** (dr - dq) * q
        e -= 1
    if e > 0:
        rem = rem * lc_q ** e
    return rem


def gcd_poly(p: MultiPoly, q: MultiPoly) -> MultiPoly:
    """GCD via primitive polynomial remainder sequences, normalized
    integer-primitive with positive leading graded-lex coefficient.

    Only used to back squarefree decomposition and rational-function
    reduction; sized for the low degrees this package meets.
    """
    p, q = align(p, q)
    if p.is_zero():
        return normalize_sign(q)
    if q.is_zero():
        return normalize_sign(p)
    if p.is_constant() or q.is_constant():
        return MultiPoly.constant(p.vars, 1)
    name = next(v for v in p.vars if p.degree_in(v) > 0 or q.degree_in(v) > 0)
    if p.degree_in(name) == 0:
        return normalize_sign(gcd_poly(p, _content_wrt(q, name).with_vars(p.vars)))
    if q.degree_in(name) == 0:
        return normalize_sign(gcd_poly(_content_wrt(p, name).with_vars(p.vars), q))
    cont = gcd_poly(_content_wrt(p, name).with_vars(p.vars),
                    _content_wrt(q, name).with_vars(p.vars))
    a, b = _primitive_wrt(p, name), _primitive_wrt(q, name)
    if a.degree_in(name) < b.degree_in(name):
        a, b = b, a
    while not b.is_zero():
        r = _pseudo_rem(a, b, name)
        a = b
        b = _primitive_wrt(r, name) if not r.is_zero() else r
    return normalize_sign(cont * a)


def normalize_sign(p: MultiPoly) -> MultiPoly:
    """Integer-primitive scalar multiple with positive leading grlex coefficient."""
    if p.is_zero():
        return p
    c = p.rational_content()
    if p.leading_coefficient() < 0:
        c = -c
    return MultiPoly(p.vars, {m: v / c for m, v in p.terms.items()})


def squarefree_primitive(p: MultiPoly, main_var: str) -> MultiPoly:
    """Squarefree part of p in main_var, with main_var-free content removed.

    Output is integer-primitive with positive leading graded-lex coefficient.
    """
    if p.is_zero():
        raise PolyError("squarefree_primitive of zero polynomial")
    if p.degree_in(main_var) == 0:
        return normalize_sign(p) if p.is_constant() else normalize_sign(
            squarefree_all(p))
    p = _primitive_wrt(p, main_var)
    g = gcd_poly(p, p.derivative(main_var))
    sf = exact_div(p, g)
    return normalize_sign(sf)


def squarefree_all(p: MultiPoly) -> MultiPoly:
    """Squarefree part with respect to every variable in turn."""
    out = p
    for v in p.vars:
        if out.degree_in(v) > 0:
            g = gcd_poly(out, out.derivative(v))
            out = exact_div(out, g)
    return normalize_sign(out)


# ---------------------------------------------------------------------------
# Resultants (fraction-free Bareiss on the Sylvester matrix)
# ---------------------------------------------------------------------------

def sylvester_matrix(p: MultiPoly, q: MultiPoly, name: str):
    dp, dq = p.degree_in(name), q.degree_in(name)
    if dp == 0 or dq == 0:
        raise PolyError("nothing to eliminate")
    p, q = align(p, q)
    rest_vars = tuple(v for v in p.vars if v != name)
    pc = {d: c for d, c in p.coeffs_wrt(name).items()}
    qc = {d: c for d, c in q.coeffs_wrt(name).items()}
    zero = MultiPoly.zero(rest_vars)
    n = dp + dq
    rows = []
    for i in range(dq):
        row = [zero] * n
        for d, c in pc.items():
            row[i + dp - d] = c
        rows.append(row)
    for i in range(dp):
        row = [zero] * n
        for d, c in qc.items():
            row[i + dq - d] = c
        rows.append(row)
    return rows


def bareiss_det(rows) -> MultiPoly:
    """Fraction-free determinant of a square matrix of MultiPoly entries."""
    n = len(rows)
    if n == 0:
        raise PolyError("empty matrix")
    M = [list(r) for r in rows]
    vars0 = M[0][0].vars
    one = MultiPoly.constant(vars0, 1)
    prev = one
    sign = 1
    for k in range(n - 1):
        if M[k][k].is_zero():
            swap = next((i for i in range(k + 1, n) if not M[i][k].is_zero()), None)
            if swap is None:
                return MultiPoly.zero(vars0)
            M[k], M[swap] = M[swap], M[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = M[i][j] * M[k][k] - M[i][k] * M[k][j]
                M[i][j] = exact_div(num, prev)
            M[i][k] = MultiPoly.zero(vars0)
        prev = M[k][k]
    det = M[n - 1][n - 1]
    return det if sign > 0 else -det


def resultant(p: MultiPoly, q: MultiPoly, name: str) -> MultiPoly:
    """Res_name(p, q), exact, over the remaining variables."""
    rows = sylvester_matrix(p, q, name)
    return bareiss_det(rows)


# ---------------------------------------------------------------------------
# Canonical text grammar
# ---------------------------------------------------------------------------

_TERM_RE = re.compile(
    r"""(?P<coeff>-?\d+(?:/\d+)?)?          # optional rational coefficient
        (?P<body>(?:\*?[A-Za-z_][A-Za-z_0-9]*(?:\^\d+)?)*)$""",
    re.VERBOSE,
)
_FACTOR_RE = re.compile(r"([A-Za-z_][A-Za-z_0-9]*)(?:\^(\d+))?")


def to_text(p: MultiPoly) -> str:
    """Canonical text: graded-lex descending terms, explicit coefficients."""
    if p.is_zero():
        return "0"
    parts = []
    for mono, c in p.sorted_terms():
        factors = []
        for v, e in zip(p.vars, mono):
            if e == 1:
                factors.append(v)
            elif e > 1:
                factors.append(f"{v}^{e}")
        mag = abs(c)
        if factors:
            body = f"{mag}*" + "*".join(factors)
        else:
            body = f"{mag}"
        if not parts:
            parts.append(body if c > 0 else f"-{body}")
        else:
            parts.append((" + " if c > 0 else " - ") + body)
    return "".join(parts)


def from_text(text: str, variables=None) -> MultiPoly:
    """Parse the canonical grammar.  Variables default to first-appearance order."""
    raw = text.strip()
    if not raw:
        raise PolyError("empty polynomial text")
    if variables is None:
        variables = []
        for name in _FACTOR_RE.findall(raw):
            if name[0] not in variables:
                variables.append(name[0])
    variables = tuple(variables)
    # split into signed terms
    chunks = []
    sign = 1
    buf = None
    dangling_sign = False
    for tok in re.split(r"\s*([+-])\s*", raw):
        if tok == "":
            continue
        if tok in ("+", "-"):
            if buf is not None:
                chunks.append((sign, buf))
                buf = None
                sign = 1
            if tok == "-":
                sign = -sign
            dangling_sign = True
        else:
            buf = tok
            dangling_sign = False
    if buf is not None:
        chunks.append((sign, buf))
    elif dangling_sign or not chunks:
        raise PolyError(f"cannot parse polynomial text {text!r}")
    result = MultiPoly.zero(variables)
    for sgn, chunk in chunks:
        m = _TERM_RE.match(chunk.replace(" ", ""))
        if not m or (m.group("coeff") is None and not m.group("body")):
            raise PolyError(f"bad term {chunk!r} in {text!r}")
        coeff = Fraction(m.group("coeff")) if m.group("coeff") else Fraction(1)
        mono = [0] * len(variables)
        for name, exp in _FACTOR_RE.findall(m.group("body")):
            if name not in variables:
                raise PolyError(f"unknown variable {name!r} in {text!r}")
            mono[variables.index(name)] += int(exp) if exp else 1
        term = MultiPoly(variables, {tuple(mono): sgn * coeff})
        result = result + term
    return result


# ---------------------------------------------------------------------------
# Dense univariate polynomials
# ---------------------------------------------------------------------------

class UniPoly:
    """Dense univariate polynomial over Q, constant term first."""

    __slots__ = ("var", "coeffs")

    def __init__(self, var: str, coeffs):
        self.var = var
        cs = [_as_fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs = tuple(cs)

    @classmethod
    def zero(cls, var: str):
        return cls(var, [])

    def is_zero(self):
        return not self.coeffs

    def degree(self):
        return len(self.coeffs) - 1 if self.coeffs else -1

    def lead(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def __eq__(self, other):
        if not isinstance(other, UniPoly):
            return NotImplemented
        return self.var == other.var and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.var, self.coeffs))

    def __repr__(self):
        return f"UniPoly({to_text(self.to_multi())!r})"

    def __neg__(self):
        return UniPoly(self.var, [-c for c in self.coeffs])

    def __add__(self, other):
        other = self._coerce(other)
        n = max(len(self.coeffs), len(other.coeffs))
        a = list(self.coeffs) + [Fraction(0)] * (n - len(self.coeffs))
        b = list(other.coeffs) + [Fraction(0)] * (n - len(other.coeffs))
        return UniPoly(self.var, [x + y for x, y in zip(a, b)])

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return UniPoly(self.var, [c * other for c in self.coeffs])
        other = self._coerce(other)
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs))
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return UniPoly(self.var, out)

    __rmul__ = __mul__

    def _coerce(self, other):
        if isinstance(other, UniPoly):
            if other.var != self.var and other.coeffs and self.coeffs:
                if other.degree() > 0 and self.degree() > 0:
                    raise PolyError("mixed univariate variables")
            return other
        if isinstance(other, (int, Fraction)):
            return UniPoly(self.var, [other])
        raise PolyError(f"cannot coerce {other!r}")

    def eval(self, x):
        if not self.coeffs:
            return x * 0
        acc = None
        for c in reversed(self.coeffs):
            acc = c if acc is None else acc * x + c
        return acc

    def derivative(self):
        return UniPoly(self.var, [c * i for i, c in enumerate(self.coeffs)][1:])

    def divmod(self, other: "UniPoly"):
        if other.is_zero():
            raise PolyError("division by zero polynomial")
        q = UniPoly.zero(self.var)
        r = self
        while not r.is_zero() and r.degree() >= other.degree():
            shift = r.degree() - other.degree()
            c = r.lead() / other.lead()
            t = UniPoly(self.var, [Fraction(0)] * shift + [c])
            q = q + t
            r = r - t * other
        return q, r

    def gcd(self, other: "UniPoly") -> "UniPoly":
        a, b = self, other
        while not b.is_zero():
            a, b = b, a.divmod(b)[1]
        return a.monic() if not a.is_zero() else a

    def monic(self):
        if self.is_zero():
            return self
        lc = self.lead()
        return UniPoly(self.var, [c / lc for c in self.coeffs])

    def primitive(self) -> "UniPoly":
        """Integer-primitive with positive leading coefficient."""
        if self.is_zero():
            return self
        num = 0
        den = 1
        for c in self.coeffs:
            num = math.gcd(num, abs(c.numerator))
            den = den * c.denominator // math.gcd(den, c.denominator)
        scale = Fraction(num, den)
        if self.lead() < 0:
            scale = -scale
        return UniPoly(self.var, [c / scale for c in self.coeffs])

    def squarefree(self) -> "UniPoly":
        if self.is_zero():
            raise PolyError("squarefree of zero polynomial")
        g = self.gcd(self.derivative())
        if g.degree() <= 0:
            return self.primitive()
        return self.divmod(g)[0].primitive()

    def to_multi(self, variables=None) -> MultiPoly:
        variables = tuple(variables) if variables else (self.var,)
        i = variables.index(self.var)
        terms = {}
        for d, c in enumerate(self.coeffs):
            if c != 0:
                mono = [0] * len(variables)
                mono[i] = d
                terms[tuple(mono)] = c
        return MultiPoly(variables, terms)

    @classmethod
    def from_multi(cls, p: MultiPoly) -> "UniPoly":
        p = p.drop_vars()
        if len(p.vars) > 1:
            raise PolyError(f"polynomial is not univariate: vars {p.vars}")
        if not p.vars:
            return cls("x", [p.constant_value()] if p.terms else [])
        coeffs = [Fraction(0)] * (p.total_degree() + 1)
        for m, c in p.terms.items():
            coeffs[m[0]] = c
        return cls(p.vars[0], coeffs)
