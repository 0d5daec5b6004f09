"""Numeric torsion engine: Fox calculus, twisted chain complexes, torsion.

The twisted complex of a presentation 2-complex is

    0 -> sl2^(s-1) --d2--> sl2^s --d1--> sl2 -> 0

with group-ring coefficients pushed through g |-> Ad(rho(g))^(-1); the
inversion is what makes d1 . d2 = 0 hold (the plain evaluation composed with
the Fox product rule does not vanish because the group ring is
noncommutative).  Torsion is Milnor's determinant ratio for based complexes
with homology bases.  The reported value is the raw ratio rescaled by the
invariant bilinear form of h2 and of the peripheral-invariant vector P, which
makes it invariant, up to sign, under P rescaling and global conjugation; it
equals the torsion of the fundamental-class basing only up to a
representation-dependent scalar, which cancels in the mu/lambda ratios used
throughout.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

import mpmath as mp

from . import mplinalg as la

DEFAULT_DPS = 40
NEWTON_TOL = mp.mpf("1e-10")


class TorsionNumError(ValueError):
    pass


# ---------------------------------------------------------------------------
# Words and presentations
# ---------------------------------------------------------------------------

Letter = Tuple[int, int]        # (generator index, +1 | -1)


@dataclass(frozen=True)
class Word:
    """Freely reduced word in generators a, b, c, ..."""

    letters: Tuple[Letter, ...]

    @classmethod
    def from_letters(cls, letters) -> "Word":
        out: List[Letter] = []
        for g, e in letters:
            if e not in (1, -1):
                raise TorsionNumError("exponents must be +1 or -1")
            if out and out[-1][0] == g and out[-1][1] == -e:
                out.pop()
            else:
                out.append((g, e))
        return cls(tuple(out))

    def __mul__(self, other: "Word") -> "Word":
        return Word.from_letters(self.letters + other.letters)

    def inverse(self) -> "Word":
        return Word(tuple((g, -e) for g, e in reversed(self.letters)))

    def __len__(self):
        return len(self.letters)

    def exponent_sum(self, gen: Optional[int] = None) -> int:
        return sum(e for g, e in self.letters if gen is None or g == gen)

    def to_text(self) -> str:
        return "".join(chr(ord("a") + g) if e > 0 else chr(ord("A") + g)
                       for g, e in self.letters)

    def __repr__(self):
        return f"Word({self.to_text()!r})"


EMPTY_WORD = Word(())


def parse_word(text: str, generator_count: Optional[int] = None) -> Word:
    """Parse the letter grammar: a..z generators, A..Z their inverses."""
    letters = []
    for pos, ch in enumerate(text.strip()):
        if "a" <= ch <= "z":
            g, e = ord(ch) - ord("a"), 1
        elif "A" <= ch <= "Z":
            g, e = ord(ch) - ord("A"), -1
        else:
            raise TorsionNumError(f"unknown letter {ch!r} at position {pos}")
        if generator_count is not None and g >= generator_count:
            raise TorsionNumError(
                f"letter {ch!r} at position {pos} exceeds generator count")
        letters.append((g, e))
    return Word.from_letters(letters)


@dataclass(frozen=True)
class Presentation:
    generator_count: int
    relators: Tuple[Word, ...]
    meridian: Word
    longitude: Word

    @classmethod
    def create(cls, generator_count: int, relators, meridian: Word,
               longitude: Word) -> "Presentation":
        if not relators:
            raise TorsionNumError("need at least one relator")
        for w in list(relators) + [meridian, longitude]:
            for g, _ in w.letters:
                if g >= generator_count:
                    raise TorsionNumError("generator index out of range")
        return cls(generator_count, tuple(relators), meridian, longitude)

    def abelianization_ok(self) -> bool:
        """H1 = Z test: the relator exponent matrix has rank s - 1 and its
        (s-1)-minors have gcd 1.  Recorded, not enforced, on construction."""
        import math
        s = self.generator_count
        rows = [[r.exponent_sum(g) for g in range(s)] for r in self.relators]
        # integer rank via fraction-free elimination, then gcd of minors for
        # the two-generator corpus shape
        if s - 1 != len(rows):
            return False
        if s == 2 and len(rows) == 1:
            return math.gcd(abs(rows[0][0]), abs(rows[0][1])) == 1
        raise TorsionNumError("abelianization check implemented for s = 2")


# ---------------------------------------------------------------------------
# Fox calculus
# ---------------------------------------------------------------------------

class GroupRingElem:
    """Finite integer combination of words."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Dict[Word, int] = None):
        self.coeffs = {w: c for w, c in (coeffs or {}).items() if c != 0}

    def __add__(self, other):
        out = dict(self.coeffs)
        for w, c in other.coeffs.items():
            out[w] = out.get(w, 0) + c
        return GroupRingElem(out)

    def __eq__(self, other):
        return isinstance(other, GroupRingElem) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(frozenset(self.coeffs.items()))

    def left_mul(self, w: Word) -> "GroupRingElem":
        return GroupRingElem({w * v: c for v, c in self.coeffs.items()})

    def __repr__(self):
        parts = [f"{c}*{w.to_text() or '1'}" for w, c in self.coeffs.items()]
        return "GR(" + " + ".join(parts or ["0"]) + ")"


def fox_derivative(w: Word, k: int) -> GroupRingElem:
    """d(w)/d(g_k): d(g_k) = 1, d(g_k^-1) = -g_k^-1, d(uv) = du + u dv."""
    coeffs: Dict[Word, int] = {}
    prefix = EMPTY_WORD
    for g, e in w.letters:
        letter = Word(((g, e),))
        if g == k:
            key = prefix if e > 0 else prefix * letter
            coeffs[key] = coeffs.get(key, 0) + (1 if e > 0 else -1)
        prefix = prefix * letter
    return GroupRingElem(coeffs)


# ---------------------------------------------------------------------------
# Representations
# ---------------------------------------------------------------------------

@dataclass
class Rep:
    """Numeric SL(2,C) images of the generators at a working precision."""

    matrices: Tuple[object, ...]     # 2x2 mp.matrix per generator
    dps: int = DEFAULT_DPS

    def __post_init__(self):
        with mp.workdps(self.dps):
            for M in self.matrices:
                if abs(_det2(M) - 1) > mp.mpf("1e-9"):
                    raise TorsionNumError("generator matrix is not in SL(2,C)")

    def of_word(self, w: Word):
        acc = mp.matrix([[1, 0], [0, 1]])
        for g, e in w.letters:
            M = self.matrices[g]
            acc = acc * (M if e > 0 else _inv2(M))
        return acc

    def relator_residual(self, p: Presentation):
        with mp.workdps(self.dps):
            worst = mp.mpf(0)
            for r in p.relators:
                M = self.of_word(r)
                worst = max(worst, _dist_to_identity(M))
            return worst

    def conjugated(self, C) -> "Rep":
        with mp.workdps(self.dps):
            Ci = _inv2(C)
            return Rep(tuple(C * M * Ci for M in self.matrices), self.dps)


def _det2(M):
    return M[0, 0] * M[1, 1] - M[0, 1] * M[1, 0]


def _inv2(M):
    return mp.matrix([[M[1, 1], -M[0, 1]], [-M[1, 0], M[0, 0]]])


def _dist_to_identity(M):
    return (abs(M[0, 0] - 1) + abs(M[0, 1]) + abs(M[1, 0]) + abs(M[1, 1] - 1))


def riley_solve(p: Presentation, target_tr_mu, seed, dps: int = DEFAULT_DPS,
                max_iter: int = 80) -> Rep:
    """Newton solve on the two-bridge ansatz a -> [[m,1],[0,1/m]],
    b -> [[m,0],[t,1/m]] with m + 1/m = target, unknown t."""
    if p.generator_count != 2:
        raise TorsionNumError("riley_solve needs a two-generator presentation")
    with mp.workdps(dps + 15):
        target = mp.mpmathify(target_tr_mu)
        if isinstance(seed, Rep):
            m0 = seed.matrices[0][0, 0]
            if abs(m0 + 1 / m0 - target) < NEWTON_TOL \
                    and seed.relator_residual(p) < NEWTON_TOL:
                return seed
            t = seed.matrices[1][1, 0]
        else:
            t = mp.mpmathify(seed)
        disc = mp.sqrt(target ** 2 - 4)
        m = (target + disc) / 2
        if abs(m) < 1:
            m = (target - disc) / 2
        relator = p.relators[0]
        last = None
        for _ in range(max_iter):
            F, J = _relator_and_derivative(relator, m, t)
            res = mp.fsum(abs(f) ** 2 for f in F)
            last = mp.sqrt(res)
            if last < mp.mpf(10) ** (-(dps + 5)):
                break
            num = mp.fsum(mp.conj(j) * f for j, f in zip(J, F))
            den = mp.fsum(abs(j) ** 2 for j in J)
            if den == 0:
                raise TorsionNumError("Newton stalled: zero derivative")
            t = t - num / den
        rep = Rep((mp.matrix([[m, 1], [0, 1 / m]]),
                   mp.matrix([[m, 0], [t, 1 / m]])), dps)
        resid = rep.relator_residual(p)
        if resid > NEWTON_TOL:
            raise TorsionNumError(
                f"Newton did not converge: residual {mp.nstr(resid, 5)}")
        return rep


def _relator_and_derivative(relator: Word, m, t):
    """rho(relator) - I and its t-derivative, both flattened."""
    a = mp.matrix([[m, 1], [0, 1 / m]])
    b = mp.matrix([[m, 0], [t, 1 / m]])
    da = mp.matrix(2, 2)
    db = mp.matrix([[0, 0], [1, 0]])
    mats = {0: (a, da), 1: (b, db)}
    M = mp.matrix([[1, 0], [0, 1]])
    D = mp.matrix(2, 2)
    for g, e in relator.letters:
        G, dG = mats[g]
        if e < 0:
            Gi = _inv2(G)
            dG = -Gi * dG * Gi
            G = Gi
        D = D * G + M * dG
        M = M * G
    F = [M[0, 0] - 1, M[0, 1], M[1, 0], M[1, 1] - 1]
    J = [D[0, 0], D[0, 1], D[1, 0], D[1, 1]]
    return F, J


# ---------------------------------------------------------------------------
# Adjoint action and chain data
# ---------------------------------------------------------------------------

# fixed ordered sl2 basis E, H, F; X = e E + h H + f F = [[h, e], [f, -h]]
_SL2_BASIS = (
    ((0, 1), (0, 0)),
    ((1, 0), (0, -1)),
    ((0, 0), (1, 0)),
)


def adjoint(A) -> object:
    """Matrix of X -> A X A^-1 in the basis (E, H, F)."""
    if abs(_det2(A) - 1) > mp.mpf("1e-9"):
        raise TorsionNumError("adjoint input must have determinant 1")
    Ai = _inv2(A)
    out = mp.matrix(3, 3)
    for j, X in enumerate(_SL2_BASIS):
        Xm = mp.matrix(X)
        Y = A * Xm * Ai
        out[0, j] = Y[0, 1]
        out[1, j] = Y[0, 0]
        out[2, j] = Y[1, 0]
    return out


def _ad_eval_inv(elem: GroupRingElem, rep: Rep):
    """Sum n_w Ad(rho(w)^-1); the inversion makes the boundaries compose."""
    out = mp.matrix(3, 3)
    for w, n in elem.coeffs.items():
        out += n * adjoint(rep.of_word(w.inverse()))
    return out


def killing(u) -> object:
    """Invariant complex bilinear form tr(XY) summed over sl2 blocks."""
    acc = mp.mpc(0)
    for k in range(0, u.rows, 3):
        e, h, f = u[k], u[k + 1], u[k + 2]
        acc += 2 * (h * h + e * f)
    return acc


@dataclass
class ChainData:
    d1: object          # 3 x 3s
    d2: object          # 3s x 3r
    P: object           # 3-vector
    h1: object          # 3s-vector
    h2: object          # 3r-vector
    s: int
    r: int


def boundaries(p: Presentation, rep: Rep, chain_tol=mp.mpf("1e-8")):
    """Twisted boundary matrices (d1, d2) at a solved representation."""
    with mp.workdps(rep.dps):
        resid = rep.relator_residual(p)
        if resid > mp.mpf("1e-8"):
            raise TorsionNumError(
                f"representation violates relators: {mp.nstr(resid, 5)}")
        s, r = p.generator_count, len(p.relators)
        d1 = mp.matrix(3, 3 * s)
        eye = mp.eye(3)
        for k in range(s):
            blk = eye - adjoint(_inv2(rep.matrices[k]))
            for i in range(3):
                for j in range(3):
                    d1[i, 3 * k + j] = blk[i, j]
        d2 = mp.matrix(3 * s, 3 * r)
        for j, rel in enumerate(p.relators):
            for k in range(s):
                blk = _ad_eval_inv(fox_derivative(rel, k), rep)
                for i in range(3):
                    for jj in range(3):
                        d2[3 * k + i, 3 * j + jj] = blk[i, jj]
        prod_norm = la.frob(d1 * d2)
        if prod_norm > chain_tol * max(la.frob(d1) * la.frob(d2), mp.mpf(1)):
            raise TorsionNumError(
                f"chain condition failed: |d1 d2| = {mp.nstr(prod_norm, 5)}")
        return d1, d2


def invariant_vector(rep: Rep, mu: Word, lam: Word):
    """Unit-norm generator of ker(Ad(rho mu) - 1) ^ ker(Ad(rho lam) - 1)."""
    with mp.workdps(rep.dps):
        out = []
        for w in (mu, lam):
            M = rep.of_word(w)
            if min(_dist_to_identity(M), _dist_to_identity(-M)) < mp.mpf("1e-9"):
                raise TorsionNumError("peripheral holonomy is central")
            out.append(adjoint(M) - mp.eye(3))
        stacked = mp.matrix(6, 3)
        for b, M in enumerate(out):
            for i in range(3):
                for j in range(3):
                    stacked[3 * b + i, j] = M[i, j]
        ker = la.nullspace(stacked)
        if len(ker) != 1:
            raise TorsionNumError(
                f"non-generic peripheral holonomy: invariant space dim {len(ker)}")
        P = ker[0]
        nrm = mp.sqrt(mp.fsum(abs(x) ** 2 for x in P))
        return P / nrm


def basing(p: Presentation, rep: Rep, P, gamma: Word, chain=None):
    """Reference cycles: h1 from the Fox expansion of gamma tensored with P,
    h2 the kernel generator of d2 with largest coordinate normalized to 1."""
    with mp.workdps(rep.dps):
        d1, d2 = chain if chain is not None else boundaries(p, rep)
        s = p.generator_count
        h1 = mp.matrix(3 * s, 1)
        for k in range(s):
            blk = _ad_eval_inv(fox_derivative(gamma, k), rep)
            v = blk * P
            for i in range(3):
                h1[3 * k + i] = v[i]
        cyc = la.frob(d1 * h1)
        if cyc > mp.mpf("1e-8") * max(mp.mpf(1), la.frob(d1) * la.frob(h1)):
            raise TorsionNumError(f"h1 is not a cycle: residual {mp.nstr(cyc, 5)}")
        if la.rank(la.hstack([d2, h1])) == la.rank(d2):
            raise TorsionNumError("gamma-torsion degenerate at rho")
        ker = la.nullspace(d2)
        if len(ker) != 1:
            raise TorsionNumError(f"ker d2 has dimension {len(ker)}")
        h2 = ker[0]
        top = max(range(h2.rows), key=lambda i: abs(h2[i]))
        h2 = h2 / h2[top]
        res = la.frob(d2 * h2)
        if res > mp.mpf("1e-8") * max(mp.mpf(1), la.frob(d2)):
            raise TorsionNumError(f"h2 kernel residual {mp.nstr(res, 5)}")
        return h1, h2


def chain_data(p: Presentation, rep: Rep, gamma: Word) -> ChainData:
    d1, d2 = boundaries(p, rep)
    P = invariant_vector(rep, p.meridian, p.longitude)
    h1, h2 = basing(p, rep, P, gamma, chain=(d1, d2))
    return ChainData(d1, d2, P, h1, h2, p.generator_count, len(p.relators))


@dataclass
class TorsionValue:
    value: object
    sign_ambiguous: bool
    normalization_note: str


NORMALIZATION_NOTE = (
    "torsion = det ratio of the based complex, rescaled by sqrt(B(h2,h2)/B(P,P)) "
    "for the invariant bilinear form B; equals the fundamental-class-based "
    "torsion only up to a representation-dependent nonzero scalar, which "
    "cancels in mu/lambda ratios with shared h2 and P"
)


def torsion_numeric(cd: ChainData, basis_seed: Optional[int] = None,
                    dps: int = DEFAULT_DPS) -> TorsionValue:
    """Milnor torsion of the based twisted complex with homology basis
    (h1, h2); homology dimensions must be (0, 1, 1)."""
    with mp.workdps(dps):
        n1, n2 = 3 * cd.s, 3 * cd.r
        order1 = list(range(n1))
        order2 = list(range(n2))
        if basis_seed is not None:
            rng = random.Random(basis_seed)
            rng.shuffle(order1)
            rng.shuffle(order2)
        rank1, piv1 = la.pivot_columns(cd.d1, order1)
        rank2, piv2 = la.pivot_columns(cd.d2, order2)
        h0 = 3 - rank1
        h1dim = n1 - rank1 - rank2
        h2dim = n2 - rank2
        if (h0, h1dim, h2dim) != (0, 1, 1):
            raise TorsionNumError(
                f"non-generic representation: homology ({h0}, {h1dim}, {h2dim})")
        T0 = la.det(la.columns(cd.d1, piv1))
        cols1 = [la.columns(cd.d2, piv2), cd.h1]
        cols1 += [la.basis_vector(n1, c) for c in piv1]
        T1 = la.det(la.hstack(cols1))
        cols2 = [cd.h2] + [la.basis_vector(n2, c) for c in piv2]
        T2 = la.det(la.hstack(cols2))
        if T0 == 0 or T2 == 0:
            raise TorsionNumError("degenerate basis choice")
        raw = T1 / (T0 * T2)
        bh2 = killing(cd.h2)
        bp = killing(cd.P)
        if abs(bh2) < mp.mpf("1e-20") or abs(bp) < mp.mpf("1e-20"):
            raise TorsionNumError("invariant form degenerates (parabolic point?)")
        value = raw * mp.sqrt(bh2) / mp.sqrt(bp)
        if value == 0:
            raise TorsionNumError("torsion vanished; representation not gamma-regular")
        return TorsionValue(value, True, NORMALIZATION_NOTE)


def peripheral_torsions(p: Presentation, rep: Rep,
                        basis_seed: Optional[int] = None) -> dict:
    """Both peripheral torsions with shared P and h2, plus diagnostics."""
    with mp.workdps(rep.dps):
        d1, d2 = boundaries(p, rep)
        P = invariant_vector(rep, p.meridian, p.longitude)
        h1_mu, h2 = basing(p, rep, P, p.meridian, chain=(d1, d2))
        h1_la, _ = basing(p, rep, P, p.longitude, chain=(d1, d2))
        s, r = p.generator_count, len(p.relators)
        t_mu = torsion_numeric(ChainData(d1, d2, P, h1_mu, h2, s, r),
                               basis_seed, rep.dps)
        t_la = torsion_numeric(ChainData(d1, d2, P, h1_la, h2, s, r),
                               basis_seed, rep.dps)
        tr_mu = rep.of_word(p.meridian)[0, 0] + rep.of_word(p.meridian)[1, 1]
        tr_la = rep.of_word(p.longitude)[0, 0] + rep.of_word(p.longitude)[1, 1]
        return {
            "tau_mu": t_mu,
            "tau_lambda": t_la,
            "ratio_sq": (t_mu.value / t_la.value) ** 2,
            "tr_mu": tr_mu,
            "tr_lambda": tr_la,
            "homology": (0, 1, 1),
        }
