"""Rational noncommutative torus invariants and the isomorphism decision.

The deformation parameter is a rational skew form theta; only the phases
e(theta_ij) matter, so everything is invariant under integer shifts and
GL(n, Z) congruence.  The decision procedure reduces to a finite orbit walk
mod the common denominator, with every positive answer shipping an exact
integral certificate (T, shift) that is verified literally before being
returned.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, isqrt, lcm

from .bundles import classify_projflat, direct_sum_power, endo, line_twist_exists
from .cohomology import AltFormZ
from .exact_linalg import (
    IntMatrix,
    SkewRatForm,
    inverse_mod,
    lift_unimodular_mod,
    smith_normal_form,
    symplectic_normal_form,
)
from .projrep import Bicharacter, BilinearCocycle, ProjectiveRep, heisenberg_rep, radical

ORBIT_CAP = 10 ** 6


@dataclass(frozen=True)
class NCTorusParams:
    """C(T^n_theta) tensored with m x m matrices."""

    n: int
    theta: SkewRatForm
    m: int = 1

    def __post_init__(self):
        if self.theta.n != self.n:
            raise ValueError("theta size does not match n")
        if self.m < 1:
            raise ValueError("matrix amplification must be >= 1")


@dataclass(frozen=True)
class NormalFormResult:
    """Certificate T with T theta T^t = [[0, D, 0], [-D, 0, 0], [0, 0, 0]],
    D = diag(blocks) in lowest terms, denominators ascending in divisibility."""

    T: IntMatrix
    blocks: tuple
    free_rank: int

    @property
    def n(self) -> int:
        return self.T.rows

    def block_form(self) -> SkewRatForm:
        n = self.n
        k = len(self.blocks)
        m = [[Fraction(0)] * n for _ in range(n)]
        for i, b in enumerate(self.blocks):
            m[i][k + i] = b
            m[k + i][i] = -b
        return SkewRatForm(m)


def q_theta(theta: SkewRatForm) -> int:
    """Square root of the lattice index [(Z^n + im theta) : Z^n].

    Computed by both routes -- the Smith form of the stacked generators and
    the radical index of the bicharacter e(theta) -- which must agree and be
    a perfect square; a failure would falsify the underlying lemma, so it
    aborts loudly."""
    n = theta.n
    ell = theta.common_denominator()
    stacked = IntMatrix([[ell if i == j else 0 for j in range(n)]
                         + list(theta.scaled_int(ell)[i]) for i in range(n)])
    _, D, _ = smith_normal_form(stacked)
    prod = 1
    for i in range(n):
        prod *= D[i][i]
    index = ell ** n // prod

    chi = Bicharacter(theta.mat.entries)
    _, rad_index = radical(chi)
    if index != rad_index:
        raise AssertionError(f"index formulas disagree: {index} vs {rad_index}")
    root = isqrt(index)
    if root * root != index:
        raise AssertionError(f"lattice index {index} is not a perfect square")
    return root


def normal_form(theta: SkewRatForm) -> NormalFormResult:
    """GL(n, Z) block normal form of a rational skew form.

    Blocks are e_i / ell in lowest terms for the alternating divisor chain
    of ell * theta, emitted with ascending denominators (reversed divisor
    order); the certificate is checked literally before returning."""
    n = theta.n
    ell = theta.common_denominator()
    nf = symplectic_normal_form(theta.scaled_int(ell))
    k = len(nf.divisors)
    order = list(range(k - 1, -1, -1))
    perm_rows = []
    for t in order:
        perm_rows.append(2 * t)
    for t in order:
        perm_rows.append(2 * t + 1)
    perm_rows.extend(range(2 * k, n))
    P = IntMatrix([[int(c == r) for c in range(n)] for r in perm_rows])
    T = P @ nf.T
    blocks = tuple(Fraction(nf.divisors[t], ell) for t in order)
    result = NormalFormResult(T=T, blocks=blocks, free_rank=n - 2 * k)
    assert theta.congruence(T) == result.block_form()
    qs = [b.denominator for b in blocks]
    assert all(qs[i + 1] % qs[i] == 0 for i in range(len(qs) - 1))
    prod = 1
    for q in qs:
        prod *= q
    assert prod == q_theta(theta)
    return result


def c1_of_E_theta(theta: SkewRatForm) -> AltFormZ:
    """First Chern class of the canonical projectively flat module bundle:
    q_theta * theta, an integral alternating form (sign fixed as +)."""
    q = q_theta(theta)
    scaled = theta.mat.scale(q)
    if not scaled.is_integral():
        raise AssertionError("q_theta * theta failed to be integral")
    return AltFormZ(scaled.to_int())


def bundle_of(theta: SkewRatForm):
    """Realization data: the rank-q_theta projectively flat vector class, its
    endomorphism matrix-bundle class, and the attached projective
    representation (normalized form transported back along the certificate)."""
    n = theta.n
    q = q_theta(theta)
    vector = classify_projflat(n, q, c1_of_E_theta(theta))
    matrix = endo(vector)
    nf = normal_form(theta)
    base = heisenberg_rep(nf.block_form())
    tinv = nf.T.inverse_unimodular()
    gens = []
    for i in range(n):
        m = base.gens[0] ** tinv[i][0]
        for j in range(1, n):
            m = m @ base.gens[j] ** tinv[i][j]
        gens.append(m)
    rep = ProjectiveRep(gens, BilinearCocycle(theta.upper()))
    assert rep.dim == vector.rank
    return vector, matrix, rep


class IsoStatus(enum.Enum):
    ISO = "iso"
    NOT_ISO = "not-iso"
    UNDECIDED = "undecided"


@dataclass(frozen=True)
class IsoDecision:
    status: IsoStatus
    T: IntMatrix | None = None
    shift: IntMatrix | None = None

    @property
    def is_iso(self) -> bool:
        return self.status is IsoStatus.ISO


def _theta_bar(theta: SkewRatForm, ell: int):
    f = theta.frac()
    return tuple(tuple(int(x * ell) % ell for x in row) for row in f.mat.entries)


def _invariant_chain(theta: SkewRatForm, ell: int):
    """Denominators q_i = ell / gcd(e_i, ell) > 1 of the divisor chain of
    ell * frac(theta): the finite pairing invariants of the class."""
    divisors = symplectic_normal_form(theta.frac().scaled_int(ell)).divisors
    return tuple(ell // gcd(e, ell) for e in divisors if ell // gcd(e, ell) > 1)


def _mat_mul_mod(a, b, ell):
    n = len(a)
    return tuple(tuple(sum(a[i][k] * b[k][j] for k in range(n)) % ell
                       for j in range(n)) for i in range(n))


def _congruence_mod(g, m, ell):
    gt = tuple(zip(*g))
    return _mat_mul_mod(_mat_mul_mod(g, m, ell), gt, ell)


def _generators(n: int, ell: int):
    gens = []
    for i in range(n):
        for j in range(n):
            if i != j:
                for c in (1, -1):
                    e = [[int(r == s) for s in range(n)] for r in range(n)]
                    e[i][j] = c % ell
                    gens.append(tuple(tuple(r) for r in e))
    j = [[int(r == s) for s in range(n)] for r in range(n)]
    j[0][0] = (-1) % ell
    gens.append(tuple(tuple(r) for r in j))
    return gens


def _congruence_search(theta: SkewRatForm, theta2: SkewRatForm, cap: int):
    """Bidirectional orbit walk between the mod-ell reductions.  Returns
    (status, g mod ell or None, ell)."""
    n = theta.n
    ell = lcm(theta.frac().common_denominator(), theta2.frac().common_denominator())
    ident = tuple(tuple(int(r == s) for s in range(n)) for r in range(n))
    if ell == 1:
        return IsoStatus.ISO, ident, ell
    s1 = _theta_bar(theta, ell)
    s2 = _theta_bar(theta2, ell)
    if s1 == s2:
        return IsoStatus.ISO, ident, ell
    gens = _generators(n, ell)
    fwd = {s1: ident}
    bwd = {s2: ident}
    frontier_f = [s1]
    frontier_b = [s2]

    def meet(g_fwd, h_bwd):
        hinv = inverse_mod(IntMatrix(h_bwd), ell)
        prod = _mat_mul_mod(tuple(hinv.entries), g_fwd, ell)
        return IsoStatus.ISO, prod, ell

    while frontier_f or frontier_b:
        use_fwd = bool(frontier_f) and (not frontier_b
                                        or len(frontier_f) <= len(frontier_b))
        frontier, seen, other = ((frontier_f, fwd, bwd) if use_fwd
                                 else (frontier_b, bwd, fwd))
        new_frontier = []
        for state in frontier:
            g0 = seen[state]
            for e in gens:
                ns = _congruence_mod(e, state, ell)
                if ns in seen:
                    continue
                ng = _mat_mul_mod(e, g0, ell)
                seen[ns] = ng
                new_frontier.append(ns)
                if ns in other:
                    if use_fwd:
                        return meet(ng, other[ns])
                    return meet(other[ns], ng)
                if len(fwd) + len(bwd) > cap:
                    return IsoStatus.UNDECIDED, None, ell
        if use_fwd:
            frontier_f = new_frontier
            if not new_frontier:
                return IsoStatus.NOT_ISO, None, ell  # forward orbit closed
        else:
            frontier_b = new_frontier
            if not new_frontier:
                return IsoStatus.NOT_ISO, None, ell
    return IsoStatus.NOT_ISO, None, ell


def _certified(theta: SkewRatForm, theta2: SkewRatForm, g, ell) -> IsoDecision:
    T = lift_unimodular_mod(IntMatrix(g), ell)
    diff = theta2.mat - theta.congruence(T).mat
    if not diff.is_integral():
        raise AssertionError("lifted certificate failed literal verification")
    return IsoDecision(IsoStatus.ISO, T=T, shift=diff.to_int())


def iso_decide(p1: NCTorusParams, p2: NCTorusParams, cap: int = ORBIT_CAP) -> IsoDecision:
    """Decide C(T^n_theta) (x) M_m = C(T^n'_theta') (x) M_m'.

    Pipeline: reject on n or m mismatch; reject if q_theta or the finite
    pairing invariants differ; then the exact mod-ell orbit walk, whose
    positive answers are lifted to integral certificates and verified.
    Exceeding the orbit cap reports UNDECIDED, never a guess."""
    if p1.n != p2.n or p1.m != p2.m:
        return IsoDecision(IsoStatus.NOT_ISO)
    theta, theta2 = p1.theta, p2.theta
    if q_theta(theta) != q_theta(theta2):
        return IsoDecision(IsoStatus.NOT_ISO)
    ell = lcm(theta.frac().common_denominator(), theta2.frac().common_denominator())
    if _invariant_chain(theta, ell) != _invariant_chain(theta2, ell):
        return IsoDecision(IsoStatus.NOT_ISO)
    status, g, ell = _congruence_search(theta, theta2, cap)
    if status is IsoStatus.ISO:
        return _certified(theta, theta2, g, ell)
    return IsoDecision(status)


def iso_via_bundles(theta: SkewRatForm, theta2: SkewRatForm, m: int = 1,
                    cap: int = ORBIT_CAP) -> IsoDecision:
    """Alternative decision through the bundle classification: align by the
    shared congruence search, then ask for a line-bundle twist between the
    m-fold sums.  Must agree with iso_decide; the amplification m cancels."""
    if m < 1:
        raise ValueError("matrix amplification must be >= 1")
    if theta.n != theta2.n:
        return IsoDecision(IsoStatus.NOT_ISO)
    if q_theta(theta) != q_theta(theta2):
        return IsoDecision(IsoStatus.NOT_ISO)
    status, g, ell = _congruence_search(theta, theta2, cap)
    if status is not IsoStatus.ISO:
        return IsoDecision(status)
    decision = _certified(theta, theta2, g, ell)
    aligned = theta.congruence(decision.T)
    n = theta.n
    e1 = direct_sum_power(classify_projflat(n, q_theta(aligned), c1_of_E_theta(aligned)), m)
    e2 = direct_sum_power(classify_projflat(n, q_theta(theta2), c1_of_E_theta(theta2)), m)
    c_line = line_twist_exists(e1, e2)
    assert c_line is not None, "aligned classes must differ by a line bundle"
    return decision
