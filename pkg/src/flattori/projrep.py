"""2-cocycles on Z^n with torsion phase values, bicharacters/radicals,
coboundary equivalence, and the irreducible clock-and-shift projective
representations.

Everything is exact: phases are rationals mod 1, and the commutant and
intertwiner linear systems are solved over the cyclotomic field of order
lcm(q_i).  No floating point in this module.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from math import lcm

from .autofactor import AffinePhase, GenPermPhaseMatrix
from .cyclotomic import CycElt, nullspace, sparse_rref
from .exact_linalg import IntMatrix, RatMatrix, SkewRatForm, lattice_kernel_mod


class BilinearCocycle:
    """The 2-cocycle z(g, g') = e(g^t B g') for a rational square matrix B
    (bilinearity makes the cocycle identity automatic)."""

    __slots__ = ("n", "B")

    def __init__(self, B):
        if not isinstance(B, RatMatrix):
            B = RatMatrix(B)
        if B.rows != B.cols:
            raise ValueError("square matrix expected")
        object.__setattr__(self, "n", B.rows)
        object.__setattr__(self, "B", B)

    def __setattr__(self, name, value):
        raise AttributeError("BilinearCocycle is immutable")

    def value(self, g1, g2) -> Fraction:
        """Phase of z(g1, g2), in turns mod 1."""
        total = Fraction(0)
        for i in range(self.n):
            if g1[i]:
                for j in range(self.n):
                    if g2[j]:
                        total += g1[i] * self.B[i][j] * g2[j]
        return total % 1

    def __eq__(self, other):
        return isinstance(other, BilinearCocycle) and self.B == other.B

    def __hash__(self):
        return hash(self.B)

    def __repr__(self):
        return f"BilinearCocycle({self.B!r})"


class Bicharacter:
    """Skew bicharacter chi(g, g') = e(g^t S g') with S mod 1; entries are
    kept reduced in [0, 1) with S + S^t = 0 (mod 1)."""

    __slots__ = ("n", "mat")

    def __init__(self, mat):
        ents = tuple(tuple(Fraction(x) % 1 for x in row) for row in mat)
        n = len(ents)
        if any(len(r) != n for r in ents):
            raise ValueError("square matrix expected")
        for i in range(n):
            for j in range(n):
                if (ents[i][j] + ents[j][i]) % 1 != 0:
                    raise ValueError("matrix is not skew mod 1")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "mat", ents)

    def __setattr__(self, name, value):
        raise AttributeError("Bicharacter is immutable")

    def value(self, g1, g2) -> Fraction:
        total = Fraction(0)
        for i in range(self.n):
            if g1[i]:
                for j in range(self.n):
                    if g2[j]:
                        total += g1[i] * self.mat[i][j] * g2[j]
        return total % 1

    def is_trivial(self) -> bool:
        return all(x == 0 for row in self.mat for x in row)

    def __eq__(self, other):
        return isinstance(other, Bicharacter) and self.mat == other.mat

    def __hash__(self):
        return hash(self.mat)

    def __repr__(self):
        return f"Bicharacter({[[str(x) for x in r] for r in self.mat]})"


def bicharacter_of(z: BilinearCocycle) -> Bicharacter:
    """Antisymmetrization z(g,g') z(g',g)^{-1}: S = (B - B^t) mod 1."""
    B = z.B
    return Bicharacter([[B[i][j] - B[j][i] for j in range(z.n)]
                        for i in range(z.n)])


def radical(chi: Bicharacter):
    """Sublattice H = {h : chi(h, g) = 1 for all g} with its finite index,
    via the integer kernel of the cleared-denominator matrix."""
    ell = lcm(*(x.denominator for row in chi.mat for x in row))
    M = IntMatrix([[int(x * ell) for x in row] for row in chi.mat])
    return lattice_kernel_mod(M, ell)


@dataclass(frozen=True)
class QuadraticPhase:
    """Witness f(g) = e(g^t Q g + lin . g) for coboundary equivalence."""

    Q: RatMatrix
    lin: tuple

    def value(self, g) -> Fraction:
        n = self.Q.rows
        total = sum((Fraction(g[i]) * self.Q[i][j] * g[j]
                     for i in range(n) for j in range(n)), Fraction(0))
        total += sum((Fraction(l) * g[i] for i, l in enumerate(self.lin)), Fraction(0))
        return total % 1

    def coboundary(self, g1, g2) -> Fraction:
        s = tuple(a + b for a, b in zip(g1, g2))
        return (self.value(g1) + self.value(g2) - self.value(s)) % 1


def cohomologous(z1: BilinearCocycle, z2: BilinearCocycle):
    """Decide cohomology of two bilinear cocycles; the criterion is equality
    of bicharacters.  On success returns a quadratic-phase witness f with
    z1/z2 = coboundary of f, verified by substitution on 50 random pairs."""
    if z1.n != z2.n:
        raise ValueError("cocycles live on different lattices")
    if bicharacter_of(z1) != bicharacter_of(z2):
        return None
    n = z1.n
    C = z1.B - z2.B
    # symmetric representative M = -C (mod 1 entrywise), split as Q + Q^t
    m = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            m[i][j] = -C[i][j]
            m[j][i] = m[i][j]
    q = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        q[i][i] = m[i][i] / 2
        for j in range(i + 1, n):
            q[i][j] = m[i][j]
    witness = QuadraticPhase(RatMatrix(q), (Fraction(0),) * n)
    rng = random.Random(71)
    for _ in range(50):
        g1 = tuple(rng.randint(-8, 8) for _ in range(n))
        g2 = tuple(rng.randint(-8, 8) for _ in range(n))
        lhs = (z1.value(g1, g2) - z2.value(g1, g2)) % 1
        assert lhs == witness.coboundary(g1, g2)
    return witness


def clock_shift(q: int, p: int):
    """Clock U = diag(e(p j / q)) and shift V e_j = e_{j-1}, with
    V U = e(p/q) U V exactly."""
    if q < 1:
        raise ValueError("q must be >= 1")
    U = GenPermPhaseMatrix(range(q), [AffinePhase((), Fraction(p * j, q) % 1)
                                      for j in range(q)])
    V = GenPermPhaseMatrix([(j - 1) % q for j in range(q)],
                           [AffinePhase((), 0)] * q)
    assert V @ U == (U @ V).scalar_mul(AffinePhase((), Fraction(p, q)))
    return U, V


class ProjectiveRep:
    """Projective representation of Z^n given by constant generalized
    permutation-phase generator images; the stored cocycle's
    antisymmetrization chi governs the commutation, which is verified
    exactly at construction: U_j U_i = chi(e_j, e_i) U_i U_j."""

    __slots__ = ("n", "dim", "gens", "cocycle")

    def __init__(self, gens, cocycle: BilinearCocycle):
        gens = tuple(gens)
        if len(gens) != cocycle.n:
            raise ValueError("one generator image per lattice generator")
        dims = {g.size for g in gens}
        if len(dims) != 1:
            raise ValueError("generator images must share a size")
        chi = bicharacter_of(cocycle)
        for j in range(len(gens)):
            for i in range(len(gens)):
                if i == j:
                    continue
                scal = AffinePhase((), chi.mat[j][i])
                if gens[j] @ gens[i] != (gens[i] @ gens[j]).scalar_mul(scal):
                    raise ValueError("generator images do not realize the cocycle's "
                                     "commutation relations")
        object.__setattr__(self, "n", cocycle.n)
        object.__setattr__(self, "dim", dims.pop())
        object.__setattr__(self, "gens", gens)
        object.__setattr__(self, "cocycle", cocycle)

    def __setattr__(self, name, value):
        raise AttributeError("ProjectiveRep is immutable")

    def direct_sum(self, other: "ProjectiveRep") -> "ProjectiveRep":
        if self.cocycle != other.cocycle:
            raise ValueError("direct sum needs equal cocycles")
        return ProjectiveRep((a.direct_sum(b) for a, b in zip(self.gens, other.gens)),
                             self.cocycle)

    def phase_order(self) -> int:
        return lcm(1, *(p.const.denominator for g in self.gens for p in g.phases))

    def records(self):
        """Export as (generator index, permutation, phase list) records."""
        return [(i, list(g.perm), [str(p.const) for p in g.phases])
                for i, g in enumerate(self.gens)]

    def __repr__(self):
        return f"ProjectiveRep(n={self.n}, dim={self.dim})"


def _normal_form_blocks(theta: SkewRatForm):
    """Detect the [[0, D, 0], [-D, 0, 0], [0, 0, 0]] block pattern; returns
    the list of diagonal fractions of D."""
    n = theta.n
    nz = [(i, j) for i in range(n) for j in range(i + 1, n) if theta.mat[i][j] != 0]
    k = len(nz)
    if nz != [(i, k + i) for i in range(k)]:
        raise ValueError("input is not in block normal form")
    return [theta.mat[i][k + i] for i in range(k)]


def heisenberg_rep(theta: SkewRatForm) -> ProjectiveRep:
    """Irreducible projective representation attached to a block normal form:
    the tensor product over blocks p_i/q_i of the clock/shift pair, trivial
    on the free directions.  Dimension is the product of the q_i."""
    blocks = _normal_form_blocks(theta)
    k = len(blocks)
    n = theta.n
    qs = [b.denominator for b in blocks]
    pairs = [clock_shift(b.denominator, b.numerator) for b in blocks]
    gens = []
    for i in range(n):
        if k == 0:
            gens.append(GenPermPhaseMatrix.identity(1))
            continue
        factors = []
        for t in range(k):
            if i == t:
                factors.append(pairs[t][1])       # x-direction: shift
            elif i == k + t:
                factors.append(pairs[t][0])       # y-direction: clock
            else:
                factors.append(GenPermPhaseMatrix.identity(qs[t]))
        m = factors[0]
        for f in factors[1:]:
            m = m.kron(f)
        gens.append(m)
    return ProjectiveRep(gens, BilinearCocycle(theta.upper()))


def _commutant_equations(rep: ProjectiveRep, L: int):
    """Sparse rows over Q(zeta_L) for {X : X U_i = U_i X}."""
    d = rep.dim
    rows = []
    for g in rep.gens:
        perm = g.perm
        inv = [0] * d
        for j, p in enumerate(perm):
            inv[p] = j
        u = [CycElt.from_phase(ph.const, L) for ph in g.phases]
        for r in range(d):
            for c in range(d):
                # u_c X[r, perm(c)] - u_{inv(r)} X[inv(r), c] = 0
                row: dict[int, CycElt] = {}
                v1 = r * d + perm[c]
                row[v1] = u[c]
                v2 = inv[r] * d + c
                row[v2] = row.get(v2, CycElt.zero(L)) - u[inv[r]]
                rows.append(row)
    return rows


def commutant_dim(rep: ProjectiveRep) -> int:
    """Dimension of the commutant of the generator images, decided exactly
    over the cyclotomic field of the phase order."""
    L = rep.phase_order()
    rows = _commutant_equations(rep, L)
    pivots, _ = sparse_rref(rows, rep.dim * rep.dim, L)
    return rep.dim * rep.dim - len(pivots)


def _gen_to_cyc(g: GenPermPhaseMatrix, L: int):
    d = g.size
    m = [[CycElt.zero(L) for _ in range(d)] for _ in range(d)]
    for j in range(d):
        m[g.perm[j]][j] = CycElt.from_phase(g.phases[j].const, L)
    return m


def _cyc_matmul(a, b, L):
    d = len(a)
    out = [[CycElt.zero(L) for _ in range(d)] for _ in range(d)]
    for i in range(d):
        for k in range(d):
            if a[i][k].is_zero():
                continue
            for j in range(d):
                if not b[k][j].is_zero():
                    out[i][j] = out[i][j] + a[i][k] * b[k][j]
    return out


def _cyc_det_nonzero(m, L) -> bool:
    d = len(m)
    a = [row[:] for row in m]
    for col in range(d):
        piv = next((r for r in range(col, d) if not a[r][col].is_zero()), None)
        if piv is None:
            return False
        a[col], a[piv] = a[piv], a[col]
        inv = a[col][col].inverse()
        a[col] = [inv * x for x in a[col]]
        for r in range(col + 1, d):
            if not a[r][col].is_zero():
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return True


def intertwiner(rep1: ProjectiveRep, rep2: ProjectiveRep):
    """Exact invertible X with X rep1(g) = rep2(g) X on generators, when the
    representations are unitarily equivalent; None otherwise.

    Distinct bicharacters are a contract violation (error), not a negative
    answer.  For equal-cocycle irreducibles a nonzero solution is invertible
    by the Schur argument, so the first basis vector of the solution space
    decides; reducible inputs are probed through small basis combinations.
    """
    if bicharacter_of(rep1.cocycle) != bicharacter_of(rep2.cocycle):
        raise ValueError("cocycle mismatch: distinct bicharacters")
    if rep1.n != rep2.n:
        raise ValueError("representations of different lattices")
    if rep1.dim != rep2.dim:
        return None
    d = rep1.dim
    L = lcm(rep1.phase_order(), rep2.phase_order())
    rows = []
    for g1, g2 in zip(rep1.gens, rep2.gens):
        perm1 = g1.perm
        inv2 = [0] * d
        for j, p in enumerate(g2.perm):
            inv2[p] = j
        u1 = [CycElt.from_phase(ph.const, L) for ph in g1.phases]
        u2 = [CycElt.from_phase(ph.const, L) for ph in g2.phases]
        for r in range(d):
            for c in range(d):
                # u1_c X[r, perm1(c)] - u2_{inv2(r)} X[inv2(r), c] = 0
                row: dict[int, CycElt] = {}
                v1 = r * d + perm1[c]
                row[v1] = u1[c]
                v2 = inv2[r] * d + c
                row[v2] = row.get(v2, CycElt.zero(L)) - u2[inv2[r]]
                rows.append(row)
    basis = nullspace(rows, d * d, L)
    if not basis:
        return None

    def to_matrix(vec):
        return [[vec[r * d + c] for c in range(d)] for r in range(d)]

    candidates = [to_matrix(v) for v in basis]
    for i in range(len(basis)):
        for j in range(i + 1, len(basis)):
            candidates.append(to_matrix([a + b for a, b in zip(basis[i], basis[j])]))
    for X in candidates:
        if _cyc_det_nonzero(X, L):
            lead = next(x for row in X for x in row if not x.is_zero())
            inv = lead.inverse()
            X = [[inv * x for x in row] for row in X]
            _verify_intertwiner(X, rep1, rep2, L)
            return X
    return None


def _verify_intertwiner(X, rep1, rep2, L):
    for g1, g2 in zip(rep1.gens, rep2.gens):
        lhs = _cyc_matmul(X, _gen_to_cyc(g1, L), L)
        rhs = _cyc_matmul(_gen_to_cyc(g2, L), X, L)
        assert lhs == rhs
