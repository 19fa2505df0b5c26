"""Exact factor-of-automorphy engine over generalized permutation-phase
matrices.

The symbolic layer is exact: matrix entries are phases e(l.x + c) with
rational l and c, phases compare equal mod 1, and products/inverses/
translations stay inside the class.  The numerical layer (clutching_twist,
clutching_omega) is the only place double-precision complex arithmetic is
allowed; every value it returns is snapped to an exact integer or exact
q-torsion phase, and snap failure is an error, never a silent rounding.
"""

from __future__ import annotations

import cmath
import math
import random
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .cohomology import AltFormZ, RootOfUnity

UNWRAP_STEP_BOUND = math.pi / 2
SNAP_TOL_TURNS = 1e-6


class UnwrapError(RuntimeError):
    """Phase unwrapping saw a step at or beyond the soundness bound."""


class SnapError(RuntimeError):
    """A numerical value landed too far from every allowed exact value."""


class AffinePhase:
    """The phase e(linear . x + const); constants are identified mod 1,
    so (-1)^k sign characters live here as half-integer constants k/2."""

    __slots__ = ("linear", "const")

    def __init__(self, linear, const):
        object.__setattr__(self, "linear", tuple(Fraction(c) for c in linear))
        object.__setattr__(self, "const", Fraction(const) % 1)

    def __setattr__(self, name, value):
        raise AttributeError("AffinePhase is immutable")

    @classmethod
    def zero(cls, dim: int) -> "AffinePhase":
        return cls((0,) * dim, 0)

    @property
    def dim(self) -> int:
        return len(self.linear)

    def __add__(self, other: "AffinePhase") -> "AffinePhase":
        if self.dim != other.dim:
            raise ValueError("phase dimension mismatch")
        return AffinePhase(tuple(a + b for a, b in zip(self.linear, other.linear)),
                           self.const + other.const)

    def __neg__(self) -> "AffinePhase":
        return AffinePhase(tuple(-a for a in self.linear), -self.const)

    def __sub__(self, other: "AffinePhase") -> "AffinePhase":
        return self + (-other)

    def translate(self, gamma) -> "AffinePhase":
        """Substitute x -> x + gamma."""
        if len(gamma) != self.dim:
            raise ValueError("translation dimension mismatch")
        shift = sum((l * Fraction(g) for l, g in zip(self.linear, gamma)), Fraction(0))
        return AffinePhase(self.linear, self.const + shift)

    def is_constant(self) -> bool:
        return all(l == 0 for l in self.linear)

    def turns(self, x) -> Fraction:
        """Exact number of turns at a rational point x."""
        return (sum((l * Fraction(v) for l, v in zip(self.linear, x)), Fraction(0))
                + self.const)

    def eval_complex(self, x) -> complex:
        t = sum(float(l) * float(v) for l, v in zip(self.linear, x)) + float(self.const)
        return cmath.exp(2j * math.pi * t)

    def __eq__(self, other):
        return (isinstance(other, AffinePhase)
                and self.linear == other.linear and self.const == other.const)

    def __hash__(self):
        return hash((self.linear, self.const))

    def __repr__(self):
        return f"e({' + '.join(str(l) + f'*x{k}' for k, l in enumerate(self.linear) if l)}"\
               f" + {self.const})"


def _perm_parity(perm) -> int:
    inv = sum(1 for i in range(len(perm)) for j in range(i + 1, len(perm))
              if perm[i] > perm[j])
    return inv % 2


class GenPermPhaseMatrix:
    """q x q matrix with exactly one nonzero phase entry per row and column:
    entry (perm[j], j) carries phases[j].  Closed under product, inverse,
    translation; all entries have modulus one, so these are unitary."""

    __slots__ = ("size", "perm", "phases")

    def __init__(self, perm, phases):
        perm = tuple(int(p) for p in perm)
        phases = tuple(phases)
        if sorted(perm) != list(range(len(perm))):
            raise ValueError("not a permutation")
        if len(phases) != len(perm):
            raise ValueError("one phase per column required")
        dims = {p.dim for p in phases}
        if len(dims) > 1:
            raise ValueError("mixed phase dimensions")
        object.__setattr__(self, "size", len(perm))
        object.__setattr__(self, "perm", perm)
        object.__setattr__(self, "phases", phases)

    def __setattr__(self, name, value):
        raise AttributeError("GenPermPhaseMatrix is immutable")

    @classmethod
    def identity(cls, q: int, dim: int = 0) -> "GenPermPhaseMatrix":
        return cls(range(q), [AffinePhase.zero(dim)] * q)

    @property
    def dim(self) -> int:
        return self.phases[0].dim

    def __matmul__(self, other: "GenPermPhaseMatrix") -> "GenPermPhaseMatrix":
        if self.size != other.size:
            raise ValueError("size mismatch")
        perm = tuple(self.perm[other.perm[j]] for j in range(self.size))
        phases = tuple(self.phases[other.perm[j]] + other.phases[j]
                       for j in range(self.size))
        return GenPermPhaseMatrix(perm, phases)

    def inverse(self) -> "GenPermPhaseMatrix":
        inv = [0] * self.size
        for j, p in enumerate(self.perm):
            inv[p] = j
        return GenPermPhaseMatrix(inv, tuple(-self.phases[inv[i]]
                                             for i in range(self.size)))

    def __pow__(self, v: int) -> "GenPermPhaseMatrix":
        base = self if v >= 0 else self.inverse()
        out = GenPermPhaseMatrix.identity(self.size, self.dim)
        for _ in range(abs(v)):
            out = out @ base
        return out

    def translate(self, gamma) -> "GenPermPhaseMatrix":
        return GenPermPhaseMatrix(self.perm,
                                  tuple(p.translate(gamma) for p in self.phases))

    def scalar_mul(self, phase: AffinePhase) -> "GenPermPhaseMatrix":
        return GenPermPhaseMatrix(self.perm, tuple(p + phase for p in self.phases))

    def det(self) -> AffinePhase:
        """Permutation sign (as a half-integer constant) times all phases."""
        total = AffinePhase.zero(self.dim)
        for p in self.phases:
            total = total + p
        return total + AffinePhase((0,) * self.dim, Fraction(_perm_parity(self.perm), 2))

    def kron(self, other: "GenPermPhaseMatrix") -> "GenPermPhaseMatrix":
        q2 = other.size
        perm = []
        phases = []
        for j1 in range(self.size):
            for j2 in range(q2):
                perm.append(self.perm[j1] * q2 + other.perm[j2])
                phases.append(self.phases[j1] + other.phases[j2])
        return GenPermPhaseMatrix(perm, phases)

    def direct_sum(self, other: "GenPermPhaseMatrix") -> "GenPermPhaseMatrix":
        q1 = self.size
        perm = list(self.perm) + [q1 + p for p in other.perm]
        return GenPermPhaseMatrix(perm, self.phases + other.phases)

    def to_complex(self, x=()) -> np.ndarray:
        m = np.zeros((self.size, self.size), dtype=complex)
        for j, ph in enumerate(self.phases):
            m[self.perm[j], j] = ph.eval_complex(x)
        return m

    def __eq__(self, other):
        return (isinstance(other, GenPermPhaseMatrix)
                and self.perm == other.perm and self.phases == other.phases)

    def __hash__(self):
        return hash((self.perm, self.phases))

    def __repr__(self):
        return f"GenPermPhaseMatrix(perm={self.perm}, phases={list(self.phases)})"


def rieffel_N(q: int, a: int) -> GenPermPhaseMatrix:
    """The cyclic q x q matrix with ones on the superdiagonal and the single
    phase e(-a s) in the bottom-left corner, as a symbolic function of
    x = (s, t)."""
    if q < 1:
        raise ValueError("q must be >= 1")
    perm = [q - 1] + list(range(q - 1))
    phases = [AffinePhase((-a, 0), 0)] + [AffinePhase.zero(2)] * (q - 1)
    return GenPermPhaseMatrix(perm, phases)


@dataclass(frozen=True)
class FactorOfAutomorphy:
    """Lattice cocycle gamma = (u, v) -> N(s)^v on the 2-torus."""

    q: int
    a: int

    def __post_init__(self):
        if self.q < 1:
            raise ValueError("q must be >= 1")
        # cocycle identity on generator pairs, checked symbolically
        for g1 in ((1, 0), (0, 1), (1, 1)):
            for g2 in ((1, 0), (0, 1), (-1, 1)):
                s = (g1[0] + g2[0], g1[1] + g2[1])
                if self.value(s) != self.value(g1).translate(g2) @ self.value(g2):
                    raise AssertionError("cocycle identity failed at construction")

    def value(self, gamma) -> GenPermPhaseMatrix:
        u, v = gamma
        return rieffel_N(self.q, self.a) ** v

    def records(self, gammas=((1, 0), (0, 1))):
        """Dump format: one (gamma, perm, phases) record per lattice vector,
        each phase as the (s-coefficient, t-coefficient, constant) strings."""
        out = []
        for gamma in gammas:
            m = self.value(gamma)
            phases = [[str(p.linear[0]), str(p.linear[1]), str(p.const)]
                      for p in m.phases]
            out.append((tuple(gamma), list(m.perm), phases))
        return out


def factor_from(q: int, a: int) -> FactorOfAutomorphy:
    return FactorOfAutomorphy(q, a)


def check_cocycle(F, trials: int, seed: int = 0):
    """Verify N_{g+g'}(x) = N_g(x+g') N_{g'}(x) exactly on random pairs with
    entries bounded by 10.  Returns the list of violating pairs."""
    rng = random.Random(seed)
    violations = []
    for _ in range(trials):
        g1 = (rng.randint(-10, 10), rng.randint(-10, 10))
        g2 = (rng.randint(-10, 10), rng.randint(-10, 10))
        s = (g1[0] + g2[0], g1[1] + g2[1])
        if F.value(s) != F.value(g1).translate(g2) @ F.value(g2):
            violations.append((g1, g2))
    return violations


class ScalarFactor:
    """Abelian (1 x 1) factor of automorphy with affine exponents.

    The family gamma -> e(f_gamma) is generated by the exponents of the
    lattice generators: xcoeff row i is the x-linear part of f_{e_i} and
    consts[i] its constant (mod 1; sign characters appear as halves).
    Values on all of Z^n follow from the cocycle recursion
    f_{gamma+e}(x) = f_gamma(x+e) + f_e(x).
    """

    __slots__ = ("n", "xcoeff", "consts")

    def __init__(self, xcoeff, consts):
        xc = tuple(tuple(Fraction(v) for v in row) for row in xcoeff)
        cs = tuple(Fraction(c) % 1 for c in consts)
        n = len(xc)
        if any(len(row) != n for row in xc) or len(cs) != n:
            raise ValueError("generator data must be square")
        # the family exists iff the antisymmetrized x-coefficients are integral
        for i in range(n):
            for j in range(n):
                if (xc[i][j] - xc[j][i]).denominator != 1:
                    raise ValueError("generator exponents are not coherent")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "xcoeff", xc)
        object.__setattr__(self, "consts", cs)

    def __setattr__(self, name, value):
        raise AttributeError("ScalarFactor is immutable")

    def generator_phase(self, i: int) -> AffinePhase:
        return AffinePhase(self.xcoeff[i], self.consts[i])

    def value(self, gamma) -> AffinePhase:
        gamma = tuple(int(g) for g in gamma)
        if len(gamma) != self.n:
            raise ValueError("lattice vector has wrong length")
        acc = AffinePhase.zero(self.n)
        for i in range(self.n):
            gi = self.generator_phase(i)
            step = [0] * self.n
            for _ in range(abs(gamma[i])):
                if gamma[i] > 0:
                    step[i] = 1
                    acc = acc.translate(step) + gi
                else:
                    step[i] = -1
                    acc = acc.translate(step) - gi.translate(step)
        return acc

    def __eq__(self, other):
        return (isinstance(other, ScalarFactor)
                and self.xcoeff == other.xcoeff and self.consts == other.consts)

    def __hash__(self):
        return hash((self.xcoeff, self.consts))


def det_cocycle(F: FactorOfAutomorphy) -> ScalarFactor:
    """Determinant of a factor of automorphy, as a scalar factor.

    For the rank-q family this is gamma = (u,v) -> (-1)^{v(q-1)} e(-a v s);
    the sign rides along as the half-integer constant v(q-1)/2."""
    d1 = F.value((1, 0)).det()
    d2 = F.value((0, 1)).det()
    return ScalarFactor((d1.linear, d2.linear), (d1.const, d2.const))


def _translation_increment(phase: AffinePhase, delta) -> Fraction:
    """Exact value of f(x + delta) - f(x); certifies x-independence."""
    shifted = phase.translate(delta)
    if shifted.linear != phase.linear:
        raise AssertionError("x-terms failed to cancel")  # pragma: no cover
    inc = sum((l * Fraction(d) for l, d in zip(phase.linear, delta)), Fraction(0))
    # consistency of the two computations mod 1
    assert (shifted.const - phase.const - inc) % 1 == 0
    return inc


def mumford_c1(f: ScalarFactor) -> AltFormZ:
    """First Chern class of the line bundle of a scalar factor: the form
    (g1, g2) -> (f_{g2}(x+g1) - f_{g2}(x)) - (f_{g1}(x+g2) - f_{g1}(x)),
    independent of x (the cancellation is certified symbolically)."""
    n = f.n
    vals = [f.value(tuple(int(i == k) for k in range(n))) for i in range(n)]
    mat = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            ei = tuple(int(k == i) for k in range(n))
            ej = tuple(int(k == j) for k in range(n))
            c = _translation_increment(vals[j], ei) - _translation_increment(vals[i], ej)
            if c.denominator != 1:
                raise ValueError("factor exponents do not define an integral class")
            mat[i][j] = int(c)
    return AltFormZ(mat)


def default_samples(q: int, a: int) -> int:
    return 64 * q * (abs(a) + 1)


def _require_samples(q: int, a: int, samples: int) -> None:
    least = 4 * (1 + abs(a) * q)
    if samples < least:
        raise ValueError(f"insufficient samples: need at least {least}, got {samples}")


def loop_matrices(F: FactorOfAutomorphy, samples: int) -> np.ndarray:
    """The clutching loop s -> N_{(0,1)}(s, 0) at s = k/samples, k = 0..samples,
    as a stacked complex array (numerical layer)."""
    sym = F.value((0, 1))
    q = sym.size
    s = np.arange(samples + 1) / samples
    mats = np.zeros((samples + 1, q, q), dtype=complex)
    for j, ph in enumerate(sym.phases):
        turns = float(ph.linear[0]) * s + float(ph.const)
        mats[:, sym.perm[j], j] = np.exp(2j * np.pi * turns)
    return mats


def winding_number(values) -> int:
    """Discrete winding number of a closed loop of nonzero complex samples,
    by phase unwrapping; snaps to an exact integer or raises."""
    values = np.asarray(values, dtype=complex)
    if np.any(np.abs(values) == 0):
        raise ValueError("loop passes through zero")
    steps = np.angle(values[1:] / values[:-1])
    if steps.size and np.max(np.abs(steps)) >= UNWRAP_STEP_BOUND:
        raise UnwrapError("phase step at or beyond the unwrapping bound; "
                          "increase the sample count")
    total_turns = float(np.sum(steps)) / (2 * math.pi)
    nearest = round(total_turns)
    if abs(total_turns - nearest) > SNAP_TOL_TURNS:
        raise SnapError(f"winding {total_turns} is not within tolerance of an integer")
    return int(nearest)


def clutching_twist(F: FactorOfAutomorphy, samples: int | None = None) -> int:
    """Winding number of det of the clutching loop; equals the twist."""
    if samples is None:
        samples = default_samples(F.q, F.a)
    _require_samples(F.q, F.a, samples)
    mats = loop_matrices(F, samples)
    dets = np.linalg.det(mats)
    return winding_number(dets)


def clutching_omega(F: FactorOfAutomorphy, samples: int | None = None,
                    tol: float = SNAP_TOL_TURNS) -> RootOfUnity:
    """Endpoint defect of a special-unitary lift of the projective clutching
    loop, found by nearest-unitary continuation and snapped into mu_q."""
    if samples is None:
        samples = default_samples(F.q, F.a)
    _require_samples(F.q, F.a, samples)
    q = F.q
    mats = loop_matrices(F, samples)
    dets = np.linalg.det(mats)
    if np.max(np.abs(np.angle(dets[1:] / dets[:-1]))) >= UNWRAP_STEP_BOUND:
        raise UnwrapError("phase step at or beyond the unwrapping bound; "
                          "increase the sample count")
    roots = np.exp(2j * np.pi * np.arange(q) / q)
    mu = np.exp(-1j * np.angle(dets[0]) / q)
    a_first = mu * mats[0]
    a_prev = a_first
    for k in range(1, samples + 1):
        base = np.exp(-1j * np.angle(dets[k]) / q)
        t = np.einsum("ij,ij->", a_prev.conj(), mats[k])
        cand = base * roots
        mu = cand[np.argmax((cand * t).real)]
        a_prev = mu * mats[k]
    zeta = np.einsum("ij,ij->", a_first, a_prev.conj()) / q
    turns = (math.atan2(zeta.imag, zeta.real) / (2 * math.pi)) % 1.0
    best = min(range(q), key=lambda c: min(abs(turns - c / q), abs(turns - c / q + 1),
                                           abs(turns - c / q - 1)))
    err = min(abs(turns - best / q), abs(turns - best / q + 1), abs(turns - best / q - 1))
    if err > tol:
        raise SnapError(f"endpoint defect {turns} turns is not within {tol} of mu_{q}; "
                        "likely under-sampled")
    return RootOfUnity(Fraction(best, q))
