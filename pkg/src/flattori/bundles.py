"""Classification layer for projectively flat vector bundles and flat
matrix-algebra bundles on tori.

Classes are represented purely by their classifying invariants (base
dimension, rank/size, and the degree-2 class); total spaces never appear
here -- the autofactor module holds concrete factor-of-automorphy models
that cross-check these formulas numerically.
"""

from __future__ import annotations

from .cohomology import (
    STANDARD,
    AltFormModQ,
    AltFormZ,
    Orientation2,
    RootOfUnity,
    beta_reduce,
    fundamental_pairing,
    fundamental_pairing_modq,
    mu_q_image,
)


class VectorBundleClass:
    """Isomorphism class of a projectively flat rank-q bundle on T^n,
    determined by (n, q, c1)."""

    __slots__ = ("n", "rank", "c1")

    def __init__(self, n: int, rank: int, c1: AltFormZ):
        if rank < 1:
            raise ValueError("rank must be >= 1")
        if c1.n != n:
            raise ValueError("first Chern class lives on the wrong torus")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "rank", rank)
        object.__setattr__(self, "c1", c1)

    def __setattr__(self, name, value):
        raise AttributeError("VectorBundleClass is immutable")

    def __eq__(self, other):
        return (isinstance(other, VectorBundleClass)
                and (self.n, self.rank, self.c1) == (other.n, other.rank, other.c1))

    def __hash__(self):
        return hash((self.n, self.rank, self.c1))

    def __repr__(self):
        return f"VectorBundleClass(n={self.n}, rank={self.rank}, c1={self.c1})"


class MatrixBundleClass:
    """Isomorphism class of a flat q x q matrix bundle on T^n,
    determined by (n, q, beta)."""

    __slots__ = ("n", "size", "beta")

    def __init__(self, n: int, size: int, beta: AltFormModQ):
        if size < 1:
            raise ValueError("size must be >= 1")
        if beta.modulus != size:
            raise ValueError("beta modulus must equal the matrix size")
        if beta.n != n:
            raise ValueError("beta lives on the wrong torus")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "size", size)
        object.__setattr__(self, "beta", beta)

    def __setattr__(self, name, value):
        raise AttributeError("MatrixBundleClass is immutable")

    def __eq__(self, other):
        return (isinstance(other, MatrixBundleClass)
                and (self.n, self.size, self.beta) == (other.n, other.size, other.beta))

    def __hash__(self):
        return hash((self.n, self.size, self.beta))

    def __repr__(self):
        return f"MatrixBundleClass(n={self.n}, size={self.size}, beta={self.beta})"


def classify_projflat(n: int, q: int, c: AltFormZ) -> VectorBundleClass:
    """The unique projectively flat class with the given invariants.

    Total on well-shaped inputs: every integral 2-class is realized (line
    bundle with that class plus a trivial complement)."""
    return VectorBundleClass(n, q, c)


def iso_vector(e1: VectorBundleClass, e2: VectorBundleClass) -> bool:
    """Isomorphism of projectively flat classes of equal rank.

    Comparing across distinct ranks (or base tori) is refused rather than
    answered: the classification statement fixes the rank."""
    if e1.n != e2.n:
        raise ValueError("base dimension mismatch")
    if e1.rank != e2.rank:
        raise ValueError("rank mismatch")
    return e1.c1 == e2.c1


def endo(e: VectorBundleClass) -> MatrixBundleClass:
    """E -> End(E) = E (x) E*: beta is c1 reduced mod the rank."""
    return MatrixBundleClass(e.n, e.rank, beta_reduce(e.c1, e.rank))


def iso_matrix(a1: MatrixBundleClass, a2: MatrixBundleClass) -> bool:
    return a1.n == a2.n and a1.size == a2.size and a1.beta == a2.beta


def tensor_line(e: VectorBundleClass, c_line: AltFormZ) -> VectorBundleClass:
    """Tensor with a line bundle of class c_line: c1 shifts by rank * c_line."""
    if c_line.n != e.n:
        raise ValueError("line bundle class lives on the wrong torus")
    return VectorBundleClass(e.n, e.rank, e.c1 + c_line.scale(e.rank))


def line_twist_exists(e1: VectorBundleClass, e2: VectorBundleClass):
    """Class of a line bundle L with e1 (x) L = e2, when one exists.

    Present iff the rank divides every entry of c1(e2) - c1(e1)."""
    if e1.n != e2.n:
        raise ValueError("base dimension mismatch")
    if e1.rank != e2.rank:
        raise ValueError("rank mismatch")
    q = e1.rank
    delta = e2.c1 - e1.c1
    if any(x % q != 0 for row in delta.mat.entries for x in row):
        return None
    return AltFormZ([[x // q for x in row] for row in delta.mat.entries])


def direct_sum_power(e: VectorBundleClass, m: int) -> VectorBundleClass:
    """m-fold Whitney sum: rank m*q, c1 scales by m."""
    if m < 1:
        raise ValueError("m must be >= 1")
    return VectorBundleClass(e.n, m * e.rank, e.c1.scale(m))


def X_bundle(q: int, a: int) -> VectorBundleClass:
    """The rank-q bundle on T^2 with c1(e1, e2) = -a (twist -a)."""
    if q < 1:
        raise ValueError("rank must be >= 1")
    return VectorBundleClass(2, q, AltFormZ([[0, -a], [a, 0]]))


def twist(e: VectorBundleClass, o: Orientation2 = STANDARD) -> int:
    """Winding-number invariant of a rank-q bundle on T^2: -c1[T^2]."""
    if e.n != 2:
        raise ValueError("twist is defined on T^2 only")
    return -fundamental_pairing(e.c1, o)


def omega(a: MatrixBundleClass, o: Orientation2 = STANDARD) -> RootOfUnity:
    """mu_q invariant of a q x q matrix bundle on T^2: inverse of beta[T^2]."""
    if a.n != 2:
        raise ValueError("omega is defined on T^2 only")
    p = fundamental_pairing_modq(a.beta, o)
    return mu_q_image(-p, a.size)


def tw_to_omega(tw: int, q: int) -> RootOfUnity:
    """Image of a twist under pi_1(U(q)) -> pi_1(PU(q)) = mu_q."""
    return mu_q_image(tw, q)
