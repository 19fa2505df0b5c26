"""Exact integer/rational matrix kernels.

Arbitrary precision throughout: Python ints and fractions.Fraction.  Values
are immutable after construction and every operation is a pure function, so
everything here is safe to share across threads.  No floating point.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm


class IntMatrix:
    """Immutable arbitrary-precision integer matrix."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, entries):
        ents = tuple(tuple(int(x) for x in row) for row in entries)
        if not ents or not ents[0]:
            raise ValueError("matrix dimensions must be positive")
        if any(len(r) != len(ents[0]) for r in ents):
            raise ValueError("ragged rows")
        object.__setattr__(self, "rows", len(ents))
        object.__setattr__(self, "cols", len(ents[0]))
        object.__setattr__(self, "entries", ents)

    def __setattr__(self, name, value):
        raise AttributeError("IntMatrix is immutable")

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def zero(cls, rows: int, cols: int | None = None) -> "IntMatrix":
        cols = rows if cols is None else cols
        return cls([[0] * cols for _ in range(rows)])

    def __getitem__(self, i):
        return self.entries[i]

    def _same_shape(self, other):
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("shape mismatch")

    def __eq__(self, other):
        return isinstance(other, IntMatrix) and self.entries == other.entries

    def __hash__(self):
        return hash(self.entries)

    def __repr__(self):
        return f"IntMatrix({[list(r) for r in self.entries]})"

    def __add__(self, other):
        self._same_shape(other)
        return IntMatrix([[a + b for a, b in zip(ra, rb)]
                          for ra, rb in zip(self.entries, other.entries)])

    def __sub__(self, other):
        self._same_shape(other)
        return IntMatrix([[a - b for a, b in zip(ra, rb)]
                          for ra, rb in zip(self.entries, other.entries)])

    def __neg__(self):
        return IntMatrix([[-a for a in row] for row in self.entries])

    def __matmul__(self, other):
        if isinstance(other, RatMatrix):
            return self.to_rat() @ other
        if self.cols != other.rows:
            raise ValueError("shape mismatch in product")
        bt = list(zip(*other.entries))
        return IntMatrix([[sum(a * b for a, b in zip(row, col)) for col in bt]
                          for row in self.entries])

    def scale(self, k: int) -> "IntMatrix":
        return IntMatrix([[k * a for a in row] for row in self.entries])

    def transpose(self) -> "IntMatrix":
        return IntMatrix(list(zip(*self.entries)))

    def column(self, j: int) -> "IntMatrix":
        return IntMatrix([[row[j]] for row in self.entries])

    def mod(self, ell: int) -> "IntMatrix":
        return IntMatrix([[a % ell for a in row] for row in self.entries])

    def is_skew(self) -> bool:
        return (self.rows == self.cols
                and all(self.entries[i][j] == -self.entries[j][i]
                        for i in range(self.rows) for j in range(self.rows)))

    def det(self) -> int:
        """Exact determinant, Bareiss fraction-free elimination."""
        if self.rows != self.cols:
            raise ValueError("determinant of non-square matrix")
        n = self.rows
        a = [list(r) for r in self.entries]
        sign = 1
        prev = 1
        for k in range(n - 1):
            if a[k][k] == 0:
                for i in range(k + 1, n):
                    if a[i][k] != 0:
                        a[k], a[i] = a[i], a[k]
                        sign = -sign
                        break
                else:
                    return 0
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            prev = a[k][k]
        return sign * a[n - 1][n - 1]

    def to_rat(self) -> "RatMatrix":
        return RatMatrix([[Fraction(a) for a in row] for row in self.entries])

    def inverse_unimodular(self) -> "IntMatrix":
        """Inverse of a matrix with det = +-1 (stays integral)."""
        d = self.det()
        if d not in (1, -1):
            raise ValueError("matrix is not unimodular")
        inv = self.to_rat().inverse()
        return inv.to_int()


class RatMatrix:
    """Immutable matrix of exact rationals (Fraction keeps lowest terms
    and positive denominators, so equality is structural)."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, entries):
        ents = tuple(tuple(Fraction(x) for x in row) for row in entries)
        if not ents or not ents[0]:
            raise ValueError("matrix dimensions must be positive")
        if any(len(r) != len(ents[0]) for r in ents):
            raise ValueError("ragged rows")
        object.__setattr__(self, "rows", len(ents))
        object.__setattr__(self, "cols", len(ents[0]))
        object.__setattr__(self, "entries", ents)

    def __setattr__(self, name, value):
        raise AttributeError("RatMatrix is immutable")

    @classmethod
    def identity(cls, n: int) -> "RatMatrix":
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def zero(cls, rows: int, cols: int | None = None) -> "RatMatrix":
        cols = rows if cols is None else cols
        return cls([[0] * cols for _ in range(rows)])

    def __getitem__(self, i):
        return self.entries[i]

    def __eq__(self, other):
        if isinstance(other, IntMatrix):
            other = other.to_rat()
        return isinstance(other, RatMatrix) and self.entries == other.entries

    def __hash__(self):
        return hash(self.entries)

    def __repr__(self):
        return f"RatMatrix({[[str(x) for x in r] for r in self.entries]})"

    def __add__(self, other):
        if isinstance(other, IntMatrix):
            other = other.to_rat()
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("shape mismatch")
        return RatMatrix([[a + b for a, b in zip(ra, rb)]
                          for ra, rb in zip(self.entries, other.entries)])

    def __sub__(self, other):
        if isinstance(other, IntMatrix):
            other = other.to_rat()
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("shape mismatch")
        return RatMatrix([[a - b for a, b in zip(ra, rb)]
                          for ra, rb in zip(self.entries, other.entries)])

    def __neg__(self):
        return RatMatrix([[-a for a in row] for row in self.entries])

    def __matmul__(self, other):
        if isinstance(other, IntMatrix):
            other = other.to_rat()
        if self.cols != other.rows:
            raise ValueError("shape mismatch in product")
        bt = list(zip(*other.entries))
        return RatMatrix([[sum(a * b for a, b in zip(row, col)) for col in bt]
                          for row in self.entries])

    def scale(self, k) -> "RatMatrix":
        k = Fraction(k)
        return RatMatrix([[k * a for a in row] for row in self.entries])

    def transpose(self) -> "RatMatrix":
        return RatMatrix(list(zip(*self.entries)))

    def is_skew(self) -> bool:
        return (self.rows == self.cols
                and all(self.entries[i][j] == -self.entries[j][i]
                        for i in range(self.rows) for j in range(self.rows)))

    def is_integral(self) -> bool:
        return all(x.denominator == 1 for row in self.entries for x in row)

    def to_int(self) -> IntMatrix:
        if not self.is_integral():
            raise ValueError("matrix has non-integer entries")
        return IntMatrix([[int(x) for x in row] for row in self.entries])

    def common_denominator(self) -> int:
        return lcm(*(x.denominator for row in self.entries for x in row))

    def inverse(self) -> "RatMatrix":
        if self.rows != self.cols:
            raise ValueError("inverse of non-square matrix")
        n = self.rows
        a = [list(row) + [Fraction(int(i == j)) for j in range(n)]
             for i, row in enumerate(self.entries)]
        for col in range(n):
            piv = next((i for i in range(col, n) if a[i][col] != 0), None)
            if piv is None:
                raise ValueError("singular matrix")
            a[col], a[piv] = a[piv], a[col]
            inv = 1 / a[col][col]
            a[col] = [x * inv for x in a[col]]
            for i in range(n):
                if i != col and a[i][col] != 0:
                    f = a[i][col]
                    a[i] = [x - f * y for x, y in zip(a[i], a[col])]
        return RatMatrix([row[n:] for row in a])


class SkewRatForm:
    """Skew-symmetric rational n x n matrix (zero diagonal forced)."""

    __slots__ = ("n", "mat")

    def __init__(self, mat):
        if not isinstance(mat, RatMatrix):
            mat = RatMatrix(mat)
        if not mat.is_skew():
            raise ValueError("matrix is not skew-symmetric")
        object.__setattr__(self, "n", mat.rows)
        object.__setattr__(self, "mat", mat)

    def __setattr__(self, name, value):
        raise AttributeError("SkewRatForm is immutable")

    def __eq__(self, other):
        return isinstance(other, SkewRatForm) and self.mat == other.mat

    def __hash__(self):
        return hash(self.mat)

    def __repr__(self):
        return f"SkewRatForm({[[str(x) for x in r] for r in self.mat.entries]})"

    def common_denominator(self) -> int:
        return self.mat.common_denominator()

    def scaled_int(self, ell: int) -> IntMatrix:
        """ell * theta as an integer matrix; ell must clear denominators."""
        return self.mat.scale(ell).to_int()

    def congruence(self, T: IntMatrix) -> "SkewRatForm":
        """T * theta * T^t."""
        return SkewRatForm(T.to_rat() @ self.mat @ T.to_rat().transpose())

    def add_int(self, Z: IntMatrix) -> "SkewRatForm":
        return SkewRatForm(self.mat + Z.to_rat())

    def frac(self) -> "SkewRatForm":
        """Skew representative mod M_n(Z): above-diagonal entries in [0,1)."""
        n = self.n
        m = [[Fraction(0)] * n for _ in range(n)]
        for i in range(n):
            for j in range(i + 1, n):
                f = self.mat[i][j] % 1
                m[i][j] = f
                m[j][i] = -f
        return SkewRatForm(m)

    def upper(self) -> RatMatrix:
        """Strict upper-triangular part (canonical cocycle splitting)."""
        return RatMatrix([[self.mat[i][j] if j > i else Fraction(0)
                           for j in range(self.n)] for i in range(self.n)])


@dataclass(frozen=True)
class SymplecticNF:
    """Certificate T (|det|=1) with T*M*T^t = sum of (0 e_i; -e_i 0) blocks
    then zeros; e_1 | e_2 | ... positive."""

    T: IntMatrix
    divisors: tuple
    rank2k: int

    def normal_matrix(self, n: int) -> IntMatrix:
        m = [[0] * n for _ in range(n)]
        for i, e in enumerate(self.divisors):
            m[2 * i][2 * i + 1] = e
            m[2 * i + 1][2 * i] = -e
        return IntMatrix(m)


def xgcd(a: int, b: int):
    """(g, x, y) with x*a + y*b = g = gcd(a, b), g >= 0."""
    x, nx = 1, 0
    y, ny = 0, 1
    g, ng = a, b
    while ng:
        q = g // ng
        x, nx = nx, x - q * nx
        y, ny = ny, y - q * ny
        g, ng = ng, g - q * ng
    if g < 0:
        x, y, g = -x, -y, -g
    return g, x, y


def smith_normal_form(M: IntMatrix):
    """Return (U, D, V), U and V unimodular, U*M*V = D diagonal with
    d_i | d_{i+1} and d_i >= 0."""
    nr, nc = M.rows, M.cols
    a = [list(r) for r in M.entries]
    u = [[int(i == j) for j in range(nr)] for i in range(nr)]
    v = [[int(i == j) for j in range(nc)] for i in range(nc)]

    def row_add(i, j, k):  # row_i += k*row_j
        a[i] = [x + k * y for x, y in zip(a[i], a[j])]
        u[i] = [x + k * y for x, y in zip(u[i], u[j])]

    def col_add(i, j, k):  # col_i += k*col_j
        for row in a:
            row[i] += k * row[j]
        for row in v:
            row[i] += k * row[j]

    def row_swap(i, j):
        a[i], a[j] = a[j], a[i]
        u[i], u[j] = u[j], u[i]

    def col_swap(i, j):
        for row in a:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]

    t = 0
    while t < min(nr, nc):
        # minimal |entry| pivot in the active submatrix, ties lexicographic
        best = None
        for i in range(t, nr):
            for j in range(t, nc):
                if a[i][j] != 0 and (best is None or abs(a[i][j]) < abs(a[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        if best[0] != t:
            row_swap(t, best[0])
        if best[1] != t:
            col_swap(t, best[1])
        p = a[t][t]
        clean = True
        for i in range(t + 1, nr):
            q = a[i][t] // p
            if q:
                row_add(i, t, -q)
            if a[i][t]:
                clean = False
        for j in range(t + 1, nc):
            q = a[t][j] // p
            if q:
                col_add(j, t, -q)
            if a[t][j]:
                clean = False
        if not clean:
            continue
        # enforce divisibility into the remaining block
        viol = next(((i, j) for i in range(t + 1, nr) for j in range(t + 1, nc)
                     if a[i][j] % p != 0), None)
        if viol is not None:
            row_add(t, viol[0], 1)
            continue
        if p < 0:
            a[t] = [-x for x in a[t]]
            u[t] = [-x for x in u[t]]
        t += 1

    return IntMatrix(u), IntMatrix(a), IntMatrix(v)


def symplectic_normal_form(M: IntMatrix) -> SymplecticNF:
    """Alternating normal form over Z of a skew-symmetric integer matrix.

    Pivot choice: entry of minimal absolute value, ties broken by lowest
    (row, col) lexicographic order.  The divisibility pass inside the loop
    makes the e_1 | e_2 | ... chain hold by construction, so the divisor
    list is canonical.
    """
    if not M.is_skew():
        raise ValueError("matrix is not skew-symmetric")
    n = M.rows
    a = [list(r) for r in M.entries]
    t = [[int(i == j) for j in range(n)] for i in range(n)]

    def add(i, j, k):  # basis op b_i += k*b_j: congruence row+col update
        a[i] = [x + k * y for x, y in zip(a[i], a[j])]
        for row in a:
            row[i] += k * row[j]
        t[i] = [x + k * y for x, y in zip(t[i], t[j])]

    def swap(i, j):
        a[i], a[j] = a[j], a[i]
        for row in a:
            row[i], row[j] = row[j], row[i]
        t[i], t[j] = t[j], t[i]

    r = 0
    while 2 * r + 1 < n:
        best = None
        for i in range(2 * r, n):
            for j in range(i + 1, n):
                if a[i][j] != 0 and (best is None or abs(a[i][j]) < abs(a[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        bi, bj = best  # bi < bj, both >= 2r, so bj >= 2r+1 always
        if bi != 2 * r:
            swap(2 * r, bi)
        if bj != 2 * r + 1:
            swap(2 * r + 1, bj)
        if a[2 * r][2 * r + 1] < 0:
            swap(2 * r, 2 * r + 1)
        e = a[2 * r][2 * r + 1]
        clean = True
        for k in range(2 * r + 2, n):
            q = a[2 * r][k] // e
            if q:
                add(k, 2 * r + 1, -q)
            if a[2 * r][k]:
                clean = False
            q = a[2 * r + 1][k] // e
            if q:
                add(k, 2 * r, q)
            if a[2 * r + 1][k]:
                clean = False
        if not clean:
            continue
        viol = next(((i, j) for i in range(2 * r + 2, n) for j in range(i + 1, n)
                     if a[i][j] % e != 0), None)
        if viol is not None:
            # couple a non-divisible entry into the pivot row; the next
            # pass runs gcd steps against it
            add(2 * r, viol[0], 1)
            continue
        r += 1

    divisors = tuple(a[2 * i][2 * i + 1] for i in range(r))
    nf = SymplecticNF(T=IntMatrix(t), divisors=divisors, rank2k=2 * r)
    # certificate sanity: these are the type invariants
    assert abs(nf.T.det()) == 1
    assert nf.T @ M @ nf.T.transpose() == nf.normal_matrix(n)
    assert all(divisors[i + 1] % divisors[i] == 0 for i in range(len(divisors) - 1))
    return nf


def lattice_kernel_mod(M: IntMatrix, ell: int):
    """Basis of H = {h in Z^n : M h = 0 mod ell} plus the index [Z^n : H].

    Smith-based: with U M V = D the lattice is V * diag(ell/gcd(d_i, ell)) Z^n.
    """
    if ell <= 0:
        raise ValueError("modulus must be positive")
    if M.rows != M.cols:
        raise ValueError("square matrix expected")
    n = M.rows
    _, D, V = smith_normal_form(M)
    mults = [ell // gcd(D[i][i], ell) for i in range(n)]
    basis = [IntMatrix([[V[i][j] * mults[j]] for i in range(n)]) for j in range(n)]
    index = 1
    for m in mults:
        index *= m
    return basis, index


def unimodular_sample(n: int, seed: int, word_length: int) -> IntMatrix:
    """Deterministic pseudo-random element of GL(n, Z): a product of
    word_length elementary transvections E_ij(+-1) and sign flips."""
    if n < 1:
        raise ValueError("dimension must be positive")
    if word_length < 0:
        raise ValueError("word length must be nonnegative")
    rng = random.Random(seed)
    m = [[int(i == j) for j in range(n)] for i in range(n)]
    for _ in range(word_length):
        if n == 1 or rng.random() < 0.25:
            i = rng.randrange(n)
            m[i] = [-x for x in m[i]]
        else:
            i = rng.randrange(n)
            j = rng.randrange(n - 1)
            if j >= i:
                j += 1
            c = rng.choice((1, -1))
            m[i] = [x + c * y for x, y in zip(m[i], m[j])]
    return IntMatrix(m)


def det_mod(M: IntMatrix, ell: int) -> int:
    return M.det() % ell


def inverse_mod(M: IntMatrix, ell: int) -> IntMatrix:
    """Inverse mod ell of a matrix whose determinant is a unit mod ell."""
    n = M.rows
    d = M.det()
    dinv = pow(d % ell, -1, ell)
    if n == 1:
        return IntMatrix([[dinv % ell]])
    # adjugate via cofactors (desk-scale n)
    adj = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            minor = [[M[r][c] for c in range(n) if c != j]
                     for r in range(n) if r != i]
            adj[j][i] = (-1) ** (i + j) * IntMatrix(minor).det()
    return IntMatrix([[(dinv * adj[i][j]) % ell for j in range(n)]
                      for i in range(n)])


def _primitive_row_lift(row, ell):
    """Adjust an integer row by multiples of ell so gcd of entries is 1.
    Requires gcd(row entries, ell) = 1."""
    row = list(row)
    n = len(row)
    if gcd(*row, 0) == 1:
        return row
    rest = gcd(*row[1:], 0) if n > 1 else 0
    if rest == 0:
        row[1] += ell
        rest = abs(row[1])
    # kill every prime of rest missed by row[0]
    t = 1
    m = rest
    p = 2
    while p * p <= m:
        if m % p == 0:
            if row[0] % p != 0:
                t *= p
            while m % p == 0:
                m //= p
        p += 1
    if m > 1 and row[0] % m != 0:
        t *= m
    row[0] += ell * t
    assert gcd(*row, 0) == 1
    return row


def _complete_det1(row):
    """V0 in SL(n,Z) with row * V0 = e_1^t, for a primitive integer row.
    Returns (V0, V0_inverse)."""
    n = len(row)
    r = list(row)
    v = [[int(i == j) for j in range(n)] for i in range(n)]
    vinv = [[int(i == j) for j in range(n)] for i in range(n)]

    def col_add(i, j, k):  # col_i += k*col_j ; inverse: row_j -= k*row_i
        r[i] += k * r[j]
        for rr in v:
            rr[i] += k * rr[j]
        vinv[j] = [x - k * y for x, y in zip(vinv[j], vinv[i])]

    # Euclid the row down to a single unit
    while True:
        nz = [i for i in range(n) if r[i] != 0]
        if len(nz) == 1 and abs(r[nz[0]]) == 1:
            break
        i = min(nz, key=lambda k: abs(r[k]))
        for j in nz:
            if j != i:
                col_add(j, i, -(r[j] // r[i]))
    pos = next(i for i in range(n) if r[i] != 0)
    if pos != 0:
        # swap columns 0 and pos, then negate column pos to keep det = 1
        for rr in v:
            rr[0], rr[pos] = rr[pos], -rr[0]
        vinv[0], vinv[pos] = vinv[pos], [-x for x in vinv[0]]
        r[0], r[pos] = r[pos], 0
    if r[0] == -1:
        if n == 1:
            raise ValueError("cannot fix sign in dimension 1")
        for rr in v:
            rr[0] = -rr[0]
            rr[1] = -rr[1]
        vinv[0] = [-x for x in vinv[0]]
        vinv[1] = [-x for x in vinv[1]]
        r[0] = 1
    return IntMatrix(v), IntMatrix(vinv)


def _lift_sl(g: IntMatrix, ell: int) -> IntMatrix:
    """Lift g with det(g) = 1 mod ell to an exact SL(n, Z) matrix,
    congruent to g mod ell.  Column-Hermite style recursion."""
    n = g.rows
    if ell == 1:
        return IntMatrix.identity(n)
    if n == 1:
        return IntMatrix([[1]])
    row = _primitive_row_lift([x % ell for x in g.entries[0]], ell)
    v0, v0inv = _complete_det1(row)
    g1 = [list(row)] + [[x % ell for x in r] for r in g.entries[1:]]
    g2 = IntMatrix(g1) @ v0
    sub = IntMatrix([r[1:] for r in g2.entries[1:]])
    hb = _lift_sl(sub.mod(ell), ell)
    h = [[1] + [0] * (n - 1)]
    for i in range(n - 1):
        h.append([g2[i + 1][0]] + list(hb[i]))
    return IntMatrix(h) @ v0inv


def lift_unimodular_mod(g: IntMatrix, ell: int) -> IntMatrix:
    """Integral T = g (mod ell) with det T = +1 or -1 matching det(g) mod ell.

    This is the surjectivity of SL(n,Z) -> SL(n,Z/ell) made effective; the
    det = -1 case composes with a sign-flip diagonal matrix.
    """
    if g.rows != g.cols:
        raise ValueError("square matrix expected")
    if ell < 1:
        raise ValueError("modulus must be positive")
    n = g.rows
    if ell == 1:
        return IntMatrix.identity(n)
    d = det_mod(g, ell)
    if d == 1 % ell:
        T = _lift_sl(g.mod(ell), ell)
    elif d == (-1) % ell:
        J = IntMatrix([[(-1 if i == j == 0 else int(i == j)) for j in range(n)]
                       for i in range(n)])
        T = J @ _lift_sl((J @ g).mod(ell), ell)
    else:
        raise ValueError("determinant is not +-1 mod ell")
    assert (T - g).mod(ell) == IntMatrix.zero(n, n).mod(ell)
    assert abs(T.det()) == 1
    return T
