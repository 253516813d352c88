"""Exact rational linear algebra: scalars, matrices, rank-3 tensors, nullspaces.

Scalars are exact rationals: a plain int is the canonical form of an
integral rational (denominator 1), and ``fractions.Fraction`` carries the
rest.  The two interoperate exactly under arithmetic, equality, and hashing,
and ints are an order of magnitude faster, which matters in the hot axiom
grids.  Every operation is exact, so axiom residuals computed upstream are
identically zero or honestly nonzero.

Matrices act on column vectors: column ``j`` of a map's matrix is the image
of the ``j``-th basis vector.  Vectors are plain tuples of scalars.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Callable, Iterable, Sequence

from .errors import InputError

Rational = Fraction

ZERO = 0
ONE = 1


def rat(value):
    """Parse a rational from an int, Fraction, or canonical "p/q" string,
    normalizing integral values to int."""
    if type(value) is int:
        return value
    if isinstance(value, Fraction):
        return value.numerator if value.denominator == 1 else value
    if isinstance(value, int):
        return int(value)
    if isinstance(value, str):
        try:
            q = Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise InputError(f"not a rational: {value!r}") from exc
        return q.numerator if q.denominator == 1 else q
    raise InputError(f"not a rational: {value!r}")


def rat_str(q) -> str:
    """Render canonically: "p/q", or just "p" when the denominator is 1."""
    return str(q)


def exact_div(a, b):
    """Exact division of rationals, normalized back to int when integral."""
    return rat(Fraction(a) / Fraction(b))


# ---------------------------------------------------------------------------
# vectors

def vec(values) -> tuple:
    return tuple(rat(v) for v in values)


def zero_vec(n: int) -> tuple:
    return (ZERO,) * n


def basis_vec(n: int, i: int) -> tuple:
    return tuple(ONE if j == i else ZERO for j in range(n))


def vec_add(x, y):
    return tuple(a + b for a, b in zip(x, y))


def vec_sub(x, y):
    return tuple(a - b for a, b in zip(x, y))


def vec_neg(x):
    return tuple(-a for a in x)


def vec_scale(k, x):
    return tuple(k * a for a in x)


def is_zero_vec(x) -> bool:
    return all(not a for a in x)


class Matrix:
    """Immutable dense matrix of Fractions, row-major."""

    __slots__ = ("rows", "cols", "data")

    def __init__(self, rows_of_entries: Sequence[Sequence]):
        data = tuple(tuple(rat(v) for v in row) for row in rows_of_entries)
        self.data = data
        self.rows = len(data)
        self.cols = len(data[0]) if data else 0
        if any(len(row) != self.cols for row in data):
            raise InputError("ragged matrix rows")

    @staticmethod
    def zeros(rows: int, cols: int) -> "Matrix":
        return Matrix([[ZERO] * cols for _ in range(rows)])

    @staticmethod
    def identity(n: int) -> "Matrix":
        return Matrix([[ONE if i == j else ZERO for j in range(n)] for i in range(n)])

    @staticmethod
    def from_columns(cols: Sequence[Sequence]) -> "Matrix":
        if not cols:
            return Matrix.zeros(0, 0)
        n = len(cols[0])
        return Matrix([[cols[j][i] for j in range(len(cols))] for i in range(n)])

    def __eq__(self, other):
        return isinstance(other, Matrix) and self.data == other.data

    def __hash__(self):
        return hash(self.data)

    def __repr__(self):
        return f"Matrix({[[str(v) for v in row] for row in self.data]})"

    def __getitem__(self, ij):
        i, j = ij
        return self.data[i][j]

    def row(self, i) -> tuple:
        return self.data[i]

    def column(self, j) -> tuple:
        return tuple(row[j] for row in self.data)

    def is_zero(self) -> bool:
        return all(not v for row in self.data for v in row)

    def __add__(self, other):
        self._same_shape(other)
        return Matrix([vec_add(a, b) for a, b in zip(self.data, other.data)])

    def __sub__(self, other):
        self._same_shape(other)
        return Matrix([vec_sub(a, b) for a, b in zip(self.data, other.data)])

    def __neg__(self):
        return Matrix([vec_neg(row) for row in self.data])

    def scale(self, k) -> "Matrix":
        k = rat(k)
        return Matrix([vec_scale(k, row) for row in self.data])

    def _same_shape(self, other):
        if self.rows != other.rows or self.cols != other.cols:
            raise InputError(
                f"shape mismatch: {self.rows}x{self.cols} vs {other.rows}x{other.cols}")

    def __matmul__(self, other: "Matrix") -> "Matrix":
        return mat_mul(self, other)

    def apply(self, v: Sequence) -> tuple:
        """Matrix-vector product."""
        if len(v) != self.cols:
            raise InputError(f"vector length {len(v)} != cols {self.cols}")
        out = []
        for row in self.data:
            s = ZERO
            for a, b in zip(row, v):
                if a and b:
                    s += a * b
            out.append(s)
        return tuple(out)

    def transpose(self) -> "Matrix":
        return Matrix([self.column(j) for j in range(self.cols)])

    def power(self, e: int) -> "Matrix":
        if self.rows != self.cols:
            raise InputError("power of non-square matrix")
        if e < 0:
            raise InputError("negative matrix power")
        result = Matrix.identity(self.rows)
        for _ in range(e):
            result = mat_mul(result, self)
        return result

    def commutes_with(self, other: "Matrix") -> bool:
        return mat_mul(self, other) == mat_mul(other, self)

    def kron(self, other: "Matrix") -> "Matrix":
        """Kronecker product; tensor basis ordered lexicographically (i,j)."""
        out = []
        for a_row in self.data:
            for b_row in other.data:
                out.append(tuple(a * b for a in a_row for b in b_row))
        return Matrix(out)


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    if a.cols != b.rows:
        raise InputError(f"mat_mul dimension mismatch: {a.rows}x{a.cols} by {b.rows}x{b.cols}")
    bt = [b.column(j) for j in range(b.cols)]
    out = []
    for row in a.data:
        out_row = []
        for col in bt:
            s = ZERO
            for x, y in zip(row, col):
                if x and y:
                    s += x * y
            out_row.append(s)
        out.append(out_row)
    return Matrix(out)


def block_diag(a: Matrix, b: Matrix) -> Matrix:
    out = []
    for row in a.data:
        out.append(list(row) + [ZERO] * b.cols)
    for row in b.data:
        out.append([ZERO] * a.cols + list(row))
    return Matrix(out)


def rref(m: Matrix) -> tuple[Matrix, tuple[int, ...]]:
    """Reduced row echelon form with deterministic pivoting.

    Pivot choice is the first row with a nonzero entry in column order, so
    results are reproducible across runs.
    """
    data = [list(row) for row in m.data]
    rows, cols = m.rows, m.cols
    pivots = []
    r = 0
    for c in range(cols):
        pivot_row = None
        for i in range(r, rows):
            if data[i][c]:
                pivot_row = i
                break
        if pivot_row is None:
            continue
        data[r], data[pivot_row] = data[pivot_row], data[r]
        pv = data[r][c]
        if pv != ONE:
            data[r] = [exact_div(x, pv) for x in data[r]]
        for i in range(rows):
            if i != r and data[i][c]:
                f = data[i][c]
                data[i] = [x - f * y for x, y in zip(data[i], data[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return Matrix(data), tuple(pivots)


def rank(m: Matrix) -> int:
    return len(rref(m)[1])


def nullspace(m: Matrix) -> list[Matrix]:
    """Exact basis of {v : m v = 0} as column vectors.

    Free-variable parametrization of the reduced echelon form; each basis
    vector is scaled so its first nonzero coordinate is 1.
    """
    reduced, pivots = rref(m)
    pivot_set = set(pivots)
    free = [c for c in range(m.cols) if c not in pivot_set]
    basis = []
    for f in free:
        v = [ZERO] * m.cols
        v[f] = ONE
        for r_idx, p in enumerate(pivots):
            v[p] = -reduced.data[r_idx][f]
        for x in v:
            if x:
                if x != ONE:
                    v = [exact_div(y, x) for y in v]
                break
        basis.append(Matrix([[x] for x in v]))
    return basis


class Tensor3:
    """Rank-3 array of Fractions; entry (i,j,k) is stored at i*d2*d3 + j*d3 + k.

    Encodes a bilinear product on a based space: (e_i, e_j) -> sum_k t[i,j,k] e_k.
    """

    __slots__ = ("d1", "d2", "d3", "data")

    def __init__(self, d1: int, d2: int, d3: int, entries: Sequence):
        entries = tuple(rat(v) for v in entries)
        if len(entries) != d1 * d2 * d3:
            raise InputError(
                f"tensor entries length {len(entries)} != {d1}*{d2}*{d3}")
        self.d1, self.d2, self.d3 = d1, d2, d3
        self.data = entries

    @staticmethod
    def zeros(d1: int, d2: int = None, d3: int = None) -> "Tensor3":
        d2 = d1 if d2 is None else d2
        d3 = d1 if d3 is None else d3
        return Tensor3(d1, d2, d3, (ZERO,) * (d1 * d2 * d3))

    @staticmethod
    def from_nested(nested: Sequence[Sequence[Sequence]]) -> "Tensor3":
        d1 = len(nested)
        d2 = len(nested[0]) if d1 else 0
        d3 = len(nested[0][0]) if d2 else 0
        flat = []
        for plane in nested:
            if len(plane) != d2:
                raise InputError("ragged tensor")
            for line in plane:
                if len(line) != d3:
                    raise InputError("ragged tensor")
                flat.extend(line)
        return Tensor3(d1, d2, d3, flat)

    @staticmethod
    def from_basis_products(d1: int, d2: int, d3: int,
                            product: Callable[[int, int], Sequence]) -> "Tensor3":
        flat = []
        for i in range(d1):
            for j in range(d2):
                flat.extend(product(i, j))
        return Tensor3(d1, d2, d3, flat)

    def __eq__(self, other):
        return (isinstance(other, Tensor3) and self.dims == other.dims
                and self.data == other.data)

    def __hash__(self):
        return hash((self.dims, self.data))

    def __repr__(self):
        return f"Tensor3({self.d1},{self.d2},{self.d3})"

    @property
    def dims(self):
        return (self.d1, self.d2, self.d3)

    def __getitem__(self, ijk):
        i, j, k = ijk
        return self.data[(i * self.d2 + j) * self.d3 + k]

    def nested(self):
        return [[[self[i, j, k] for k in range(self.d3)]
                 for j in range(self.d2)] for i in range(self.d1)]

    def product_vec(self, i: int, j: int) -> tuple:
        """The vector e_i * e_j."""
        base = (i * self.d2 + j) * self.d3
        return self.data[base:base + self.d3]

    def is_zero(self) -> bool:
        return all(not v for v in self.data)

    def __add__(self, other):
        self._same_dims(other)
        return Tensor3(*self.dims, tuple(a + b for a, b in zip(self.data, other.data)))

    def __sub__(self, other):
        self._same_dims(other)
        return Tensor3(*self.dims, tuple(a - b for a, b in zip(self.data, other.data)))

    def __neg__(self):
        return Tensor3(*self.dims, tuple(-a for a in self.data))

    def scale(self, k) -> "Tensor3":
        k = rat(k)
        return Tensor3(*self.dims, tuple(k * a for a in self.data))

    def _same_dims(self, other):
        if self.dims != other.dims:
            raise InputError(f"tensor dims mismatch: {self.dims} vs {other.dims}")

    def swap_arguments(self) -> "Tensor3":
        """(x, y) -> product(y, x)."""
        return Tensor3.from_basis_products(
            self.d2, self.d1, self.d3, lambda i, j: self.product_vec(j, i))

    def postcompose(self, g: Matrix) -> "Tensor3":
        """(x, y) -> g(x * y)."""
        if g.cols != self.d3:
            raise InputError("postcompose dimension mismatch")
        return Tensor3.from_basis_products(
            self.d1, self.d2, g.rows, lambda i, j: g.apply(self.product_vec(i, j)))

    def precompose(self, g: Matrix, h: Matrix) -> "Tensor3":
        """(x, y) -> g(x) * h(y)."""
        if g.rows != self.d1 or h.rows != self.d2:
            raise InputError("precompose dimension mismatch")
        return Tensor3.from_basis_products(
            g.cols, h.cols, self.d3,
            lambda i, j: bilinear_eval(self, g.column(i), h.column(j)))

    def left_mult_matrix(self, i: int) -> Matrix:
        """Matrix of y -> e_i * y."""
        return Matrix([[self[i, j, k] for j in range(self.d2)] for k in range(self.d3)])

    def right_mult_matrix(self, j: int) -> Matrix:
        """Matrix of x -> x * e_j."""
        return Matrix([[self[i, j, k] for i in range(self.d1)] for k in range(self.d3)])


def bilinear_eval(t: Tensor3, x: Sequence, y: Sequence) -> tuple:
    """Evaluate the bilinear map encoded by t: result_k = sum x_i y_j t[i,j,k]."""
    if len(x) != t.d1 or len(y) != t.d2:
        raise InputError(
            f"bilinear_eval dimension mismatch: ({len(x)},{len(y)}) vs {t.dims}")
    out = [ZERO] * t.d3
    d2, d3 = t.d2, t.d3
    data = t.data
    for i, xi in enumerate(x):
        if not xi:
            continue
        for j, yj in enumerate(y):
            if not yj:
                continue
            c = xi * yj
            base = (i * d2 + j) * d3
            for k in range(d3):
                v = data[base + k]
                if v:
                    out[k] += c * v
    return tuple(out)


def tensors_from_flat(flat: Sequence, d1: int, d2: int, d3: int) -> Tensor3:
    return Tensor3(d1, d2, d3, flat)
