"""Dense complex matrix arithmetic and Hermitian spectral primitives.

Matrices are immutable value types (row-major tuples); nothing here mutates
shared state, so values are freely shareable between threads.  Dimensions in
this package stay at desk scale (<= ~64), which is why the eigensolver is a
cyclic Jacobi iteration and the SVD a one-sided Jacobi: simple, dependency
free, quadratically convergent.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import ContractError, DimensionError, SingularMatrixError

# Solve/inverse declare a pivot singular below this multiple of the largest
# entry; root finders on det(M(z)-B) rely on a crisp singularity signal.
SINGULAR_PIVOT_REL = 1e-13


@dataclass(frozen=True)
class Matrix:
    """Dense complex matrix, row-major, immutable."""

    rows: int
    cols: int
    data: tuple  # complex entries, len == rows*cols

    def __post_init__(self):
        if self.rows <= 0 or self.cols <= 0:
            raise DimensionError("matrix dimensions must be positive")
        if len(self.data) != self.rows * self.cols:
            raise DimensionError(
                f"{self.rows}x{self.cols} matrix needs {self.rows * self.cols} "
                f"entries, got {len(self.data)}"
            )

    # -- construction -------------------------------------------------

    @staticmethod
    def from_rows(rows) -> "Matrix":
        r = len(rows)
        c = len(rows[0])
        if any(len(row) != c for row in rows):
            raise DimensionError("ragged rows")
        return Matrix(r, c, tuple(complex(v) for row in rows for v in row))

    @staticmethod
    def identity(n: int) -> "Matrix":
        return Matrix(n, n, tuple(1.0 + 0j if i == j else 0j for i in range(n) for j in range(n)))

    @staticmethod
    def zeros(r: int, c: int) -> "Matrix":
        return Matrix(r, c, (0j,) * (r * c))

    @staticmethod
    def diag(values) -> "Matrix":
        vals = [complex(v) for v in values]
        n = len(vals)
        return Matrix(n, n, tuple(vals[i] if i == j else 0j for i in range(n) for j in range(n)))

    @staticmethod
    def scalar(v) -> "Matrix":
        return Matrix(1, 1, (complex(v),))

    @staticmethod
    def column(values) -> "Matrix":
        vals = tuple(complex(v) for v in values)
        return Matrix(len(vals), 1, vals)

    # -- access --------------------------------------------------------

    def at(self, i: int, j: int) -> complex:
        return self.data[i * self.cols + j]

    def row(self, i: int):
        return self.data[i * self.cols : (i + 1) * self.cols]

    def to_rows(self):
        return [list(self.row(i)) for i in range(self.rows)]

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    # -- arithmetic ----------------------------------------------------

    def __add__(self, other: "Matrix") -> "Matrix":
        self._same_shape(other)
        return Matrix(self.rows, self.cols, tuple(a + b for a, b in zip(self.data, other.data)))

    def __sub__(self, other: "Matrix") -> "Matrix":
        self._same_shape(other)
        return Matrix(self.rows, self.cols, tuple(a - b for a, b in zip(self.data, other.data)))

    def __neg__(self) -> "Matrix":
        return Matrix(self.rows, self.cols, tuple(-a for a in self.data))

    def scale(self, s) -> "Matrix":
        s = complex(s)
        return Matrix(self.rows, self.cols, tuple(s * a for a in self.data))

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.cols != other.rows:
            raise DimensionError(f"cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}")
        n, m, k = self.rows, other.cols, self.cols
        a, b = self.data, other.data
        out = [0j] * (n * m)
        for i in range(n):
            arow = a[i * k : (i + 1) * k]
            base = i * m
            for t in range(k):
                av = arow[t]
                if av == 0:
                    continue
                brow = b[t * m : (t + 1) * m]
                for j in range(m):
                    out[base + j] += av * brow[j]
        return Matrix(n, m, tuple(out))

    def adjoint(self) -> "Matrix":
        return Matrix(
            self.cols,
            self.rows,
            tuple(self.data[j * self.cols + i].conjugate() for i in range(self.cols) for j in range(self.rows)),
        )

    def transpose(self) -> "Matrix":
        return Matrix(
            self.cols,
            self.rows,
            tuple(self.data[j * self.cols + i] for i in range(self.cols) for j in range(self.rows)),
        )

    def conjugate(self) -> "Matrix":
        return Matrix(self.rows, self.cols, tuple(a.conjugate() for a in self.data))

    # -- norms ----------------------------------------------------------

    def norm_fro(self) -> float:
        return math.sqrt(sum((a.real * a.real + a.imag * a.imag) for a in self.data))

    def norm_max(self) -> float:
        return max(abs(a) for a in self.data)

    def _same_shape(self, other: "Matrix"):
        if self.rows != other.rows or self.cols != other.cols:
            raise DimensionError(
                f"shape mismatch: {self.rows}x{self.cols} vs {other.rows}x{other.cols}"
            )


def herm_part(m: Matrix) -> Matrix:
    """(M + M*)/2."""
    _require_square(m, "herm_part")
    return (m + m.adjoint()).scale(0.5)


def imag_part(m: Matrix) -> Matrix:
    """(M - M*)/2i, the Hermitian 'imaginary component' of an operator."""
    _require_square(m, "imag_part")
    return (m - m.adjoint()).scale(-0.5j)


def _require_square(m: Matrix, op: str):
    if not m.is_square:
        raise DimensionError(f"{op} requires a square matrix, got {m.rows}x{m.cols}")


# -- LU: solve / det / inverse -------------------------------------------


def _lu_decompose(a: Matrix):
    """Partial-pivot LU in packed form; returns (lu rows, perm, sign, min|pivot|)."""
    _require_square(a, "lu")
    n = a.rows
    lu = [list(a.row(i)) for i in range(n)]
    perm = list(range(n))
    sign = 1
    min_pivot = math.inf
    for k in range(n):
        piv_row = max(range(k, n), key=lambda r: abs(lu[r][k]))
        if piv_row != k:
            lu[k], lu[piv_row] = lu[piv_row], lu[k]
            perm[k], perm[piv_row] = perm[piv_row], perm[k]
            sign = -sign
        piv = lu[k][k]
        min_pivot = min(min_pivot, abs(piv))
        if piv == 0:
            continue
        for r in range(k + 1, n):
            f = lu[r][k] / piv
            lu[r][k] = f
            if f != 0:
                lurow, lukrow = lu[r], lu[k]
                for c in range(k + 1, n):
                    lurow[c] -= f * lukrow[c]
    return lu, perm, sign, min_pivot


def det(a: Matrix) -> complex:
    """Determinant by partial-pivot LU."""
    lu, _, sign, _ = _lu_decompose(a)
    d = complex(sign)
    for k in range(a.rows):
        d *= lu[k][k]
    return d


def solve(a: Matrix, b: Matrix) -> Matrix:
    """Solve A X = B; raises SingularMatrixError when A is singular to tolerance."""
    _require_square(a, "solve")
    if a.rows != b.rows:
        raise DimensionError(f"solve: A is {a.rows}x{a.cols} but B has {b.rows} rows")
    n = a.rows
    lu, perm, _, min_pivot = _lu_decompose(a)
    scale = max(a.norm_max(), 1e-300)
    if min_pivot < SINGULAR_PIVOT_REL * scale:
        raise SingularMatrixError("matrix singular to working tolerance", min_pivot)
    m = b.cols
    x = [list(b.row(perm[i])) for i in range(n)]
    for k in range(n):  # forward
        for r in range(k + 1, n):
            f = lu[r][k]
            if f != 0:
                xr, xk = x[r], x[k]
                for c in range(m):
                    xr[c] -= f * xk[c]
    for k in range(n - 1, -1, -1):  # backward
        piv = lu[k][k]
        xk = x[k]
        for c in range(m):
            s = xk[c]
            lurow = lu[k]
            for t in range(k + 1, n):
                s -= lurow[t] * x[t][c]
            xk[c] = s / piv
    return Matrix.from_rows(x)


def inverse(a: Matrix) -> Matrix:
    return solve(a, Matrix.identity(a.rows))


# -- Hermitian eigenproblem (cyclic Jacobi) --------------------------------


@dataclass(frozen=True)
class HermitianInertia:
    n_neg: int
    n_zero: int
    n_pos: int


def _symmetrized(m: Matrix) -> Matrix:
    _require_square(m, "hermitian_eigen")
    scale = max(m.norm_fro(), 1e-300)
    dev = (m - m.adjoint()).norm_fro()
    if dev > 2e-10 * scale and dev > 1e-12:
        raise ContractError(
            f"input not Hermitian to tolerance: ||M-M*|| = {dev:.3e} vs scale {scale:.3e}"
        )
    return herm_part(m)


def hermitian_eigh(m: Matrix, tol: float = 1e-14, max_sweeps: int = 60):
    """Eigen-decomposition of a Hermitian matrix by cyclic complex Jacobi.

    Returns (eigenvalues ascending, V) with columns of V the corresponding
    orthonormal eigenvectors: M = V diag(w) V*.
    """
    h = _symmetrized(m)
    n = h.rows
    a = [[h.at(i, j) for j in range(n)] for i in range(n)]
    for i in range(n):
        a[i][i] = complex(a[i][i].real)
    v = [[1.0 + 0j if i == j else 0j for j in range(n)] for i in range(n)]
    norm = max(h.norm_fro(), 1e-300)
    for _ in range(max_sweeps):
        off = math.sqrt(sum(abs(a[i][j]) ** 2 for i in range(n) for j in range(n) if i != j))
        if off <= tol * norm:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                g = a[p][q]
                ag = abs(g)
                if ag <= 0.25 * tol * norm / max(n, 1):
                    continue
                app = a[p][p].real
                aqq = a[q][q].real
                u = g / ag  # unit phase of the coupling
                theta = (app - aqq) / (2.0 * ag)
                t = math.copysign(1.0, theta) / (abs(theta) + math.hypot(1.0, theta))
                c = 1.0 / math.hypot(1.0, t)
                s = t * c
                # columns: col_p <- c*col_p + s*conj(u)*col_q ; col_q <- -s*u*col_p + c*col_q
                su = s * u
                suc = s * u.conjugate()
                for i in range(n):
                    aip, aiq = a[i][p], a[i][q]
                    a[i][p] = c * aip + suc * aiq
                    a[i][q] = -su * aip + c * aiq
                for j in range(n):
                    apj, aqj = a[p][j], a[q][j]
                    a[p][j] = c * apj + su * aqj
                    a[q][j] = -suc * apj + c * aqj
                a[p][q] = 0j
                a[q][p] = 0j
                a[p][p] = complex(a[p][p].real)
                a[q][q] = complex(a[q][q].real)
                for i in range(n):
                    vip, viq = v[i][p], v[i][q]
                    v[i][p] = c * vip + suc * viq
                    v[i][q] = -su * vip + c * viq
    order = sorted(range(n), key=lambda i: a[i][i].real)
    evals = [a[i][i].real for i in order]
    vec = Matrix.from_rows([[v[i][order[k]] for k in range(n)] for i in range(n)])
    return evals, vec


def hermitian_eigen(m: Matrix) -> list:
    """Sorted (ascending) real eigenvalues of a Hermitian matrix."""
    evals, _ = hermitian_eigh(m)
    return evals


def inertia(m: Matrix, zero_tol: float) -> HermitianInertia:
    """Counts of eigenvalues below -zero_tol / within +-zero_tol / above +zero_tol."""
    if zero_tol <= 0:
        raise ContractError("zero_tol must be positive")
    evals = hermitian_eigen(m)
    n_neg = sum(1 for w in evals if w < -zero_tol)
    n_pos = sum(1 for w in evals if w > zero_tol)
    return HermitianInertia(n_neg, len(evals) - n_neg - n_pos, n_pos)


def lambda_min(m: Matrix) -> float:
    return hermitian_eigen(m)[0]


# -- singular values (one-sided Jacobi) ------------------------------------


def singular_values(m: Matrix, tol: float = 1e-14, max_sweeps: int = 60) -> list:
    """Singular values (descending) by one-sided Jacobi on the columns."""
    a = m if m.rows >= m.cols else m.adjoint()
    rows, cols = a.rows, a.cols
    col = [[a.at(i, j) for i in range(rows)] for j in range(cols)]
    limit = max(a.norm_fro() ** 2, 1e-300)
    for _ in range(max_sweeps):
        rotated = False
        for p in range(cols - 1):
            for q in range(p + 1, cols):
                cp, cq = col[p], col[q]
                app = sum(x.real * x.real + x.imag * x.imag for x in cp)
                aqq = sum(x.real * x.real + x.imag * x.imag for x in cq)
                apq = sum(x.conjugate() * y for x, y in zip(cp, cq))
                ag = abs(apq)
                if ag <= tol * limit / max(cols, 1):
                    continue
                rotated = True
                u = apq / ag
                theta = (app - aqq) / (2.0 * ag)
                t = math.copysign(1.0, theta) / (abs(theta) + math.hypot(1.0, theta))
                c = 1.0 / math.hypot(1.0, t)
                s = t * c
                su = s * u
                suc = s * u.conjugate()
                for i in range(rows):
                    xp, xq = cp[i], cq[i]
                    cp[i] = c * xp + suc * xq
                    cq[i] = -su * xp + c * xq
        if not rotated:
            break
    sigmas = sorted(
        (math.sqrt(sum(x.real * x.real + x.imag * x.imag for x in cj)) for cj in col),
        reverse=True,
    )
    return sigmas


def numeric_rank(m: Matrix, tau: float) -> int:
    """Number of singular values above tau * (largest singular value)."""
    if tau <= 0:
        raise ContractError("tau must be positive")
    sig = singular_values(m)
    if not sig or sig[0] == 0.0:
        return 0
    return sum(1 for s in sig if s > tau * sig[0])
