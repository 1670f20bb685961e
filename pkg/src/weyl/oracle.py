"""Independent finite-difference oracle for the concrete operators.

Everything here deliberately avoids the Weyl-function machinery: second-order
lumped-form discretization to a symmetric tridiagonal matrix, Sturm-sequence
eigenvalue counts (exact integers), bisection eigenvalues, and a pivoted
tridiagonal solver for resolvents.  The M-route results are validated against
this module, never the other way around.

Error model for the defaults (n=4000, L=40): err ~ C dx^2 + exp(-2 kappa L);
tests pick n, L from it.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass

from .errors import ContractError, DimensionError, RangeError, SpectralPointError
from .slsolve import PotentialSpec
from .specfun import bessel_j


@dataclass(frozen=True)
class Boundary:
    kind: str  # "dirichlet" | "neumann" | "robin"
    h: float = 0.0

    @staticmethod
    def dirichlet() -> "Boundary":
        return Boundary("dirichlet")

    @staticmethod
    def neumann() -> "Boundary":
        return Boundary("neumann")

    @staticmethod
    def robin(h: float) -> "Boundary":
        return Boundary("robin", float(h))


@dataclass(frozen=True)
class DiscretizedOperator:
    """Symmetric tridiagonal reduction of -y'' + q y on [0, L].

    Left Robin means y'(0) = h y(0); right Robin means -y'(L) = h y(L), the
    sign convention of the interval boundary triplet.  The boundary condition
    is folded in through the lumped quadratic form, which keeps the matrix
    exactly symmetric and the eigenvalues second-order accurate.
    """

    diag: tuple
    off: tuple
    dx: float
    L: float
    left: Boundary
    right: Boundary
    shift: float = 0.0

    @property
    def size(self) -> int:
        return len(self.diag)


def discretize(q: PotentialSpec, L: float, n: int, left: Boundary, right: Boundary,
               shift: float = 0.0) -> DiscretizedOperator:
    if n < 100:
        raise ContractError("need at least 100 grid intervals")
    if L <= 0:
        raise ContractError("L must be positive")
    dx = L / n
    # cell averages keep potential jumps second-order accurate
    qs = [
        q.cell_average(max(0.0, (i - 0.5) * dx), min(L, (i + 0.5) * dx))
        for i in range(n + 1)
    ]
    # quadratic form: sum (y_{i+1}-y_i)^2/dx + sum w_i q_i y_i^2 + h_l y_0^2 + h_r y_n^2
    include_left = left.kind != "dirichlet"
    include_right = right.kind != "dirichlet"
    idx = list(range(0 if include_left else 1, n + 1 if include_right else n))
    weights = []
    kdiag = []
    for i in idx:
        w = dx if 0 < i < n else dx / 2.0
        kd = (2.0 / dx if 0 < i < n else 1.0 / dx) + qs[i] * w
        if i == 0:
            kd += left.h
        if i == n:
            kd += right.h
        weights.append(w)
        kdiag.append(kd)
    diag = tuple(kdiag[k] / weights[k] - shift for k in range(len(idx)))
    off = tuple(
        (-1.0 / dx) / math.sqrt(weights[k] * weights[k + 1]) for k in range(len(idx) - 1)
    )
    return DiscretizedOperator(diag, off, dx, float(L), left, right, shift)


def eigen_count_below(opd: DiscretizedOperator, mu: float) -> int:
    """Number of eigenvalues below mu, by Sturm sign agreements of the LDL pivots."""
    if not math.isfinite(mu):
        raise ContractError("mu must be finite")
    count = 0
    p = 1.0
    d, e = opd.diag, opd.off
    tiny = 1e-300
    prev = d[0] - mu
    if prev == 0.0:
        prev = -tiny
    if prev < 0:
        count += 1
    for i in range(1, len(d)):
        prev = (d[i] - mu) - e[i - 1] * e[i - 1] / prev
        if prev == 0.0:
            prev = -tiny
        if prev < 0:
            count += 1
    return count


def gershgorin_bounds(opd: DiscretizedOperator):
    d, e = opd.diag, opd.off
    lo = math.inf
    hi = -math.inf
    for i in range(len(d)):
        r = (abs(e[i - 1]) if i > 0 else 0.0) + (abs(e[i]) if i < len(e) else 0.0)
        lo = min(lo, d[i] - r)
        hi = max(hi, d[i] + r)
    return lo, hi


def lowest_eigenvalues(opd: DiscretizedOperator, k: int, tol: float = 1e-10) -> list:
    """k smallest eigenvalues by bisection on the Sturm count function."""
    if k > 50:
        raise ContractError("k <= 50")
    k = min(k, opd.size)
    lo0, hi0 = gershgorin_bounds(opd)
    out = []
    for j in range(1, k + 1):
        lo, hi = lo0, hi0
        while hi - lo > tol:
            mid = 0.5 * (lo + hi)
            if eigen_count_below(opd, mid) >= j:
                hi = mid
            else:
                lo = mid
        out.append(0.5 * (lo + hi))
    return out


def resolvent_apply(opd: DiscretizedOperator, z: complex, v) -> list:
    """(T - z)^-1 v by pivoted tridiagonal elimination; residual <= 1e-11 ||v||."""
    n = opd.size
    if len(v) != n:
        raise DimensionError(f"vector length {len(v)} != operator size {n}")
    z = complex(z)
    a = [0j] * n  # sub
    b = [complex(opd.diag[i]) - z for i in range(n)]
    c = [complex(opd.off[i]) for i in range(n - 1)] + [0j]
    d = [0j] * n  # second super (fill from row swaps)
    for i in range(n - 1):
        a[i + 1] = complex(opd.off[i])
    x = [complex(t) for t in v]
    scale = max(max(abs(t) for t in b), 1.0)
    for i in range(n - 1):
        if abs(a[i + 1]) > abs(b[i]):  # swap rows i, i+1
            b[i], a[i + 1] = a[i + 1], b[i]
            c[i], b[i + 1] = b[i + 1], c[i]
            d[i], c[i + 1] = c[i + 1], d[i]
            x[i], x[i + 1] = x[i + 1], x[i]
        if abs(b[i]) < 1e-10 * scale:
            raise SpectralPointError(f"z={z} numerically in the discrete spectrum")
        f = a[i + 1] / b[i]
        b[i + 1] -= f * c[i]
        c[i + 1] -= f * d[i]
        x[i + 1] -= f * x[i]
    if abs(b[n - 1]) < 1e-10 * scale:
        raise SpectralPointError(f"z={z} numerically in the discrete spectrum")
    x[n - 1] /= b[n - 1]
    if n >= 2:
        x[n - 2] = (x[n - 2] - c[n - 2] * x[n - 1]) / b[n - 2]
    for i in range(n - 3, -1, -1):
        x[i] = (x[i] - c[i] * x[i + 1] - d[i] * x[i + 2]) / b[i]
    return x


def node_grid(opd: DiscretizedOperator):
    """(positions, lumped weights) of the retained nodes, in matrix order."""
    n = round(opd.L / opd.dx)
    i0 = 0 if opd.left.kind != "dirichlet" else 1
    i1 = n if opd.right.kind != "dirichlet" else n - 1
    xs = []
    ws = []
    for i in range(i0, i1 + 1):
        xs.append(i * opd.dx)
        ws.append(opd.dx if 0 < i < n else opd.dx / 2.0)
    return xs, ws


def resolvent_apply_samples(opd: DiscretizedOperator, z: complex, fsamples) -> list:
    """Resolvent acting on function samples at the retained nodes.

    The symmetrized matrix acts on u = M^(1/2) y; this converts samples in
    and out so the result approximates the continuum resolvent pointwise
    (boundary nodes carry the half-cell weight).
    """
    _, ws = node_grid(opd)
    scaled = [f * math.sqrt(w / opd.dx) for f, w in zip(fsamples, ws)]
    u = resolvent_apply(opd, z, scaled)
    return [ui * math.sqrt(opd.dx / w) for ui, w in zip(u, ws)]


def apply_operator(opd: DiscretizedOperator, v) -> list:
    n = opd.size
    out = []
    for i in range(n):
        acc = opd.diag[i] * v[i]
        if i > 0:
            acc += opd.off[i - 1] * v[i - 1]
        if i < n - 1:
            acc += opd.off[i] * v[i + 1]
        out.append(acc)
    return out


def resolvent_difference_rank(op1: DiscretizedOperator, op2: DiscretizedOperator,
                              z: complex, probes: int = 6, tau: float = 1e-8,
                              seed: int = 0) -> int:
    """Numeric rank of (T1-z)^-1 - (T2-z)^-1 sampled on random probe vectors."""
    from .linalg import Matrix, numeric_rank

    if op1.size != op2.size:
        raise DimensionError("operators must share a grid")
    rng = random.Random(seed)
    cols = []
    for _ in range(probes):
        v = [complex(rng.gauss(0, 1), rng.gauss(0, 1)) for _ in range(op1.size)]
        u1 = resolvent_apply(op1, z, v)
        u2 = resolvent_apply(op2, z, v)
        cols.append([a - b for a, b in zip(u1, u2)])
    mat = Matrix.from_rows([[cols[j][i] for j in range(probes)] for i in range(op1.size)])
    return numeric_rank(mat, tau)


# -- model-specific oracle builders -----------------------------------------


def halfline_operator(q: PotentialSpec, h: float | None, L: float = 40.0,
                      n: int = 4000) -> DiscretizedOperator:
    """Robin (or Dirichlet for h=None ... not used: None means Neumann triplet base).

    h is the boundary-operator value of the (y(0), y'(0)) triplet: y'(0)=h y(0).
    """
    left = Boundary.robin(h if h is not None else 0.0)
    return discretize(q, L, n, left, Boundary.dirichlet())


def halfline_dirichlet_operator(q: PotentialSpec, L: float = 40.0, n: int = 4000) -> DiscretizedOperator:
    return discretize(q, L, n, Boundary.dirichlet(), Boundary.dirichlet())


def interval_operator(q: PotentialSpec, b: float, h0: float, hb: float,
                      n: int = 2000) -> DiscretizedOperator:
    """Separated conditions of the interval triplet: y'(0)=h0 y(0), -y'(b)=hb y(b)."""
    return discretize(q, b, n, Boundary.robin(h0), Boundary.robin(hb))


def constant_potential(c: float, span: float = 1.0) -> PotentialSpec:
    if c == 0.0:
        return PotentialSpec.zero()
    return PotentialSpec.table([0.0, span], [c, c])


def corner_friedrichs_eigenvalues(beta: float, count: int, s_max: float = 39.5) -> list:
    """Squares of the first zeros of J_beta: the sector Friedrichs spectrum."""
    zeros = []
    step = 0.02
    s_prev = 0.3
    f_prev = bessel_j(beta, s_prev).real
    s = s_prev + step
    while s <= s_max and len(zeros) < count:
        f = bessel_j(beta, s).real
        if f_prev == 0.0:
            zeros.append(s_prev)
        elif f_prev * f < 0.0:
            lo, hi = s_prev, s
            flo = f_prev
            for _ in range(80):
                mid = 0.5 * (lo + hi)
                fm = bessel_j(beta, mid).real
                if flo * fm <= 0.0:
                    hi = mid
                else:
                    lo, flo = mid, fm
            zeros.append(0.5 * (lo + hi))
        s_prev, f_prev = s, f
        s += step
    if len(zeros) < count:
        raise RangeError(f"only {len(zeros)} Bessel zeros below s={s_max}")
    return [zz * zz for zz in zeros]
