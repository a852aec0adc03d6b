"""Exact linear algebra for small square matrices over Q(l, r) and its
specializations.

Matrices are column-sparse: ``cols[j]`` maps row index to a nonzero entry.
Entries may be RationalFunction, Fraction or any exact field type with the
usual operators.
"""

from fractions import Fraction
import math

import flint
import numpy as np
from scipy.optimize import linear_sum_assignment

from .field import CTX, ONE, ZERO, RationalFunction, _ONE, _ZERO, _monomial, as_rational


class DimensionError(ValueError):
    pass


class Matrix:
    """Square matrix stored by columns, no stored zeros."""

    __slots__ = ("n", "cols")

    def __init__(self, n, cols=None):
        self.n = n
        if cols is None:
            cols = [{} for _ in range(n)]
        self.cols = cols

    @classmethod
    def identity(cls, n, one=ONE):
        return cls(n, [{j: one} for j in range(n)])

    @classmethod
    def zero(cls, n):
        return cls(n)

    @classmethod
    def from_rows(cls, rows):
        n = len(rows)
        m = cls(n)
        for i, row in enumerate(rows):
            if len(row) != n:
                raise DimensionError("matrix must be square")
            for j, x in enumerate(row):
                if x:
                    m.cols[j][i] = x
        return m

    @classmethod
    def diagonal(cls, values):
        return cls(len(values), [{j: v} if v else {} for j, v in enumerate(values)])

    def get(self, i, j, default=ZERO):
        return self.cols[j].get(i, default)

    def rows(self):
        """Row-sparse view: list of dicts column -> entry."""
        out = [{} for _ in range(self.n)]
        for j, col in enumerate(self.cols):
            for i, x in col.items():
                out[i][j] = x
        return out

    def to_dense(self, zero=ZERO):
        dense = [[zero] * self.n for _ in range(self.n)]
        for j, col in enumerate(self.cols):
            for i, x in col.items():
                dense[i][j] = x
        return dense

    def nnz(self):
        return sum(len(c) for c in self.cols)

    def _check(self, other):
        if not isinstance(other, Matrix) or other.n != self.n:
            raise DimensionError(f"dimension mismatch: {self.n} vs {getattr(other, 'n', None)}")

    def __add__(self, other):
        self._check(other)
        cols = []
        for a, b in zip(self.cols, other.cols):
            c = dict(a)
            for i, x in b.items():
                y = c.get(i)
                s = x if y is None else y + x
                if s:
                    c[i] = s
                else:
                    c.pop(i, None)
            cols.append(c)
        return Matrix(self.n, cols)

    def __neg__(self):
        return Matrix(self.n, [{i: -x for i, x in c.items()} for c in self.cols])

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        if not c:
            return Matrix(self.n)
        return Matrix(self.n, [{i: c * x for i, x in col.items()} for col in self.cols])

    def apply(self, vec):
        """Matrix times a sparse vector {row: value}."""
        out = {}
        for k, v in vec.items():
            for i, x in self.cols[k].items():
                y = out.get(i)
                out[i] = v * x if y is None else y + v * x
        return {i: x for i, x in out.items() if x}

    def apply_left(self, covec):
        """Sparse row vector times matrix."""
        out = {}
        for j, col in enumerate(self.cols):
            s = None
            for i, x in col.items():
                v = covec.get(i)
                if v is not None:
                    s = v * x if s is None else s + v * x
            if s:
                out[j] = s
        return out

    def __mul__(self, other):
        if isinstance(other, Matrix):
            self._check(other)
            return Matrix(self.n, [self.apply(col) for col in other.cols])
        return self.scale(other)

    def __rmul__(self, c):
        return self.scale(c)

    def __eq__(self, other):
        return isinstance(other, Matrix) and self.n == other.n and self.cols == other.cols

    def first_difference(self, other):
        """(row, col, self entry, other entry) of the first mismatch, or None."""
        self._check(other)
        for j in range(self.n):
            a, b = self.cols[j], other.cols[j]
            if a == b:
                continue
            for i in sorted(set(a) | set(b)):
                x, y = a.get(i, ZERO), b.get(i, ZERO)
                if x != y:
                    return i, j, x, y
        return None

    def map(self, fn):
        cols = []
        for col in self.cols:
            c = {}
            for i, x in col.items():
                y = fn(x)
                if y:
                    c[i] = y
            cols.append(c)
        return Matrix(self.n, cols)

    def transpose(self):
        return Matrix(self.n, self.rows())

    def is_zero(self):
        return not any(self.cols)


def outer(u, phi, n):
    """Rank-one matrix u * phi^T from sparse vectors."""
    cols = [{} for _ in range(n)]
    for j, b in phi.items():
        cols[j] = {i: a * b for i, a in u.items()}
    return Matrix(n, cols)


def matrix_arith(a, b, op):
    if op == "add":
        return a + b
    if op == "mul":
        return a * b
    if op == "scalar":
        return b.scale(a) if not isinstance(a, Matrix) else a.scale(b)
    raise ValueError(f"unknown operation {op!r}")


# ------------------------------------------------------------ row clearing

def clear_rows(m):
    """Polynomial matrix with the same determinant up to a tracked factor.

    Each row is multiplied by the lcm of its denominators and a monomial so
    that every entry is an integer polynomial; then its integer content is
    removed.  Returns (rows, factor) with rows a dense list of fmpz_mpoly and
    det(m) = det(rows) / factor.
    """
    factor = ONE
    out = []
    for row in m.rows():
        entries = [as_rational(x) for x in row.values()]
        poly_row = [_ZERO] * m.n
        if not entries:
            out.append(poly_row)
            continue
        den = _ONE
        for x in entries:
            if not x._d.is_one():
                den = den * (x._d / den.gcd(x._d))
        tl = min(x._el for x in entries)
        tr = min(x._er for x in entries)
        content = 0
        for j, x in row.items():
            x = as_rational(x)
            p = x._n * (den / x._d) * _monomial(x._el - tl, x._er - tr)
            poly_row[j] = p
            content = math.gcd(content, int(p.content()))
        if content != 1:
            poly_row = [p / content if not p.is_zero() else p for p in poly_row]
        out.append(poly_row)
        factor = factor * RationalFunction._raw(den, -tl, -tr, _ONE) / content
    return out, factor


def _poly_size(p):
    return p.length() if hasattr(p, "length") else len(p)


def column_order(rows):
    """Columns sorted by structural weight (fewest nonzeros), then index."""
    n = len(rows)
    counts = [sum(1 for i in range(n) if not rows[i][j].is_zero()) for j in range(n)]
    return sorted(range(n), key=lambda j: (counts[j], j))


def bareiss_determinant_poly(rows, div=None):
    """Fraction-free determinant of a dense square matrix over an integral domain.

    ``rows`` is consumed.  Entries need ``*``, ``-``, ``is_zero()`` and exact
    division via ``div(a, b)`` (default ``a / b``).
    """
    if div is None:
        div = lambda a, b: a / b
    n = len(rows)
    if n == 0:
        return None
    order = column_order(rows)
    a = [[row[j] for j in order] for row in rows]
    sign = 1
    # sign of the column permutation: each even cycle flips it
    perm = list(order)
    seen = [False] * n
    for s in range(n):
        if not seen[s]:
            length = 0
            t = s
            while not seen[t]:
                seen[t] = True
                t = perm[t]
                length += 1
            if length % 2 == 0:
                sign = -sign
    prev = None
    for k in range(n):
        best = None
        for i in range(k, n):
            x = a[i][k]
            if not x.is_zero():
                size = _poly_size(x)
                if best is None or size < best[0]:
                    best = (size, i)
        if best is None:
            return a[0][0] * 0
        p = best[1]
        if p != k:
            a[k], a[p] = a[p], a[k]
            sign = -sign
        piv = a[k][k]
        rk = a[k]
        for i in range(k + 1, n):
            ri = a[i]
            f = ri[k]
            if f.is_zero():
                if prev is not None:
                    for j in range(k + 1, n):
                        if not ri[j].is_zero():
                            ri[j] = div(piv * ri[j], prev)
                else:
                    for j in range(k + 1, n):
                        ri[j] = piv * ri[j]
                continue
            for j in range(k + 1, n):
                v = piv * ri[j] - f * rk[j]
                ri[j] = div(v, prev) if prev is not None else v
        prev = piv
    det = a[n - 1][n - 1]
    return -det if sign < 0 else det


def determinant_bareiss(m):
    """Exact determinant over Q(l, r) by fraction-free elimination."""
    if m.n == 0:
        return ONE
    rows, factor = clear_rows(m)
    d = bareiss_determinant_poly(rows)
    return RationalFunction._raw(d, 0, 0, _ONE) / factor


# ------------------------------------------------- evaluation/interpolation

def _primes_below(bound, count, seed):
    """Deterministic list of distinct primes below ``bound``, shuffled by seed."""
    rng = np.random.default_rng(seed)
    out = []
    seen = set()
    while len(out) < count:
        c = int(rng.integers(bound // 2, bound))
        p = int(flint.fmpz(c).next_prime()) if hasattr(flint.fmpz, "next_prime") else _next_prime(c)
        if p < bound and p not in seen:
            seen.add(p)
            out.append(p)
    return out


def _next_prime(c):
    n = c | 1
    while not flint.fmpz(n).is_prime():
        n += 2
    return n


# primes below 2^21 keep float64 dot products of length <= 2^10 exact
_MODULUS_BITS = 21


def _mod_matmul(a, b, p):
    """(a @ b) mod p for int64 arrays with entries < p < 2^21, exact via float64 blocks."""
    k = a.shape[-1]
    out = None
    step = 1 << 10
    for s in range(0, k, step):
        part = np.matmul(a[..., s:s + step].astype(np.float64), b[..., s:s + step, :].astype(np.float64))
        part = np.fmod(part, p).astype(np.int64)
        out = part if out is None else (out + part) % p
    return out


def batched_det_mod(mats, p):
    """Determinants mod p of a stack of square int64 matrices (N, n, n)."""
    a = mats % p
    N, n, _ = a.shape
    det = np.ones(N, dtype=np.int64)
    idx = np.arange(N)
    for k in range(n):
        col = a[:, k:, k]
        nz = col != 0
        has = nz.any(axis=1)
        piv = np.argmax(nz, axis=1) + k
        det = np.where(has, det, 0)
        swap = piv != k
        if swap.any():
            rows_k = a[idx, k].copy()
            a[idx, k] = a[idx, piv]
            a[idx, piv] = rows_k
            det = np.where(swap & has, (p - det) % p, det)
        pv = a[:, k, k]
        pv_safe = np.where(pv == 0, 1, pv)
        det = det * pv % p
        inv = _inv_mod(pv_safe, p)
        f = a[:, k + 1:, k] * inv[:, None] % p
        a[:, k + 1:, k:] = (a[:, k + 1:, k:] - f[:, :, None] * a[:, k, None, k:]) % p
    return det


def _inv_mod(x, p):
    res = np.ones_like(x)
    b = x % p
    e = p - 2
    while e:
        if e & 1:
            res = res * b % p
        b = b * b % p
        e >>= 1
    return res


def degree_bounds(rows):
    """Upper bounds for deg_l and deg_r of the determinant of a polynomial matrix.

    Each bound is the maximum over permutations of the summed entry degrees,
    found with an assignment solver.
    """
    n = len(rows)
    bounds = []
    for var in (0, 1):
        w = np.full((n, n), -1e9)
        for i in range(n):
            for j in range(n):
                if not rows[i][j].is_zero():
                    w[i, j] = int(rows[i][j].degrees()[var])
        ri, ci = linear_sum_assignment(w, maximize=True)
        total = w[ri, ci].sum()
        if total < 0:
            return None
        bounds.append(int(round(total)))
    return tuple(bounds)


def coefficient_bound(rows):
    """Bound on the absolute value of every coefficient of the determinant."""
    bound = 1
    for row in rows:
        s = sum(sum(abs(int(c)) for c in p.coeffs()) for p in row)
        bound *= max(s, 1)
    return bound


def _eval_rows_mod(rows, lpts, rpts, p):
    """Evaluate the polynomial matrix on the grid lpts x rpts -> (A, B, n, n)."""
    n = len(rows)
    A, B = len(lpts), len(rpts)
    out = np.zeros((A, B, n, n), dtype=np.int64)
    max_dl = max(int(q.degrees()[0]) for row in rows for q in row if not q.is_zero())
    max_dr = max(int(q.degrees()[1]) for row in rows for q in row if not q.is_zero())
    lp = _power_table(lpts, max_dl, p)
    rp = _power_table(rpts, max_dr, p)
    for i in range(n):
        for j in range(n):
            q = rows[i][j]
            if q.is_zero():
                continue
            dl, dr = (int(x) for x in q.degrees())
            c = np.zeros((dl + 1, dr + 1), dtype=np.int64)
            for (a, b), v in zip(q.monoms(), q.coeffs()):
                c[int(a), int(b)] = int(v) % p
            t = _mod_matmul(lp[:, :dl + 1], c, p)
            out[:, :, i, j] = _mod_matmul(t, rp[:, :dr + 1].T.copy(), p)
    return out


def _power_table(pts, deg, p):
    t = np.ones((len(pts), deg + 1), dtype=np.int64)
    for k in range(1, deg + 1):
        t[:, k] = t[:, k - 1] * pts % p
    return t


def _interpolate_1d(pts, vals, p):
    """Newton interpolation along axis 0 of ``vals`` mod p; returns monomial coefficients."""
    n = len(pts)
    coef = vals.copy() % p
    for k in range(1, n):
        for i in range(n - 1, k - 1, -1):
            d = (pts[i] - pts[i - k]) % p
            coef[i] = (coef[i] - coef[i - 1]) * pow(int(d), p - 2, p) % p
    # expand Newton form to monomial basis
    out = np.zeros_like(coef)
    for k in range(n - 1, -1, -1):
        # out = out * (x - pts[k]) + coef[k]
        shifted = np.zeros_like(out)
        shifted[1:] = out[:-1]
        out = (shifted - out * int(pts[k])) % p
        out[0] = (out[0] + coef[k]) % p
    return out


def _det_mod_prime(rows, dl, dr, p, seed, chunk=8):
    rng = np.random.default_rng(seed)
    lpts = _distinct_points(rng, dl + 1, p)
    rpts = _distinct_points(rng, dr + 1, p)
    n = len(rows)
    dets = np.zeros((len(lpts), len(rpts)), dtype=np.int64)
    for s in range(0, len(lpts), chunk):
        part = lpts[s:s + chunk]
        vals = _eval_rows_mod(rows, part, rpts, p)
        dets[s:s + len(part)] = batched_det_mod(vals.reshape(-1, n, n), p).reshape(len(part), -1)
    c = _interpolate_1d(lpts, dets, p)            # coefficient of l^a at each r point
    c = _interpolate_1d(rpts, c.T.copy(), p)      # (dr+1, dl+1)
    return c.T


def _distinct_points(rng, k, p):
    pts = set()
    while len(pts) < k:
        pts.add(int(rng.integers(1, p)))
    return np.array(sorted(pts), dtype=np.int64)


def determinant_modular(m, seed=0, threads=1):
    """Exact determinant by evaluation, interpolation and Chinese remaindering.

    Degree and coefficient bounds are proven from the cleared matrix, so the
    result does not depend on the random points or primes chosen.
    """
    if m.n == 0:
        return ONE
    rows, factor = clear_rows(m)
    bounds = degree_bounds(rows)
    if bounds is None:
        return ZERO
    dl, dr = bounds
    cbound = coefficient_bound(rows)
    primes = []
    prod = 1
    rng = np.random.default_rng(seed)
    while prod <= 2 * cbound:
        p = _next_prime(int(rng.integers(1 << (_MODULUS_BITS - 1), 1 << _MODULUS_BITS)))
        if p in primes or p >= 1 << _MODULUS_BITS:
            continue
        primes.append(p)
        prod *= p
    seeds = [seed * 7919 + k for k in range(len(primes))]
    if threads > 1:
        from concurrent.futures import ThreadPoolExecutor
        with ThreadPoolExecutor(threads) as ex:
            images = list(ex.map(lambda a: _det_mod_prime(rows, dl, dr, *a), zip(primes, seeds)))
    else:
        images = [_det_mod_prime(rows, dl, dr, p, s) for p, s in zip(primes, seeds)]
    terms = {}
    stack = np.stack(images)  # (k, dl+1, dr+1)
    nz = np.argwhere(stack.any(axis=0))
    for a, b in nz:
        residues = [int(x) for x in stack[:, a, b]]
        v = _crt(residues, primes)
        if v > prod // 2:
            v -= prod
        if v:
            terms[(int(a), int(b))] = v
    d = CTX.from_dict(terms) if terms else _ZERO
    return RationalFunction._raw(d, 0, 0, _ONE) / factor


def _crt(residues, primes):
    x, mod = 0, 1
    for r, p in zip(residues, primes):
        t = (r - x) * pow(mod, -1, p) % p
        x += mod * t
        mod *= p
    return x


def determinant(m, backend="bareiss", seed=0, threads=1):
    if backend == "bareiss":
        return determinant_bareiss(m)
    if backend == "modular":
        return determinant_modular(m, seed=seed, threads=threads)
    raise ValueError(f"unknown determinant backend {backend!r}")


# ------------------------------------------------------------ rank, kernel

def _to_poly_rows(m):
    rows, _ = clear_rows(m)
    return rows


def fraction_free_rref(rows, div=None, reduce_above=True):
    """Fraction-free Gauss-Jordan elimination in place.

    Returns (pivot_columns, pivot_value); every pivot row then reads
    ``pivot_value * x_p + sum_f a_f x_f`` over the free columns f.  With
    ``reduce_above=False`` only the rows below each pivot are eliminated,
    which is enough for the rank.
    """
    if div is None:
        div = lambda a, b: a / b
    n_rows = len(rows)
    n_cols = len(rows[0]) if rows else 0
    pivots = []
    prev = None
    r = 0
    for c in range(n_cols):
        best = None
        for i in range(r, n_rows):
            x = rows[i][c]
            if not x.is_zero():
                size = _poly_size(x)
                if best is None or size < best[0]:
                    best = (size, i)
        if best is None:
            continue
        p = best[1]
        rows[r], rows[p] = rows[p], rows[r]
        piv = rows[r][c]
        rr = rows[r]
        for i in range(0 if reduce_above else r + 1, n_rows):
            if i == r:
                continue
            ri = rows[i]
            f = ri[c]
            if f.is_zero():
                if prev is None:
                    for j in range(n_cols):
                        ri[j] = piv * ri[j]
                else:
                    for j in range(n_cols):
                        if not ri[j].is_zero():
                            ri[j] = div(piv * ri[j], prev)
                continue
            for j in range(n_cols):
                if j == c:
                    continue
                v = piv * ri[j] - f * rr[j]
                ri[j] = div(v, prev) if prev is not None else v
            ri[c] = f * 0
        # rows above keep their old pivot scaled to the new one
        prev = piv
        pivots.append(c)
        r += 1
        if r == n_rows:
            break
    return pivots, prev


def rank_poly(rows, div=None):
    pivots, _ = fraction_free_rref([list(r) for r in rows], div, reduce_above=False)
    return len(pivots)


def _specialized_poly_rows(m):
    """Clear a matrix over Q(r) to univariate fmpz_poly rows."""
    rows, _ = clear_rows(m)
    out = []
    for row in rows:
        out.append([_to_fmpz_poly(p) for p in row])
    return out


def _to_fmpz_poly(p):
    if p.is_zero():
        return flint.fmpz_poly(0)
    if int(p.degrees()[0]) != 0:
        raise ValueError("entry still depends on l")
    coeffs = [0] * (int(p.degrees()[1]) + 1)
    for (_, b), c in zip(p.monoms(), p.coeffs()):
        coeffs[int(b)] = int(c)
    return flint.fmpz_poly(coeffs)


def _fmpz_poly_to_rf(q):
    terms = {(0, k): int(c) for k, c in enumerate(q.coeffs()) if c}
    if not terms:
        return ZERO
    return RationalFunction._raw(CTX.from_dict(terms), 0, 0, _ONE)


def _exact_div_poly(a, b):
    q, rem = divmod(a, b)
    if not rem.is_zero():
        raise ArithmeticError("inexact division in fraction-free elimination")
    return q


def _all_univariate(m):
    return all(as_rational(x).is_univariate_r() for col in m.cols for x in col.values())


def _all_fraction(m):
    return all(isinstance(x, (int, Fraction)) for col in m.cols for x in col.values())


def rank(m, field=None):
    """Exact rank.

    field is 'generic' (Q(l, r)), 'specialized' (Q(r), entries free of l),
    'rational' (Fraction entries) or None to pick from the entries.
    """
    if field is None:
        if _all_fraction(m):
            field = "rational"
        elif _all_univariate(m):
            field = "specialized"
        else:
            field = "generic"
    if field == "rational":
        return len(_fraction_rref(m)[0])
    if field == "specialized":
        return rank_poly(_specialized_poly_rows(m), _exact_div_poly)
    if field == "generic":
        return rank_poly(_to_poly_rows(m))
    raise ValueError(f"unknown field {field!r}")


def rank_mod(m, prime, assign):
    """Rank over GF(prime) after evaluating every entry with ``assign``."""
    rows = [[0] * m.n for _ in range(m.n)]
    for j, col in enumerate(m.cols):
        for i, x in col.items():
            rows[i][j] = assign(x) % prime
    a = np.array(rows, dtype=object)
    rk = 0
    n = m.n
    for c in range(n):
        piv = next((i for i in range(rk, n) if a[i, c] % prime), None)
        if piv is None:
            continue
        a[[rk, piv]] = a[[piv, rk]]
        inv = pow(int(a[rk, c]), prime - 2, prime)
        a[rk] = [(x * inv) % prime for x in a[rk]]
        for i in range(n):
            if i != rk and a[i, c] % prime:
                f = a[i, c]
                a[i] = [(x - f * y) % prime for x, y in zip(a[i], a[rk])]
        rk += 1
    return rk


def _fraction_rref(m):
    rows = [[Fraction(x) for x in row] for row in m.to_dense(zero=Fraction(0))]
    n = m.n
    pivots = []
    r = 0
    for c in range(n):
        piv = next((i for i in range(r, n) if rows[i][c] != 0), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = 1 / rows[r][c]
        rows[r] = [x * inv for x in rows[r]]
        for i in range(n):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
    return pivots, rows


class KernelBasis(list):
    """Right-nullspace basis; each vector is a dict {index: value}.

    Vector k has a 1 in its free column and zeros in the other free columns.
    """

    def __init__(self, vectors, free_columns):
        super().__init__(vectors)
        self.free_columns = list(free_columns)


def kernel_basis(m, field=None):
    """Basis of {v : m v = 0} over the active field."""
    if field is None:
        if _all_fraction(m):
            field = "rational"
        elif _all_univariate(m):
            field = "specialized"
        else:
            field = "generic"
    n = m.n
    if field == "rational":
        pivots, rows = _fraction_rref(m)
        free = [c for c in range(n) if c not in pivots]
        vecs = []
        for f in free:
            v = {f: Fraction(1)}
            for k, c in enumerate(pivots):
                if rows[k][f] != 0:
                    v[c] = -rows[k][f]
            vecs.append(v)
        return KernelBasis(vecs, free)
    if field == "specialized":
        rows = _specialized_poly_rows(m)
        pivots, d = fraction_free_rref(rows, _exact_div_poly)
        conv = _fmpz_poly_to_rf
    elif field == "generic":
        rows = _to_poly_rows(m)
        pivots, d = fraction_free_rref(rows)
        conv = lambda p: RationalFunction._raw(p, 0, 0, _ONE)
    else:
        raise ValueError(f"unknown field {field!r}")
    free = [c for c in range(n) if c not in pivots]
    vecs = []
    if free:
        dd = conv(d) if d is not None else ONE
        for f in free:
            v = {f: ONE}
            for k, c in enumerate(pivots):
                a = rows[k][f]
                if not a.is_zero():
                    v[c] = -conv(a) / dd
            vecs.append(v)
    return KernelBasis(vecs, free)
