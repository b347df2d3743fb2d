"""Exact coefficient rings and integer/field linear algebra.

Everything here is exact: integers are Python big ints, rationals are
``fractions.Fraction``, residues are canonical representatives.  No floating
point is used anywhere in the package.
"""

from __future__ import annotations

import json
from fractions import Fraction


class NonFieldRing(Exception):
    pass


class DimensionMismatch(Exception):
    pass


def xgcd(a, b):
    """Return (g, x, y) with g = gcd(a, b) >= 0 and x*a + y*b = g."""
    x, next_x = 1, 0
    y, next_y = 0, 1
    g, next_g = a, b
    while next_g:
        q = g // next_g
        x, next_x = next_x, x - q * next_x
        y, next_y = next_y, y - q * next_y
        g, next_g = next_g, g - q * next_g
    if g < 0:
        g, x, y = -g, -x, -y
    return g, x, y


def is_prime(n):
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


# ---------------------------------------------------------------------------
# Coefficient rings.
#
# A ring object is a context: elements are plain Python values (int, Fraction,
# tuple of base-ring values) and the ring provides the arithmetic.


class CoefficientRing:
    kind = "abstract"
    is_field = False

    def zero(self):
        return self.from_int(0)

    def one(self):
        return self.from_int(1)

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def eq(self, a, b):
        return a == b

    def is_zero(self, a):
        return self.eq(a, self.zero())

    def pow(self, a, n):
        if n < 0:
            return self.inv(self.pow(a, -n))
        result = self.one()
        base = a
        while n:
            if n & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            n >>= 1
        return result

    def sum(self, items):
        total = self.zero()
        for x in items:
            total = self.add(total, x)
        return total

    def inv(self, a):
        raise NonFieldRing(f"no division in {self}")

    def elements(self):
        """Iterate all elements (finite rings only)."""
        raise NotImplementedError(f"{self} is not enumerable")

    # serialization ---------------------------------------------------------

    def show(self, a):
        return str(a)

    def parse(self, s):
        raise NotImplementedError

    def to_json(self):
        return {"kind": self.kind}

    def __eq__(self, other):
        return isinstance(other, CoefficientRing) and self.to_json() == other.to_json()

    def __hash__(self):
        return hash(json.dumps(self.to_json(), sort_keys=True))

    def __repr__(self):
        return ring_to_string(self)


class IntegerRing(CoefficientRing):
    kind = "integers"

    def add(self, a, b):
        return a + b

    def neg(self, a):
        return -a

    def mul(self, a, b):
        return a * b

    def from_int(self, k):
        return k

    def parse(self, s):
        return int(s)


class RationalField(CoefficientRing):
    kind = "rationals"
    is_field = True

    def add(self, a, b):
        return a + b

    def neg(self, a):
        return -a

    def mul(self, a, b):
        return a * b

    def from_int(self, k):
        return Fraction(k)

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of 0")
        return 1 / Fraction(a)

    def parse(self, s):
        return Fraction(s)


class ModularRing(CoefficientRing):
    """Integers mod m, m >= 2, canonical representatives 0..m-1."""

    kind = "integers-mod-m"

    def __init__(self, m):
        if m < 2:
            raise ValueError("modulus must be >= 2")
        self.modulus = m

    def add(self, a, b):
        return (a + b) % self.modulus

    def neg(self, a):
        return (-a) % self.modulus

    def mul(self, a, b):
        return (a * b) % self.modulus

    def from_int(self, k):
        return k % self.modulus

    def parse(self, s):
        return int(s) % self.modulus

    def elements(self):
        return range(self.modulus)

    def to_json(self):
        return {"kind": self.kind, "modulus": self.modulus}


class PrimeField(ModularRing):
    kind = "prime-field"
    is_field = True

    def __init__(self, p):
        if not is_prime(p):
            raise ValueError(f"{p} is not prime")
        super().__init__(p)

    def inv(self, a):
        a %= self.modulus
        if a == 0:
            raise ZeroDivisionError("inverse of 0")
        return pow(a, -1, self.modulus)

    def to_json(self):
        return {"kind": self.kind, "p": self.modulus}


class QuotientPolynomialRing(CoefficientRing):
    """base[x] / (modulus), modulus monic; elements are coefficient tuples.

    The tuple has length deg(modulus), lowest degree first.  Division is
    available when the base is a field and the modulus is irreducible there
    (attempted via extended Euclid; a non-invertible element raises).
    """

    kind = "univariate-polynomial-quotient"

    def __init__(self, base, modulus, var="x"):
        if not isinstance(base, CoefficientRing):
            raise TypeError("base must be a CoefficientRing")
        modulus = tuple(modulus)
        if len(modulus) < 2 or not base.eq(modulus[-1], base.one()):
            raise ValueError("modulus must be monic of degree >= 1")
        self.base = base
        self.modulus = modulus
        self.deg = len(modulus) - 1
        self.var = var
        self.is_field = bool(base.is_field and self._irreducible())

    def _irreducible(self):
        # Brute force check, only meaningful over small prime fields.
        if not isinstance(self.base, PrimeField) or self.deg > 3:
            return False
        p = self.base.modulus
        for r in range(p):
            val = self.base.zero()
            for c in reversed(self.modulus):
                val = self.base.add(self.base.mul(val, r), c)
            if self.base.is_zero(val):
                return False
        # Degree 2 and 3 polynomials are irreducible iff they have no root.
        return self.deg <= 3

    def from_int(self, k):
        return (self.base.from_int(k),) + (self.base.zero(),) * (self.deg - 1)

    def add(self, a, b):
        return tuple(self.base.add(x, y) for x, y in zip(a, b))

    def neg(self, a):
        return tuple(self.base.neg(x) for x in a)

    def _reduce(self, coeffs):
        # Reduce a raw coefficient list (any length) modulo the monic modulus.
        coeffs = list(coeffs)
        for i in range(len(coeffs) - 1, self.deg - 1, -1):
            lead = coeffs[i]
            if self.base.is_zero(lead):
                continue
            for j in range(self.deg + 1):
                coeffs[i - self.deg + j] = self.base.sub(
                    coeffs[i - self.deg + j], self.base.mul(lead, self.modulus[j])
                )
        while len(coeffs) < self.deg:
            coeffs.append(self.base.zero())
        return tuple(coeffs[: self.deg])

    def mul(self, a, b):
        raw = [self.base.zero()] * (2 * self.deg)
        for i, x in enumerate(a):
            if self.base.is_zero(x):
                continue
            for j, y in enumerate(b):
                raw[i + j] = self.base.add(raw[i + j], self.base.mul(x, y))
        return self._reduce(raw)

    def gen(self):
        """The class of the variable."""
        coeffs = [self.base.zero()] * self.deg
        if self.deg == 1:
            return self._reduce([self.base.zero(), self.base.one()])
        coeffs[1] = self.base.one()
        return tuple(coeffs)

    def inv(self, a):
        if not self.base.is_field:
            raise NonFieldRing("inversion needs a field base")
        # Extended Euclid in base[x] against the modulus.
        r0, r1 = list(self.modulus), list(a)
        s0, s1 = [self.base.zero()], [self.base.one()]

        def degree(poly):
            for i in range(len(poly) - 1, -1, -1):
                if not self.base.is_zero(poly[i]):
                    return i
            return -1

        while degree(r1) > 0:
            d0, d1 = degree(r0), degree(r1)
            if d0 < d1:
                r0, r1, s0, s1 = r1, r0, s1, s0
                continue
            factor = self.base.mul(r0[degree(r0)], self.base.inv(r1[degree(r1)]))
            shift = degree(r0) - degree(r1)
            for i in range(degree(r1) + 1):
                r0[i + shift] = self.base.sub(r0[i + shift], self.base.mul(factor, r1[i]))
            s0 = s0 + [self.base.zero()] * (shift + len(s1) - len(s0) + 1)
            for i in range(len(s1)):
                s0[i + shift] = self.base.sub(s0[i + shift], self.base.mul(factor, s1[i]))
        if degree(r1) < 0:
            raise ZeroDivisionError("element is not invertible")
        c = self.base.inv(r1[degree(r1)])
        return self._reduce([self.base.mul(c, x) for x in s1])

    def elements(self):
        from itertools import product

        base_elts = list(self.base.elements())
        for combo in product(base_elts, repeat=self.deg):
            yield tuple(combo)

    def show(self, a):
        return ",".join(self.base.show(x) for x in a)

    def parse(self, s):
        parts = s.split(",")
        if len(parts) != self.deg:
            raise ValueError(f"expected {self.deg} coefficients")
        return tuple(self.base.parse(p) for p in parts)

    def to_json(self):
        return {
            "kind": self.kind,
            "base": self.base.to_json(),
            "modulus": [self.base.show(c) for c in self.modulus],
            "var": self.var,
        }


ZZ = IntegerRing()
QQ = RationalField()


def ring_from_string(s):
    """Parse ring names: Z, Q, Z/8, F5 (or F_5, GF(5))."""
    s = s.strip()
    if s in ("Z", "ZZ"):
        return ZZ
    if s in ("Q", "QQ"):
        return QQ
    if s.startswith("Z/"):
        return ModularRing(int(s[2:]))
    if s.startswith("GF(") and s.endswith(")"):
        return PrimeField(int(s[3:-1]))
    if s.startswith("F_"):
        return PrimeField(int(s[2:]))
    if s.startswith("F") and s[1:].isdigit():
        return PrimeField(int(s[1:]))
    raise ValueError(f"unknown ring {s!r}")


def ring_to_string(ring):
    if ring.kind == "integers":
        return "Z"
    if ring.kind == "rationals":
        return "Q"
    if ring.kind == "integers-mod-m":
        return f"Z/{ring.modulus}"
    if ring.kind == "prime-field":
        return f"F{ring.modulus}"
    if ring.kind == "univariate-polynomial-quotient":
        return f"{ring_to_string(ring.base)}[{ring.var}]/(...)"
    return ring.kind


def ring_from_json(data):
    kind = data["kind"]
    if kind == "integers":
        return ZZ
    if kind == "rationals":
        return QQ
    if kind == "integers-mod-m":
        return ModularRing(data["modulus"])
    if kind == "prime-field":
        return PrimeField(data["p"])
    if kind == "univariate-polynomial-quotient":
        base = ring_from_json(data["base"])
        modulus = tuple(base.parse(c) for c in data["modulus"])
        return QuotientPolynomialRing(base, modulus, data.get("var", "x"))
    raise ValueError(f"unknown ring kind {kind!r}")


# ---------------------------------------------------------------------------
# Matrices.

SPARSE_THRESHOLD = 0.25


class IntMatrix:
    """Immutable-by-convention matrix over a CoefficientRing.

    Storage is dense (list of rows) or sparse (dict keyed by (i, j)) chosen by
    density at construction; the representation never affects results.
    """

    def __init__(self, ring, rows, cols, entries=None, sparse=None):
        self.ring = ring
        self.rows = rows
        self.cols = cols
        if entries is None:
            entries = {}
        if isinstance(entries, dict):
            items = {k: v for k, v in entries.items() if not ring.is_zero(v)}
        else:
            if len(entries) != rows or any(len(r) != cols for r in entries):
                raise DimensionMismatch("entry grid does not match shape")
            items = {
                (i, j): entries[i][j]
                for i in range(rows)
                for j in range(cols)
                if not ring.is_zero(entries[i][j])
            }
        for (i, j) in items:
            if not (0 <= i < rows and 0 <= j < cols):
                raise DimensionMismatch(f"entry index ({i},{j}) out of range")
        if sparse is None:
            sparse = rows * cols > 16 and len(items) < SPARSE_THRESHOLD * rows * cols
        self.sparse = sparse
        if sparse:
            self._data = items
        else:
            grid = [[ring.zero()] * cols for _ in range(rows)]
            for (i, j), v in items.items():
                grid[i][j] = v
            self._data = grid

    @classmethod
    def zeros(cls, ring, rows, cols):
        return cls(ring, rows, cols, {})

    @classmethod
    def identity(cls, ring, n):
        return cls(ring, n, n, {(i, i): ring.one() for i in range(n)})

    @classmethod
    def from_rows(cls, ring, row_list):
        rows = len(row_list)
        cols = len(row_list[0]) if row_list else 0
        return cls(ring, rows, cols, [list(r) for r in row_list])

    def get(self, i, j):
        if self.sparse:
            return self._data.get((i, j), self.ring.zero())
        return self._data[i][j]

    def items(self):
        if self.sparse:
            yield from self._data.items()
        else:
            for i in range(self.rows):
                for j in range(self.cols):
                    v = self._data[i][j]
                    if not self.ring.is_zero(v):
                        yield (i, j), v

    def row(self, i):
        return [self.get(i, j) for j in range(self.cols)]

    def col(self, j):
        return [self.get(i, j) for i in range(self.rows)]

    def to_lists(self):
        return [self.row(i) for i in range(self.rows)]

    def transpose(self):
        return IntMatrix(self.ring, self.cols, self.rows, {(j, i): v for (i, j), v in self.items()})

    def __eq__(self, other):
        if not isinstance(other, IntMatrix):
            return NotImplemented
        if (self.rows, self.cols) != (other.rows, other.cols) or self.ring != other.ring:
            return False
        return dict(self.items()) == dict(other.items())

    def __hash__(self):
        return hash((self.rows, self.cols, tuple(sorted(self.items()))))

    def add(self, other):
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise DimensionMismatch("shape mismatch in add")
        out = dict(self.items())
        for key, v in other.items():
            s = self.ring.add(out.get(key, self.ring.zero()), v)
            if self.ring.is_zero(s):
                out.pop(key, None)
            else:
                out[key] = s
        return IntMatrix(self.ring, self.rows, self.cols, out)

    def neg(self):
        return IntMatrix(self.ring, self.rows, self.cols, {k: self.ring.neg(v) for k, v in self.items()})

    def sub(self, other):
        return self.add(other.neg())

    def scale(self, c):
        return IntMatrix(self.ring, self.rows, self.cols, {k: self.ring.mul(c, v) for k, v in self.items()})

    def mul(self, other):
        if self.cols != other.rows:
            raise DimensionMismatch("shape mismatch in mul")
        ring = self.ring
        by_row = {}
        for (i, k), v in self.items():
            by_row.setdefault(i, []).append((k, v))
        other_rows = {}
        for (k, j), w in other.items():
            other_rows.setdefault(k, []).append((j, w))
        out = {}
        for i, terms in by_row.items():
            acc = {}
            for k, v in terms:
                for j, w in other_rows.get(k, ()):
                    key = j
                    acc[key] = ring.add(acc.get(key, ring.zero()), ring.mul(v, w))
            for j, val in acc.items():
                if not ring.is_zero(val):
                    out[(i, j)] = val
        return IntMatrix(ring, self.rows, other.cols, out)

    def mul_vec(self, vec):
        if len(vec) != self.cols:
            raise DimensionMismatch("vector length mismatch")
        ring = self.ring
        out = [ring.zero()] * self.rows
        for (i, j), v in self.items():
            out[i] = ring.add(out[i], ring.mul(v, vec[j]))
        return out

    def stack_rows(self, other):
        if self.cols != other.cols:
            raise DimensionMismatch("column count mismatch in stack")
        out = dict(self.items())
        for (i, j), v in other.items():
            out[(i + self.rows, j)] = v
        return IntMatrix(self.ring, self.rows + other.rows, self.cols, out)

    def is_zero(self):
        return not any(True for _ in self.items())

    def to_json(self):
        return {
            "rows": self.rows,
            "cols": self.cols,
            "ring": self.ring.to_json(),
            "entries": sorted([[i, j, self.ring.show(v)] for (i, j), v in self.items()]),
        }

    @classmethod
    def from_json(cls, data):
        ring = ring_from_json(data["ring"])
        entries = {(i, j): ring.parse(v) for i, j, v in data["entries"]}
        return cls(ring, data["rows"], data["cols"], entries)

    def __repr__(self):
        return f"IntMatrix({self.ring!r}, {self.rows}x{self.cols})"


# ---------------------------------------------------------------------------
# Smith normal form over the integers, with unimodular transforms.


def smith_normal_form(A):
    """Return (D, U, V) with U*A*V = D diagonal, d_1 | d_2 | ..., d_i >= 0.

    A must be an IntMatrix over the integers; U and V are unimodular.
    """
    if A.ring.kind != "integers":
        raise NonFieldRing("Smith normal form requires integer entries")
    m, n = A.rows, A.cols
    D = [[A.get(i, j) for j in range(n)] for i in range(m)]
    U = [[1 if i == j else 0 for j in range(m)] for i in range(m)]
    V = [[1 if i == j else 0 for j in range(n)] for i in range(n)]

    def swap_rows(i, j):
        D[i], D[j] = D[j], D[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for r in D:
            r[i], r[j] = r[j], r[i]
        for r in V:
            r[i], r[j] = r[j], r[i]

    def add_row(src, dst, c):
        # row dst += c * row src
        D[dst] = [a + c * b for a, b in zip(D[dst], D[src])]
        U[dst] = [a + c * b for a, b in zip(U[dst], U[src])]

    def add_col(src, dst, c):
        for r in D:
            r[dst] += c * r[src]
        for r in V:
            r[dst] += c * r[src]

    def negate_row(i):
        D[i] = [-a for a in D[i]]
        U[i] = [-a for a in U[i]]

    def diagonalize():
        t = 0
        while t < min(m, n):
            # Pivot of minimal absolute value in the remaining block.
            pivot = None
            best = None
            for i in range(t, m):
                for j in range(t, n):
                    a = D[i][j]
                    if a != 0 and (best is None or abs(a) < best):
                        best = abs(a)
                        pivot = (i, j)
            if pivot is None:
                break
            swap_rows(t, pivot[0])
            swap_cols(t, pivot[1])
            while True:
                dirty = False
                for i in range(t + 1, m):
                    if D[i][t]:
                        q = D[i][t] // D[t][t]
                        add_row(t, i, -q)
                        if D[i][t]:
                            swap_rows(t, i)
                            dirty = True
                for j in range(t + 1, n):
                    if D[t][j]:
                        q = D[t][j] // D[t][t]
                        add_col(t, j, -q)
                        if D[t][j]:
                            swap_cols(t, j)
                            dirty = True
                if not dirty:
                    break
            if D[t][t] < 0:
                negate_row(t)
            t += 1

    # Diagonalize, then fold adjacent entries until the chain d_1 | d_2 | ...
    # holds; each fold strictly shrinks the earlier entry, so this stops.
    diagonalize()
    while True:
        bad = None
        for i in range(min(m, n) - 1):
            a, b = D[i][i], D[i + 1][i + 1]
            if a and b % a != 0:
                bad = i
                break
        if bad is None:
            break
        add_col(bad + 1, bad, 1)
        diagonalize()

    Dm = IntMatrix(ZZ, m, n, {(i, i): D[i][i] for i in range(min(m, n)) if D[i][i]})
    Um = IntMatrix.from_rows(ZZ, U)
    Vm = IntMatrix.from_rows(ZZ, V)
    return Dm, Um, Vm


def det_int(A):
    """Determinant over Z by fraction-free (Bareiss) elimination."""
    if A.rows != A.cols:
        raise DimensionMismatch("determinant of non-square matrix")
    n = A.rows
    M = [[A.get(i, j) for j in range(n)] for i in range(n)]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if M[k][k] == 0:
            for i in range(k + 1, n):
                if M[i][k] != 0:
                    M[k], M[i] = M[i], M[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) // prev
            M[i][k] = 0
        prev = M[k][k]
    return sign * M[n - 1][n - 1]


def rank_and_kernel(A):
    """Rank and a kernel basis of a matrix over a field.

    Returns (rank, basis) where basis is a list of length-cols vectors that
    are linearly independent and annihilated by A.
    """
    ring = A.ring
    if not ring.is_field:
        raise NonFieldRing(f"{ring} is not a field")
    m, n = A.rows, A.cols
    M = [[A.get(i, j) for j in range(n)] for i in range(m)]
    pivots = []
    r = 0
    for c in range(n):
        pivot_row = None
        for i in range(r, m):
            if not ring.is_zero(M[i][c]):
                pivot_row = i
                break
        if pivot_row is None:
            continue
        M[r], M[pivot_row] = M[pivot_row], M[r]
        inv = ring.inv(M[r][c])
        M[r] = [ring.mul(inv, x) for x in M[r]]
        for i in range(m):
            if i != r and not ring.is_zero(M[i][c]):
                f = M[i][c]
                M[i] = [ring.sub(x, ring.mul(f, y)) for x, y in zip(M[i], M[r])]
        pivots.append(c)
        r += 1
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for fc in free:
        vec = [ring.zero()] * n
        vec[fc] = ring.one()
        for row_idx, pc in enumerate(pivots):
            vec[pc] = ring.neg(M[row_idx][fc])
        basis.append(vec)
    return r, basis


def _sparse_columns(A):
    cols = [dict() for _ in range(A.cols)]
    for (i, j), v in A.items():
        cols[j][i] = v
    return cols


def _echelon_insert(ring, echelon, col):
    """Reduce col against the echelon rows; insert if independent.

    echelon maps pivot index -> normalized sparse column.  Returns True when
    the column was new (rank grew).
    """
    col = dict(col)
    while col:
        p = min(col)
        if p in echelon:
            c = col[p]
            for i, v in echelon[p].items():
                w = ring.sub(col.get(i, ring.zero()), ring.mul(c, v))
                if ring.is_zero(w):
                    col.pop(i, None)
                else:
                    col[i] = w
        else:
            inv = ring.inv(col[p])
            echelon[p] = {i: ring.mul(inv, v) for i, v in col.items()}
            return True
    return False


def rank_of(A):
    """Rank over a field by sparse incremental elimination."""
    ring = A.ring
    if not ring.is_field:
        raise NonFieldRing(f"{ring} is not a field")
    echelon = {}
    rank = 0
    for col in _sparse_columns(A):
        if col and _echelon_insert(ring, echelon, col):
            rank += 1
    return rank


def column_space_basis(A):
    """An echelon basis of the column space (list of dense vectors)."""
    ring = A.ring
    if not ring.is_field:
        raise NonFieldRing(f"{ring} is not a field")
    echelon = {}
    for col in _sparse_columns(A):
        if col:
            _echelon_insert(ring, echelon, col)
    out = []
    for p in sorted(echelon):
        vec = [ring.zero()] * A.rows
        for i, v in echelon[p].items():
            vec[i] = v
        out.append(vec)
    return out


def presented_group_quotient(G, S):
    """Presentation of the quotient of a finitely presented abelian group.

    G is a presentation matrix (rows are relations among ngens = G.cols
    generators) and S is a list of generator-coefficient rows spanning the
    subgroup to kill.  The result is the stacked presentation.
    """
    ngens = G.cols
    for row in S:
        if len(row) != ngens:
            raise DimensionMismatch("subgroup generator length != ngens")
    extra = IntMatrix.from_rows(ZZ, list(S)) if S else IntMatrix.zeros(ZZ, 0, ngens)
    return G.stack_rows(extra)


def invariant_factors(P):
    """Invariant factors (d_1 | d_2 | ...) > 1 and free rank of Z^cols / rows(P)."""
    D, _, _ = smith_normal_form(P)
    diag = [D.get(i, i) for i in range(min(P.rows, P.cols))]
    torsion = [d for d in diag if d > 1]
    rank_used = sum(1 for d in diag if d != 0)
    free = P.cols - rank_used
    return torsion, free


def int_kernel(A):
    """Basis (list of columns) of the integer kernel {x : A x = 0}."""
    D, _, V = smith_normal_form(A)
    n = A.cols
    rank = sum(1 for i in range(min(A.rows, n)) if D.get(i, i) != 0)
    return [V.col(j) for j in range(rank, n)]


def solve_int(A, b):
    """One integer solution x of A x = b, or None.

    Uses U A V = D: with c = U b, the system D y = c is solved coordinatewise
    and x = V y.
    """
    D, U, V = smith_normal_form(A)
    c = U.mul_vec(list(b))
    y = [0] * A.cols
    for i in range(A.rows):
        d = D.get(i, i) if i < min(A.rows, A.cols) else 0
        ci = c[i]
        if d == 0:
            if ci != 0:
                return None
        else:
            if ci % d != 0:
                return None
            if i < A.cols:
                y[i] = ci // d
    return V.mul_vec(y)


def in_column_span(cols, target):
    """Is target in the Z-span of the given columns?"""
    if not cols:
        return all(t == 0 for t in target)
    A = IntMatrix(ZZ, len(target), len(cols), {(i, j): cols[j][i] for j in range(len(cols)) for i in range(len(target)) if cols[j][i]})
    return solve_int(A, target) is not None


def column_span_contains(cols, others):
    return all(in_column_span(cols, t) for t in others)


def lattices_equal(cols_a, cols_b):
    """Do two generating sets span the same integer lattice?"""
    return column_span_contains(cols_a, cols_b) and column_span_contains(cols_b, cols_a)
