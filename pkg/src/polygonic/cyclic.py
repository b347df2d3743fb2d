"""Cyclic-category combinatorics: paths, admissible sequences, cut sets.

Conventions.  The standard cyclic object of index n is the subdivided circle
with n vertices; its ambient set is (1/n)Z, which we handle through integer
numerators ("positions"): position a stands for the point a/n.  A map between
such objects is stored by its values on one period; everything extends by
f(x + 1) = f(x) + 1.

Hom classes are taken modulo the simultaneous shift f -> f + 1; the canonical
representative has f(0) in [0, 1).

A path is a class of pairs (x, y) with x <= y <= x + 1 modulo the diagonal
shift; vertices are the classes with x = y, edges have length 1..n measured
in position steps.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction


class SizeGuard(Exception):
    pass


class EmptyOrder(Exception):
    pass


# ---------------------------------------------------------------------------
# Paths.


@dataclass(frozen=True, order=True)
class Path:
    """Class of (start/n, (start+length)/n); length 0 means a vertex."""

    n: int
    start: int
    length: int

    def __post_init__(self):
        if not (1 <= self.n and 0 <= self.start < self.n and 0 <= self.length <= self.n):
            raise ValueError(f"bad path ({self.n}, {self.start}, {self.length})")

    @classmethod
    def vertex(cls, n, a):
        return cls(n, a % n, 0)

    @classmethod
    def edge(cls, n, a, b):
        """e_[a,b]: from vertex a forward to vertex b (one full loop if a = b)."""
        a %= n
        b %= n
        length = (b - a) % n
        if length == 0:
            length = n
        return cls(n, a, length)

    @classmethod
    def from_pair(cls, n, x, y):
        """Class of the pair of positions (x, y), 0 <= y - x <= n."""
        if not 0 <= y - x <= n:
            raise ValueError(f"({x}, {y}) is not a path pair")
        return cls(n, x % n, y - x)

    @property
    def is_vertex(self):
        return self.length == 0

    @property
    def end(self):
        return (self.start + self.length) % self.n

    def serialize(self):
        if self.is_vertex:
            return f"v:{self.start}"
        return f"e:{self.start}:{self.end}"

    @classmethod
    def deserialize(cls, n, s):
        parts = s.split(":")
        if parts[0] == "v":
            return cls.vertex(n, int(parts[1]))
        return cls.edge(n, int(parts[1]), int(parts[2]))

    def __repr__(self):
        return self.serialize()


def path_set(n):
    """All n + n^2 paths: n vertices and an edge for each start and length."""
    paths = [Path.vertex(n, a) for a in range(n)]
    paths += [Path(n, a, l) for a in range(n) for l in range(1, n + 1)]
    return paths


def is_admissible(seq, target):
    """Decide whether seq is target-admissible; return (flag, witness).

    A witness is a chain x_0 <= ... <= x_k <= x_0 + 1 with (x_0, x_k) in the
    class of target and (x_{i-1}, x_i) in the class of seq[i].  Normalizing
    x_0 to target's start makes each subsequent lift forced, so the search is
    a single deterministic propagation.
    """
    n = target.n
    if any(p.n != n for p in seq):
        raise ValueError("paths live on different objects")
    x = target.start
    witness = [Fraction(x, n)]
    for p in seq:
        if p.start != x % n:
            return False, None
        x += p.length
        witness.append(Fraction(x, n))
    if x != target.start + target.length:
        return False, None
    return True, tuple(witness)


# ---------------------------------------------------------------------------
# Cyclic maps.


@dataclass(frozen=True)
class CyclicMap:
    """Nondecreasing equivariant map between subdivided circles.

    vals[a] is the image position of a for 0 <= a < source_n, over the target
    subdivision; canonical form has 0 <= vals[0] < target_n.
    """

    source_n: int
    target_n: int
    vals: tuple

    def __post_init__(self):
        vals = tuple(self.vals)
        if len(vals) != self.source_n:
            raise ValueError("vals length must equal source_n")
        shift = vals[0] // self.target_n
        if shift:
            vals = tuple(v - shift * self.target_n for v in vals)
        object.__setattr__(self, "vals", vals)
        for a in range(len(vals) - 1):
            if vals[a] > vals[a + 1]:
                raise ValueError("map is not nondecreasing")
        if vals[-1] > vals[0] + self.target_n:
            raise ValueError("map exceeds one period")

    @classmethod
    def identity(cls, n):
        return cls(n, n, tuple(range(n)))

    @classmethod
    def rotation(cls, n, k):
        """x -> x + k/n."""
        k %= n
        return cls(n, n, tuple(a + k for a in range(n)))

    @classmethod
    def contraction(cls, n, a):
        """The injection [n-1] -> [n] whose image skips vertex a+1 (mod n)."""
        if n < 2:
            raise SizeGuard("contraction needs n >= 2")
        drop = (a + 1) % n
        return cls(n - 1, n, tuple(i for i in range(n) if i != drop))

    def __call__(self, a):
        """Image position of source position a (any integer)."""
        q, r = divmod(a, self.source_n)
        return self.vals[r] + q * self.target_n

    def is_injective(self):
        return len(set(v % self.target_n for v in self.vals)) == self.source_n

    def after(self, other):
        """self composed after other (other first)."""
        if other.target_n != self.source_n:
            raise ValueError("maps are not composable")
        return CyclicMap(other.source_n, self.target_n, tuple(self(v) for v in other.vals))

    def dual(self):
        """The map b -> min{a : self(a) >= b}, canonicalized."""
        out = []
        for b in range(self.target_n):
            best = None
            for r in range(self.source_n):
                # least k with vals[r] + k*target_n >= b
                k = -((self.vals[r] - b) // self.target_n)
                cand = r + k * self.source_n
                if best is None or cand < best:
                    best = cand
            out.append(best)
        # out is the value list of the dual on positions 0..target_n-1, but it
        # may fail to start in canonical range; the constructor renormalizes.
        return CyclicMap(self.target_n, self.source_n, tuple(out))

    def serialize(self):
        return list(self.vals)

    def __repr__(self):
        return f"CyclicMap({self.source_n}->{self.target_n}, {list(self.vals)})"


def dualize(f):
    return f.dual()


def path_pushforward(f, p):
    """Image class of (x, y) -> (f(x), f(y))."""
    if p.n != f.source_n:
        raise ValueError("path does not live on the source of the map")
    x = f(p.start)
    y = f(p.start + p.length)
    return Path.from_pair(f.target_n, x, y)


HOM_GUARD = 6


def hom_set(n, m):
    """All canonical maps [n] -> [m]; brute-force enumeration, guarded."""
    if n > HOM_GUARD or m > HOM_GUARD:
        raise SizeGuard(f"hom_set enumeration is guarded at {HOM_GUARD}")
    out = []

    def extend(vals):
        if len(vals) == n:
            out.append(CyclicMap(n, m, tuple(vals)))
            return
        lo = vals[-1] if vals else 0
        hi = vals[0] + m if vals else m - 1
        for v in range(lo, hi + 1):
            extend(vals + [v])

    extend([])
    return out


def automorphisms(n):
    return [f for f in hom_set(n, n) if f.is_injective()]


# ---------------------------------------------------------------------------
# Cut sets.
#
# The level-q piece of the cyclic bar object of the n-cycle is a set of
# (q+1)*n elements, each a class of the product circle order:  element (j, a)
# with 0 <= j <= q and 0 <= a < n sits at linear position a*(q+1) + j, and one
# full turn adds n*(q+1) positions.  Elements are gaps of the circular order;
# the gap (0, a) at the block boundary is coloured by the edge a-1 -> a, the
# gaps (j, a) with j >= 1 inside a block by the vertex a.  This is the unique
# block-consistent colouring for which every structure-map fiber, read in
# increasing position order, is an admissible sequence.


@dataclass(frozen=True)
class CutSet:
    """Coloured cut set of the q-simplex level over the n-cycle.

    With the prime p set, the underlying cycle is the p-fold cover (index
    p*n) and the set carries a free action of order p over the plain set.
    """

    q: int
    n: int
    p: int | None = None

    def __post_init__(self):
        if self.q < 0:
            raise EmptyOrder("the indexing order must be nonempty")
        if self.n < 1:
            raise ValueError("n must be >= 1")

    @property
    def cycle_n(self):
        return self.n * (self.p or 1)

    @property
    def size(self):
        return (self.q + 1) * self.cycle_n

    def element(self, j, a):
        return (a % self.cycle_n) * (self.q + 1) + j

    def coords(self, e):
        return e % (self.q + 1), e // (self.q + 1)

    def colour(self, e):
        j, a = self.coords(e)
        if j == 0:
            return Path(self.cycle_n, (a - 1) % self.cycle_n, 1)
        return Path.vertex(self.cycle_n, a)

    def colours(self):
        return tuple(self.colour(e) for e in range(self.size))

    def action(self, e):
        """Generator of the free order-p action (p-fold cover only)."""
        if self.p is None:
            raise ValueError("no action on an unprimed cut set")
        j, a = self.coords(e)
        return self.element(j, a + self.n)

    def quotient_element(self, e):
        """Image of an element of the p-fold cover in the plain cut set."""
        if self.p is None:
            raise ValueError("quotient map needs the p-fold cover")
        j, a = self.coords(e)
        return CutSet(self.q, self.n).element(j, a % self.n)

    def position_map_delta(self, alpha, q_hi):
        """The order map (alpha x id) from this level to level q_hi."""
        vals = []
        for pos in range(self.size):
            j, a = self.coords(pos)
            vals.append(a * (q_hi + 1) + alpha[j])
        return CyclicMap(self.size, (q_hi + 1) * self.cycle_n, tuple(vals))

    def position_map_cyclic(self, f):
        """The order map (id x f) from this level over f's source circle."""
        if f.source_n != self.cycle_n:
            raise ValueError("cycle size mismatch")
        if not f.is_injective():
            raise SizeGuard("only injective circle maps induce order maps")
        vals = []
        for pos in range(self.size):
            j, a = self.coords(pos)
            vals.append(f(a) * (self.q + 1) + j)
        return CyclicMap(self.size, (self.q + 1) * f.target_n, tuple(vals))


def dual_fibers(g):
    """Underlying class map and fibers of the dual of an order map.

    For a nondecreasing equivariant g on positions, the dual sends a class b
    to min{a : g(a) >= b}.  The fiber over a is the class set of the interval
    (g(a-1), g(a)], listed in increasing position order; with the cut-set
    colouring that order is the one whose colour sequences are admissible.
    """
    ns, nt = g.source_n, g.target_n
    fibers = []
    for a in range(ns):
        fibers.append(tuple(p % nt for p in range(g(a - 1) + 1, g(a) + 1)))
    f = {}
    for a, fib in enumerate(fibers):
        for b in fib:
            if b in f:
                raise ValueError("dual fibers do not partition one period")
        for b in fib:
            f[b] = a
    if len(f) != nt:
        raise ValueError("dual fibers do not cover one period")
    underlying = tuple(f[b] for b in range(nt))
    return underlying, tuple(fibers)


def delta_morphisms(q_lo, q_hi):
    """All monotone maps [q_lo] -> [q_hi] as value tuples."""
    out = []

    def extend(vals):
        if len(vals) == q_lo + 1:
            out.append(tuple(vals))
            return
        lo = vals[-1] if vals else 0
        for v in range(lo, q_hi + 1):
            extend(vals + [v])

    extend([])
    return out


def delta_face(q, i):
    """delta_i : [q-1] -> [q], skipping i."""
    return tuple(j if j < i else j + 1 for j in range(q))


def delta_degeneracy(q, i):
    """sigma_i : [q+1] -> [q], repeating i."""
    return tuple(j if j <= i else j - 1 for j in range(q + 2))


def cut_lambda(q, n, p=None):
    """Cut set of the q-simplex level over the n-cycle (p-fold cover if set)."""
    return CutSet(q, n, p)
