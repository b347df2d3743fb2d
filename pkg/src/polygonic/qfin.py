"""Quasifinite Z-sets: orbit multisets, equivariant maps, spans, pullbacks.

A Z-set with finite orbits is a multiset of orbit sizes; quasifiniteness
means each size occurs finitely often, so any window-bounded computation
touches finitely many orbits.  Conceptually infinite families are carried as
declared tails (lists of size generators) that certify quasifiniteness but
never materialize; all computations here are on the finite part.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd, lcm


class TargetMismatch(Exception):
    pass


class NoPrimeDivisorInWindow(Exception):
    pass


class NotQuasifinite(Exception):
    pass


@dataclass(frozen=True)
class QFinSet:
    """orbits[i] is the size of the i-th orbit; tail declares conceptual
    infinite families (arithmetic generators, all beyond any active window)."""

    orbits: tuple
    tail: tuple | None = None

    def __post_init__(self):
        if any(m < 1 for m in self.orbits):
            raise ValueError("orbit sizes must be positive")

    @classmethod
    def point(cls):
        return cls((1,))

    @classmethod
    def orbit(cls, m):
        return cls((m,))

    @property
    def size(self):
        return len(self.orbits)

    def element_count(self):
        return sum(self.orbits)

    def canonical(self):
        return QFinSet(tuple(sorted(self.orbits)), self.tail)

    def isomorphic(self, other):
        return sorted(self.orbits) == sorted(other.orbits)

    def check_tail_window(self, window_bound):
        if self.tail is not None and any(g <= window_bound for g in self.tail):
            raise NotQuasifinite(
                f"declared infinite family reaches into the window (bound {window_bound})"
            )

    def to_json(self):
        return {"orbits": list(self.orbits), "tail": list(self.tail) if self.tail else None}

    @classmethod
    def from_json(cls, data):
        tail = data.get("tail")
        return cls(tuple(data["orbits"]), tuple(tail) if tail else None)


@dataclass(frozen=True)
class QFinMap:
    """Equivariant map: orbit i of the source lands on orbit assign[i][0] of
    the target, composed with the shift assign[i][1] (an element of the
    target orbit).  Needs the target orbit size to divide the source's."""

    source: QFinSet
    target: QFinSet
    assign: tuple

    def __post_init__(self):
        if len(self.assign) != self.source.size:
            raise ValueError("assignment length != number of source orbits")
        assign = []
        for i, (j, s) in enumerate(self.assign):
            if not 0 <= j < self.target.size:
                raise ValueError("target orbit index out of range")
            m, n = self.source.orbits[i], self.target.orbits[j]
            if m % n != 0:
                raise ValueError(f"orbit size {n} does not divide {m}")
            assign.append((j, s % n))
        object.__setattr__(self, "assign", tuple(assign))

    @classmethod
    def identity(cls, S):
        return cls(S, S, tuple((i, 0) for i in range(S.size)))

    @classmethod
    def terminal(cls, S):
        return cls(S, QFinSet.point(), tuple((0, 0) for _ in range(S.size)))

    def after(self, other):
        """self composed after other."""
        if other.target != self.target and other.target.orbits != self.source.orbits:
            pass
        if other.target.orbits != self.source.orbits:
            raise TargetMismatch("maps are not composable")
        assign = []
        for i, (j, s) in enumerate(other.assign):
            k, t = self.assign[j]
            assign.append((k, (s + t) % self.target.orbits[k]))
        return QFinMap(other.source, self.target, tuple(assign))

    def apply(self, orbit_index, element):
        """Image of the element (orbit index, residue) under the map."""
        j, s = self.assign[orbit_index]
        n = self.target.orbits[j]
        return j, (element + s) % n

    def is_proper(self):
        """True iff the isotropy strictly grows on every orbit."""
        return all(
            self.target.orbits[j] < self.source.orbits[i]
            for i, (j, _) in enumerate(self.assign)
        )

    def to_json(self):
        return {"assign": [[i, j, s] for i, (j, s) in enumerate(self.assign)]}


def fixed_points(S, k):
    """Sub-multiset of orbits whose points are fixed by the index-k subgroup."""
    if k < 1:
        raise ValueError("k must be >= 1")
    return QFinSet(tuple(m for m in S.orbits if k % m == 0))


def is_proper(f):
    return f.is_proper()


def scale(S, n):
    """Multiply every orbit size by n (restriction along multiplication by n)."""
    if n < 1:
        raise ValueError("n must be >= 1")
    return QFinSet(tuple(n * m for m in S.orbits), S.tail)


def pullback(f, g):
    """Pullback of f : S -> U against g : T -> U.

    Over each orbit Z/u of U, a pair of preimage orbits of sizes a and b
    contributes gcd(a, b)/u orbits of size lcm(a, b).  Returns (W, p, q) with
    the two projections.
    """
    if f.target.orbits != g.target.orbits:
        raise TargetMismatch("pullback needs a common target")
    U = f.target
    orbits = []
    p_assign = []
    q_assign = []
    for u_idx in range(U.size):
        u = U.orbits[u_idx]
        for i in range(f.source.size):
            if f.assign[i][0] != u_idx:
                continue
            a = f.source.orbits[i]
            sf = f.assign[i][1]
            for j in range(g.source.size):
                if g.assign[j][0] != u_idx:
                    continue
                b = g.source.orbits[j]
                sg = g.assign[j][1]
                size = lcm(a, b)
                # Solutions (x, y) of x + sf = y + sg mod u with x = 0:
                # y = (sf - sg) + u*r; orbit reps are distinct mod gcd(a, b).
                y0 = (sf - sg) % u
                for r in range(gcd(a, b) // u):
                    y = y0 + u * r
                    orbits.append(size)
                    p_assign.append((i, 0))
                    q_assign.append((j, y % b))
    W = QFinSet(tuple(orbits))
    p = QFinMap(W, f.source, tuple(p_assign))
    q = QFinMap(W, g.source, tuple(q_assign))
    return W, p, q


def pullback_elementwise(f, g):
    """Brute-force oracle for pullback: enumerate element pairs and split
    into diagonal orbits.  Returns the orbit multiset only."""
    if f.target.orbits != g.target.orbits:
        raise TargetMismatch("pullback needs a common target")
    pairs = set()
    for i, a in enumerate(f.source.orbits):
        for x in range(a):
            for j, b in enumerate(g.source.orbits):
                for y in range(b):
                    if f.apply(i, x) == g.apply(j, y):
                        pairs.add((i, x, j, y))
    orbits = []
    seen = set()
    for start in sorted(pairs):
        if start in seen:
            continue
        i, x, j, y = start
        a, b = f.source.orbits[i], g.source.orbits[j]
        length = 0
        cx, cy = x, y
        while True:
            seen.add((i, cx, j, cy))
            length += 1
            cx, cy = (cx + 1) % a, (cy + 1) % b
            if (cx, cy) == (x, y):
                break
        orbits.append(length)
    return tuple(sorted(orbits))


@dataclass(frozen=True)
class SpanMorphism:
    """A span source <- apex -> target of equivariant maps."""

    left: QFinMap
    right: QFinMap

    def __post_init__(self):
        if self.left.source.orbits != self.right.source.orbits:
            raise ValueError("the two legs must share the apex")

    @property
    def apex(self):
        return self.left.source

    @property
    def source(self):
        return self.left.target

    @property
    def target(self):
        return self.right.target

    @classmethod
    def identity(cls, S):
        return cls(QFinMap.identity(S), QFinMap.identity(S))

    @classmethod
    def single(cls, a, l, b, left_shift=0, right_shift=0):
        """Span Z/a <- Z/l -> Z/b between single orbits."""
        apex = QFinSet.orbit(l)
        left = QFinMap(apex, QFinSet.orbit(a), ((0, left_shift),))
        right = QFinMap(apex, QFinSet.orbit(b), ((0, right_shift),))
        return cls(left, right)

    def orbit_data(self):
        """(apex size, left orbit, left shift, right orbit, right shift) rows."""
        out = []
        for k in range(self.apex.size):
            j1, s1 = self.left.assign[k]
            j2, s2 = self.right.assign[k]
            out.append((self.apex.orbits[k], j1, s1, j2, s2))
        return out

    def canonical(self):
        """Normalize apex orbits up to automorphism, sort, for comparison."""
        rows = []
        for (l, j1, s1, j2, s2) in self.orbit_data():
            a = self.source.orbits[j1]
            b = self.target.orbits[j2]
            best = min(((s1 + c) % a, (s2 + c) % b) for c in range(l))
            rows.append((l, j1, best[0], j2, best[1]))
        return tuple(sorted(rows)), self.source.canonical().orbits, self.target.canonical().orbits


def compose_spans(s2, s1):
    """Composite span s2 after s1, apex formed by pullback."""
    if s1.target.orbits != s2.source.orbits:
        raise TargetMismatch("middle objects of the spans differ")
    W, p, q = pullback(s1.right, s2.left)
    return SpanMorphism(s1.left.after(p), s2.right.after(q))


def weakly_terminal_map(S, prime_window):
    """Map each orbit Z/m (m >= 2) to Z/p for its least prime divisor.

    The target is the windowed coproduct of one orbit per prime; an orbit
    whose prime factors all miss the window is an error.
    """
    primes = sorted(set(prime_window))
    target = QFinSet(tuple(primes))
    assign = []
    for m in S.orbits:
        choice = None
        for p in primes:
            if m % p == 0:
                choice = p
                break
        if choice is None:
            raise NoPrimeDivisorInWindow(f"orbit size {m} has no prime divisor in {primes}")
        assign.append((primes.index(choice), 0))
    return QFinMap(S, target, tuple(assign))
