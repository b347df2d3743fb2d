"""The coloured operad of cyclic bimodule shapes and its envelope category.

Objects are finite sets coloured by paths on a fixed cycle; morphisms carry a
linear order on every fiber, constrained so that the colour sequence of a
fiber is admissible for the colour of its target.  Operations of the operad
itself are recorded as sets of permutations.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations

from .cyclic import (
    CutSet,
    CyclicMap,
    Path,
    SizeGuard,
    dual_fibers,
    is_admissible,
    path_pushforward,
)


class NonComposable(Exception):
    pass


MUL_ARITY_GUARD = 8


def mul_set(seq, target):
    """Permutations sigma for which the sigma-reordering of seq is admissible.

    Empty when no order works.  Permutations are one-line tuples, listed in
    lexicographic order.
    """
    if len(seq) > MUL_ARITY_GUARD:
        raise SizeGuard(f"operation arity is guarded at {MUL_ARITY_GUARD}")
    out = []
    for sigma in permutations(range(len(seq))):
        ok, _ = is_admissible([seq[i] for i in sigma], target)
        if ok:
            out.append(sigma)
    return out


@dataclass(frozen=True)
class ColouredSet:
    n: int
    colours: tuple

    def __post_init__(self):
        for c in self.colours:
            if not isinstance(c, Path) or c.n != self.n:
                raise ValueError(f"colour {c} does not live on the {self.n}-cycle")

    @property
    def size(self):
        return len(self.colours)

    @classmethod
    def point(cls, colour):
        return cls(colour.n, (colour,))

    @classmethod
    def from_cut(cls, cut: CutSet):
        return cls(cut.cycle_n, cut.colours())


@dataclass(frozen=True)
class EnvelopeMorphism:
    """Map of coloured sets with ordered fibers.

    f[x] is the target index of source element x; fiber_orders[y] lists
    f^{-1}(y) in its chosen order, whose colour sequence must be admissible
    for the colour of y.
    """

    source: ColouredSet
    target: ColouredSet
    f: tuple
    fiber_orders: tuple

    def __post_init__(self):
        if len(self.f) != self.source.size or len(self.fiber_orders) != self.target.size:
            raise ValueError("morphism data does not match the sets")
        seen = set()
        for y, fiber in enumerate(self.fiber_orders):
            for x in fiber:
                if self.f[x] != y or x in seen:
                    raise ValueError("fiber orders do not partition the source")
                seen.add(x)
        if len(seen) != self.source.size:
            raise ValueError("fiber orders do not cover the source")
        for y, fiber in enumerate(self.fiber_orders):
            seq = [self.source.colours[x] for x in fiber]
            ok, _ = is_admissible(seq, self.target.colours[y])
            if not ok:
                raise ValueError(
                    f"fiber {fiber} over element {y} carries a non-admissible colour sequence"
                )

    @classmethod
    def identity(cls, X):
        return cls(X, X, tuple(range(X.size)), tuple((x,) for x in range(X.size)))


def envelope_compose(g, f):
    """g after f; composite fibers ordered lexicographically (outer by g)."""
    if f.target != g.source:
        raise NonComposable("target of the first morphism != source of the second")
    comp = tuple(g.f[f.f[x]] for x in range(f.source.size))
    fibers = []
    for z in range(g.target.size):
        fiber = []
        for y in g.fiber_orders[z]:
            fiber.extend(f.fiber_orders[y])
        fibers.append(tuple(fiber))
    return EnvelopeMorphism(f.source, g.target, comp, tuple(fibers))


def pushforward(f: CyclicMap, X: ColouredSet):
    """Recolour along a cycle map: same elements, colours pushed forward."""
    if X.n != f.source_n:
        raise ValueError("coloured set does not live on the source of the map")
    return ColouredSet(f.target_n, tuple(path_pushforward(f, c) for c in X.colours))


def pushforward_morphism(f: CyclicMap, e: EnvelopeMorphism):
    return EnvelopeMorphism(
        pushforward(f, e.source), pushforward(f, e.target), e.f, e.fiber_orders
    )


# ---------------------------------------------------------------------------
# Envelope structure maps of cut sets.


def cut_envelope_delta(cut: CutSet, alpha, q_lo):
    """Envelope morphism from the given cut level to level q_lo along alpha.

    alpha is a monotone map [q_lo] -> [cut.q] given as a value tuple; the
    result merges the elements of the finer level into the coarser one.
    """
    if len(alpha) != q_lo + 1 or any(alpha[i] > alpha[i + 1] for i in range(q_lo)):
        raise ValueError("alpha must be a monotone value tuple")
    lo = CutSet(q_lo, cut.n, cut.p)
    g = lo.position_map_delta(alpha, cut.q)
    underlying, fibers = dual_fibers(g)
    return EnvelopeMorphism(
        ColouredSet.from_cut(cut), ColouredSet.from_cut(lo), underlying, fibers
    )


def cut_face(cut: CutSet, i):
    """The i-th face, 0 <= i <= q."""
    from .cyclic import delta_face

    return cut_envelope_delta(cut, delta_face(cut.q, i), cut.q - 1)


def cut_degeneracy(cut: CutSet, i):
    """The i-th degeneracy, 0 <= i <= q."""
    from .cyclic import delta_degeneracy

    return cut_envelope_delta(cut, delta_degeneracy(cut.q, i), cut.q + 1)


def cut_envelope_cyclic(cut: CutSet, f: CyclicMap):
    """Comparison morphism along an injective cycle map f into cut's cycle.

    The target cut set lives over f's source cycle but is recoloured through
    f, so the admissibility constraint is checked against the pushed colours.
    Returns (morphism, target_cut); the morphism's target carries the pushed
    colours.
    """
    if f.target_n != cut.cycle_n:
        raise ValueError("map does not land on the cut set's cycle")
    lo = CutSet(cut.q, f.source_n)
    g = lo.position_map_cyclic(f)
    underlying, fibers = dual_fibers(g)
    pushed = ColouredSet(
        cut.cycle_n, tuple(path_pushforward(f, c) for c in lo.colours())
    )
    morphism = EnvelopeMorphism(ColouredSet.from_cut(cut), pushed, underlying, fibers)
    return morphism, lo


def cut_quotient_check(cover: CutSet):
    """Verify the covering square: free action, order p, colour-compatible.

    Returns a report dict; raises nothing.
    """
    p = cover.p
    plain = CutSet(cover.q, cover.n)
    report = {"free": True, "order_p": True, "square_commutes": True}
    for e in range(cover.size):
        orbit = [e]
        x = cover.action(e)
        while x != e:
            orbit.append(x)
            x = cover.action(x)
        if len(orbit) != p:
            report["order_p"] = False
        if any(y == e for y in orbit[1:]):
            report["free"] = False
        if len(set(cover.quotient_element(y) for y in orbit)) != 1:
            report["square_commutes"] = False
        q_elt = cover.quotient_element(e)
        c_cover = cover.colour(e)
        c_plain = plain.colour(q_elt)
        same_shape = (
            c_cover.is_vertex == c_plain.is_vertex
            and c_cover.start % cover.n == c_plain.start
        )
        if not same_shape:
            report["square_commutes"] = False
    return report


# ---------------------------------------------------------------------------
# Labelled cycle specifications (opaque handles; resolution happens in the
# homology layer).


def tensor_handle(left, middle, right):
    return ("tensor", left, middle, right)


@dataclass(frozen=True)
class LabelledCycleSpec:
    """An n-cycle with vertex handles (algebras) and edge handles (bimodules).

    Edge a runs from vertex a to vertex a+1 (indices mod n).  Handles are
    opaque: strings or nested tensor triples produced by contraction.
    """

    n: int
    vertices: tuple
    edges: tuple

    def __post_init__(self):
        if self.n < 1 or len(self.vertices) != self.n or len(self.edges) != self.n:
            raise ValueError("label counts must equal the cycle length")

    def rotate(self, k):
        """Shift all labels by k: the new label at slot a is the old one at a+k."""
        n = self.n
        return LabelledCycleSpec(
            n,
            tuple(self.vertices[(a + k) % n] for a in range(n)),
            tuple(self.edges[(a + k) % n] for a in range(n)),
        )

    def contract(self, a):
        """Fuse edges a and a+1 across vertex a+1 (mod n) into one handle."""
        if self.n < 2:
            raise SizeGuard("cannot contract a 1-cycle")
        n = self.n
        drop = (a + 1) % n
        order = [i for i in range(n) if i != drop]
        vertices = tuple(self.vertices[i % n] for i in order)
        edges = []
        for j in range(n - 1):
            start = order[j]
            end = order[j + 1] if j + 1 < n - 1 else order[0] + n
            if end - start == 1:
                edges.append(self.edges[start % n])
            else:
                edges.append(
                    tensor_handle(
                        self.edges[start % n],
                        self.vertices[(start + 1) % n],
                        self.edges[(start + 1) % n],
                    )
                )
        return LabelledCycleSpec(n - 1, vertices, tuple(edges))

    def to_json(self):
        def enc(h):
            if isinstance(h, tuple):
                return [enc(x) for x in h]
            return h

        return {"n": self.n, "vertices": [enc(v) for v in self.vertices], "edges": [enc(e) for e in self.edges]}

    @classmethod
    def from_json(cls, data):
        def dec(h):
            if isinstance(h, list):
                return tuple(dec(x) for x in h)
            return h

        return cls(
            data["n"],
            tuple(dec(v) for v in data["vertices"]),
            tuple(dec(e) for e in data["edges"]),
        )


def rotate_spec(spec, k):
    return spec.rotate(k)


def contract_spec(spec, a):
    return spec.contract(a)
