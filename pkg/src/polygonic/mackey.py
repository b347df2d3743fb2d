"""Windowed Mackey modules on quasifinite Z-sets at the abelian-group level.

A module assigns a finitely presented abelian group A(n) to each level n of a
divisor-closed window, with restriction maps F (up the divisibility order),
transfer maps V (down), and an order-n automorphism at level n.  All
statements are window-exact: levels beyond the window are treated as zero.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from math import gcd, lcm

from .qfin import QFinSet, SpanMorphism, compose_spans
from .rings import (
    ZZ,
    IntMatrix,
    in_column_span,
    invariant_factors,
    lattices_equal,
    presented_group_quotient,
    smith_normal_form,
    solve_int,
)
from .truncation import TruncationSet


class LevelOutsideWindow(Exception):
    pass


class NotQuasifinite(Exception):
    pass


# ---------------------------------------------------------------------------
# Finitely presented abelian groups and their homomorphisms.


@dataclass(frozen=True)
class FPGroup:
    """Z^ngens modulo the row span of the presentation matrix."""

    ngens: int
    relations: IntMatrix

    def __post_init__(self):
        if self.relations.cols != self.ngens:
            raise ValueError("presentation width must equal ngens")

    @classmethod
    def free(cls, ngens):
        return cls(ngens, IntMatrix.zeros(ZZ, 0, ngens))

    @classmethod
    def zero(cls):
        return cls(0, IntMatrix.zeros(ZZ, 0, 0))

    @classmethod
    def cyclic(cls, m):
        return cls(1, IntMatrix(ZZ, 1, 1, {(0, 0): m}))

    def relation_columns(self):
        return [self.relations.row(i) for i in range(self.relations.rows)]

    def invariants(self):
        """(torsion factors > 1, free rank)."""
        return invariant_factors(self.relations)

    def is_zero_group(self):
        torsion, free = self.invariants()
        return not torsion and free == 0

    def elements_equal(self, x, y):
        diff = [a - b for a, b in zip(x, y)]
        return in_column_span(self.relation_columns(), diff)

    def is_zero_element(self, x):
        return in_column_span(self.relation_columns(), list(x))

    def quotient_by(self, subgroup_columns):
        rows = [list(c) for c in subgroup_columns]
        return FPGroup(self.ngens, presented_group_quotient(self.relations, rows))

    def isomorphic(self, other):
        return self.invariants() == other.invariants()


@dataclass(frozen=True)
class Hom:
    """Homomorphism of presented groups, a matrix on generators."""

    dom: FPGroup
    cod: FPGroup
    matrix: IntMatrix

    def __post_init__(self):
        if self.matrix.rows != self.cod.ngens or self.matrix.cols != self.dom.ngens:
            raise ValueError("hom matrix shape mismatch")

    @classmethod
    def identity(cls, G):
        return cls(G, G, IntMatrix.identity(ZZ, G.ngens))

    @classmethod
    def zero(cls, dom, cod):
        return cls(dom, cod, IntMatrix.zeros(ZZ, cod.ngens, dom.ngens))

    def is_well_defined(self):
        targets = self.cod.relation_columns()
        for rel in self.dom.relation_columns():
            if not in_column_span(targets, self.matrix.mul_vec(rel)):
                return False
        return True

    def apply(self, x):
        return self.matrix.mul_vec(list(x))

    def after(self, other):
        if other.cod.ngens != self.dom.ngens:
            raise ValueError("homs are not composable")
        return Hom(other.dom, self.cod, self.matrix.mul(other.matrix))

    def add(self, other):
        return Hom(self.dom, self.cod, self.matrix.add(other.matrix))

    def power(self, k):
        result = Hom.identity(self.dom)
        for _ in range(k):
            result = self.after(result)
        return result

    def equal(self, other):
        if self.matrix == other.matrix:
            return True
        targets = self.cod.relation_columns()
        diff = self.matrix.sub(other.matrix)
        for j in range(diff.cols):
            if not in_column_span(targets, diff.col(j)):
                return False
        return True

    def image_columns(self):
        return [self.matrix.col(j) for j in range(self.matrix.cols)]


@dataclass(frozen=True)
class GroupWithAction:
    group: FPGroup
    action: IntMatrix
    order: int

    def action_hom(self):
        return Hom(self.group, self.group, self.action)

    def validate(self):
        h = self.action_hom()
        if not h.is_well_defined():
            return False
        return h.power(self.order).equal(Hom.identity(self.group))


def coinvariants(A: GroupWithAction):
    """Quotient by all differences x - (action)x."""
    diff = IntMatrix.identity(ZZ, A.group.ngens).sub(A.action)
    cols = [diff.col(j) for j in range(diff.cols)]
    return A.group.quotient_by(cols)


# ---------------------------------------------------------------------------
# Mackey windows.


@dataclass(frozen=True)
class MackeyWindow:
    """Level groups with restriction, transfer, and level automorphisms.

    res[(n, m)] : A(n) -> A(m) and tr[(n, m)] : A(m) -> A(n) for each divisor
    pair n | m in the window; weyl[n] generates the order-n action on A(n).
    Families of transfers declared summable beyond the window are recorded in
    sum_policy as a tail of size generators.
    """

    window: TruncationSet
    groups: dict
    weyl: dict
    res: dict
    tr: dict
    sum_policy: tuple | None = None

    def __post_init__(self):
        for n in self.window:
            if n not in self.groups or n not in self.weyl:
                raise ValueError(f"level {n} lacks group or action data")

    def group(self, n):
        if n not in self.window:
            raise LevelOutsideWindow(f"level {n} is outside the window")
        return self.groups[n]

    def weyl_hom(self, n, k=1):
        g = self.group(n)
        h = Hom(g, g, self.weyl[n])
        return h.power(k % n)

    def res_hom(self, n, m):
        """F from level n up to level m (n | m)."""
        if m % n != 0:
            raise ValueError(f"{n} does not divide {m}")
        if n == m:
            return Hom.identity(self.group(n))
        return Hom(self.group(n), self.group(m), self.res[(n, m)])

    def tr_hom(self, m, n):
        """V from level m down to level n (n | m)."""
        if m % n != 0:
            raise ValueError(f"{n} does not divide {m}")
        if n == m:
            return Hom.identity(self.group(n))
        return Hom(self.group(m), self.group(n), self.tr[(n, m)])

    def levels(self):
        return tuple(self.window)

    def proper_multiples(self, n):
        return tuple(m for m in self.window if m % n == 0 and m != n)

    def to_json(self):
        return {
            "window": self.window.to_json(),
            "levels": {
                str(n): {
                    "relations": self.groups[n].relations.to_lists(),
                    "ngens": self.groups[n].ngens,
                    "weyl": self.weyl[n].to_lists(),
                }
                for n in self.window
            },
            "res": {f"{n}|{m}": mat.to_lists() for (n, m), mat in self.res.items()},
            "tr": {f"{n}|{m}": mat.to_lists() for (n, m), mat in self.tr.items()},
        }

    @classmethod
    def from_json(cls, data):
        window = TruncationSet(tuple(data["window"]))
        groups = {}
        weyl = {}
        for key, lev in data["levels"].items():
            n = int(key)
            ngens = lev["ngens"]
            rel_rows = lev["relations"]
            rel = (
                IntMatrix.from_rows(ZZ, rel_rows)
                if rel_rows
                else IntMatrix.zeros(ZZ, 0, ngens)
            )
            groups[n] = FPGroup(ngens, rel)
            weyl[n] = IntMatrix.from_rows(ZZ, lev["weyl"]) if ngens else IntMatrix.zeros(ZZ, 0, 0)
        res = {}
        tr = {}
        for key, rows in data["res"].items():
            n, m = (int(x) for x in key.split("|"))
            res[(n, m)] = _matrix_from_lists(rows, groups[m].ngens, groups[n].ngens)
        for key, rows in data["tr"].items():
            n, m = (int(x) for x in key.split("|"))
            tr[(n, m)] = _matrix_from_lists(rows, groups[n].ngens, groups[m].ngens)
        return cls(window, groups, weyl, res, tr)


def _matrix_from_lists(rows, nrows, ncols):
    if not rows:
        return IntMatrix.zeros(ZZ, nrows, ncols)
    return IntMatrix.from_rows(ZZ, rows)


def evaluate_span(M: MackeyWindow, span: SpanMorphism):
    """The homomorphism A(target level) -> A(source level) of a span.

    Per apex orbit Z/l with leg shifts (s, t): twist by the level-b action t
    times, restrict to level l, transfer to level a, and untwist by the
    level-a action s times; orbits are summed.  Spans compose contravariantly
    into composition of these maps.
    """
    if span.source.size != 1 or span.target.size != 1:
        raise ValueError("evaluate_span needs single-orbit ends")
    a = span.source.orbits[0]
    b = span.target.orbits[0]
    for level in (a, b) + span.apex.orbits:
        if level not in M.window:
            raise LevelOutsideWindow(f"orbit size {level} is outside the window")
    total = Hom.zero(M.group(b), M.group(a))
    for (l, _, s, _, t) in span.orbit_data():
        term = M.weyl_hom(b, t)
        term = M.res_hom(b, l).after(term)
        term = M.tr_hom(l, a).after(term)
        term = M.weyl_hom(a, (-s) % a).after(term)
        total = total.add(term)
    return total


# ---------------------------------------------------------------------------
# Axioms.


@dataclass
class AxiomReport:
    ok: bool = True
    checked: int = 0
    failures: list = field(default_factory=list)

    def record(self, ok, message):
        self.checked += 1
        if not ok:
            self.ok = False
            self.failures.append(message)


def _random_span(rng, window, src=None, tgt=None):
    levels = list(window)
    a = src if src is not None else rng.choice(levels)
    b = tgt if tgt is not None else rng.choice(levels)
    multiples = [l for l in levels if l % lcm(a, b) == 0]
    if not multiples:
        return None
    l = rng.choice(multiples)
    return SpanMorphism.single(a, l, b, rng.randrange(a), rng.randrange(b))


def check_mackey_axioms(M: MackeyWindow, trials=100, seed=0):
    """Functoriality, action orders, equivariance, and span composition.

    Randomized spans exercise the double-coset identities; the report carries
    the first located failures.
    """
    rng = random.Random(seed)
    report = AxiomReport()
    levels = list(M.window)

    for n in levels:
        w = M.weyl_hom(n)
        report.record(w.is_well_defined(), f"weyl at level {n} not well defined")
        report.record(
            w.power(n).equal(Hom.identity(M.group(n))),
            f"weyl at level {n} does not have order dividing {n}",
        )

    for n in levels:
        for m in M.proper_multiples(n):
            F = M.res_hom(n, m)
            V = M.tr_hom(m, n)
            report.record(F.is_well_defined(), f"res {n}->{m} not well defined")
            report.record(V.is_well_defined(), f"tr {m}->{n} not well defined")
            lhs = M.weyl_hom(m).after(F)
            rhs = F.after(M.weyl_hom(n))
            report.record(lhs.equal(rhs), f"res {n}->{m} not equivariant")
            lhs = V.after(M.weyl_hom(m))
            rhs = M.weyl_hom(n).after(V)
            report.record(lhs.equal(rhs), f"tr {m}->{n} not equivariant")
            for k in M.proper_multiples(m):
                lhs = M.res_hom(m, k).after(M.res_hom(n, m))
                report.record(
                    lhs.equal(M.res_hom(n, k)), f"res functoriality fails {n}|{m}|{k}"
                )
                lhs = M.tr_hom(m, n).after(M.tr_hom(k, m))
                report.record(
                    lhs.equal(M.tr_hom(k, n)), f"tr functoriality fails {n}|{m}|{k}"
                )

    for _ in range(trials):
        mid = rng.choice(levels)
        s1 = _random_span(rng, M.window, tgt=mid)
        s2 = _random_span(rng, M.window, src=mid)
        if s1 is None or s2 is None:
            continue
        try:
            composite = compose_spans(s2, s1)
            lhs = evaluate_span(M, composite)
        except LevelOutsideWindow:
            continue
        rhs = evaluate_span(M, s1).after(evaluate_span(M, s2))
        report.record(
            lhs.equal(rhs),
            f"span composition fails on {s1.orbit_data()} ; {s2.orbit_data()}",
        )
    return report


# ---------------------------------------------------------------------------
# Transfers, geometric fixed points, conservativity.


def infinite_transfer_sum(M: MackeyWindow, family, tail=None):
    """Sum of transfers of the family (level, element) into A(1).

    The family is the window-visible part of a conceptually infinite one;
    a declared tail whose sizes reach into the window is rejected.
    """
    bound = M.window.max()
    if tail is not None:
        QFinSet(tuple(), tuple(tail)).check_tail_window(bound)
    total = [0] * M.group(1).ngens
    for n, x in family:
        if n not in M.window:
            raise LevelOutsideWindow(f"family level {n} is outside the window")
        if n < 2:
            raise ValueError("transfer family levels must be >= 2")
        v = M.tr_hom(n, 1).apply(x)
        total = [p + q for p, q in zip(total, v)]
    return total


def proper_transfer_columns(M: MackeyWindow, n):
    cols = []
    for m in M.proper_multiples(n):
        cols.extend(M.tr_hom(m, n).image_columns())
    return cols


def geometric_fixed_points(M: MackeyWindow, n):
    """A(n) modulo the images of all transfers from proper multiples.

    The level-n action descends to the quotient; the result carries it.
    """
    if n not in M.window:
        raise LevelOutsideWindow(f"level {n} is outside the window")
    quotient = M.group(n).quotient_by(proper_transfer_columns(M, n))
    return GroupWithAction(quotient, M.weyl[n], n)


def scale_restrict(M: MackeyWindow, n):
    """Reindex: level k of the result is level n*k of M; window divides."""
    window = M.window.divide(n)
    groups = {k: M.groups[n * k] for k in window}
    weyl = {k: M.weyl[n * k] for k in window}
    res = {}
    tr = {}
    for k in window:
        for l in window:
            if l % k == 0 and l != k:
                res[(k, l)] = M.res[(n * k, n * l)]
                tr[(k, l)] = M.tr[(n * k, n * l)]
    return MackeyWindow(window, groups, weyl, res, tr, M.sum_policy)


def check_conservativity(M: MackeyWindow, max_chain=8):
    """Report geometric-fixed-point vanishing and transfer generation.

    When every level has vanishing fixed points, every level group is
    generated by proper transfers; witness chains follow each generator
    through transfer preimages until the groups run out (which, within a
    finite window, they must: levels with no proper multiples have A = Phi).
    """
    gfp = {}
    for n in M.window:
        g = geometric_fixed_points(M, n)
        gfp[n] = g.group.invariants()
    nonzero = [n for n in M.window if gfp[n] != ([], 0)]
    report = {
        "gfp_invariants": gfp,
        "all_gfp_zero": not nonzero,
        "nonzero_levels": nonzero,
    }
    if nonzero:
        report["applicable"] = False
        return report
    report["applicable"] = True
    chains = {}
    generated = True
    for n in M.window:
        group = M.group(n)
        level_witnesses = []
        for gen_idx in range(group.ngens):
            target = [1 if i == gen_idx else 0 for i in range(group.ngens)]
            witness = _transfer_witness(M, n, target, max_chain)
            if witness is None:
                generated = False
            level_witnesses.append(witness)
        chains[n] = level_witnesses
    report["transfer_generated"] = generated
    report["witness_chains"] = chains
    return report


def _transfer_witness(M, n, target, depth):
    """Express target in A(n) as a sum of proper transfers, recursively."""
    if M.group(n).is_zero_element(target):
        return {"level": n, "zero": True}
    if depth == 0:
        return None
    multiples = M.proper_multiples(n)
    cols = []
    tags = []
    for m in multiples:
        V = M.tr_hom(m, n)
        for j in range(V.matrix.cols):
            cols.append(V.matrix.col(j))
            tags.append((m, j))
    cols.extend(M.group(n).relation_columns())
    if not cols:
        return None
    A = IntMatrix(ZZ, M.group(n).ngens, len(cols), {
        (i, j): cols[j][i] for j in range(len(cols)) for i in range(len(cols[j])) if cols[j][i]
    })
    sol = solve_int(A, target)
    if sol is None:
        return None
    used = []
    for idx, (m, j) in enumerate(tags):
        if sol[idx]:
            source = [sol[idx] if i == j else 0 for i in range(M.group(m).ngens)]
            used.append({"from_level": m, "element": source,
                         "chain": _transfer_witness(M, m, source, depth - 1)})
    return {"level": n, "zero": False, "transfers": used}


def proper_transfer_core(M: MackeyWindow):
    """Largest part of the module supported on chains of proper transfers.

    Iterates L <- (relations + proper-transfer images of L) from the full
    module downwards until stable; within a finite window the chains fall
    off the top of the window, so the core collapses to zero.  Returns the
    iteration trace and the resulting window (zero at every level).
    """
    lattices = {}
    for n in M.window:
        full = [[1 if i == j else 0 for i in range(M.group(n).ngens)] for j in range(M.group(n).ngens)]
        lattices[n] = [list(c) for c in full] + M.group(n).relation_columns()
    trace = []
    while True:
        new = {}
        for n in M.window:
            cols = list(M.group(n).relation_columns())
            for m in M.proper_multiples(n):
                V = M.tr_hom(m, n)
                for c in lattices[m]:
                    cols.append(V.matrix.mul_vec(c))
            new[n] = cols
        trace.append({n: _lattice_rank(M, n, new[n]) for n in M.window})
        if all(lattices_equal(new[n], lattices[n]) for n in M.window):
            break
        lattices = new
    core_groups = {}
    for n in M.window:
        # Quotient of the core lattice by the relations: zero iff the core
        # lattice sits inside the relation lattice.
        inside = all(
            in_column_span(M.group(n).relation_columns() or [[0] * M.group(n).ngens], c)
            if M.group(n).ngens
            else True
            for c in lattices[n]
        )
        core_groups[n] = FPGroup.zero() if inside else None
    if any(g is None for g in core_groups.values()):
        raise AssertionError("proper-transfer core did not collapse; window is not finite-exact")
    zero = FPGroup.zero()
    zmat = IntMatrix.zeros(ZZ, 0, 0)
    window = M.window
    return MackeyWindow(
        window,
        {n: zero for n in window},
        {n: zmat for n in window},
        {(n, m): zmat for n in window for m in window if m % n == 0 and m != n},
        {(n, m): zmat for n in window for m in window if m % n == 0 and m != n},
    ), trace


def _lattice_rank(M, n, cols):
    """Rank of the core at level n: generators of L modulo the relations."""
    ngens = M.group(n).ngens
    if ngens == 0:
        return 0
    rel = M.group(n).relation_columns()

    def matrix_rank(columns):
        if not columns:
            return 0
        A = IntMatrix(ZZ, ngens, len(columns), {
            (i, j): columns[j][i]
            for j in range(len(columns))
            for i in range(ngens)
            if columns[j][i]
        })
        D, _, _ = smith_normal_form(A)
        return sum(1 for i in range(min(A.rows, A.cols)) if D.get(i, i) != 0)

    return matrix_rank(list(cols) + rel) - matrix_rank(rel)


# ---------------------------------------------------------------------------
# The Burnside-representable windows.


def burnside_basis(n, m, window):
    """Canonical span classes Z/n <- Z/l -> Z/m: keys (l, t), t < gcd(n, m)."""
    out = []
    for l in window:
        if l % lcm(n, m) == 0:
            for t in range(gcd(n, m)):
                out.append((l, t))
    return out


def _span_class_vector(level, base, window, basis_index, orbit_rows):
    """Reduce the apex orbits of a composed span to basis coordinates."""
    vec = [0] * len(basis_index)
    for (l, _, s, _, t) in orbit_rows:
        if l not in window:
            continue
        t_norm = (t - s) % base if base > 0 else 0
        key = (l, t_norm % gcd(level, base))
        vec[basis_index[key]] += 1
    return vec


def burnside_representable(m, window):
    """The window of span classes into Z/m, free at every level.

    Restriction, transfer, and the level actions act by span composition
    followed by apex canonicalization.
    """
    if m not in window:
        raise LevelOutsideWindow(f"{m} is not in the window")
    bases = {n: burnside_basis(n, m, window) for n in window}
    index = {n: {key: i for i, key in enumerate(bases[n])} for n in window}
    groups = {n: FPGroup.free(len(bases[n])) for n in window}

    def basis_span(n, key):
        l, t = key
        return SpanMorphism.single(n, l, m, 0, t)

    weyl = {}
    res = {}
    tr = {}
    for n in window:
        cols = []
        for key in bases[n]:
            # Generator action: precompose with the shift span at level n.
            shift = SpanMorphism.single(n, n, n, (-1) % n, 0)
            composed = compose_spans(basis_span(n, key), shift)
            cols.append(_span_class_vector(n, m, window, index[n], composed.orbit_data()))
        weyl[n] = _columns_matrix(cols, len(bases[n]))
    for n in window:
        for k in window:
            if k % n != 0 or k == n:
                continue
            # F from level n to level k: precompose with Z/k <- Z/k -> Z/n.
            f_span = SpanMorphism.single(k, k, n, 0, 0)
            cols = []
            for key in bases[n]:
                composed = compose_spans(basis_span(n, key), f_span)
                cols.append(_span_class_vector(k, m, window, index[k], composed.orbit_data()))
            res[(n, k)] = _columns_matrix(cols, len(bases[k]))
            # V from level k to level n: precompose with Z/n <- Z/k -> Z/k.
            v_span = SpanMorphism.single(n, k, k, 0, 0)
            cols = []
            for key in bases[k]:
                composed = compose_spans(basis_span(k, key), v_span)
                cols.append(_span_class_vector(n, m, window, index[n], composed.orbit_data()))
            tr[(n, k)] = _columns_matrix(cols, len(bases[n]))
    return MackeyWindow(window, groups, weyl, res, tr)


def _columns_matrix(cols, nrows):
    entries = {}
    for j, col in enumerate(cols):
        for i, v in enumerate(col):
            if v:
                entries[(i, j)] = v
    return IntMatrix(ZZ, nrows, len(cols), entries)
