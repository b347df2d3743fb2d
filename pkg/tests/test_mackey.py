import random

import pytest

from polygonic.mackey import (
    FPGroup,
    GroupWithAction,
    Hom,
    LevelOutsideWindow,
    MackeyWindow,
    burnside_basis,
    burnside_representable,
    check_conservativity,
    check_mackey_axioms,
    coinvariants,
    evaluate_span,
    geometric_fixed_points,
    infinite_transfer_sum,
    proper_transfer_core,
    scale_restrict,
)
from polygonic.qfin import QFinSet, SpanMorphism, compose_spans
from polygonic.rings import ZZ, IntMatrix
from polygonic.truncation import TruncationSet
from polygonic.witt import witt_as_mackey
from polygonic.rings import ModularRing


W6 = TruncationSet.divisors(6)
W12 = TruncationSet.divisors(12)


def test_burnside_ranks():
    B = burnside_representable(1, TruncationSet((1,)))
    assert B.group(1).invariants() == ([], 1)
    B = burnside_representable(1, W6)
    assert B.group(1).invariants() == ([], 4)


def test_span_iso_classes_count():
    # spans Z/n <- Z/l -> Z/m for fixed l with lcm | l: gcd(n, m) classes,
    # verified by brute-force orbit counting under apex translations
    for n in (1, 2, 3, 4):
        for m in (1, 2, 3, 4):
            for l in range(1, 13):
                if l % n or l % m:
                    continue
                classes = {
                    frozenset(((s + c) % n, (t + c) % m) for c in range(l))
                    for s in range(n)
                    for t in range(m)
                }
                count = len([k for (ll, _) in burnside_basis(n, m, TruncationSet.divisors(12 if l % 12 == 0 else l))
                             for k in [0] if ll == l]) or None
                from math import gcd
                assert len(classes) == gcd(n, m)


def test_evaluate_span_identity():
    B = burnside_representable(1, W6)
    s = SpanMorphism.identity(QFinSet.orbit(2))
    h = evaluate_span(B, s)
    assert h.equal(Hom.identity(B.group(2)))


def test_norm_span_on_trivial_module():
    # pt <- Z/n -> pt on a trivial-action module is multiplication by n
    window = W6
    triv = FPGroup.free(1)
    ident = IntMatrix.identity(ZZ, 1)
    M = MackeyWindow(
        window,
        {n: triv for n in window},
        {n: ident for n in window},
        {(n, m): ident for n in window for m in window if m % n == 0 and m != n},
        {(n, m): ident.scale(m // n) for n in window for m in window if m % n == 0 and m != n},
    )
    assert check_mackey_axioms(M, trials=50, seed=0).ok
    for n in (2, 3, 6):
        s = SpanMorphism.single(1, n, 1)
        h = evaluate_span(M, s)
        assert h.matrix.get(0, 0) == n


def test_coprime_commutation_span():
    B = burnside_representable(1, W6)
    f2 = SpanMorphism.single(2, 2, 1)      # F_2 as a span Z/2 -> pt
    v3 = SpanMorphism.single(1, 3, 3)      # V_3 as a span pt -> Z/3
    comp = compose_spans(v3, f2)           # F_2 after V_3 : A(3) -> A(2)
    assert sorted(comp.apex.orbits) == [6]
    lhs = evaluate_span(B, comp)
    rhs = evaluate_span(B, f2).after(evaluate_span(B, v3))
    assert lhs.equal(rhs)


def test_axioms_burnside_12():
    B = burnside_representable(1, W12)
    report = check_mackey_axioms(B, trials=100, seed=1)
    assert report.ok, report.failures[:3]


def test_axioms_detect_corruption():
    B = burnside_representable(1, W6)
    tr = dict(B.tr)
    bad = tr[(1, 2)]
    tr[(1, 2)] = bad.add(IntMatrix(ZZ, bad.rows, bad.cols, {(0, 0): 1}))
    corrupted = MackeyWindow(B.window, B.groups, B.weyl, B.res, tr)
    report = check_mackey_axioms(corrupted, trials=60, seed=3)
    assert not report.ok
    assert report.failures


def test_axioms_witt_window():
    M = witt_as_mackey(ModularRing(8), 6)
    report = check_mackey_axioms(M, trials=60, seed=5)
    assert report.ok, report.failures[:3]


def test_evaluate_span_functor_random():
    B = burnside_representable(1, W12)
    rng = random.Random(17)
    levels = list(W12)
    checked = 0
    while checked < 100:
        from math import lcm
        a, b, c = (rng.choice(levels) for _ in range(3))
        l1 = [l for l in levels if l % lcm(a, b) == 0]
        l2 = [l for l in levels if l % lcm(b, c) == 0]
        if not l1 or not l2:
            continue
        s1 = SpanMorphism.single(a, rng.choice(l1), b, rng.randrange(a), rng.randrange(b))
        s2 = SpanMorphism.single(b, rng.choice(l2), c, rng.randrange(b), rng.randrange(c))
        try:
            lhs = evaluate_span(B, compose_spans(s2, s1))
        except LevelOutsideWindow:
            continue
        rhs = evaluate_span(B, s1).after(evaluate_span(B, s2))
        assert lhs.equal(rhs)
        checked += 1


def test_infinite_transfer_sum():
    M = witt_as_mackey(ZZ, 4)
    assert infinite_transfer_sum(M, []) == [0, 0, 0, 0]
    x = [1, 0]
    single = infinite_transfer_sum(M, [(2, x)])
    assert single == list(M.tr_hom(2, 1).apply(x))
    with pytest.raises(LevelOutsideWindow):
        infinite_transfer_sum(M, [(5, [1])])
    from polygonic.qfin import NotQuasifinite
    with pytest.raises(NotQuasifinite):
        infinite_transfer_sum(M, [(2, x)], tail=(3,))


def test_gfp_burnside_point():
    B = burnside_representable(1, W12)
    g = geometric_fixed_points(B, 1)
    assert g.group.invariants() == ([], 1)
    assert g.validate()


def test_gfp_representable_pattern():
    B = burnside_representable(2, W12)
    for k in W12:
        inv = geometric_fixed_points(B, k).group.invariants()
        assert inv == (([], 2) if k % 2 == 0 else ([], 0)), (k, inv)
    B3 = burnside_representable(3, W12)
    for k in W12:
        inv = geometric_fixed_points(B3, k).group.invariants()
        assert inv == (([], 3) if k % 3 == 0 else ([], 0)), (k, inv)


def test_gfp_witt_window():
    M = witt_as_mackey(ModularRing(4), 6)
    for n in M.window:
        assert geometric_fixed_points(M, n).group.invariants() == ([4], 0)


def test_gfp_outside_window():
    B = burnside_representable(1, W6)
    with pytest.raises(LevelOutsideWindow):
        geometric_fixed_points(B, 5)


def test_scale_restriction_identity():
    M = witt_as_mackey(ModularRing(4), 6)
    for n in (2, 3):
        restricted = scale_restrict(M, n)
        lhs = geometric_fixed_points(restricted, 1).group.invariants()
        rhs = geometric_fixed_points(M, n).group.invariants()
        assert lhs == rhs


def test_witt_transfer_sum_dies_in_gfp():
    M = witt_as_mackey(ZZ, 6)
    family = [(i, [1] + [0] * (M.group(i).ngens - 1)) for i in range(2, 7)]
    total = infinite_transfer_sum(M, family)
    from polygonic.mackey import proper_transfer_columns
    from polygonic.rings import in_column_span
    cols = proper_transfer_columns(M, 1) + M.group(1).relation_columns()
    assert in_column_span(cols, total)


def test_conservativity_zero_module():
    window = W6
    zero = FPGroup.zero()
    zmat = IntMatrix.zeros(ZZ, 0, 0)
    M = MackeyWindow(
        window,
        {n: zero for n in window},
        {n: zmat for n in window},
        {(n, m): zmat for n in window for m in window if m % n == 0 and m != n},
        {(n, m): zmat for n in window for m in window if m % n == 0 and m != n},
    )
    report = check_conservativity(M)
    assert report["applicable"] and report["transfer_generated"]


def test_conservativity_witt_not_applicable():
    M = witt_as_mackey(ModularRing(4), 4)
    report = check_conservativity(M)
    assert not report["applicable"]
    assert report["nonzero_levels"] == [1, 2, 3, 4]


def test_proper_transfer_core_collapses():
    B = burnside_representable(1, W12)
    core, trace = proper_transfer_core(B)
    assert all(core.group(n).is_zero_group() for n in core.window)
    assert trace[-1] == {n: 0 for n in core.window}
    report = check_conservativity(core)
    assert report["applicable"] and report["transfer_generated"]


def test_coinvariants_examples():
    triv = GroupWithAction(FPGroup.free(1), IntMatrix.identity(ZZ, 1), 1)
    assert coinvariants(triv).invariants() == ([], 1)
    # regular representation of the 2-element group: swap on Z^2
    swap = IntMatrix.from_rows(ZZ, [[0, 1], [1, 0]])
    reg = GroupWithAction(FPGroup.free(2), swap, 2)
    assert reg.validate()
    assert coinvariants(reg).invariants() == ([], 1)
    # sign-swap (x, y) -> (-y, -x)
    sign_swap = IntMatrix.from_rows(ZZ, [[0, -1], [-1, 0]])
    A = GroupWithAction(FPGroup.free(2), sign_swap, 2)
    assert coinvariants(A).invariants() == ([], 1)


def test_window_json_roundtrip():
    M = witt_as_mackey(ModularRing(4), 4)
    M2 = MackeyWindow.from_json(M.to_json())
    assert M2.window == M.window
    for n in M.window:
        assert M2.group(n).invariants() == M.group(n).invariants()
    assert check_mackey_axioms(M2, trials=20, seed=2).ok
