import random
from math import gcd, lcm

import pytest

from polygonic.qfin import (
    NoPrimeDivisorInWindow,
    NotQuasifinite,
    QFinMap,
    QFinSet,
    SpanMorphism,
    TargetMismatch,
    compose_spans,
    fixed_points,
    is_proper,
    pullback,
    pullback_elementwise,
    scale,
    weakly_terminal_map,
)


def test_fixed_points_examples():
    S = QFinSet(tuple(range(1, 13)))
    assert sorted(fixed_points(S, 6).orbits) == [1, 2, 3, 6]
    assert sorted(fixed_points(S, 1).orbits) == [1]
    assert fixed_points(QFinSet((4,)), 2).orbits == ()


def test_pullback_examples():
    pt = QFinSet.point()
    f = QFinMap.terminal(QFinSet.orbit(2))
    g = QFinMap.terminal(QFinSet.orbit(3))
    W, _, _ = pullback(f, g)
    assert sorted(W.orbits) == [6]

    U = QFinSet.orbit(2)
    f = QFinMap(QFinSet.orbit(4), U, ((0, 0),))
    g = QFinMap(QFinSet.orbit(6), U, ((0, 0),))
    W, _, _ = pullback(f, g)
    assert sorted(W.orbits) == [12]

    S = QFinSet((2, 3))
    ident = QFinMap.identity(S)
    W, p, q = pullback(ident, ident)
    assert sorted(W.orbits) == [2, 3]


def test_pullback_element_count_law():
    # gcd(a,b)/u orbits of size lcm(a,b), against element-level brute force
    for u in (1, 2, 3, 4):
        for a in range(1, 13):
            if a % u:
                continue
            for b in range(1, 13):
                if b % u:
                    continue
                U = QFinSet.orbit(u)
                f = QFinMap(QFinSet.orbit(a), U, ((0, 1 % u),))
                g = QFinMap(QFinSet.orbit(b), U, ((0, 0),))
                W, p, q = pullback(f, g)
                expected = tuple(sorted([lcm(a, b)] * (gcd(a, b) // u)))
                assert tuple(sorted(W.orbits)) == expected
                assert W.element_count() == a * b // u
                assert pullback_elementwise(f, g) == expected
                # the projections are genuine maps over U
                for k in range(W.size):
                    x = p.apply(k, 0)
                    y = q.apply(k, 0)
                    assert f.apply(*x) == g.apply(*y)


def test_pullback_target_mismatch():
    f = QFinMap.terminal(QFinSet.orbit(2))
    g = QFinMap.identity(QFinSet.orbit(2))
    with pytest.raises(TargetMismatch):
        pullback(f, g)


def test_compose_spans_examples():
    s = SpanMorphism.single(1, 2, 1)
    ident = SpanMorphism.identity(QFinSet.point())
    assert compose_spans(s, ident).canonical() == s.canonical()
    assert compose_spans(ident, s).canonical() == s.canonical()

    s2 = SpanMorphism.single(1, 3, 1)
    comp = compose_spans(s2, s)
    assert sorted(comp.apex.orbits) == [6]

    comp = compose_spans(s, s)
    assert sorted(comp.apex.orbits) == [2, 2]


def test_span_composition_associative():
    rng = random.Random(6)
    for _ in range(200):
        sizes = [rng.randrange(1, 7) for _ in range(4)]
        a, b, c, d = sizes

        def rand_span(x, y):
            l = x * y // gcd(x, y) * rng.randrange(1, 3)
            if l > 36:
                l = lcm(x, y)
            return SpanMorphism.single(x, l, y, rng.randrange(x), rng.randrange(y))

        s1 = rand_span(a, b)
        s2 = rand_span(b, c)
        s3 = rand_span(c, d)
        lhs = compose_spans(s3, compose_spans(s2, s1))
        rhs = compose_spans(compose_spans(s3, s2), s1)
        assert lhs.canonical() == rhs.canonical()


def test_scale():
    assert scale(QFinSet.orbit(3), 2).orbits == (6,)
    S = QFinSet((2, 5))
    assert scale(S, 1) == S
    assert scale(scale(S, 2), 3) == scale(S, 6)


def test_scale_commutes_with_pullback():
    rng = random.Random(8)
    for _ in range(60):
        u = rng.randrange(1, 4)
        a = u * rng.randrange(1, 9 // u + 1)
        b = u * rng.randrange(1, 9 // u + 1)
        n = rng.randrange(1, 4)
        U = QFinSet.orbit(u)
        f = QFinMap(QFinSet.orbit(a), U, ((0, rng.randrange(u)),))
        g = QFinMap(QFinSet.orbit(b), U, ((0, rng.randrange(u)),))
        W, _, _ = pullback(f, g)
        fs = QFinMap(QFinSet.orbit(n * a), QFinSet.orbit(n * u), ((0, 0),))
        gs = QFinMap(QFinSet.orbit(n * b), QFinSet.orbit(n * u), ((0, 0),))
        Ws, _, _ = pullback(fs, gs)
        assert scale(W, n).canonical().orbits == Ws.canonical().orbits


def test_is_proper():
    assert is_proper(QFinMap(QFinSet.orbit(4), QFinSet.orbit(2), ((0, 0),)))
    assert not is_proper(QFinMap.identity(QFinSet.orbit(2)))
    S = QFinSet((2, 6))
    T = QFinSet((1, 6))
    f = QFinMap(S, T, ((0, 0), (1, 0)))
    assert not is_proper(f)


def test_proper_composition():
    f = QFinMap(QFinSet.orbit(12), QFinSet.orbit(4), ((0, 1),))
    g = QFinMap(QFinSet.orbit(4), QFinSet.orbit(2), ((0, 0),))
    assert is_proper(f) and is_proper(g)
    assert is_proper(g.after(f))


def test_weakly_terminal():
    f = weakly_terminal_map(QFinSet((6,)), [2, 3, 5])
    assert f.target.orbits[f.assign[0][0]] == 2
    f = weakly_terminal_map(QFinSet((9,)), [2, 3, 5])
    assert f.target.orbits[f.assign[0][0]] == 3
    with pytest.raises(NoPrimeDivisorInWindow):
        weakly_terminal_map(QFinSet((1,)), [2, 3, 5])
    with pytest.raises(NoPrimeDivisorInWindow):
        weakly_terminal_map(QFinSet((49,)), [2, 3, 5])


def test_tail_markers():
    S = QFinSet((2, 3), tail=(100, 101))
    S.check_tail_window(50)
    with pytest.raises(NotQuasifinite):
        S.check_tail_window(150)


def test_json_roundtrip():
    S = QFinSet((2, 3, 3, 6), tail=None)
    assert QFinSet.from_json(S.to_json()) == S
