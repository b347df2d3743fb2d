"""Big Witt vectors over a commutative coefficient ring.

The additive model is the group of power series with constant term 1 under
multiplication: a coefficient family (a_t) on a truncation set T stands for
the series prod (1 - a_t tau^t)^(-1), so addition is a series product,
the n-th Verschiebung substitutes tau -> tau^n, and the Teichmueller lift of
r is the geometric series of r.  Ghost coordinates are w_n = sum over d | n
of d * a_d^(n/d).

Multiplication and Frobenius are evaluated through the decomposition
a = sum_t V_t[a_t] and the universal identities

    V_s[x] * V_t[y] = gcd(s,t) * V_lcm(s,t)[x^(l/s) y^(l/t)]
    F_n V_t [x]     = gcd(n,t) * V_{t/g}[x^(n/g)]

which hold over the integers by a ghost computation and therefore over every
commutative ring.  This keeps all arithmetic exact on torsion coefficients
without materializing the universal polynomials.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from math import gcd, lcm

from .mackey import FPGroup, MackeyWindow
from .rings import ZZ, IntMatrix, invariant_factors, presented_group_quotient
from .truncation import TruncationSet


class SupportMismatch(Exception):
    pass


class NonIntervalSupport(Exception):
    pass


class NotSummable(Exception):
    pass


class UnsupportedEnumerationRing(Exception):
    pass


# ---------------------------------------------------------------------------
# Truncated series with constant term 1 (lists of ring elements, index = degree).


def series_one(ring, n):
    return [ring.one()] + [ring.zero()] * n


def series_mul(ring, s, t):
    n = min(len(s), len(t)) - 1
    out = [ring.zero()] * (n + 1)
    for i, x in enumerate(s[: n + 1]):
        if ring.is_zero(x):
            continue
        for j in range(0, n + 1 - i):
            y = t[j]
            if not ring.is_zero(y):
                out[i + j] = ring.add(out[i + j], ring.mul(x, y))
    return out


def series_inv(ring, s):
    """Inverse of a series with constant term 1."""
    n = len(s) - 1
    out = [ring.one()] + [ring.zero()] * n
    for k in range(1, n + 1):
        acc = ring.zero()
        for i in range(1, k + 1):
            acc = ring.add(acc, ring.mul(s[i], out[k - i]))
        out[k] = ring.neg(acc)
    return out


def series_geometric(ring, c, step, n):
    """(1 - c tau^step)^(-1) truncated at degree n."""
    out = [ring.zero()] * (n + 1)
    out[0] = ring.one()
    power = ring.one()
    k = step
    while k <= n:
        power = ring.mul(power, c)
        out[k] = power
        k += step
    return out


def series_int_power(ring, s, c):
    """s^c for an integer c (c may be negative)."""
    if c < 0:
        return series_int_power(ring, series_inv(ring, s), -c)
    out = series_one(ring, len(s) - 1)
    base = s
    while c:
        if c & 1:
            out = series_mul(ring, out, base)
        base = series_mul(ring, base, base)
        c >>= 1
    return out


# ---------------------------------------------------------------------------
# Witt vectors.


@dataclass(frozen=True)
class WittVector:
    ring: object
    support: TruncationSet
    coeffs: tuple

    def __post_init__(self):
        if len(self.coeffs) != len(self.support):
            raise SupportMismatch("coefficient count must match the support")

    @classmethod
    def from_dict(cls, ring, support, values):
        return cls(ring, support, tuple(values.get(t, ring.zero()) for t in support))

    def coeff(self, t):
        try:
            idx = self.support.elements.index(t)
        except ValueError:
            return self.ring.zero()
        return self.coeffs[idx]

    def as_dict(self):
        return dict(zip(self.support.elements, self.coeffs))

    def eq(self, other):
        return (
            self.ring == other.ring
            and self.support == other.support
            and all(self.ring.eq(a, b) for a, b in zip(self.coeffs, other.coeffs))
        )

    def is_zero(self):
        return all(self.ring.is_zero(c) for c in self.coeffs)

    def restrict(self, support):
        if not support.subset_of(self.support):
            raise SupportMismatch("restriction target is not a subset")
        return WittVector(self.ring, support, tuple(self.coeff(t) for t in support))

    def to_json(self):
        return {
            "ring": self.ring.to_json(),
            "support": self.support.to_json(),
            "coeffs": {str(t): self.ring.show(c) for t, c in self.as_dict().items()},
        }

    @classmethod
    def from_json(cls, data):
        from .rings import ring_from_json

        ring = ring_from_json(data["ring"])
        support = TruncationSet(tuple(data["support"]))
        values = {int(k): ring.parse(v) for k, v in data["coeffs"].items()}
        return cls.from_dict(ring, support, values)

    def __repr__(self):
        body = ", ".join(f"{t}: {self.ring.show(c)}" for t, c in self.as_dict().items())
        return f"W({body})"


def zero_vector(ring, support):
    return WittVector(ring, support, tuple(ring.zero() for _ in support))


def teichmuller(ring, r, support):
    """[r]: coefficient r in degree 1, zero elsewhere; multiplicative lift."""
    return WittVector.from_dict(ring, support, {1: r} if 1 in support else {})


def to_series(a: WittVector):
    """prod (1 - a_t tau^t)^(-1) mod tau^(N+1); interval supports only."""
    if not a.support.is_interval():
        raise NonIntervalSupport(f"{a.support} is not an interval")
    n = a.support.max()
    out = series_one(a.ring, n)
    for t, c in a.as_dict().items():
        if not a.ring.is_zero(c):
            out = series_mul(a.ring, out, series_geometric(a.ring, c, t, n))
    return out


def from_series(ring, s):
    """Invert to_series by peeling one coefficient per degree."""
    n = len(s) - 1
    if n < 1 or not ring.eq(s[0], ring.one()):
        raise ValueError("series must have constant term 1 and positive length")
    residual = list(s)
    coeffs = []
    for t in range(1, n + 1):
        c = residual[t]
        coeffs.append(c)
        if not ring.is_zero(c):
            # multiply by (1 - c tau^t)
            for i in range(n, t - 1, -1):
                residual[i] = ring.sub(residual[i], ring.mul(c, residual[i - t]))
    return WittVector(ring, TruncationSet.interval(n), tuple(coeffs))


def _padded_series(a: WittVector, n):
    out = series_one(a.ring, n)
    for t, c in a.as_dict().items():
        if t <= n and not a.ring.is_zero(c):
            out = series_mul(a.ring, out, series_geometric(a.ring, c, t, n))
    return out


def add(a: WittVector, b: WittVector):
    if a.ring != b.ring or a.support != b.support:
        raise SupportMismatch("addition needs matching ring and support")
    if not a.support.elements:
        return a
    n = a.support.max()
    s = series_mul(a.ring, _padded_series(a, n), _padded_series(b, n))
    return from_series(a.ring, s).restrict(a.support)


def neg(a: WittVector):
    if not a.support.elements:
        return a
    n = a.support.max()
    s = series_inv(a.ring, _padded_series(a, n))
    return from_series(a.ring, s).restrict(a.support)


def sub(a, b):
    return add(a, neg(b))


def int_multiple(c, a: WittVector):
    if not a.support.elements:
        return a
    n = a.support.max()
    s = series_int_power(a.ring, _padded_series(a, n), c)
    return from_series(a.ring, s).restrict(a.support)


def ghost(a: WittVector):
    """w_t = sum over d | t of d * a_d^(t/d), on the same support."""
    ring = a.ring
    values = []
    d = a.as_dict()
    for t in a.support:
        acc = ring.zero()
        for u, c in d.items():
            if t % u == 0:
                acc = ring.add(acc, ring.mul(ring.from_int(u), ring.pow(c, t // u)))
        values.append(acc)
    return GhostVector(a.support, tuple(values))


@dataclass(frozen=True)
class GhostVector:
    support: TruncationSet
    values: tuple

    def value(self, t):
        return self.values[self.support.elements.index(t)]

    def as_dict(self):
        return dict(zip(self.support.elements, self.values))


def ghost_oracle(a: WittVector):
    """Independent ghost computation: coefficients of tau d/dtau log(series).

    With f = prod (1 - a_t tau^t)^(-1) one has tau f'/f = sum_n w_n tau^n;
    computed from f and f' by series division, so it never uses the
    divisor-sum formula.  Needs a torsion-free coefficient ring to be a
    faithful oracle, but is computable over any ring.
    """
    f = to_series(a)
    ring = a.ring
    n = len(f) - 1
    deriv = [ring.mul(ring.from_int(k), f[k]) for k in range(n + 1)]  # tau f'
    inv = series_inv(ring, f)
    w = series_mul(ring, deriv, inv)
    return GhostVector(a.support, tuple(w[t] for t in a.support))


def multiply(a: WittVector, b: WittVector):
    """Witt product via the pairwise Verschiebung expansion."""
    if a.ring != b.ring or a.support != b.support:
        raise SupportMismatch("multiplication needs matching ring and support")
    ring = a.ring
    if not a.support.elements:
        return a
    n = a.support.max()
    da, db = a.as_dict(), b.as_dict()
    out = series_one(ring, n)
    for s, x in da.items():
        if ring.is_zero(x):
            continue
        for t, y in db.items():
            if ring.is_zero(y):
                continue
            l = lcm(s, t)
            if l > n:
                continue
            g = gcd(s, t)
            c = ring.mul(ring.pow(x, l // s), ring.pow(y, l // t))
            term = series_geometric(ring, c, l, n)
            out = series_mul(ring, out, series_int_power(ring, term, g))
    return from_series(ring, out).restrict(a.support)


def default_verschiebung_support(support, n):
    scaled = set()
    for t in support:
        for d in range(1, n * t + 1):
            if (n * t) % d == 0:
                scaled.add(d)
    return TruncationSet(tuple(sorted(scaled)))


def verschiebung(a: WittVector, n, support=None):
    """Place coefficient a_t at n*t; on series, tau -> tau^n."""
    if n < 1:
        raise ValueError("n must be >= 1")
    if support is None:
        support = default_verschiebung_support(a.support, n) if a.support.elements else a.support
    if support.divide(n) != a.support:
        raise SupportMismatch(
            f"support {a.support} is not the n-division of the target {support}"
        )
    values = {n * t: c for t, c in a.as_dict().items()}
    return WittVector.from_dict(a.ring, support, values)


def frobenius(a: WittVector, n):
    """Ghost rule w_t(F_n a) = w_{nt}(a); lands on the n-division of the support."""
    if n < 1:
        raise ValueError("n must be >= 1")
    ring = a.ring
    target = a.support.divide(n)
    if not target.elements:
        return zero_vector(ring, target)
    m = target.max()
    out = series_one(ring, m)
    for t, x in a.as_dict().items():
        if ring.is_zero(x):
            continue
        g = gcd(n, t)
        step = t // g
        if step > m:
            continue
        c = ring.pow(x, n // g)
        term = series_geometric(ring, c, step, m)
        out = series_mul(ring, out, series_int_power(ring, term, g))
    return from_series(ring, out).restrict(target)


def infinite_verschiebung(ring, family, support, tail=None):
    """Sum of V_{n_i}(x_i) on the given support.

    Entries with n_i above the support bound contribute nothing (the series
    product converges tau-adically); a declared infinitely-repeated size at
    or below the bound is not summable.
    """
    bound = support.max()
    if tail is not None and any(g <= bound for g in tail):
        raise NotSummable("declared infinite multiplicity inside the support bound")
    total = zero_vector(ring, support)
    for n, x in family:
        if n < 2:
            raise ValueError("summable families need sizes >= 2")
        if n > bound:
            continue
        if x.support != support.divide(n):
            raise SupportMismatch(f"summand at size {n} has support {x.support}")
        total = add(total, verschiebung(x, n, support))
    return total


# ---------------------------------------------------------------------------
# The additive group of W as a finitely presented group, base recovery, and
# the bridge to Mackey windows.


def _supported_rings(ring):
    return ring.kind in ("integers", "integers-mod-m", "prime-field")


def peel_coordinates(a: WittVector):
    """Integer coordinates of a in the generating set {V_t[1]}.

    Peels levels bottom-up; at each stage the leading coordinate is additive,
    so subtracting the integer multiple of V_t[1] clears it.  Exact for
    integer and modular coefficients.
    """
    ring = a.ring
    if not _supported_rings(ring):
        raise UnsupportedEnumerationRing(f"{ring} has no canonical integer lifts")
    current = a
    coords = []
    for t in a.support:
        c = current.coeff(t)
        k = c if ring.kind == "integers" else c % ring.modulus
        coords.append(k)
        if k:
            gen = verschiebung(teichmuller(ring, ring.one(), a.support.divide(t)), t, a.support)
            current = sub(current, int_multiple(k, gen))
    if not current.is_zero():
        raise AssertionError("peeling did not terminate at zero")
    return coords


def witt_group_presentation(ring, support):
    """Presentation of (W_support(ring), +) on the generators V_t[1]."""
    ngens = len(support)
    if ring.kind == "integers":
        return FPGroup.free(ngens)
    if ring.kind not in ("integers-mod-m", "prime-field"):
        raise UnsupportedEnumerationRing(f"{ring} is not finitely presented over Z")
    m = ring.modulus
    rows = []
    for i, t in enumerate(support.elements):
        gen = verschiebung(teichmuller(ring, ring.one(), support.divide(t)), t, support)
        coords = peel_coordinates(int_multiple(m, gen))
        row = [-c for c in coords]
        row[i] += m
        rows.append(row)
    return FPGroup(ngens, IntMatrix.from_rows(ZZ, rows))


def recover_base(ring, n):
    """Quotient W_[n](ring) by the images of V_2, ..., V_n and compare to ring.

    Returns a report with the invariant factors of the quotient and whether
    they match the additive group of the coefficient ring; the comparison
    map is the first-coordinate projection, whose additivity is spot-checked.
    """
    if n < 1:
        raise ValueError("N must be >= 1")
    support = TruncationSet.interval(n)
    group = witt_group_presentation(ring, support)
    killed = []
    for i, t in enumerate(support.elements):
        if t >= 2:
            killed.append([1 if j == i else 0 for j in range(group.ngens)])
    quotient = presented_group_quotient(group.relations, killed)
    torsion, free = invariant_factors(quotient)
    if ring.kind == "integers":
        expected = ([], 1)
    else:
        expected = ([ring.modulus], 0)
    rng = random.Random(11)
    additive = True
    for _ in range(20):
        a = WittVector(ring, support, tuple(ring.from_int(rng.randrange(-9, 10)) for _ in support))
        b = WittVector(ring, support, tuple(ring.from_int(rng.randrange(-9, 10)) for _ in support))
        lhs = add(a, b).coeff(1)
        rhs = ring.add(a.coeff(1), b.coeff(1))
        if not ring.eq(lhs, rhs):
            additive = False
    return {
        "ring": repr(ring),
        "N": n,
        "invariant_factors": torsion,
        "free_rank": free,
        "matches_base": (torsion, free) == expected,
        "projection_additive": additive,
    }


def witt_as_mackey(ring, n):
    """The Witt functor as a Mackey window on the interval [n].

    Level k carries W on the k-division of [n]; restriction is Frobenius,
    transfer is Verschiebung, and the level actions are trivial.  On the
    generators V_t[1] both maps are integral:

        F_j V_t [1] = gcd(j,t) V_{t/gcd}[1]        (dropped if out of support)
        V_j V_t [1] = V_{jt}[1]
    """
    window = TruncationSet.interval(n)
    supports = {k: window.divide(k) for k in window}
    groups = {k: witt_group_presentation(ring, supports[k]) for k in window}
    weyl = {k: IntMatrix.identity(ZZ, groups[k].ngens) for k in window}
    res = {}
    tr = {}
    for k in window:
        for m in window:
            if m % k != 0 or m == k:
                continue
            j = m // k
            src = supports[k].elements
            dst = supports[m].elements
            entries = {}
            for col, t in enumerate(src):
                g = gcd(j, t)
                image = t // g
                if image in dst:
                    entries[(dst.index(image), col)] = g
            res[(k, m)] = IntMatrix(ZZ, len(dst), len(src), entries)
            entries = {}
            for col, t in enumerate(dst):
                entries[(src.index(j * t), col)] = 1
            tr[(k, m)] = IntMatrix(ZZ, len(src), len(dst), entries)
    return MackeyWindow(window, groups, weyl, res, tr)


# ---------------------------------------------------------------------------
# The coordinatewise flow model of the restriction maps.


def mod_p_equal(ring, x, y, p):
    """x == y modulo the ideal p*ring."""
    diff = ring.sub(x, y)
    if ring.kind == "integers":
        return diff % p == 0
    if ring.kind in ("integers-mod-m", "prime-field"):
        return diff % gcd(p, ring.modulus) == 0
    if ring.kind == "rationals":
        return True
    if ring.kind == "univariate-polynomial-quotient":
        return all(mod_p_equal(ring.base, c, ring.base.zero(), p) for c in diff)
    raise UnsupportedEnumerationRing(f"no mod-p test for {ring}")


def _primes_upto(n):
    return [p for p in range(2, n + 1) if all(p % d for d in range(2, p))]


@dataclass(frozen=True)
class GhostFlow:
    """Coefficient ring with one endomorphism per prime and a support.

    Each endomorphism must reduce to the p-th power map modulo p, and they
    must commute; both are checked on the supplied generators.
    """

    ring: object
    lifts: dict
    support: TruncationSet

    def lift(self, p):
        return self.lifts.get(p, lambda x: x)

    def validate(self, generators=None):
        ring = self.ring
        if generators is None:
            generators = [ring.one(), ring.from_int(2), ring.from_int(3)]
        failures = []
        primes = _primes_upto(self.support.max())
        for p in primes:
            phi = self.lift(p)
            for g in generators:
                if not mod_p_equal(ring, phi(g), ring.pow(g, p), p):
                    failures.append(f"lift at {p} is not a Frobenius lift on {ring.show(g)}")
        for p in primes:
            for q in primes:
                if p < q:
                    pq = self.lift(p)
                    qq = self.lift(q)
                    for g in generators:
                        if not ring.eq(pq(qq(g)), qq(pq(g))):
                            failures.append(f"lifts at {p} and {q} do not commute")
        return failures


def equalizer_membership(flow: GhostFlow, values):
    """Does the family (w_t) satisfy phi_p(w_t) = w_{pt} mod p throughout?"""
    support = flow.support
    w = dict(zip(support.elements, values))
    for p in _primes_upto(support.max()):
        phi = flow.lift(p)
        for t in support:
            if p * t in support:
                if not mod_p_equal(flow.ring, phi(w[t]), w[p * t], p):
                    return False
    return True


def equalizer_enumerate(flow: GhostFlow, box):
    """All members with integer coordinates in [-box, box] (or the full
    space for modular coefficients)."""
    ring = flow.ring
    support = flow.support.elements
    if ring.kind == "integers":
        domain = range(-box, box + 1)
    elif ring.kind in ("integers-mod-m", "prime-field"):
        domain = range(ring.modulus)
    else:
        raise UnsupportedEnumerationRing(f"cannot enumerate over {ring}")
    out = []

    def extend(idx, partial):
        if idx == len(support):
            out.append(tuple(partial))
            return
        t = support[idx]
        for v in domain:
            ok = True
            for p in _primes_upto(t):
                if t % p == 0 and t // p in support[:idx + 1]:
                    prev = partial[support.index(t // p)]
                    if not mod_p_equal(ring, flow.lift(p)(ring.from_int(prev)), ring.from_int(v), p):
                        ok = False
                        break
            if ok:
                extend(idx + 1, partial + [v])

    extend(0, [])
    return out


def ghost_section(values, support):
    """Integer Witt coordinates with the given ghost values, or None.

    Triangular back-substitution: a_t = (w_t - sum_{d|t, d<t} d a_d^{t/d})/t
    must stay integral at every level.
    """
    coeffs = {}
    for t in support:
        acc = values[support.elements.index(t)]
        for d in support:
            if d < t and t % d == 0:
                acc -= d * coeffs[d] ** (t // d)
        if acc % t != 0:
            return None
        coeffs[t] = acc // t
    return coeffs


def _lifts_additive(flow, samples=12):
    ring = flow.ring
    rng = random.Random(23)
    for p in _primes_upto(flow.support.max()):
        phi = flow.lift(p)
        for _ in range(samples):
            x = ring.from_int(rng.randrange(-9, 10))
            y = ring.from_int(rng.randrange(-9, 10))
            if not ring.eq(phi(ring.add(x, y)), ring.add(phi(x), phi(y))):
                return False
    return True


def equalizer_model(flow: GhostFlow, box=None):
    """Description of {(w_t) : phi_p(w_t) = w_{pt} mod p for pt in support}.

    Always contains the lift validation and the subgroup/subset verdict;
    membership testing is equalizer_membership.  With a box and enumerable
    coefficients the members are listed.
    """
    description = {
        "support": flow.support.to_json(),
        "lift_validation": flow.validate(),
        "is_subgroup": _lifts_additive(flow),
    }
    if box is not None:
        description["members"] = [list(w) for w in equalizer_enumerate(flow, box)]
    return description


def equalizer_report(flow: GhostFlow, box):
    """Enumerate the equalizer in a box and compare with the ghost image.

    The member set is a subgroup when the lifts are additive (sampled),
    otherwise just a subset; the report says which.
    """
    validation = flow.validate()
    members = equalizer_enumerate(flow, box)
    sections = {w: ghost_section(list(w), flow.support) for w in members}
    ghost_members = [w for w, s in sections.items() if s is not None]
    strict = [w for w, s in sections.items() if s is None]
    return {
        "support": flow.support.to_json(),
        "box": box,
        "lift_validation": validation,
        "is_subgroup": _lifts_additive(flow),
        "equalizer_size": len(members),
        "ghost_image_size": len(ghost_members),
        "equals_ghost_image": len(strict) == 0,
        "first_strict_members": [list(w) for w in strict[:5]],
    }
