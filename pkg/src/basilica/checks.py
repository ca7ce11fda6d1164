"""The identity/lemma verification suite behind `basilica check-paper`.

Each check is a named, deterministic verification of one exact statement
about the Basilica group: a section identity, a relator, a quotient-map
value, a length-lemma sweep over a ball, or a descent-totality sweep.
Randomized sweeps draw from a seeded generator recorded in the report.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from . import ENGINE
from .core import Element, InputError, equals
from .norms import ball, norm
from .structure import (
    LIFT_SUBSTITUTION,
    HeisenbergElement,
    ab_image,
    alpha,
    basilica,
    bprime_coords,
    commutator,
    heis_image,
    in_derived_subgroup,
    lift_section,
    tau,
)
from .descent import find_ab, find_b_inv_a, persist_ab


@dataclass(frozen=True)
class CheckResult:
    check_id: str
    claim: str
    status: str  # "pass" or "fail"
    detail: str = ""

    @property
    def passed(self) -> bool:
        return self.status == "pass"


@dataclass(frozen=True)
class CheckReport:
    results: tuple[CheckResult, ...]
    seed: int
    engine: str = ENGINE

    @property
    def passed(self) -> int:
        return sum(1 for r in self.results if r.passed)

    @property
    def failed(self) -> int:
        return len(self.results) - self.passed

    def all_passed(self) -> bool:
        return self.failed == 0

    def render(self) -> str:
        lines = [f"engine: {self.engine}", f"seed: {self.seed}"]
        for r in self.results:
            line = f"[{r.status.upper():4}] {r.check_id}: {r.claim}"
            if r.detail:
                line += f" -- {r.detail}"
            lines.append(line)
        lines.append(f"summary: {self.passed} passed, {self.failed} failed")
        return "\n".join(lines) + "\n"


class _Collector:
    def __init__(self):
        self.results: list[CheckResult] = []

    def add(self, check_id: str, claim: str, ok: bool, detail: str = ""):
        self.results.append(
            CheckResult(check_id, claim, "pass" if ok else "fail", detail)
        )


def _elem(text: str) -> Element:
    return basilica().element(text)


def _psi_is(g: Element, root_trivial: bool, left: Element, right: Element) -> bool:
    root_ok = g.root_perm().is_identity() == root_trivial
    return root_ok and equals(g.section(0), left) and equals(g.section(1), right)


def check_psi1(out: _Collector) -> None:
    """The quoted first-level section identities."""
    sys = basilica()
    a, b = sys.generator("a"), sys.generator("b")
    e = sys.identity()
    cases = [
        ("psi1-01", "[a,b] = (a^-1 b a, b^-1)", alpha(1, 1), True, _elem("Aba"), ~b),
        ("psi1-02", "[a,b^-1] = (b, b^-1)", alpha(1, -1), True, b, ~b),
        ("psi1-03", "[a,b^2] = (1, [a,b]^-1)", alpha(1, 2), True, e, ~alpha(1, 1)),
        ("psi1-04", "b^2 = (a, a)", b * b, True, a, a),
        ("psi1-05", "a^2 = (1, b^2)", a * a, True, e, b * b),
        ("psi1-06", "ab = sigma (ba, 1)", a * b, False, b * a, e),
        ("psi1-07", "(ab)^2 = (ba, ba)", (a * b) ** 2, True, b * a, b * a),
        ("psi1-08", "(ba)^2 = (ba, ab)", (b * a) ** 2, True, b * a, a * b),
        (
            "psi1-09",
            "(a b^-1)^-2 = (b^-1 a, a b^-1)",
            (a * ~b) ** -2,
            True,
            ~b * a,
            a * ~b,
        ),
    ]
    for check_id, claim, g, root_trivial, left, right in cases:
        out.add(check_id, claim, _psi_is(g, root_trivial, left, right))
    ok = all(
        _psi_is(b * a**k * ~b, True, b**k, e) for k in range(-4, 5)
    )
    out.add("psi1-10", "b a^k b^-1 = (b^k, 1) for k in [-4,4]", ok)
    ok = all(
        _psi_is(b**-2 * a**k * b**2, True, e, ~a * b**k * a) for k in range(-4, 5)
    )
    out.add("psi1-11", "b^-2 a^k b^2 = (1, a^-1 b^k a) for k in [-4,4]", ok)


def check_relators(out: _Collector, rng: random.Random) -> None:
    """Relator words are trivial; random words are not."""
    for m in (1, 3, 5, 7):
        word = tau(m)
        for k in range(4):
            ok = word.is_trivial()
            out.add(
                f"relators-m{m}-k{k}",
                f"substitution^{k} of [b^-{m} a b^{m}, a] is trivial",
                ok,
            )
            word = word.substitute(LIFT_SUBSTITUTION)
    sys = basilica()
    letters = [1, -1, 2, -2]
    bad = 0
    for _ in range(50):
        length = rng.randint(8, 12)
        w: list[int] = []
        while len(w) < length:
            l = rng.choice(letters)
            if w and w[-1] == -l:
                continue
            w.append(l)
        if sys.element(w).is_trivial():
            bad += 1
    out.add(
        "relators-random",
        "50 seeded random reduced words of length 8..12 are all nontrivial",
        bad == 0,
        f"{bad} unexpectedly trivial",
    )


def check_commutators(out: _Collector) -> None:
    """Rewriting rules for [a^s, b^t] over the three basic commutators."""
    a11, a1m1, a12 = alpha(1, 1), alpha(1, -1), alpha(1, 2)
    odd_ok = even_ok = power_ok = True
    for s in range(-3, 4):
        for t in range(-3, 4):
            lhs = alpha(s, 2 * t + 1)
            rhs = (a11 * (~a1m1 * a11) ** t) ** s
            odd_ok = odd_ok and equals(lhs, rhs)
            power_ok = power_ok and equals(lhs, alpha(1, 2 * t + 1) ** s)
            lhs = alpha(s, 2 * t)
            rhs = a11 ** (s - 1) * (a12**t * ~a11) ** (s - 1) * a12**t
            even_ok = even_ok and equals(lhs, rhs)
    out.add(
        "commutators-odd",
        "[a^s,b^(2t+1)] = ([a,b]([a,b^-1]^-1 [a,b])^t)^s for s,t in [-3,3]",
        odd_ok,
    )
    out.add(
        "commutators-even",
        "[a^s,b^2t] = [a,b]^(s-1) ([a,b^2]^t [a,b]^-1)^(s-1) [a,b^2]^t for s,t in [-3,3]",
        even_ok,
    )
    out.add(
        "commutators-power",
        "[a^s,b^(2t+1)] = [a,b^(2t+1)]^s for s,t in [-3,3]",
        power_ok,
    )


def check_quotients(out: _Collector, rng: random.Random) -> None:
    """Heisenberg quotient and the Z^3 coordinates on B'/B''."""
    sys = basilica()
    a, b = sys.generator("a"), sys.generator("b")
    c = commutator(a, b)
    out.add(
        "heis-relators",
        "[[a,b],a] and [[a,b],b] map to the Heisenberg identity",
        heis_image(commutator(c, a)).is_identity()
        and heis_image(commutator(c, b)).is_identity(),
    )
    ok = True
    for _ in range(300):
        u = sys.element([rng.choice([1, -1, 2, -2]) for _ in range(rng.randint(0, 8))])
        v = sys.element([rng.choice([1, -1, 2, -2]) for _ in range(rng.randint(0, 8))])
        if heis_image(u * v) != heis_image(u) * heis_image(v):
            ok = False
            break
    out.add("heis-hom", "the Heisenberg map is a homomorphism (300 seeded pairs)", ok)
    out.add(
        "heis-values",
        "[a,b] maps to c and a^-1 b a to b c^-1",
        heis_image(c) == HeisenbergElement(0, 0, 1)
        and heis_image(~a * b * a) == HeisenbergElement(0, 1, -1),
    )
    out.add(
        "bprime-basis",
        "[a,b], [a,b^-1], [a,b^2] have coordinates (1,0,0), (0,1,0), (0,0,1)",
        bprime_coords(alpha(1, 1)) == (1, 0, 0)
        and bprime_coords(alpha(1, -1)) == (0, 1, 0)
        and bprime_coords(alpha(1, 2)) == (0, 0, 1),
    )
    ok = True
    for l in range(-2, 3):
        for m in range(-2, 3):
            for n in range(-2, 3):
                g = alpha(1, 1) ** l * alpha(1, -1) ** m * alpha(1, 2) ** n
                if bprime_coords(g) != (l, m, n):
                    ok = False
    out.add(
        "bprime-roundtrip",
        "coordinates of [a,b]^l [a,b^-1]^m [a,b^2]^n are (l,m,n) on [-2,2]^3",
        ok,
    )
    lhs = commutator(alpha(1, 1), alpha(1, -1))
    t1 = commutator(commutator(b, a), b)
    ok = _psi_is(lhs, True, t1, sys.identity())
    out.add(
        "bprime-second-derived-1",
        "[[a,b],[a,b^-1]] = ([[b,a],b], 1)",
        ok,
    )
    lhs = commutator(alpha(1, 1), alpha(1, 2))
    t2 = ~commutator(commutator(b, a), ~b)
    out.add(
        "bprime-second-derived-2",
        "[[a,b],[a,b^2]] = (1, [[b,a],b^-1]^-1)",
        _psi_is(lhs, True, sys.identity(), t2),
    )


def check_lengths(out: _Collector, radius: int = 8) -> None:
    """Length lemmas over the ball: subadditivity of sections, the square
    bound, and the strict drops forced by forbidden geodesic patterns."""
    sys = basilica()
    sphere = ball(sys, radius)
    viol_sub = viol_sq = viol_bb = viol_b2 = 0
    matched_bb = matched_b2 = checked_sq = 0
    identity_root = tuple(range(2))
    for cls in sphere.classes:
        g = cls.element
        w = cls.word
        n0 = norm(g.section(0))
        n1 = norm(g.section(1))
        if n0 + n1 > cls.norm:
            viol_sub += 1
        if sys.word_root(w) != identity_root:
            checked_sq += 1
            sq = g * g
            if norm(sq.section(0)) > cls.norm or norm(sq.section(1)) > cls.norm:
                viol_sq += 1
        seen_b = False
        has_bb = False
        for l in w:
            if l == 2:
                seen_b = True
            elif l == -2 and seen_b:
                has_bb = True
                break
        if has_bb:
            matched_bb += 1
            if n0 + n1 >= cls.norm:
                viol_bb += 1
        for i in range(len(w) - 4):
            if w[i] == -2 and w[i + 1] == -2:
                j = i + 2
                while j < len(w) and abs(w[j]) == 1:
                    j += 1
                if j > i + 2 and j + 1 < len(w) and w[j] == 2 and w[j + 1] == 2:
                    matched_b2 += 1
                    if n0 + n1 >= cls.norm:
                        viol_b2 += 1
                    break
    n = len(sphere.classes)
    out.add(
        "lengths-subadditive",
        f"|g_0| + |g_1| <= |g| for all {n} elements of ball({radius})",
        viol_sub == 0,
        f"{viol_sub} violations",
    )
    out.add(
        "lengths-square",
        f"sections of g^2 have norm <= |g| off the level stabilizer ({checked_sq} cases)",
        viol_sq == 0,
        f"{viol_sq} violations",
    )
    out.add(
        "lengths-forbidden-bb",
        f"strict drop when the geodesic has b before b^-1 ({matched_bb} matches)",
        matched_bb > 0 and viol_bb == 0,
        f"{viol_bb} violations",
    )
    out.add(
        "lengths-forbidden-b2",
        f"strict drop when the geodesic contains b^-2 a^k b^2 ({matched_b2} matches)",
        matched_b2 > 0 and viol_b2 == 0,
        f"{viol_b2} violations",
    )
    counts = []
    for r in range(radius + 1):
        counts.append(len(ball(sys, r)))
    out.add(
        "lengths-growth",
        f"ball sizes strictly increase up to radius {radius}",
        all(x < y for x, y in zip(counts, counts[1:])),
        " ".join(map(str, counts)),
    )


def check_descent(out: _Collector, radius: int = 7) -> None:
    """Descent totality with replay over the ball, plus trajectory invariants."""
    sys = basilica()
    sphere = ball(sys, radius)
    ab_inputs = [c.element for c in sphere.classes if ab_image(c.element) == (1, 1)]
    ba_inputs = [c.element for c in sphere.classes if ab_image(c.element) == (1, -1)]
    fail_ab = fail_replay = 0
    monotone_ok = classes_ok = roots_ok = True
    for g in ab_inputs:
        try:
            cert = find_ab(g)
        except Exception:
            fail_ab += 1
            continue
        if not cert.replay():
            fail_replay += 1
        state = g
        prev = norm(state)
        for x in cert.steps:
            if ab_image(state) != (1, 1):
                classes_ok = False
            if state.root_perm().is_identity():
                roots_ok = False
            state = (state * state).section(x)
            n = norm(state)
            if n > prev:
                monotone_ok = False
            prev = n
    out.add(
        "descent-ab-total",
        f"find_ab terminates with a replayable witness on all {len(ab_inputs)} "
        f"(1,1)-elements of ball({radius})",
        fail_ab == 0 and fail_replay == 0,
        f"{fail_ab} failures, {fail_replay} bad replays",
    )
    out.add("descent-ab-monotone", "norms never increase along descent paths", monotone_ok)
    out.add(
        "descent-ab-class",
        "every intermediate stays in class (1,1) with nontrivial root",
        classes_ok and roots_ok,
    )
    fail_ba = fail_replay = 0
    alternation_ok = True
    for g in ba_inputs:
        try:
            cert = find_b_inv_a(g)
        except Exception:
            fail_ba += 1
            continue
        if not cert.replay():
            fail_replay += 1
        state = g
        expected = ab_image(g)
        for x in cert.steps:
            if ab_image(state) != expected:
                alternation_ok = False
            state = (state * state).section(x)
            expected = {(1, -1): (-1, 1), (-1, 1): (1, -1)}[expected]
    out.add(
        "descent-binva-total",
        f"find_b_inv_a terminates with a replayable witness on all {len(ba_inputs)} "
        f"(1,-1)-elements of ball({radius})",
        fail_ba == 0 and fail_replay == 0,
        f"{fail_ba} failures, {fail_replay} bad replays",
    )
    out.add(
        "descent-binva-alternation",
        "intermediate classes alternate (1,-1) <-> (-1,1) as the transition "
        "table predicts",
        alternation_ok,
    )


def check_persist(out: _Collector, depth: int = 4) -> None:
    """Persistence transition table plus replay of every walk up to depth."""
    sys = basilica()
    ab = sys.element("ab")
    ba = sys.element("ba")
    table_ok = (
        _psi_is(ab**2, True, ba, ba)
        and _psi_is(ba**2, True, ba, ab)
    )
    out.add("persist-table", "(ab)^2 = (ba, ba) and (ba)^2 = (ba, ab)", table_ok)
    ok = True
    vertices = [""]
    for _ in range(depth):
        vertices = [v + x for v in vertices for x in "01"]
        for v in vertices:
            k, final = persist_ab(ab, v)
            power = ab ** (2**k)
            if k != len(v) or power.act(v) != v or not equals(
                power.section_at_vertex(v), final
            ):
                ok = False
    out.add(
        "persist-replay",
        f"ab^(2^k) stabilizes every vertex up to depth {depth} with the "
        "predicted section",
        ok,
    )


def check_lifts(out: _Collector, rng: random.Random, samples: int = 20, depth: int = 3) -> None:
    """Support contract of rigid-stabilizer lifts for sampled B' elements."""
    sys = basilica()
    sphere = ball(sys, 6)
    pool = [
        c.element
        for c in sphere.classes
        if in_derived_subgroup(c.element) and not c.element.is_trivial()
    ]
    chosen = rng.sample(pool, min(samples, len(pool)))
    vertices = [""]
    frontier = [""]
    for _ in range(depth):
        frontier = [v + x for v in frontier for x in "01"]
        vertices.extend(frontier)
    ok = True
    bad = ""
    for w in chosen:
        for v in vertices:
            r = lift_section(w, v)
            level = len(v)
            for u in ["".join(p) for p in _level_vertices(level)]:
                if r.act(u) != u:
                    ok, bad = False, f"{w}@{v} moves {u}"
                    break
                sec = r.section_at_vertex(u)
                want = w if u == v else sys.identity()
                if not equals(sec, want):
                    ok, bad = False, f"{w}@{v} wrong section at {u}"
                    break
            if not ok:
                break
        if not ok:
            break
    out.add(
        "lifts-support",
        f"{len(chosen)} sampled derived-subgroup elements lift to every vertex "
        f"of depth <= {depth} with exact support",
        ok,
        bad,
    )


def _level_vertices(n: int):
    if n == 0:
        return [""]
    return ["".join(bits) for bits in _product01(n)]


def _product01(n: int):
    out = [[]]
    for _ in range(n):
        out = [p + [x] for p in out for x in "01"]
    return out


SUITES = {
    "psi1": lambda out, rng: check_psi1(out),
    "relators": check_relators,
    "commutators": lambda out, rng: check_commutators(out),
    "quotients": check_quotients,
    "lengths": lambda out, rng: check_lengths(out),
    "descent": lambda out, rng: check_descent(out),
    "persist": lambda out, rng: check_persist(out),
    "lifts": lambda out, rng: check_lifts(out, rng),
}


def run_checks(only=None, seed: int = 0) -> CheckReport:
    """Run the verification suites (all by default) into one report."""
    names = list(SUITES) if only is None else list(only)
    for name in names:
        if name not in SUITES:
            raise InputError(f"unknown suite {name!r}; choose from {sorted(SUITES)}")
    collector = _Collector()
    for name in names:
        SUITES[name](collector, random.Random(seed))
    ids = [r.check_id for r in collector.results]
    if len(set(ids)) != len(ids):
        raise AssertionError("duplicate check ids in report")
    return CheckReport(tuple(collector.results), seed)
