"""Congruence-guided descent in the Basilica group and projection certificates.

The searches walk the move h -> section(h^2, child).  Every element whose
exponent-sum image is (1,1), (1,-1) or (-1,1) has odd b-exponent, hence a
nontrivial root permutation, so its square stabilizes the first level and
both sections are defined; squaring keeps section norms bounded by the
parent's norm and maps the image classes (1,1) -> (1,1) and
(1,-1) <-> (-1,1).  Breadth-first search with a visited set of canonical
geodesics therefore terminates, and it must reach the target (ab, resp.
b^-1 a) for inputs in the right class.  A successful run of k moves yields
the replayable witness: g^(2^k) stabilizes the traversed vertex and its
section there is the target.

The projection search chains these searches along the constructive pipeline
(coset solve for (1,1), descend to ab, Schreier generators of the vertex
stabilizer, coset solve for (1,-1), descend to b^-1 a, persistence of ab,
endgame through a^2 = (1, b^2) and b^2 = (a, a)) and rewrites every witness
back into a word over the subgroup's original generators.  Success exhibits
a vertex where the subgroup projection is the full group; it never claims
prodensity of the input.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import ENGINE
from .core import (
    BudgetExceededError,
    ConsistencyError,
    Element,
    InputError,
    PreconditionError,
    Word,
    free_reduce,
    invert_word,
)
from .norms import geodesic_rep
from .permgrp import (
    HWord,
    SubgroupHandle,
    hword_parse,
    hword_str,
    stabilizer_generator_pairs,
)
from .structure import ab_image, require_basilica

CLASS_AB = (1, 1)
CLASS_AB_INV = (1, -1)
CLASS_A_INV_B = (-1, 1)

_TRANSITION = {
    CLASS_AB: CLASS_AB,
    CLASS_AB_INV: CLASS_A_INV_B,
    CLASS_A_INV_B: CLASS_AB_INV,
}


def congruence_transition(cls: tuple[int, int]) -> tuple[int, int]:
    """Image class of both sections of g^2 for g in the given class."""
    if cls not in _TRANSITION:
        raise InputError(f"no transition defined for class {cls}")
    return _TRANSITION[cls]


@dataclass(frozen=True)
class DescentCertificate:
    """Replayable witness that a 2-power of ``start`` projects to ``target``.

    ``start``^(2^``exponent_log``) stabilizes ``vertex`` and its section
    there equals ``target``; the step list records the child chosen at each
    squaring.
    """

    start: Element
    steps: tuple[int, ...]
    exponent_log: int
    target: Element

    @property
    def vertex(self) -> str:
        return "".join(map(str, self.steps))

    def replay(self) -> bool:
        """Re-check the witness with nothing but the recursion engine."""
        power = self.start ** (2**self.exponent_log)
        if power.act(self.vertex) != self.vertex:
            return False
        return power.section_at_vertex(self.vertex) == self.target


def _descend(g: Element, target: Element, allowed: tuple, max_states: int) -> DescentCertificate:
    require_basilica(g)
    image = ab_image(g)
    if image not in allowed:
        raise PreconditionError(
            f"descent requires exponent image in {allowed}, got {image}"
        )
    start_word = geodesic_rep(g)
    queue: list[tuple[Word, tuple[int, ...]]] = [(start_word, ())]
    visited = {start_word}
    target_word = geodesic_rep(target)
    system = g.system
    i = 0
    while i < len(queue):
        word, path = queue[i]
        i += 1
        if word == target_word:
            return DescentCertificate(g, path, len(path), target)
        if system.word_root(word) == tuple(range(system.alphabet_size)):
            raise ConsistencyError(
                "descent state has trivial root permutation; class invariant broken"
            )
        square = free_reduce(word + word)
        for x, sec in enumerate(system.word_sections(square)):
            child = geodesic_rep(Element(system, sec))
            if child not in visited:
                visited.add(child)
                queue.append((child, path + (x,)))
        if len(visited) > max_states:
            raise BudgetExceededError(
                f"descent exceeded {max_states} states", partial=visited
            )
    raise ConsistencyError(
        "descent exhausted its reachable states without finding the target"
    )


def find_ab(g: Element, max_states: int = 100_000) -> DescentCertificate:
    """Descend from g (image (1,1)) to an exact projection equal to ab."""
    system = require_basilica(g)
    target = system.element("ab")
    return _descend(g, target, (CLASS_AB,), max_states)


def find_b_inv_a(g: Element, max_states: int = 100_000) -> DescentCertificate:
    """Descend from g (image (1,-1) or (-1,1)) to a projection equal to b^-1 a.

    Only positive powers are tracked: from the (1,-1) class the first
    squaring lands in (-1,1) and the second returns, so certificates always
    use exponent 2^k.
    """
    system = require_basilica(g)
    target = system.element("Ba")
    return _descend(g, target, (CLASS_AB_INV, CLASS_A_INV_B), max_states)


_PERSIST = {"ab": {0: "ba", 1: "ba"}, "ba": {0: "ba", 1: "ab"}}


def persist_ab(start: Element, vertex: str) -> tuple[int, Element]:
    """Walk ab (or ba) down a vertex by squaring; returns (k, final element).

    The transition table is ab -> ba at either child and ba -> (ba, ab);
    start^(2^k) with k = |vertex| stabilizes the vertex with the returned
    section.
    """
    system = require_basilica(start)
    path = system.parse_vertex(vertex)
    if start == system.element("ab"):
        state = "ab"
    elif start == system.element("ba"):
        state = "ba"
    else:
        raise InputError("persistence starts from ab or ba")
    for x in path:
        state = _PERSIST[state][x]
    return len(path), system.element(state)


@dataclass(frozen=True)
class NotInLattice:
    """Failure value of a coset solve: the target misses this lattice."""

    basis: tuple[tuple[int, int], ...]


def _lattice_reduce(columns: list[list[int]]):
    """Column-reduce a 2 x k integer matrix, tracking the transformation.

    Returns (pivot vectors [(g1, y)] and [(0, g2)] as available, coefficient
    rows of the transformation for both pivots).
    """
    k = len(columns)
    work = [list(c) for c in columns]
    trans = [[1 if i == j else 0 for j in range(k)] for i in range(k)]

    def combine(j, j0, q):
        work[j][0] -= q * work[j0][0]
        work[j][1] -= q * work[j0][1]
        for t in range(k):
            trans[j][t] -= q * trans[j0][t]

    def reduce_row(row, exclude):
        while True:
            nz = [j for j in range(k) if j not in exclude and work[j][row] != 0]
            if not nz:
                return None
            if len(nz) == 1:
                return nz[0]
            j0 = min(nz, key=lambda j: abs(work[j][row]))
            for j in nz:
                if j != j0:
                    combine(j, j0, work[j][row] // work[j0][row])

    piv0 = reduce_row(0, set())
    piv1 = reduce_row(1, {piv0} if piv0 is not None else set())
    for piv in (piv0, piv1):
        if piv is not None and work[piv][0 if piv == piv0 else 1] < 0:
            work[piv][0] = -work[piv][0]
            work[piv][1] = -work[piv][1]
            for t in range(k):
                trans[piv][t] = -trans[piv][t]
    return work, trans, piv0, piv1


def solve_coset(H: SubgroupHandle, target: tuple[int, int]):
    """Express an exponent-sum target over H's generators, if possible.

    Returns an hword realizing the target, or NotInLattice carrying a basis
    of the subgroup's exponent-sum lattice.
    """
    require_basilica(H.system)
    columns = [list(ab_image(g)) for g in H.generators]
    if not columns:
        if target == (0, 0):
            return ()
        return NotInLattice(())
    work, trans, piv0, piv1 = _lattice_reduce(columns)
    basis = []
    if piv0 is not None:
        basis.append(tuple(work[piv0]))
    if piv1 is not None:
        basis.append(tuple(work[piv1]))

    def fail():
        return NotInLattice(tuple(basis))

    t0, t1 = target
    coeffs = [0] * len(columns)
    if piv0 is None:
        if t0 != 0:
            return fail()
        alpha = 0
    else:
        g1, y = work[piv0]
        if t0 % g1 != 0:
            return fail()
        alpha = t0 // g1
        t1 -= alpha * y
        for t in range(len(columns)):
            coeffs[t] += alpha * trans[piv0][t]
    if piv1 is None:
        if t1 != 0:
            return fail()
    else:
        g2 = work[piv1][1]
        if t1 % g2 != 0:
            return fail()
        beta = t1 // g2
        for t in range(len(columns)):
            coeffs[t] += beta * trans[piv1][t]
    letters: list[int] = []
    for i, c in enumerate(coeffs):
        letters.extend([i + 1 if c > 0 else -(i + 1)] * abs(c))
    hword = free_reduce(letters)
    realized = ab_image(H.evaluate(hword))
    if realized != target:
        raise ConsistencyError(f"coset solve produced image {realized} != {target}")
    return hword


def _hword_pow(hword: HWord, n: int) -> HWord:
    return free_reduce(hword * n)


@dataclass(frozen=True)
class ProdenseCertificate:
    """Checkable witness that the subgroup's projection at ``vertex`` is the
    whole group: two expressions over the original subgroup generators whose
    sections at the vertex are a and b."""

    subgroup: tuple[str, ...]
    stages: tuple[str, ...]
    vertex: str
    expr_a: HWord
    expr_b: HWord
    budgets: dict
    engine: str = ENGINE

    def serialize(self) -> str:
        lines = [
            "basilica-certificate: 1",
            f"engine: {self.engine}",
            f"subgroup: {', '.join(self.subgroup)}",
            f"vertex: {self.vertex or 'e'}",
            f"expr-a: {hword_str(self.expr_a)}",
            f"expr-b: {hword_str(self.expr_b)}",
            f"budget-states: {self.budgets['states']}",
            f"budget-schreier: {self.budgets['schreier']}",
            f"budget-depth: {self.budgets['depth']}",
        ]
        lines.extend(f"stage{i + 1}: {s}" for i, s in enumerate(self.stages))
        return "\n".join(lines) + "\n"


def parse_certificate(text: str) -> ProdenseCertificate:
    fields: dict[str, str] = {}
    stages: list[tuple[int, str]] = []
    for raw in text.splitlines():
        line = raw.strip()
        if not line:
            continue
        if ":" not in line:
            raise InputError(f"bad certificate line: {line!r}")
        key, value = line.split(":", 1)
        key = key.strip()
        value = value.strip()
        if key.startswith("stage"):
            try:
                stages.append((int(key[5:]), value))
            except ValueError:
                raise InputError(f"bad stage label {key!r}") from None
        else:
            fields[key] = value
    required = {
        "basilica-certificate",
        "engine",
        "subgroup",
        "vertex",
        "expr-a",
        "expr-b",
        "budget-states",
        "budget-schreier",
        "budget-depth",
    }
    missing = required - set(fields)
    if missing:
        raise InputError(f"certificate misses fields: {sorted(missing)}")
    if fields["basilica-certificate"] != "1":
        raise InputError("unsupported certificate version")
    subgroup = tuple(w.strip() for w in fields["subgroup"].split(",") if w.strip())
    ngens = len(subgroup)
    vertex = fields["vertex"]
    if vertex == "e":
        vertex = ""
    try:
        budgets = {
            "states": int(fields["budget-states"]),
            "schreier": int(fields["budget-schreier"]),
            "depth": int(fields["budget-depth"]),
        }
    except ValueError:
        raise InputError("bad budget value") from None
    stages.sort()
    return ProdenseCertificate(
        subgroup=subgroup,
        stages=tuple(s for _, s in stages),
        vertex=vertex,
        expr_a=hword_parse(fields["expr-a"], ngens),
        expr_b=hword_parse(fields["expr-b"], ngens),
        budgets=budgets,
        engine=fields["engine"],
    )


@dataclass(frozen=True)
class FailureReport:
    """Negative or aborted outcome of the projection search."""

    stage: int
    reason: str
    lattice: tuple[tuple[int, int], ...] | None
    budgets: dict
    trace: tuple[str, ...] = ()

    def describe(self) -> str:
        parts = [f"stage={self.stage}", self.reason]
        if self.lattice is not None:
            basis = " ".join(f"({v[0]},{v[1]})" for v in self.lattice) or "(empty)"
            parts.append(f"lattice={basis}")
        return " ".join(parts)


def prodense_projection_search(
    H: SubgroupHandle,
    max_states: int = 100_000,
    schreier_cap: int = 64,
    max_depth: int = 16,
):
    """Run the projection pipeline; a certificate on success, else a report.

    Stages: (1) solve the (1,1) coset over H, (2) descend it to ab at a
    vertex v, (3) compute stabilizer generators of v with their sections,
    (4) solve the (1,-1) coset over the projection, (5) descend to b^-1 a at
    v', (6) persist ab down v' and finish through a^2 or b^2.  Every witness
    is rewritten over H's original generators, so the certificate can be
    replayed without trusting any of this code.
    """
    require_basilica(H.system)
    system = H.system
    budgets = {"states": max_states, "schreier": schreier_cap, "depth": max_depth}
    stages: list[str] = []

    def fail(stage, reason, lattice=None):
        return FailureReport(stage, reason, lattice, budgets, tuple(stages))

    # stage 1: an element of H congruent to ab
    solved = solve_coset(H, CLASS_AB)
    if isinstance(solved, NotInLattice):
        return fail(1, "target (1,1) not in the exponent lattice", solved.basis)
    expr_h = solved
    h = H.evaluate(expr_h)
    stages.append(f"coset target (1,1) expr {hword_str(expr_h)}")

    # stage 2: descend to ab at v
    try:
        cert_ab = find_ab(h, max_states=max_states)
    except BudgetExceededError as exc:
        return fail(2, f"descent budget exhausted ({exc})")
    v = cert_ab.vertex
    k = cert_ab.exponent_log
    if len(v) > max_depth:
        return fail(2, f"descent vertex deeper than {max_depth}")
    expr_ab_at_v = _hword_pow(expr_h, 2**k)
    stages.append(f"descend-ab vertex {v or 'e'} k {k}")

    # stage 3: generators of the projection H_v, paired with expressions
    pairs = stabilizer_generator_pairs(H, v, cap=schreier_cap)
    proj_gens: list[Element] = []
    proj_exprs: list[HWord] = []
    for elem, hw in pairs:
        sec = elem.section_at_vertex(v)
        if not sec.is_trivial():
            proj_gens.append(sec)
            proj_exprs.append(hw)
    stages.append(f"stabilizer vertex {v or 'e'} generators {len(proj_gens)}")
    projection = SubgroupHandle(system, proj_gens)

    # stage 4: an element of H_v congruent to a b^-1
    solved = solve_coset(projection, CLASS_AB_INV)
    if isinstance(solved, NotInLattice):
        return fail(4, "target (1,-1) not in the exponent lattice", solved.basis)
    hprime = projection.evaluate(solved)
    expr_hprime = free_reduce(
        tuple(
            l
            for letter in solved
            for l in (proj_exprs[letter - 1] if letter > 0 else invert_word(proj_exprs[-letter - 1]))
        )
    )
    stages.append(f"coset target (1,-1) expr {hword_str(solved)} over stabilizer generators")

    # stage 5: descend to b^-1 a at v'
    try:
        cert_ba = find_b_inv_a(hprime, max_states=max_states)
    except BudgetExceededError as exc:
        return fail(5, f"descent budget exhausted ({exc})")
    vprime = cert_ba.vertex
    kprime = cert_ba.exponent_log
    if len(v) + len(vprime) + 2 > max_depth:
        return fail(5, f"combined vertex deeper than {max_depth}")
    expr_binva = _hword_pow(expr_hprime, 2**kprime)
    stages.append(f"descend-binva vertex {vprime or 'e'} k {kprime}")

    # stage 6: persist ab down v' and assemble the endgame
    _, final = persist_ab(system.element("ab"), vprime)
    expr_persist = _hword_pow(expr_ab_at_v, 2 ** len(vprime))
    if final == system.element("ab"):
        # ab and b^-1 a give a^2 = (1, b^2), b^2 = (a, a): descend "11"
        vertex = v + vprime + "11"
        expr_a = free_reduce(expr_persist + expr_binva)
        expr_ab_deep = _hword_pow(expr_persist, 4)
        final_tag = "ab"
    else:
        # ba and b^-1 a give b^2 = (a, a): descend "1"
        vertex = v + vprime + "1"
        expr_a = free_reduce(expr_persist + invert_word(expr_binva))
        expr_ab_deep = _hword_pow(expr_persist, 2)
        final_tag = "ba"
    expr_b = free_reduce(invert_word(expr_a) + expr_ab_deep)
    stages.append(f"persist vertex {vprime or 'e'} final {final_tag}")

    certificate = ProdenseCertificate(
        subgroup=H.words(),
        stages=tuple(stages),
        vertex=vertex,
        expr_a=expr_a,
        expr_b=expr_b,
        budgets=budgets,
    )
    if not verify_certificate(H, certificate):
        raise ConsistencyError("search assembled a certificate that fails replay")
    return certificate


def verify_certificate(H: SubgroupHandle, cert: ProdenseCertificate) -> bool:
    """Independent replay: nothing is re-derived, only checked.

    Confirms the expressions use H's generators, stabilize the vertex
    pointwise along the path, and section to a and b.  Malformed
    certificates raise InputError; honest mismatches return False.
    """
    system = H.system
    require_basilica(system)
    if tuple(cert.subgroup) != H.words():
        return False
    for expr in (cert.expr_a, cert.expr_b):
        for l in expr:
            if l == 0 or abs(l) > len(H.generators):
                raise InputError("certificate expression uses a foreign generator")
    system.parse_vertex(cert.vertex)
    a = system.generator("a")
    b = system.generator("b")
    for expr, target in ((cert.expr_a, a), (cert.expr_b, b)):
        elem = H.evaluate(expr)
        if elem.act(cert.vertex) != cert.vertex:
            return False
        if elem.section_at_vertex(cert.vertex) != target:
            return False
    return True
