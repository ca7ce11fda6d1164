"""Word norms, geodesic representatives and ball enumeration.

Balls are built by breadth-first search over freely reduced words in
length-then-lexicographic order (a < a^-1 < b < b^-1).  Each new word is
assigned to its group-element class through a level-action fingerprint
bucket confirmed by the exact decision procedure, so the first word reaching
a class is automatically its lexicographically least geodesic.  The registry
grows radius by radius and is shared per system, which keeps norm queries
from the descent searches cheap.
"""

from __future__ import annotations

from dataclasses import dataclass

from .core import Element, ElementIndex, GeneratorSystem, InputError, Word


@dataclass(frozen=True)
class BallClass:
    """One group element of the ball: canonical geodesic plus its norm."""

    element: Element
    norm: int

    @property
    def word(self) -> Word:
        return self.element.word


@dataclass(frozen=True)
class Ball:
    """All group elements of norm at most ``radius``, in discovery order."""

    radius: int
    classes: tuple[BallClass, ...]

    def __len__(self) -> int:
        return len(self.classes)

    def table(self) -> str:
        """Tabular export: one `norm<TAB>geodesic` line per class."""
        lines = [
            f"{c.norm}\t{c.element.system.word_str(c.word)}" for c in self.classes
        ]
        return "\n".join(lines) + "\n"


class _BallRegistry:
    """Incremental ball of one system; deterministic expansion order."""

    def __init__(self, system: GeneratorSystem):
        self.system = system
        self.index = ElementIndex(system)
        self.norms: list[int] = []
        self.radius_done = -1
        self._frontier: list[Word] = []

    def extend(self, radius: int) -> None:
        while self.radius_done < radius:
            r = self.radius_done + 1
            words = [()] if r == 0 else list(self._expand(self._frontier))
            for w in words:
                idx, new = self.index.find_or_insert(w)
                if new:
                    self.norms.append(r)
            self._frontier = words
            self.radius_done = r

    def _expand(self, frontier):
        letters = sorted(
            [i + 1 for i in range(len(self.system.names))]
            + [-(i + 1) for i in range(len(self.system.names))],
            key=lambda l: (abs(l), 0 if l > 0 else 1),
        )
        for w in frontier:
            last = w[-1] if w else 0
            for l in letters:
                if l != -last:
                    yield w + (l,)

    def find_norm(self, word: Word) -> int | None:
        idx = self.index.find_word(word)
        return None if idx is None else self.norms[idx]

    def class_at(self, idx: int) -> BallClass:
        return BallClass(Element(self.system, self.index.word_at(idx)), self.norms[idx])


def _registry(system: GeneratorSystem) -> _BallRegistry:
    reg = getattr(system, "_ball_registry", None)
    if reg is None:
        reg = _BallRegistry(system)
        system._ball_registry = reg
    return reg


def ball(system: GeneratorSystem, radius: int) -> Ball:
    """The ball of the given radius; deterministic class ordering."""
    if radius < 0:
        raise InputError("radius must be non-negative")
    reg = _registry(system)
    reg.extend(radius)
    classes = tuple(
        reg.class_at(i) for i in range(len(reg.norms)) if reg.norms[i] <= radius
    )
    return Ball(radius, classes)


def norm(g: Element) -> int:
    """Minimal word length representing g; zero exactly for the identity."""
    reg = _registry(g.system)
    for r in range(len(g.word) + 1):
        reg.extend(r)
        found = reg.find_norm(g.word)
        if found is not None:
            return found
    raise AssertionError("ball enumeration missed a word of its own radius")


def geodesic_rep(g: Element) -> Word:
    """Lexicographically least word of length norm(g) equal to g."""
    reg = _registry(g.system)
    norm(g)
    idx = reg.index.find_word(g.word)
    return reg.index.word_at(idx)


def canonical(g: Element) -> Element:
    """The element rewritten on its canonical geodesic word."""
    return Element(g.system, geodesic_rep(g))
