"""Wreath-recursion engine for automorphism groups of regular rooted trees.

A generator system declares, for each generator, a permutation of the
d-letter alphabet (its action on the first letter of vertex words) and one
section word per letter (the automorphism induced on the subtree below that
letter).  Group elements are freely reduced words over the generators; all
arithmetic is exact integer/word computation.

Conventions, fixed once and validated by the test suite:

* left action: (gh) . v = g . (h . v);
* composition of sections: (gh)_x = g_{sigma_h(x)} h_x and
  sigma_{gh} = sigma_g o sigma_h, hence (g^-1)_x = (g_{sigma_g^-1(x)})^-1;
* section tuples are ordered with coordinate 0 leftmost (lexicographic
  vertex order);
* surface syntax: a lowercase generator name inverts to its uppercase,
  vertices are strings of digits, and `e` denotes the empty word.

Triviality of an element is decided by closing its word under taking
sections: the element is the identity iff every word in the closure has a
trivial root permutation.  For recursions whose section lengths per letter
sum to at most one (the built-in Basilica system is of this kind) the
closure only ever contains words no longer than the input, so the procedure
terminates; a closure-size guard protects against pathological custom
systems.
"""

from __future__ import annotations

import string
from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping, Sequence


class InputError(ValueError):
    """Raised for malformed inputs: bad letters, vertices, mixed systems."""


class WordParseError(InputError):
    """Raised when a surface-syntax word fails to parse; knows its column."""

    def __init__(self, message: str, column: int):
        super().__init__(f"{message} (column {column})")
        self.column = column


class PreconditionError(ValueError):
    """Raised when an operation's documented precondition is violated."""


class ConsistencyError(RuntimeError):
    """Raised when an internal invariant breaks; signals an engine bug."""


class BudgetExceededError(RuntimeError):
    """Raised when a search or closure exceeds its configured budget."""

    def __init__(self, message: str, partial=None):
        super().__init__(message)
        self.partial = partial


Word = tuple[int, ...]
# A letter is a signed 1-based generator index: +(i+1) for generator i,
# -(i+1) for its inverse.  A word is a tuple of letters, kept freely reduced.


def free_reduce(letters: Iterable[int]) -> Word:
    """Freely reduce a letter sequence; idempotent."""
    out: list[int] = []
    for l in letters:
        if out and out[-1] == -l:
            out.pop()
        else:
            out.append(l)
    return tuple(out)


def invert_word(word: Sequence[int]) -> Word:
    """Inverse word: reversed letters with flipped signs."""
    return tuple(-l for l in reversed(word))


def _letter_sort_key(letter: int) -> tuple[int, int]:
    # generator order first, positive before negative: a < a^-1 < b < b^-1
    return (abs(letter), 0 if letter > 0 else 1)


def word_sort_key(word: Sequence[int]) -> tuple:
    """Sort key realizing the length-then-lexicographic word order."""
    return (len(word), tuple(_letter_sort_key(l) for l in word))


class Perm:
    """An immutable permutation of {0..n-1} composing as a left action."""

    __slots__ = ("images",)

    def __init__(self, images: Iterable[int]):
        images = tuple(images)
        if sorted(images) != list(range(len(images))):
            raise InputError(f"not a permutation: {images!r}")
        object.__setattr__(self, "images", images)

    @classmethod
    def identity(cls, n: int) -> "Perm":
        return cls(range(n))

    @property
    def degree(self) -> int:
        return len(self.images)

    def __call__(self, x: int) -> int:
        return self.images[x]

    def __mul__(self, other: "Perm") -> "Perm":
        """Composition p*q with (p*q)(x) = p(q(x))."""
        if len(self.images) != len(other.images):
            raise InputError("permutation degrees differ")
        return Perm(self.images[y] for y in other.images)

    def __invert__(self) -> "Perm":
        inv = [0] * len(self.images)
        for x, y in enumerate(self.images):
            inv[y] = x
        return Perm(inv)

    def is_identity(self) -> bool:
        return all(x == y for x, y in enumerate(self.images))

    def cycles(self) -> list[tuple[int, ...]]:
        """Nontrivial cycles, each starting at its smallest point."""
        seen: set[int] = set()
        out = []
        for x in range(len(self.images)):
            if x in seen or self.images[x] == x:
                continue
            cyc = [x]
            y = self.images[x]
            while y != x:
                seen.add(y)
                cyc.append(y)
                y = self.images[y]
            out.append(tuple(cyc))
        return out

    def __eq__(self, other) -> bool:
        return isinstance(other, Perm) and self.images == other.images

    def __hash__(self) -> int:
        return hash(self.images)

    def __repr__(self) -> str:
        return f"Perm({list(self.images)})"

    def __str__(self) -> str:
        cycs = self.cycles()
        if not cycs:
            return "e"
        return "".join("(" + " ".join(map(str, c)) + ")" for c in cycs)


_NAME_ALPHABET = set(string.ascii_lowercase) - {"e"}  # `e` is the empty word


class GeneratorSystem:
    """A self-similar action: alphabet size plus recursion data per generator.

    ``generators`` is a sequence of (name, root permutation images, section
    words) triples; section words are given in surface syntax (e.g. ``"ab"``
    with ``"e"`` for the empty word).
    """

    def __init__(
        self,
        alphabet_size: int,
        generators: Sequence[tuple[str, Sequence[int], Sequence[str]]],
        closure_limit: int = 2_000_000,
    ):
        if alphabet_size < 2:
            raise InputError("alphabet size must be at least 2")
        self.alphabet_size = alphabet_size
        self.closure_limit = closure_limit

        names = [g[0] for g in generators]
        if not names:
            raise InputError("a generator system needs at least one generator")
        if len(set(names)) != len(names):
            raise InputError("generator names must be distinct")
        for name in names:
            if name not in _NAME_ALPHABET:
                raise InputError(
                    f"generator name {name!r} must be a single lowercase "
                    "letter other than 'e'"
                )
        self.names = tuple(names)
        self._index = {n: i for i, n in enumerate(names)}

        roots = []
        raw_sections = []
        for name, images, sections in generators:
            images = tuple(images)
            if len(images) != alphabet_size:
                raise InputError(f"generator {name!r}: root permutation size mismatch")
            roots.append(Perm(images).images)
            if len(sections) != alphabet_size:
                raise InputError(f"generator {name!r}: expected {alphabet_size} sections")
            raw_sections.append(tuple(sections))
        # sections reference generators by name, so parse after indexing
        sections_parsed = tuple(
            tuple(self.parse_word(s) for s in secs) for secs in raw_sections
        )

        # per signed letter: root permutation images and section words
        self._letter_root: dict[int, tuple[int, ...]] = {}
        self._letter_sections: dict[int, tuple[Word, ...]] = {}
        ident = tuple(range(alphabet_size))
        for i, (root, secs) in enumerate(zip(roots, sections_parsed)):
            inv_root = tuple(root.index(x) for x in range(alphabet_size))
            self._letter_root[i + 1] = root
            self._letter_root[-(i + 1)] = inv_root
            self._letter_sections[i + 1] = secs
            self._letter_sections[-(i + 1)] = tuple(
                invert_word(secs[inv_root[x]]) for x in range(alphabet_size)
            )
        self._identity_root = ident

        # transparent memo caches; results never depend on their state
        self._root_cache: dict[Word, tuple[int, ...]] = {}
        self._section_cache: dict[Word, tuple[Word, ...]] = {}
        self._trivial_cache: dict[Word, bool] = {(): True}
        self._level_cache: dict[tuple[Word, int], tuple[int, ...]] = {}

    # -- surface syntax ----------------------------------------------------

    def parse_word(self, text: str) -> Word:
        """Parse surface syntax (``"abA"``, ``"e"`` for empty) to a reduced word."""
        if text == "e" or text == "":
            return ()
        letters = []
        for col, ch in enumerate(text, start=1):
            if ch in self._index:
                letters.append(self._index[ch] + 1)
            elif ch.lower() in self._index and ch.isupper():
                letters.append(-(self._index[ch.lower()] + 1))
            else:
                raise WordParseError(f"unknown letter {ch!r}", col)
        return free_reduce(letters)

    def word_str(self, word: Sequence[int]) -> str:
        """Inverse of parse_word; the empty word prints as ``e``."""
        if not word:
            return "e"
        return "".join(
            self.names[l - 1] if l > 0 else self.names[-l - 1].upper() for l in word
        )

    def parse_vertex(self, vertex: str) -> tuple[int, ...]:
        if self.alphabet_size > 10:
            raise InputError("string vertices only supported for alphabets up to 10")
        out = []
        for col, ch in enumerate(vertex, start=1):
            if not ch.isdigit() or int(ch) >= self.alphabet_size:
                raise InputError(f"bad vertex letter {ch!r} at position {col}")
            out.append(int(ch))
        return tuple(out)

    # -- element construction ----------------------------------------------

    def element(self, word) -> "Element":
        """Element from surface syntax or a raw letter sequence."""
        if isinstance(word, str):
            return Element(self, self.parse_word(word))
        return Element(self, free_reduce(word))

    def identity(self) -> "Element":
        return Element(self, ())

    def generator(self, name: str) -> "Element":
        if name not in self._index:
            raise InputError(f"no generator named {name!r}")
        return Element(self, (self._index[name] + 1,))

    def generators(self) -> tuple["Element", ...]:
        return tuple(Element(self, (i + 1,)) for i in range(len(self.names)))

    # -- word-level recursion ----------------------------------------------

    def word_root(self, word: Word) -> tuple[int, ...]:
        """Root permutation images of a word."""
        cached = self._root_cache.get(word)
        if cached is not None:
            return cached
        acc = self._identity_root
        for l in word:
            lr = self._letter_root[l]
            acc = tuple(acc[y] for y in lr)
        self._root_cache[word] = acc
        return acc

    def word_sections(self, word: Word) -> tuple[Word, ...]:
        """All first-level section words of a word, freely reduced."""
        cached = self._section_cache.get(word)
        if cached is not None:
            return cached
        d = self.alphabet_size
        out = []
        for x in range(d):
            # (l1 .. ln)_x = (l1)_{y_(n-1)} ... (ln)_{y_0} with y_0 = x and
            # y_(k+1) = sigma of the k-th letter from the right applied to y_k
            y = x
            rev_parts = []
            for l in reversed(word):
                rev_parts.append(self._letter_sections[l][y])
                y = self._letter_root[l][y]
            stack: list[int] = []
            for part in reversed(rev_parts):
                for l in part:
                    if stack and stack[-1] == -l:
                        stack.pop()
                    else:
                        stack.append(l)
            out.append(tuple(stack))
        result = tuple(out)
        self._section_cache[word] = result
        return result

    def word_act(self, word: Word, vertex: tuple[int, ...]) -> tuple[int, ...]:
        out = []
        w = word
        for x in vertex:
            out.append(self.word_root(w)[x])
            w = self.word_sections(w)[x]
        return tuple(out)

    def word_level_perm(self, word: Word, n: int) -> tuple[int, ...]:
        """Images of the d^n level-n vertices in lexicographic order."""
        if n < 0:
            raise InputError("level must be non-negative")
        if n == 0:
            return (0,)
        key = (word, n)
        cached = self._level_cache.get(key)
        if cached is not None:
            return cached
        d = self.alphabet_size
        root = self.word_root(word)
        secs = self.word_sections(word)
        size = d ** (n - 1)
        out = [0] * (d * size)
        for x in range(d):
            sub = self.word_level_perm(secs[x], n - 1)
            base = x * size
            tbase = root[x] * size
            for i, v in enumerate(sub):
                out[base + i] = tbase + v
        result = tuple(out)
        self._level_cache[key] = result
        return result

    def word_is_trivial(self, word: Word) -> bool:
        """Decide triviality by section closure; exact."""
        cached = self._trivial_cache.get(word)
        if cached is not None:
            return cached
        queue: list[Word] = [word]
        parent: dict[Word, Word] = {}
        seen = {word}
        culprit = None
        i = 0
        while i < len(queue):
            u = queue[i]
            i += 1
            known = self._trivial_cache.get(u)
            if known is True:
                continue
            if known is False or self.word_root(u) != self._identity_root:
                culprit = u
                break
            for s in self.word_sections(u):
                if s and s not in seen:
                    seen.add(s)
                    parent[s] = u
                    queue.append(s)
            if len(seen) > self.closure_limit:
                raise BudgetExceededError(
                    "section closure exceeded the configured limit; "
                    "the recursion may not be length-contracting",
                    partial=len(seen),
                )
        if culprit is None:
            # sections of closure members stay inside the closure, so every
            # member is trivial along with the input
            for u in queue:
                self._trivial_cache[u] = True
            return True
        self._trivial_cache[culprit] = False
        u = culprit
        while u in parent:
            u = parent[u]
            self._trivial_cache[u] = False
        self._trivial_cache[word] = False
        return False

    # -- structural equality & serialization --------------------------------

    def spec(self) -> tuple:
        return (
            self.alphabet_size,
            tuple(
                (
                    self.names[i],
                    self._letter_root[i + 1],
                    self._letter_sections[i + 1],
                )
                for i in range(len(self.names))
            ),
        )

    def __eq__(self, other) -> bool:
        return isinstance(other, GeneratorSystem) and self.spec() == other.spec()

    def __hash__(self) -> int:
        return hash(self.spec())

    def __repr__(self) -> str:
        return f"GeneratorSystem(d={self.alphabet_size}, names={''.join(self.names)})"

    def dump(self) -> str:
        """Serialize in the group-definition file format."""
        lines = [f"alphabet {self.alphabet_size}"]
        for i, name in enumerate(self.names):
            perm = ",".join(map(str, self._letter_root[i + 1]))
            secs = ",".join(self.word_str(s) for s in self._letter_sections[i + 1])
            lines.append(f"gen {name} perm={perm} sections={secs}")
        return "\n".join(lines) + "\n"


def parse_system(text: str, closure_limit: int = 2_000_000) -> GeneratorSystem:
    """Parse the group-definition format (lines or ``;``-separated).

    Example::

        alphabet 2
        gen a perm=0,1 sections=e,b
        gen b perm=1,0 sections=a,e
    """
    statements = []
    for raw_line in text.replace(";", "\n").splitlines():
        line = raw_line.strip()
        if line and not line.startswith("#"):
            statements.append(line)
    if not statements:
        raise InputError("empty group definition")
    head = statements[0].split()
    if len(head) != 2 or head[0] != "alphabet":
        raise InputError("group definition must start with 'alphabet <d>'")
    try:
        d = int(head[1])
    except ValueError:
        raise InputError(f"bad alphabet size {head[1]!r}") from None
    gens = []
    for line in statements[1:]:
        parts = line.split()
        if len(parts) != 4 or parts[0] != "gen":
            raise InputError(f"bad generator line: {line!r}")
        name = parts[1]
        fields = {}
        for part in parts[2:]:
            if "=" not in part:
                raise InputError(f"bad generator field: {part!r}")
            key, value = part.split("=", 1)
            fields[key] = value
        if set(fields) != {"perm", "sections"}:
            raise InputError(f"generator line needs perm= and sections=: {line!r}")
        try:
            images = [int(t) for t in fields["perm"].split(",")]
        except ValueError:
            raise InputError(f"bad permutation {fields['perm']!r}") from None
        sections = fields["sections"].split(",")
        gens.append((name, images, sections))
    return GeneratorSystem(d, gens, closure_limit=closure_limit)


def load_system(path) -> GeneratorSystem:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_system(fh.read())


_BASILICA_DEFINITION = "alphabet 2; gen a perm=0,1 sections=e,b; gen b perm=1,0 sections=a,e"
_basilica_singleton: GeneratorSystem | None = None


def basilica() -> GeneratorSystem:
    """The Basilica system: a = (1, b) and b = sigma (a, 1) on the binary tree."""
    global _basilica_singleton
    if _basilica_singleton is None:
        _basilica_singleton = parse_system(_BASILICA_DEFINITION)
    return _basilica_singleton


def _same_system(g: "Element", h: "Element") -> GeneratorSystem:
    if g.system is h.system or g.system == h.system:
        return g.system
    raise InputError("elements belong to different generator systems")


class Element:
    """A group element: a freely reduced word over a generator system.

    ``==`` decides group equality (the word problem), so distinct words for
    the same automorphism compare equal; consequently elements are not
    hashable and algorithms key on level-action fingerprints instead.
    """

    __slots__ = ("system", "word")

    def __init__(self, system: GeneratorSystem, word: Sequence[int]):
        word = free_reduce(word)
        for l in word:
            if l == 0 or abs(l) > len(system.names):
                raise InputError(f"letter {l} outside the generator range")
        object.__setattr__(self, "system", system)
        object.__setattr__(self, "word", word)

    def __setattr__(self, name, value):
        raise AttributeError("Element is immutable")

    # -- arithmetic ----------------------------------------------------------

    def __mul__(self, other: "Element") -> "Element":
        _same_system(self, other)
        return Element(self.system, self.word + other.word)

    def inverse(self) -> "Element":
        return Element(self.system, invert_word(self.word))

    __invert__ = inverse

    def __pow__(self, n: int) -> "Element":
        if n < 0:
            return self.inverse() ** (-n)
        result = Element(self.system, ())
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    # -- recursion -----------------------------------------------------------

    def root_perm(self) -> Perm:
        """The permutation induced on the first letter of vertex words."""
        return Perm(self.system.word_root(self.word))

    def section(self, x: int) -> "Element":
        """The automorphism induced on the subtree below letter x."""
        if not 0 <= x < self.system.alphabet_size:
            raise InputError(f"letter {x} outside the alphabet")
        return Element(self.system, self.system.word_sections(self.word)[x])

    def sections(self) -> tuple["Element", ...]:
        return tuple(
            Element(self.system, w) for w in self.system.word_sections(self.word)
        )

    def section_at_vertex(self, vertex: str) -> "Element":
        """Iterated section along a vertex string; the empty vertex is the root."""
        w = self.word
        for x in self.system.parse_vertex(vertex):
            w = self.system.word_sections(w)[x]
        return Element(self.system, w)

    def act(self, vertex: str) -> str:
        """Image of a vertex under the left action."""
        path = self.system.parse_vertex(vertex)
        return "".join(map(str, self.system.word_act(self.word, path)))

    def level_perm(self, n: int) -> Perm:
        """The permutation of the d^n level-n vertices (lexicographic order)."""
        return Perm(self.system.word_level_perm(self.word, n))

    def is_trivial(self) -> bool:
        return self.system.word_is_trivial(self.word)

    def substitute(self, rule: Mapping[str, object]) -> "Element":
        """Apply a generator substitution letter-wise, then reduce.

        The rule must map every generator name to a word (surface syntax or
        Element); inverse letters map to inverted images.
        """
        images = []
        for name in self.system.names:
            if name not in rule:
                raise InputError(f"substitution rule misses generator {name!r}")
            value = rule[name]
            if isinstance(value, Element):
                _same_system(self, value)
                images.append(value.word)
            else:
                images.append(self.system.parse_word(value))
        letters: list[int] = []
        for l in self.word:
            img = images[abs(l) - 1]
            letters.extend(img if l > 0 else invert_word(img))
        return Element(self.system, letters)

    def portrait(self, depth: int) -> "Portrait":
        """Root permutations of all sections above the given depth."""
        if depth < 0:
            raise InputError("portrait depth must be non-negative")
        labels: dict[str, Perm] = {}
        frontier = [("", self.word)]
        for _ in range(depth):
            next_frontier = []
            for vertex, w in frontier:
                labels[vertex] = Perm(self.system.word_root(w))
                secs = self.system.word_sections(w)
                for x, s in enumerate(secs):
                    next_frontier.append((vertex + str(x), s))
            frontier = next_frontier
        return Portrait(depth, labels)

    # -- comparison ----------------------------------------------------------

    def __eq__(self, other) -> bool:
        if not isinstance(other, Element):
            return NotImplemented
        return equals(self, other)

    __hash__ = None  # group equality is not compatible with word hashing

    def __repr__(self) -> str:
        return f"Element({self.system.word_str(self.word)!r})"

    def __str__(self) -> str:
        return self.system.word_str(self.word)


def equals(g: Element, h: Element) -> bool:
    """Exact group equality: g equals h iff g h^-1 is the identity."""
    system = _same_system(g, h)
    if g.word == h.word:
        return True
    return system.word_is_trivial(free_reduce(g.word + invert_word(h.word)))


@dataclass(frozen=True)
class Portrait:
    """Finite portrait: root permutations at every vertex above ``depth``."""

    depth: int
    labels: dict[str, Perm]

    def label(self, vertex: str) -> Perm:
        if vertex not in self.labels:
            raise InputError(f"vertex {vertex!r} not covered by this portrait")
        return self.labels[vertex]

    def to_dot(self) -> str:
        """DOT graph with one node per labeled vertex."""
        lines = ["digraph portrait {"]
        for vertex in sorted(self.labels, key=lambda v: (len(v), v)):
            node = "root" if vertex == "" else f"v{vertex}"
            lines.append(f'  {node} [label="{self.labels[vertex]}"];')
        for vertex in sorted(self.labels, key=lambda v: (len(v), v)):
            if vertex:
                parent = "root" if len(vertex) == 1 else f"v{vertex[:-1]}"
                lines.append(f'  {parent} -> v{vertex} [label="{vertex[-1]}"];')
        lines.append("}")
        return "\n".join(lines) + "\n"


class ElementIndex:
    """Exact-equality registry keyed by level-action fingerprints.

    Fingerprint inequality soundly separates elements; claimed equality is
    always confirmed with the exact decision procedure.  Buckets use the
    level-``depth`` action and deepen to ``deep_depth`` on collision before
    the equals() confirmation.
    """

    def __init__(self, system: GeneratorSystem, depth: int = 6, deep_depth: int = 10):
        self.system = system
        self.depth = depth
        self.deep_depth = deep_depth
        self._buckets: dict[tuple[int, ...], list[int]] = {}
        self._words: list[Word] = []
        self.values: list[object] = []

    def __len__(self) -> int:
        return len(self._words)

    def word_at(self, index: int) -> Word:
        return self._words[index]

    def find_word(self, word: Word) -> int | None:
        """Index of the registered element equal to ``word``, if any."""
        sys = self.system
        bucket = self._buckets.get(sys.word_level_perm(word, self.depth))
        if not bucket:
            return None
        deep = None
        for idx in bucket:
            cand = self._words[idx]
            if cand == word:
                return idx
            if deep is None:
                deep = sys.word_level_perm(word, self.deep_depth)
            if sys.word_level_perm(cand, self.deep_depth) != deep:
                continue
            if sys.word_is_trivial(free_reduce(word + invert_word(cand))):
                return idx
        return None

    def insert_word(self, word: Word, value=None) -> int:
        """Register a word known to be a new class; returns its index."""
        idx = len(self._words)
        self._words.append(word)
        self.values.append(value)
        key = self.system.word_level_perm(word, self.depth)
        self._buckets.setdefault(key, []).append(idx)
        return idx

    def find_or_insert(self, word: Word, value=None) -> tuple[int, bool]:
        idx = self.find_word(word)
        if idx is not None:
            return idx, False
        return self.insert_word(word, value), True


def reduced_words(system: GeneratorSystem, length: int) -> Iterator[Word]:
    """All freely reduced words of exactly ``length`` in lexicographic order."""
    letters = sorted(
        [i + 1 for i in range(len(system.names))]
        + [-(i + 1) for i in range(len(system.names))],
        key=_letter_sort_key,
    )
    if length == 0:
        yield ()
        return

    def extend(prefix: Word) -> Iterator[Word]:
        for l in letters:
            if prefix and prefix[-1] == -l:
                continue
            yield prefix + (l,)

    frontier: Iterator[Word] = iter([()])
    for _ in range(length):
        frontier = (w for p in frontier for w in extend(p))
    yield from frontier
