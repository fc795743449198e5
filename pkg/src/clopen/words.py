"""Exact eventually periodic words over finite alphabets.

Letters are short string tokens ("0", "1", "c", "abar", ...), words are
tuples of letters.  One-sided words are a finite head followed by a repeating
cycle; two-sided words additionally carry a repeating left cycle and remember
where coordinate 0 sits.  Every value is canonicalized on construction, so
equality and hashing are structural.

All values are immutable and all operations are pure.
"""

from __future__ import annotations

from typing import Callable, Iterable, Iterator, Sequence

Letter = str
Word = tuple  # tuple of letters


class WordError(ValueError):
    """Malformed word, alphabet or word expression."""


def as_word(letters) -> Word:
    """Coerce a string (one letter per character) or iterable to a word."""
    if isinstance(letters, str):
        return tuple(letters)
    return tuple(letters)


def primitive_root(w: Word) -> Word:
    """Shortest u with w == u * k."""
    n = len(w)
    for p in range(1, n):
        if n % p == 0 and w == w[:p] * (n // p):
            return w[:p]
    return w


def _rot_left(w: Word, k: int = 1) -> Word:
    k %= len(w)
    return w[k:] + w[:k]


def _rot_right(w: Word, k: int = 1) -> Word:
    return _rot_left(w, len(w) - (k % len(w)))


class Alphabet:
    """Ordered finite list of letter tokens; the order is used for sorting,
    walk tie-breaking and DOT labels."""

    def __init__(self, letters: Iterable[Letter]):
        self.letters: tuple[Letter, ...] = tuple(letters)
        if not self.letters:
            raise WordError("alphabet must be nonempty")
        if len(set(self.letters)) != len(self.letters):
            raise WordError("alphabet has duplicate letters")
        self._index = {a: i for i, a in enumerate(self.letters)}

    def __contains__(self, letter: Letter) -> bool:
        return letter in self._index

    def __len__(self) -> int:
        return len(self.letters)

    def __iter__(self) -> Iterator[Letter]:
        return iter(self.letters)

    def index(self, letter: Letter) -> int:
        try:
            return self._index[letter]
        except KeyError:
            raise WordError("letter %r not in alphabet" % (letter,)) from None

    def key(self, word: Sequence[Letter]) -> tuple[int, ...]:
        """Sort key for words, by letter order."""
        return tuple(self.index(a) for a in word)

    def __repr__(self):
        return "Alphabet(%s)" % (",".join(self.letters))


def numerals(n: int) -> list[Letter]:
    return [str(i) for i in range(n)]


# ---------------------------------------------------------------------------
# one-sided words


class UltWord:
    """Eventually periodic one-sided word head·cycle·cycle·...

    Canonical form: the cycle is primitive and the head is shortest (its last
    letter differs from the cycle letter that would be aligned with it), so
    two UltWords denote the same sequence iff they are equal.
    """

    __slots__ = ("head", "cycle")

    def __init__(self, head, cycle):
        head = list(as_word(head))
        cycle = primitive_root(as_word(cycle))
        if not cycle:
            raise WordError("cycle must be nonempty")
        while head and head[-1] == cycle[-1]:
            head.pop()
            cycle = _rot_right(cycle)
        self.head: Word = tuple(head)
        self.cycle: Word = cycle

    def __eq__(self, other):
        return (
            isinstance(other, UltWord)
            and self.head == other.head
            and self.cycle == other.cycle
        )

    def __hash__(self):
        return hash((self.head, self.cycle))

    def letter(self, i: int) -> Letter:
        if i < 0:
            raise WordError("one-sided words have no negative coordinates")
        if i < len(self.head):
            return self.head[i]
        return self.cycle[(i - len(self.head)) % len(self.cycle)]

    def prefix(self, n: int) -> Word:
        """The first n letters."""
        if n < 0:
            raise WordError("prefix length must be >= 0")
        h, c = self.head, self.cycle
        if n <= len(h):
            return h[:n]
        reps = (n - len(h)) // len(c) + 1
        return (h + c * reps)[:n]

    def drop(self, n: int) -> "UltWord":
        """The word with the first n letters removed."""
        if n <= len(self.head):
            return UltWord(self.head[n:], self.cycle)
        return UltWord((), _rot_left(self.cycle, n - len(self.head)))

    def factors(self, m: int) -> set:
        """Exactly the set of length-m factors; a window of |head|+|cycle|+m
        letters suffices by periodicity."""
        if m < 0:
            raise WordError("factor length must be >= 0")
        if m == 0:
            return {()}
        span = len(self.head) + len(self.cycle)
        buf = self.prefix(span + m)
        return {buf[i : i + m] for i in range(span)}

    def letters_used(self) -> set:
        return set(self.head) | set(self.cycle)

    def __repr__(self):
        return "UltWord(%s)" % format_ult(self)


# ---------------------------------------------------------------------------
# two-sided words

# A BiWord stores (left, core, right, start): the core occupies coordinates
# [start, start+|core|), the right cycle repeats from the core end on (letter
# at p is right[(p - end) % |right|]) and the left cycle repeats backwards
# below the core (letter at p is left[(p - start) % |left|]).  Canonical form
# trims the core maximally into both cycles and, when the core empties, slides
# the seam as far left as it goes; fully periodic words are re-anchored at 0.


class BiWord:
    """Eventually periodic two-sided word ...left·left·core·right·right...
    with an origin; coordinate 0 defaults to the first core letter."""

    __slots__ = ("left", "core", "right", "start")

    def __init__(self, left, core, right, start: int = 0):
        left = primitive_root(as_word(left))
        right = primitive_root(as_word(right))
        core = list(as_word(core))
        if not left or not right:
            raise WordError("both cycles must be nonempty")

        # trim the core into the right cycle, then into the left cycle
        while core and core[-1] == right[-1]:
            core.pop()
            right = _rot_right(right)
        while core and core[0] == left[0]:
            core.pop(0)
            start += 1
            left = _rot_left(left)

        if not core:
            same = all(
                left[(p - start) % len(left)] == right[(p - start) % len(right)]
                for p in range(-(len(left) * len(right)), len(left) * len(right))
            )
            if same:
                # fully periodic: re-anchor the unique cycle at coordinate 0
                cyc = tuple(right[(p - start) % len(right)] for p in range(len(right)))
                left = right = primitive_root(cyc)
                start = 0
            else:
                # slide the seam left while both patterns agree just below it
                while left[-1] == right[-1]:
                    start -= 1
                    left = _rot_right(left)
                    right = _rot_right(right)

        self.left: Word = left
        self.core: Word = tuple(core)
        self.right: Word = right
        self.start: int = start

    def __eq__(self, other):
        return (
            isinstance(other, BiWord)
            and self.left == other.left
            and self.core == other.core
            and self.right == other.right
            and self.start == other.start
        )

    def __hash__(self):
        return hash((self.left, self.core, self.right, self.start))

    @property
    def end(self) -> int:
        return self.start + len(self.core)

    def letter(self, p: int) -> Letter:
        if p < self.start:
            return self.left[(p - self.start) % len(self.left)]
        if p < self.end:
            return self.core[p - self.start]
        return self.right[(p - self.end) % len(self.right)]

    def window(self, a: int, b: int) -> Word:
        """Letters at coordinates a <= p < b."""
        return tuple(self.letter(p) for p in range(a, b))

    def shift(self, k: int) -> "BiWord":
        """The word w with w(i) = self(i+k)."""
        return BiWord(self.left, self.core, self.right, self.start - k)

    def factors(self, m: int) -> set:
        """Exactly the set of length-m factors (both tails are periodic, so a
        bounded window around the core suffices)."""
        if m < 0:
            raise WordError("factor length must be >= 0")
        if m == 0:
            return {()}
        a = self.start - len(self.left) - m
        b = self.end + len(self.right) + m
        buf = self.window(a, b)
        return {buf[i : i + m] for i in range(len(buf) - m + 1)}

    def letters_used(self) -> set:
        return set(self.left) | set(self.core) | set(self.right)

    def __repr__(self):
        return "BiWord(%s)" % format_bi(self)


class BlockWord:
    """Two-sided word with a periodic left tail and a lazily generated right
    tail made of concatenated finite blocks.

    Used for points whose right tail is an infinite block concatenation and
    not eventually periodic.  Supports exact window queries at any finite
    resolution; it has no canonical form, so comparisons are window-based.
    """

    __slots__ = ("left", "blocks", "start", "_buf", "_nblocks")

    def __init__(self, left, blocks: Callable[[int], Word], start: int = 0,
                 _shared=None):
        self.left: Word = primitive_root(as_word(left))
        self.blocks = blocks
        self.start = start
        if _shared is not None:
            self._buf, self._nblocks = _shared
        else:
            self._buf, self._nblocks = [], [0]

    def letter(self, p: int) -> Letter:
        if p < self.start:
            return self.left[(p - self.start) % len(self.left)]
        i = p - self.start
        while len(self._buf) <= i:
            blk = as_word(self.blocks(self._nblocks[0]))
            if not blk:
                raise WordError("block generator produced an empty block")
            self._buf.extend(blk)
            self._nblocks[0] += 1
        return self._buf[i]

    def window(self, a: int, b: int) -> Word:
        return tuple(self.letter(p) for p in range(a, b))

    def shift(self, k: int) -> "BlockWord":
        # the block tail stays anchored where it was; only the origin moves
        return BlockWord(self.left, self.blocks, self.start - k,
                         _shared=(self._buf, self._nblocks))

    def __repr__(self):
        return "BlockWord(start=%d)" % self.start


# ---------------------------------------------------------------------------
# spec-level operations (module API)


def prefix(w: UltWord, n: int) -> Word:
    return w.prefix(n)


def shift_bi(b: BiWord, k: int) -> BiWord:
    return b.shift(k)


def factors(x, m: int) -> set:
    return x.factors(m)


def eq(x, y) -> bool:
    """True iff the denoted sequences are equal (canonical comparison)."""
    if isinstance(x, UltWord) and isinstance(y, UltWord):
        return x == y
    if isinstance(x, BiWord) and isinstance(y, BiWord):
        return x == y
    raise WordError("cannot compare %r with %r" % (type(x), type(y)))


# ---------------------------------------------------------------------------
# text grammar
#
# one-sided:  u(v)^inf           e.g.  01(10)^inf
# two-sided:  (u)^inf t.s(v)^inf e.g.  (01)^inf.1(01)^inf,  (01)^inf1.(01)^inf
#
# Letters are single characters unless the word contains a comma, in which
# case letters are the comma-separated tokens (needed for letters like
# "abar" or numerals >= 10).  Parsing with an Alphabet also accepts
# comma-free strings of multi-character letters via greedy longest match.


def _split_letters(s: str, alphabet: Alphabet | None) -> Word:
    if s == "":
        return ()
    if "," in s:
        return tuple(tok for tok in s.split(",") if tok != "")
    if alphabet is not None and any(len(a) > 1 for a in alphabet):
        out = []
        i = 0
        toks = sorted(alphabet.letters, key=len, reverse=True)
        while i < len(s):
            for tok in toks:
                if s.startswith(tok, i):
                    out.append(tok)
                    i += len(tok)
                    break
            else:
                raise WordError("cannot tokenize %r over %r" % (s, alphabet))
        return tuple(out)
    return tuple(s)


def _needs_commas(parts: Iterable[Word], alphabet: Alphabet | None = None) -> bool:
    # serialization must stay parseable over the alphabet: once any letter
    # token of the alphabet is multi-character, every word uses commas
    if alphabet is not None and any(len(a) > 1 for a in alphabet):
        return True
    return any(len(a) > 1 for part in parts for a in part)


def _fmt(part: Word, commas: bool) -> str:
    return ",".join(part) if commas else "".join(part)


def format_ult(w: UltWord, alphabet: Alphabet | None = None) -> str:
    commas = _needs_commas([w.head, w.cycle], alphabet)
    head = _fmt(w.head, commas)
    cyc = "(%s)^inf" % _fmt(w.cycle, commas)
    if head and commas:
        return head + "," + cyc
    return head + cyc


def parse_ult(s: str, alphabet: Alphabet | None = None) -> UltWord:
    s = s.strip()
    if not s.endswith(")^inf"):
        raise WordError("one-sided word must end with (cycle)^inf: %r" % s)
    open_idx = s.rfind("(")
    if open_idx < 0:
        raise WordError("missing '(' in %r" % s)
    cyc = _split_letters(s[open_idx + 1 : -len(")^inf")], alphabet)
    head_str = s[:open_idx].rstrip(",")
    head = _split_letters(head_str, alphabet)
    return UltWord(head, cyc)


def format_bi(b: BiWord, alphabet: Alphabet | None = None) -> str:
    # render cycles re-anchored so the left one ends just before the printed
    # core and the right one starts just after it; the dot marks coordinate 0
    commas = _needs_commas([b.left, b.core, b.right], alphabet)
    pre = b.window(b.start, 0) if b.start < 0 else ()
    post = b.window(0, b.end) if b.end > 0 else ()
    left_anchor = min(b.start, 0)
    right_anchor = max(b.end, 0)
    lcyc = tuple(b.letter(left_anchor - len(b.left) + i) for i in range(len(b.left)))
    rcyc = tuple(b.letter(right_anchor + i) for i in range(len(b.right)))
    out = "(%s)^inf" % _fmt(lcyc, commas)
    if pre:
        out += ("," if commas else "") + _fmt(pre, commas)
    out += "."
    if post:
        out += _fmt(post, commas) + ("," if commas else "")
    out += "(%s)^inf" % _fmt(rcyc, commas)
    return out


def parse_bi(s: str, alphabet: Alphabet | None = None) -> BiWord:
    s = s.strip()
    if not s.startswith("("):
        raise WordError("two-sided word must start with (cycle)^inf: %r" % s)
    close = s.find(")^inf")
    if close < 0:
        raise WordError("missing ')^inf' in %r" % s)
    left = _split_letters(s[1:close], alphabet)
    rest = s[close + len(")^inf") :]
    dot = rest.find(".")
    if dot < 0:
        raise WordError("missing '.' (origin) in %r" % s)
    pre = _split_letters(rest[:dot].strip(","), alphabet)
    tail = rest[dot + 1 :]
    if not tail.endswith(")^inf"):
        raise WordError("two-sided word must end with (cycle)^inf: %r" % s)
    open_idx = tail.rfind("(")
    right = _split_letters(tail[open_idx + 1 : -len(")^inf")], alphabet)
    post = _split_letters(tail[:open_idx].strip(","), alphabet)
    return BiWord(left, pre + post, right, start=-len(pre))


def format_word(w: Word, alphabet: Alphabet | None = None) -> str:
    return ",".join(w) if _needs_commas([w], alphabet) else "".join(w)


def parse_prefix(s: str, alphabet: Alphabet | None = None) -> Word:
    return _split_letters(s.strip(), alphabet)
