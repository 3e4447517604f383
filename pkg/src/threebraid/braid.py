"""Words in the 3-strand braid group and the almost-alternating calculus.

A word is a cyclic sequence of letters ``(generator, exponent)`` with
generator 1 or 2.  Alternating words have the shape
``s1^-a1 s2^b1 ... s1^-am s2^bm`` with all ``a_i, b_i >= 1``; changing a
single crossing in one produces an almost-alternating word, and a
rewriting procedure decides whether its closure is the unknot.  The same
procedure, run backwards, enumerates every alternating diagram that
contains an unknotting crossing.

All operations are pure functions on immutable values.
"""

from dataclasses import dataclass


class BraidSyntaxError(ValueError):
    """Raised for malformed braid word text."""


@dataclass(frozen=True)
class RawBraidWord:
    """Cyclic braid word; letters are (generator, exponent) with exponent != 0.

    Adjacent letters with the same generator are allowed: almost-alternating
    words such as s1^-2 s1 s2 genuinely need them.
    """

    letters: tuple

    def __post_init__(self):
        for g, e in self.letters:
            if g not in (1, 2):
                raise BraidSyntaxError(f"generator out of range: {g}")
            if e == 0:
                raise BraidSyntaxError("zero exponent letter")

    @property
    def is_identity(self):
        return not self.letters

    def total_exponent(self):
        """Number of crossings in the diagram."""
        return sum(abs(e) for _, e in self.letters)

    def to_json(self):
        return [[g, e] for g, e in self.letters]

    @classmethod
    def from_json(cls, data):
        return cls(tuple((int(g), int(e)) for g, e in data))


@dataclass(frozen=True)
class AltBraidWord:
    """Alternating 3-braid word, stored as positive pairs (a_i, b_i)."""

    pairs: tuple

    def __post_init__(self):
        if not self.pairs:
            raise ValueError("alternating word needs m >= 1")
        for a, b in self.pairs:
            if a < 1 or b < 1:
                raise ValueError("alternating word needs all a_i, b_i >= 1")

    @property
    def m(self):
        return len(self.pairs)

    @property
    def r(self):
        return sum(b for _, b in self.pairs)

    def total_exponent(self):
        return sum(a + b for a, b in self.pairs)

    def raw(self):
        letters = []
        for a, b in self.pairs:
            letters.append((1, -a))
            letters.append((2, b))
        return RawBraidWord(tuple(letters))

    @classmethod
    def canonical(cls, pairs):
        """The rotation whose signed exponent sequence (-a1, b1, ...) is least."""
        pairs = tuple((int(a), int(b)) for a, b in pairs)
        m = len(pairs)
        best = min(range(m), key=lambda s: tuple(
            (-pairs[(s + i) % m][0], pairs[(s + i) % m][1]) for i in range(m)))
        return cls(tuple(pairs[(best + i) % m] for i in range(m)))

    def to_json(self):
        return [[a, b] for a, b in self.pairs]

    @classmethod
    def from_json(cls, data):
        return cls.canonical(tuple((int(a), int(b)) for a, b in data))


@dataclass(frozen=True)
class CrossingRef:
    """A crossing of a word's diagram: which letter, and which strand of it."""

    letter_index: int
    strand_slot: int

    def to_json(self):
        return {"letter": self.letter_index, "slot": self.strand_slot}

    @classmethod
    def from_json(cls, data):
        return cls(int(data["letter"]), int(data["slot"]))


@dataclass(frozen=True)
class ReductionOutcome:
    """Endpoint of the almost-alternating rewriting.

    case A: a cancelling pair appeared; residual is the cancelled word in
            s1^-1, s2 only.
    case B: the word equals a full twist times the residual; h_factor is set.
    case C: the word itself stopped as s1 s2^k for k in {1, 2, 3}.
    """

    case: str
    residual: RawBraidWord
    trace: tuple
    h_factor: bool = False


@dataclass(frozen=True)
class TaggedDiagram:
    """An alternating word together with one unknotting crossing."""

    word: AltBraidWord
    crossing: CrossingRef


def parse_braid_word(text):
    """Parse whitespace-separated tokens 's1^e' / 's2^e' (no caret means 1).

    Adjacent letters with the same generator are merged and vanishing
    exponents dropped, so the result is the reduced spelling of the braid
    group element the text denotes.  An empty result is the identity word.

    >>> parse_braid_word("s1^-4 s2 s1^-1 s2^2").letters
    ((1, -4), (2, 1), (1, -1), (2, 2))
    >>> parse_braid_word("s1 s1^-1").is_identity
    True
    """
    letters = []
    for token in text.split():
        body, caret, exp = token.partition("^")
        if body not in ("s1", "s2"):
            raise BraidSyntaxError(f"unknown generator {body!r}")
        if caret:
            try:
                e = int(exp)
            except ValueError:
                raise BraidSyntaxError(f"malformed exponent {exp!r}") from None
        else:
            e = 1
        letters.append((int(body[1]), e))
    return RawBraidWord(tuple(_merge_linear(letters)))


def _merge_linear(letters):
    # each letter absorbs backwards, so cancelled blocks cascade on their own
    out = []
    for g, e in letters:
        while out and out[-1][0] == g:
            e += out.pop()[1]
        if e != 0:
            out.append((g, e))
    return out


def symbols_of(word):
    """The word as a flat tuple of signed crossings: +-1 for s1, +-2 for s2."""
    syms = []
    for g, e in word.letters:
        syms.extend([g if e > 0 else -g] * abs(e))
    return tuple(syms)


def word_from_symbols(symbols, cyclic=True):
    """Reassemble letters from crossings, merging same-generator runs.

    With cyclic=True the first and last runs merge across the seam, and the
    result is rotated so it does not straddle it.
    """
    syms = list(symbols)
    if not syms:
        return RawBraidWord(())
    if cyclic and any(abs(s) != abs(syms[0]) for s in syms):
        i = 0
        while abs(syms[i - 1]) == abs(syms[0]):
            i -= 1
        syms = syms[i:] + syms[:i]
    letters = [(abs(s), 1 if s > 0 else -1) for s in syms]
    return RawBraidWord(tuple(_merge_linear(letters)))


def cyclic_key(word):
    """Canonical key of a word under cyclic rotation (on crossings)."""
    syms = symbols_of(word)
    if not syms:
        return ()
    return min(tuple(syms[i:] + syms[:i]) for i in range(len(syms)))


PERM_S1 = (1, 0, 2)
PERM_S2 = (0, 2, 1)


def permutation_class(word):
    """Underlying permutation of the strands, as a tuple of images.

    Only exponent parity matters.  The closure is a knot exactly when this
    is a 3-cycle.
    """
    perm = (0, 1, 2)
    for g, e in word.letters:
        if e % 2:
            t = PERM_S1 if g == 1 else PERM_S2
            perm = tuple(t[perm[i]] for i in range(3))
    return perm


def is_knot_closure(word):
    return permutation_class(word) in ((1, 2, 0), (2, 0, 1))


def alt_canonical(word):
    """The alternating normal form of the word, if some rotation has one.

    Returns an AltBraidWord (canonical rotation) when the cyclic word is
    strictly alternating s1^-a s2^b ...; otherwise None.
    """
    syms = symbols_of(word)
    if not syms or any(s in (1, -2) for s in syms):
        return None
    letters = word_from_symbols(syms, cyclic=True).letters
    if len(letters) < 2 or len(letters) % 2:
        return None
    if letters[0][0] == 2:
        letters = letters[1:] + letters[:1]
    pairs = []
    for i in range(0, len(letters), 2):
        (g1, e1), (g2, e2) = letters[i], letters[i + 1]
        if (g1, g2) != (1, 2) or e1 >= 0 or e2 <= 0:
            return None
        pairs.append((-e1, e2))
    return AltBraidWord.canonical(pairs)


def swap_generators(word):
    """The generator swap s1^-1 <-> s2 (and s1 <-> s2^-1), letter by letter.

    This realizes the half-twist flip composed with mirroring; the closure
    of the image is the mirror of the closure of the input.
    """
    return RawBraidWord(tuple((3 - g, -e) for g, e in word.letters))


def change_crossing(word, ref):
    """Change one crossing of the standard diagram of an alternating word.

    The result is a RawBraidWord with that crossing's sign flipped in
    place; adjacent letters are deliberately left unmerged.
    """
    letters = word.raw().letters
    if not 0 <= ref.letter_index < len(letters):
        raise IndexError("crossing letter out of range")
    g, e = letters[ref.letter_index]
    k = ref.strand_slot
    if not 0 <= k < abs(e):
        raise IndexError("crossing slot out of range")
    sign = 1 if e > 0 else -1
    pieces = []
    if k:
        pieces.append((g, sign * k))
    pieces.append((g, -sign))
    if abs(e) - 1 - k:
        pieces.append((g, sign * (abs(e) - 1 - k)))
    new = letters[:ref.letter_index] + tuple(pieces) + letters[ref.letter_index + 1:]
    return RawBraidWord(new)


# The two length-reducing substitutions, on crossings:
#   s2 s1 s2 s1^-1 -> s1 s2      and      s1^-1 s2 s1 s2 -> s2 s1
_PATTERNS = (
    ((2, 1, 2, -1), (1, 2)),
    ((-1, 2, 1, 2), (2, 1)),
)


def _check_almost_alternating(syms):
    if syms.count(1) != 1:
        raise ValueError("word must contain exactly one s1 crossing")
    if any(s == -2 for s in syms):
        raise ValueError("word has an s2^-1 crossing; swap generators first")
    if 2 not in syms:
        raise ValueError("underlying word is not alternating (no s2 block)")


def reduce_almost_alternating(word):
    """Run the substitutions until stuck and classify the endpoint.

    The input must be cyclically almost-alternating on the s1 side: one
    s1^+1 crossing, everything else s1^-1 or s2.  Each substitution removes
    two crossings, so the run terminates well inside the 4*len^2 bound
    asserted here.
    """
    syms = list(symbols_of(word))
    _check_almost_alternating(syms)
    trace = []
    bound = 4 * len(syms) * len(syms)
    while True:
        assert len(trace) <= bound, "rewriting failed to terminate"
        n = len(syms)
        hit = None
        for p in range(n):
            for pat, repl in _PATTERNS:
                if n >= len(pat) and all(
                        syms[(p + i) % n] == pat[i] for i in range(len(pat))):
                    hit = (p, pat, repl)
                    break
            if hit:
                break
        if hit is None:
            break
        p, pat, repl = hit
        trace.append((pat, p))
        if p + len(pat) <= n:
            syms[p:p + len(pat)] = repl
        else:
            syms = syms[p:] + syms[:p]
            syms[:len(pat)] = repl
    return _classify(syms, tuple(trace))


def _classify(syms, trace):
    n = len(syms)
    i0 = syms.index(1)
    left, right = syms[(i0 - 1) % n], syms[(i0 + 1) % n]
    if n >= 2 and (left == -1 or right == -1):
        out = list(syms)
        j = (i0 + 1) % n if right == -1 else (i0 - 1) % n
        for k in sorted((i0, j), reverse=True):
            del out[k]
        return ReductionOutcome("A", word_from_symbols(out), trace)
    if (n >= 5
            and syms[(i0 - 1) % n] == syms[(i0 - 2) % n] == 2
            and syms[(i0 + 1) % n] == syms[(i0 + 2) % n] == 2):
        # s2^2 s1 s2^2 equals s1^-1 times a full twist; keep the twist as a flag
        drop = {i0, (i0 - 1) % n, (i0 - 2) % n, (i0 + 1) % n, (i0 + 2) % n}
        out = [s for k, s in enumerate(syms) if k not in drop]
        out.insert(0, -1)
        return ReductionOutcome("B", word_from_symbols(out), trace, h_factor=True)
    tail = syms[i0 + 1:] + syms[:i0]
    if not all(s == 2 for s in tail) or not 1 <= len(tail) <= 3:
        raise AssertionError(f"unclassifiable stuck word {syms}")
    return ReductionOutcome("C", word_from_symbols([1] + tail, cyclic=False), trace)


_UNKNOT_A = (-1, 2)
_UNKNOT_C = (1, 2)


def almost_alt_unknot_test(word):
    """True iff the closure of the almost-alternating word is the unknot.

    The closure must be a knot.  Case B endpoints always fail: there the
    closure has determinant at least five.
    """
    if not is_knot_closure(word):
        raise ValueError("closure is not a knot")
    out = reduce_almost_alternating(word)
    if out.case == "A":
        return cyclic_key(out.residual) == _UNKNOT_A
    if out.case == "C":
        return cyclic_key(out.residual) == _UNKNOT_C
    return False


def unknotting_crossings(word):
    """All blocks of an alternating word whose crossing change unknots.

    Returns one CrossingRef (slot 0) per block: crossings within a block
    are interchangeable.  s2-block changes are tested through the
    generator swap, which mirrors the closure and so preserves unknotting.
    """
    found = []
    for idx in range(2 * word.m):
        ref = CrossingRef(idx, 0)
        changed = change_crossing(word, ref)
        if idx % 2:
            changed = swap_generators(changed)
        if not is_knot_closure(changed):
            continue
        if almost_alt_unknot_test(changed):
            found.append(ref)
    return tuple(found)


# --- generation of all unknotting diagrams -------------------------------

_SWAPMAP = {-1: 2, 2: -1, 1: -2, -2: 1}


def _marked_transform(syms, mark, op):
    """Apply 'swap' / 'mirror' to marked crossings; mark follows its crossing."""
    if op == "swap":
        return [_SWAPMAP[s] for s in syms], mark
    if op == "mirror":
        return [_SWAPMAP[s] for s in reversed(syms)], len(syms) - 1 - mark
    raise ValueError(op)


def _tagged_from_marked(syms, mark):
    """Canonical TaggedDiagram from alternating crossings with one marked.

    When the word has a cyclic symmetry the mark is pushed to the least
    equivalent position, so rotation-equivalent inputs collapse.
    """
    word = alt_canonical(word_from_symbols(syms, cyclic=True))
    if word is None:
        return None
    target = symbols_of(word.raw())
    n = len(syms)
    positions = [(mark - off) % n for off in range(n)
                 if tuple(syms[(off + i) % n] for i in range(n)) == target]
    if not positions:
        raise AssertionError("mark tracking lost")
    letter, _ = _letter_of_crossing(word, min(positions))
    # crossings inside one block are interchangeable; slot 0 represents them
    return TaggedDiagram(word, CrossingRef(letter, 0))


def _letter_of_crossing(word, pos):
    at = 0
    for idx, (_, e) in enumerate(word.raw().letters):
        if pos < at + abs(e):
            return idx, pos - at
        at += abs(e)
    raise IndexError(pos)


def _diagram_orbit(tag):
    """Orbit of a tagged diagram under the swap and mirror symmetries."""
    syms = list(symbols_of(tag.word.raw()))
    base = sum(abs(e) for _, e in tag.word.raw().letters[:tag.crossing.letter_index])
    mark = base + tag.crossing.strand_slot
    orbit = []
    for ops in ((), ("swap",), ("mirror",), ("swap", "mirror")):
        s, m = syms, mark
        for op in ops:
            s, m = _marked_transform(s, m, op)
        orbit.append(_tagged_from_marked(s, m))
    return orbit


def _tag_key(tag):
    return (tag.word.pairs, tag.crossing.letter_index, tag.crossing.strand_slot)


def canonical_tag(tag):
    """Least representative of a tagged diagram under swap/mirror/rotation."""
    return min(_diagram_orbit(tag), key=_tag_key)


def enumerate_unknotting_words(max_total_exponent):
    """Every alternating diagram with an unknotting crossing, up to symmetry.

    Words are produced by running the unknot rewriting backwards: seed with
    s1^-1 s2 (plus a cancelling pair inserted somewhere) or s1 s2, then
    apply the two reverse substitutions breadth-first while the crossing
    count stays within the bound.  Each almost-alternating word found is
    converted to its alternating diagram with the changed crossing tagged;
    the output is deduplicated under rotation, generator swap and mirror.
    """
    if max_total_exponent < 2:
        raise ValueError("bound must be at least 2")
    seeds = set()
    base = (-1, 2)
    for gap in range(2):
        for pair in ((1, -1), (-1, 1)):
            s = list(base[:gap + 1]) + list(pair) + list(base[gap + 1:])
            seeds.add(min(tuple(s[i:] + s[:i]) for i in range(len(s))))
    seeds.add((1, 2))

    seen = set(seeds)
    frontier = sorted(seeds)
    words = list(frontier)
    while frontier:
        nxt = []
        for syms in frontier:
            if len(syms) + 2 > max_total_exponent:
                continue
            n = len(syms)
            for p in range(n):
                for pat, short in _PATTERNS:  # grow: occurrences of the short side
                    if all(syms[(p + i) % n] == short[i] for i in range(len(short))):
                        grown = list(syms)
                        if p + len(short) <= n:
                            grown[p:p + len(short)] = pat
                        else:
                            grown = grown[p:] + grown[:p]
                            grown[:len(short)] = pat
                        key = min(tuple(grown[i:] + grown[:i])
                                  for i in range(len(grown)))
                        if key not in seen:
                            seen.add(key)
                            nxt.append(key)
                            words.append(key)
        frontier = sorted(nxt)

    tagged = set()
    for syms in words:
        mark = syms.index(1)
        flipped = list(syms)
        flipped[mark] = -1
        tag = _tagged_from_marked(flipped, mark)
        if tag is None or tag.word.total_exponent() > max_total_exponent:
            continue
        tagged.add(canonical_tag(tag))
    return tuple(sorted(tagged, key=_tag_key))
