"""Goeritz forms of alternating 3-braid closures and classical invariants.

The closure of ``s1^-a1 s2^b1 ... s1^-am s2^bm`` is checkerboard colored
with every crossing incidence +1 and the region meeting the braid axis
marked.  The white graph is then an r-cycle, r = sum(b_i), with parallel
edges to the marked hub: vertex ``1 + b_1 + ... + b_{l-1}`` carries the
``a_l`` crossings of the l-th s1 block.  The resulting symmetric form is
negative definite and its determinant is the knot determinant.

Signatures follow the convention that positive knots have negative
signature.  Externally supplied matrices are assumed to come from the
all-positive-incidence convention above.
"""

import json
from dataclasses import dataclass

from . import linalg
from .braid import AltBraidWord, CrossingRef, is_knot_closure


@dataclass(frozen=True)
class GoeritzForm:
    """Symmetric negative-definite form with crossing bookkeeping.

    region_map[i] lists the hub crossings of white region i (empty for
    regions away from the s1 blocks); cycle_edges[i] is the s2 crossing
    shared by regions i and i+1 (mod r).  Both are None for matrices
    ingested without a diagram.
    """

    matrix: tuple
    region_map: tuple = None
    cycle_edges: tuple = None
    word: AltBraidWord = None

    @property
    def r(self):
        return len(self.matrix)

    def to_json(self):
        return {"goeritz": [list(row) for row in self.matrix]}


def goeritz_3braid(word):
    """Goeritz form of the standard closure diagram of an alternating word.

    >>> goeritz_3braid(AltBraidWord(((4, 1), (1, 2)))).matrix
    ((-6, 1, 1), (1, -3, 1), (1, 1, -2))
    """
    pairs = word.pairs
    r = word.r
    hub = {}           # row index -> s1 block number l (0-based)
    at = 1
    for l, (_, b) in enumerate(pairs):
        hub[at] = l
        at += b
    if r == 1:
        matrix = ((-pairs[0][0],),)
    elif r == 2:
        a1 = pairs[0][0]
        a2 = pairs[1][0] if len(pairs) == 2 else 0
        matrix = ((-a1 - 2, 2), (2, -a2 - 2))
    else:
        rows = []
        for i in range(1, r + 1):
            row = []
            for j in range(1, r + 1):
                if i == j:
                    row.append(-pairs[hub[i]][0] - 2 if i in hub else -2)
                elif abs(i - j) in (1, r - 1):
                    row.append(1)
                else:
                    row.append(0)
            rows.append(tuple(row))
        matrix = tuple(rows)

    region_map = []
    for i in range(1, r + 1):
        if i in hub:
            l = hub[i]
            region_map.append(tuple(
                CrossingRef(2 * l, k) for k in range(pairs[l][0])))
        else:
            region_map.append(())
    # the s2 crossings in word order: crossing i sits between regions i, i+1
    cycle = []
    for l, (_, b) in enumerate(pairs):
        for k in range(b):
            cycle.append(CrossingRef(2 * l + 1, k))
    form = GoeritzForm(matrix, tuple(region_map), tuple(cycle), word)
    assert linalg.is_negative_definite(matrix)
    return form


def determinant(form):
    """Knot determinant: |det| of the Goeritz matrix, exactly."""
    m = form.matrix if isinstance(form, GoeritzForm) else form
    return abs(linalg.det(m))


def signature_normal_form(d, word):
    """Signature of the closure of (full twist)^d times the alternating word."""
    return -4 * d + sum(a - b for a, b in word.pairs)


def signature_torus3(q):
    """Signature of the (3, q) torus knot, q not divisible by 3."""
    if q % 3 == 0:
        raise ValueError("T(3, q) needs q coprime to 3")
    for d in range(0, abs(q) // 6 + 2):
        for s, val in ((1, -8 * d), (-1, -8 * d),
                       (2, -8 * d - 2), (-2, -8 * d + 2)):
            if 6 * d + s == q:
                return val
            if -(6 * d + s) == q:
                return -val
    raise AssertionError(q)


def s_invariant_normal_form(d, word):
    """Rasmussen invariant of the closure of (full twist)^d times the word."""
    s0 = -signature_normal_form(0, word)
    if d > 0:
        return 6 * d - 2 + s0
    if d < 0:
        return 6 * d + 2 + s0
    return s0


def s_invariant_torus3(q):
    """Rasmussen invariant of T(3, q): 2(q-1) for q >= 1, 2(q+1) for q <= -1."""
    if q == 0:
        raise ValueError("q must be nonzero")
    return 2 * (q - 1) if q >= 1 else 2 * (q + 1)


def d_bound_predicate(d, sigma):
    """Fast pre-filter: an unknotting-number-one normal form has d in {-1,0,1,2}.

    Callers mirror first so that sigma >= 0.
    """
    if sigma < 0:
        raise ValueError("mirror first: predicate wants sigma >= 0")
    return d in (-1, 0, 1, 2)


def mirror_word(word):
    """Alternating word of the mirror diagram.

    Reverse the pair sequence and swap the roles of the a's and b's; the
    signature negates and the determinant is preserved.
    """
    return AltBraidWord.canonical(tuple((b, a) for a, b in reversed(word.pairs)))


@dataclass(frozen=True)
class InvariantRecord:
    """Classical invariants of a knot closure: D = 2n - 1 and sigma.

    D must be odd and congruent to sigma + 1 mod 4.
    """

    determinant: int
    signature: int
    s_invariant: int
    n: int

    def __post_init__(self):
        if self.determinant % 2 == 0:
            raise ValueError("knot determinant must be odd")
        if self.determinant != 2 * self.n - 1:
            raise ValueError("determinant / n mismatch")
        if (self.determinant - self.signature - 1) % 4:
            raise ValueError("determinant is not congruent to signature + 1 mod 4")


def invariants(word):
    """InvariantRecord of an alternating word with knot closure (d = 0)."""
    if not is_knot_closure(word.raw()):
        raise ValueError("closure is not a knot")
    det = determinant(goeritz_3braid(word))
    sigma = signature_normal_form(0, word)
    return InvariantRecord(det, sigma, s_invariant_normal_form(0, word),
                           (det + 1) // 2)


def flip_hub_crossing(form, region):
    """Goeritz matrix after flipping one hub-crossing incidence at a region.

    Only the diagonal entry of that region moves, by +2.
    """
    rows = [list(row) for row in form.matrix]
    rows[region][region] += 2
    return tuple(tuple(row) for row in rows)


def flip_cycle_crossing(form, i):
    """Goeritz matrix after flipping the incidence of cycle edge (i, i+1)."""
    r = form.r
    j = (i + 1) % r
    rows = [list(row) for row in form.matrix]
    rows[i][j] -= 2
    rows[j][i] -= 2
    rows[i][i] += 2
    rows[j][j] += 2
    return tuple(tuple(row) for row in rows)


def load_goeritz_json(text):
    """Ingest an externally supplied Goeritz matrix.

    Expects {"goeritz": [[...], ...]} with a symmetric, negative-definite
    integer matrix; the all-positive-incidence alternating convention is
    assumed and not checkable from the matrix alone.
    """
    data = json.loads(text)
    if not isinstance(data, dict) or "goeritz" not in data:
        raise ValueError('expected an object with a "goeritz" key')
    matrix = linalg.freeze(data["goeritz"])
    if not linalg.is_symmetric(matrix):
        raise ValueError("matrix is not symmetric")
    if not linalg.is_negative_definite(matrix):
        raise ValueError("matrix is not negative definite")
    return GoeritzForm(matrix)
