"""Partial witness matrices built by contraction and expansion.

A partial witness is the matrix a signature-0 witness would have without
its x row: rows v_1, ..., v_r and y = (1, 1, 0, ..., 0), every column
summing to 1, and -B B^T equal to a 3-braid Goeritz form plus (-2).  The
balanced family (equal exponent sums on both sides of the word, r >= 2)
is generated from three small seed matrices by two kinds of expansion
move; a brute-force solver over the defining constraints is kept in the
test suite as an independent check.

Exactly two rows meet the first two columns, with head patterns (1, -1)
and (-1, 1); their lattice pairing decides whether the matrix could ever
extend to a full witness.  The blockade result checked here: when that
pairing is 0, no x row satisfying the witness constraints exists, because
the solved x tail always breaks the change-making chain.
"""

from dataclasses import dataclass
from itertools import permutations

from . import linalg
from .embed import TheoremViolation, change_making_ok


@dataclass(frozen=True)
class PartialEmbedding:
    """(r+1) x (r+2) matrix: cycle rows v_1..v_r, then the meridian row y."""

    rows: tuple

    @property
    def r(self):
        return len(self.rows) - 1

    @property
    def v_rows(self):
        return self.rows[:-1]

    @property
    def y_row(self):
        return self.rows[-1]

    def c_block(self):
        """Columns 3.. of the cycle rows (the part an x row must kill)."""
        return tuple(row[2:] for row in self.v_rows)

    def pairing(self, i, j):
        return -sum(a * b for a, b in zip(self.rows[i], self.rows[j]))

    def marked_rows(self):
        """Indices (i, j) of the rows with head (1, -1) and (-1, 1)."""
        i = [t for t, row in enumerate(self.v_rows) if row[:2] == (1, -1)]
        j = [t for t, row in enumerate(self.v_rows) if row[:2] == (-1, 1)]
        if len(i) != 1 or len(j) != 1:
            raise ValueError(f"marked rows missing: {i}, {j}")
        return i[0], j[0]

    def to_json(self):
        i, j = self.marked_rows()
        return {"rows": [list(r) for r in self.rows],
                "v_rows": self.r, "marked": [i, j]}


@dataclass(frozen=True)
class ExpansionStep:
    """One expansion move: kind 1, 2 or 3, acting rows, and the pivot column.

    Row roles follow the column patterns: `a` keeps its entries, `b` is
    modified, and kind 3 also modifies the extra row `c`.
    """

    kind: int
    a: int
    b: int
    col: int
    c: int = None


SEED_M1 = PartialEmbedding(((1, -1, 1, 1), (-1, 1, 0, 0), (1, 1, 0, 0)))
SEED_M2 = PartialEmbedding(((1, -1, 1, 0), (-1, 1, 0, 1), (1, 1, 0, 0)))
SEED_M3 = PartialEmbedding(((0, 0, -1, 1, 1), (1, -1, 1, 0, 0),
                            (-1, 1, 1, 0, 0), (1, 1, 0, 0, 0)))


def goeritz_parameters(pe):
    """Word parameters ((a_i), (b_i)) read off -B B^T, or a ValueError.

    The cycle order of the rows is recovered from the adjacency pattern;
    membership in the partial witness family is exactly this succeeding
    together with the column sums and the meridian row checks.
    """
    rows = pe.rows
    width = len(rows[0])
    if any(len(row) != width for row in rows) or width != len(rows) + 1:
        raise ValueError("shape must be (r+1) x (r+2)")
    if pe.y_row != (1, 1) + (0,) * (width - 2):
        raise ValueError("meridian row must be (1, 1, 0, ..., 0)")
    for j in range(width):
        if sum(row[j] for row in rows) != 1:
            raise ValueError(f"column {j} does not sum to 1")
    r = pe.r
    gram = [[pe.pairing(i, j) for j in range(r)] for i in range(r)]
    if any(pe.pairing(i, r) != 0 for i in range(r)):
        raise ValueError("meridian row is not orthogonal to the cycle rows")
    if r < 2:
        raise ValueError("need r >= 2")
    if r == 2:
        if gram[0][1] != 2:
            raise ValueError("r = 2 needs a doubled edge")
        a = [-gram[i][i] - 2 for i in range(2)]
        if min(a) < 0 or max(a) < 1:
            raise ValueError("invalid diagonal")
        if min(a) == 0:
            return ((max(a),), (2,))
        return (tuple(a), (1, 1))
    # rebuild the cycle from the off-diagonal 1s
    nbrs = [[j for j in range(r) if j != i and gram[i][j] == 1] for i in range(r)]
    if any(len(nb) != 2 for nb in nbrs):
        raise ValueError("cycle rows do not form an r-cycle")
    for i in range(r):
        for j in range(r):
            if j != i and gram[i][j] not in (0, 1):
                raise ValueError("off-diagonal entries must be 0 or 1")
    order = [0, nbrs[0][0]]
    while len(order) < r:
        prev, cur = order[-2], order[-1]
        nxt = nbrs[cur][0] if nbrs[cur][0] != prev else nbrs[cur][1]
        if nxt in order:
            raise ValueError("adjacency is not a single cycle")
        order.append(nxt)
    if order[0] not in nbrs[order[-1]]:
        raise ValueError("adjacency is not a single cycle")
    diag = [-gram[i][i] for i in order]
    if any(d < 2 for d in diag):
        raise ValueError("diagonal entries must be at most -2")
    hubs = [t for t in range(r) if diag[t] > 2]
    if not hubs:
        raise ValueError("no hub vertex: the word would be empty")
    start = hubs[0]
    a_seq, b_seq = [], []
    for t in range(len(hubs)):
        h = hubs[t]
        nxt = hubs[(t + 1) % len(hubs)]
        a_seq.append(diag[h] - 2)
        b_seq.append((nxt - h) % r if t + 1 < len(hubs) else r - h + hubs[0])
    if sum(b_seq) != r:
        raise ValueError("block sizes do not cover the cycle")
    return (tuple(a_seq), tuple(b_seq))


def is_balanced(pe):
    """Whether the underlying word has equal exponent sums (sum a = sum b)."""
    a_seq, b_seq = goeritz_parameters(pe)
    return sum(a_seq) == sum(b_seq)


def _validate(pe):
    goeritz_parameters(pe)
    pe.marked_rows()
    # heads away from the marked pair must vanish
    for t, row in enumerate(pe.v_rows):
        if row[:2] not in ((0, 0), (1, -1), (-1, 1)):
            raise ValueError(f"row {t} head {row[:2]} is not a mark or zero")
    return pe


def canonical_form(pe):
    """Canonical matrix under row permutations fixing y and column moves.

    Columns 1 and 2 may swap; the remaining columns permute freely.  Column
    negations never identify two members (every column sums to 1), so they
    are not quotiented.
    """
    v = pe.v_rows
    y = pe.y_row
    best = None
    for perm in permutations(range(len(v))):
        rows = [v[p] for p in perm] + [y]
        cols = list(zip(*rows))
        head = sorted(cols[:2])
        tail = sorted(cols[2:], reverse=True)
        key = tuple(head + tail)
        if best is None or key < best:
            best = key
    return best


def expand(pe, step):
    """Apply one expansion move, growing the rank by one.

    kind 1: a column supported only on row `a` (entry 1) splits; row `b`
            (pairing with `a` at least 1) picks up a new entry.
    kind 3: a column with entries +1 on `a` and `c` and -1 on `b` splits.
    kind 2 is the reverse of the doubled-entry contraction; it never
            occurs when generating from the seeds, but is implemented for
            completeness.
    """
    rows = [list(r) for r in pe.rows]
    width = len(rows[0])
    v_count = len(rows) - 1
    a, b, col = step.a, step.b, step.col
    if not (0 <= a < v_count and 0 <= b < v_count and a != b):
        raise ValueError("row roles out of range")
    if col < 2:
        raise ValueError("the first two columns never split")
    if pe.pairing(a, b) < 1:
        raise ValueError("rows must pair at least 1")
    support = [t for t, row in enumerate(rows) if row[col]]
    for row in rows:
        row.append(0)
    new_row = [0] * (width + 1)
    new_row[-1], new_row[col] = 1, -1
    if step.kind == 1:
        if support != [a] or rows[a][col] != 1:
            raise ValueError("kind-1 column must be supported on row a with a 1")
        rows[b][col] += 1
    elif step.kind == 3:
        c = step.c
        if c is None or c in (a, b) or not 0 <= c < v_count:
            raise ValueError("kind 3 needs a distinct third row")
        if sorted(support) != sorted((a, b, c)):
            raise ValueError("kind-3 column must be supported on rows a, b, c")
        if rows[a][col] != 1 or rows[c][col] != 1 or rows[b][col] != -1:
            raise ValueError("kind-3 column pattern is (1, 1, -1)")
        rows[b][col] = 0
        rows[b][-1] = -1
        rows[c][-1] = 1
    elif step.kind == 2:
        if sorted(support) != sorted((a, b)):
            raise ValueError("kind-2 column must be supported on rows a, b")
        if rows[a][col] != 2 or rows[b][col] != -1:
            raise ValueError("kind-2 column pattern is (2, -1)")
        rows[b][col] = 0
        rows[b][-1] = -1
        rows[a][-1] = 1
    else:
        raise ValueError(f"unknown expansion kind {step.kind}")
    rows.insert(v_count, new_row)
    return _validate(PartialEmbedding(tuple(tuple(r) for r in rows)))


def contract(pe, s, keep=None):
    """Delete a norm-2 cycle row, merging its two columns' roles.

    The row must have entries one +1 and one -1, the rank must exceed 2,
    and the local column pattern must match one of the three move kinds.
    For kind 1 `keep` names the row keeping its entry (default: a row of
    square less than -2).
    """
    rows = [list(r) for r in pe.rows]
    v_count = len(rows) - 1
    if not 0 <= s < v_count:
        raise ValueError("can only contract a cycle row")
    if v_count <= 2:
        raise ValueError("contraction needs r > 2")
    row = rows[s]
    if sorted(v for v in row if v) != [-1, 1]:
        raise ValueError("row must have square -2")
    p = row.index(1)
    q = row.index(-1)
    if p < 2 or q < 2:
        raise ValueError("marked rows never contract")
    p_support = [t for t, rr in enumerate(rows) if rr[p] and t != s]
    q_support = [t for t, rr in enumerate(rows) if rr[q] and t != s]
    if not p_support:
        plus = [t for t in q_support if rows[t][q] == 1]
        if sorted(rows[t][q] for t in q_support) != [1, 1]:
            raise ValueError("kind-1 pattern needs two 1 entries beside the -1")
        if keep is None:
            heavy = [t for t in plus
                     if sum(v * v for v in rows[t]) > 2]
            keep = heavy[0] if heavy else plus[0]
        if keep not in plus:
            raise ValueError("keep must be one of the two 1-entry rows")
        drop = plus[0] if plus[1] == keep else plus[1]
        rows[drop][q] = 0
    elif sorted(rows[t][q] for t in q_support) == [2]:
        # kind 2: the doubled entry stays, the -1 moves across
        b = [t for t in p_support if rows[t][p] == -1]
        a = q_support
        if len(b) != 1 or sorted(rows[t][p] for t in p_support) != [-1, 1]:
            raise ValueError("kind-2 pattern mismatch around the pivot")
        rows[b[0]][q] = -1
    else:
        # kind 3: column q holds (1, 1); column p holds (1, -1) on c and b
        if sorted(rows[t][q] for t in q_support) != [1, 1]:
            raise ValueError("unrecognized contraction pattern")
        b = [t for t in p_support if rows[t][p] == -1]
        c = [t for t in p_support if rows[t][p] == 1]
        if len(b) != 1 or len(c) != 1 or c[0] not in q_support:
            raise ValueError("kind-3 pattern mismatch around the pivot")
        rows[b[0]][q] = -1
    del rows[s]
    for rr in rows:
        del rr[p]
    return _validate(PartialEmbedding(tuple(tuple(r) for r in rows)))


def _expansion_steps(pe):
    """Every kind-1 and kind-3 move applicable to a partial witness."""
    rows = pe.rows
    v_count = pe.r
    width = len(rows[0])
    steps = []
    supports = []
    for col in range(2, width):
        supports.append((col, [t for t in range(v_count) if rows[t][col]]))
    for a in range(v_count):
        for b in range(v_count):
            if a == b or pe.pairing(a, b) < 1:
                continue
            for col, sup in supports:
                if sup == [a] and rows[a][col] == 1:
                    steps.append(ExpansionStep(1, a, b, col))
                if len(sup) == 3 and a in sup and b in sup and rows[a][col] == 1 \
                        and rows[b][col] == -1:
                    c = next(t for t in sup if t not in (a, b))
                    if rows[c][col] == 1:
                        steps.append(ExpansionStep(3, a, b, col, c))
    return steps


def generate_balanced(r_max, kinds=(1, 3)):
    """All balanced partial witnesses of rank 2..r_max, canonically deduped.

    Breadth-first expansion from the three seeds; expansion can reach the
    same matrix along different move sequences, so each layer is deduped
    by canonical form.  Returns a dict rank -> tuple of members (one
    representative per class, in canonical-key order).
    """
    if r_max < 2:
        raise ValueError("r_max must be at least 2")
    layers = {2: {canonical_form(SEED_M1): SEED_M1,
                  canonical_form(SEED_M2): SEED_M2}}
    if r_max >= 3:
        layers[3] = {canonical_form(SEED_M3): SEED_M3}
    for r in range(2, r_max):
        nxt = layers.setdefault(r + 1, {})
        for pe in layers[r].values():
            for step in _expansion_steps(pe):
                if step.kind not in kinds:
                    continue
                grown = expand(pe, step)
                key = canonical_form(grown)
                nxt.setdefault(key, grown)
    return {r: tuple(members[k] for k in sorted(members))
            for r, members in sorted(layers.items()) if r <= r_max}


def column_multiset_check(pe):
    """Every column's nonzero entries form {1,1,-1}, {2,-1} or {1}."""
    allowed = ((-1, 1, 1), (-1, 2), (1,))
    for col in zip(*pe.rows):
        if tuple(sorted(v for v in col if v)) not in allowed:
            return False
    return True


@dataclass(frozen=True)
class BlockStructure:
    """Witness for the staircase block form of a marked-orthogonal member.

    row_order lists the cycle rows as (first chain, second chain, i, j);
    col_order lists the tail columns as (head1, chain1, head2, chain2).
    """

    k: int
    l: int
    row_order: tuple
    col_order: tuple


def _staircase_ok(c, rows, head, chain):
    """rows x (head + chain) must be the lower staircase with -1 diagonal."""
    k = len(rows)
    for t, row in enumerate(rows):
        if c[row][head] != (1 if t == 0 else 0):
            return False
        for u, col in enumerate(chain):
            want_zero_above = u > t
            val = c[row][col]
            if u == t:
                if val != -1:
                    return False
            elif want_zero_above:
                if val != 0:
                    return False
            elif val not in (0, 1):
                return False
    return True


def _block_candidates(pe):
    i, j = pe.marked_rows()
    r = pe.r
    others = [t for t in range(r) if t not in (i, j)]
    c = [row[2:] for row in pe.v_rows]
    cols = range(r)
    for k in range(1, r - 2):
        l = r - 2 - k
        for top in permutations(others, k):
            mid_rows = [t for t in others if t not in top]
            for mid in permutations(mid_rows):
                for h1 in cols:
                    for chain1 in permutations([x for x in cols if x != h1], k):
                        if not _staircase_ok(c, top, h1, chain1):
                            continue
                        used = {h1, *chain1}
                        for h2 in (x for x in cols if x not in used):
                            rest = [x for x in cols if x not in used and x != h2]
                            for chain2 in permutations(rest, l):
                                if (_staircase_ok(c, mid, h2, chain2)
                                        and _marks_ok(c, i, j, h1, chain1,
                                                      h2, chain2)):
                                    yield BlockStructure(
                                        k, l,
                                        tuple(top) + tuple(mid) + (i, j),
                                        (h1,) + tuple(chain1)
                                        + (h2,) + tuple(chain2))


def orthogonal_marked_structure(pe):
    """Exhibit the staircase block form of a member with orthogonal marks.

    Raises ValueError unless the marked rows pair to 0; raises
    TheoremViolation if no row/column reordering realizes the block form
    or the member is not reachable from the two small seeds by kind-1
    moves alone.
    """
    i, j = pe.marked_rows()
    if pe.pairing(i, j) != 0:
        raise ValueError("marked rows must pair to 0")
    found = next(_block_candidates(pe), None)
    if found is None:
        raise TheoremViolation("no staircase block form found")
    if not _reachable_by_kind1(pe):
        raise TheoremViolation("member not generated by kind-1 moves alone")
    return found


def _marks_ok(c, i, j, h1, chain1, h2, chain2):
    for row in (i, j):
        if c[row][h1] or c[row][h2]:
            return False
        for group in (chain1, chain2):
            vals = [c[row][col] for col in group]
            if any(v not in (0, 1) for v in vals) or not any(vals):
                return False
    return True


def _reachable_by_kind1(pe):
    """Whether pe arises from the two rank-2 seeds by kind-1 moves alone."""
    key = canonical_form(pe)
    frontier = {canonical_form(SEED_M1): SEED_M1,
                canonical_form(SEED_M2): SEED_M2}
    for _ in range(2, pe.r):
        grown = {}
        for member in frontier.values():
            for step in _expansion_steps(member):
                if step.kind == 1:
                    new = expand(member, step)
                    grown.setdefault(canonical_form(new), new)
        frontier = grown
    return key in frontier


def completion_x_tail(pe):
    """The x tail forced by orthogonality, or None when no witness x exists.

    A full witness needs x = (0, 1, xbar) orthogonal to every cycle row
    with the head entries living on the meridian columns; given
    det(C) = +-1 the tail is the unique solution of C xbar = -z for each
    of the two allowed head sign patterns.  Returns the first solved tail
    whose sorted absolute values obey change-making, else None.
    """
    c = pe.c_block()
    if abs(linalg.det(c)) != 1:
        return None
    z = tuple(row[0] for row in pe.v_rows)
    z2 = tuple(row[1] for row in pe.v_rows)
    for head in ((0, -1), (-1, 0)):
        rhs = tuple(-(head[0] * z[i] + head[1] * z2[i]) for i in range(pe.r))
        tail = linalg.solve_int(c, rhs)
        if tail is None:
            raise TheoremViolation("unimodular solve failed to be integral")
        if change_making_ok(tuple(abs(v) for v in tail)):
            return tail
    return None


def no_orthogonal_completion(r_max):
    """True when no balanced member with orthogonal marks extends to a witness.

    Checked by solving for the x tail directly on every generated member,
    independently of the staircase algebra.
    """
    for r, members in generate_balanced(r_max).items():
        for pe in members:
            i, j = pe.marked_rows()
            if pe.pairing(i, j) != 0:
                continue
            if completion_x_tail(pe) is not None:
                return False
    return True
