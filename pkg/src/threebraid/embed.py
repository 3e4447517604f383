"""Lattice embedding search and the full unknotting-number-one pipeline.

The obstruction: if the closure of an alternating word has unknotting
number one (signature 0 or 2 after mirroring, determinant 2n-1), then
some integer matrix A satisfies -A A^T = G + R_n, where G is the Goeritz
form, R_n the twist knot form, and the last two rows of A are
x = (0, 1, x_3, ..., x_{r+2}) and y = (1, -1, 0, ..., 0) with the sorted
nonnegative tail of x obeying the change-making chain; the upper-right
r x r block C has determinant +-1.  The search below enumerates every
solution up to the residual symmetries: signed permutations of the tail
columns fixing x, permutations of rows preserving G, and the surgery
block's base change x -> -(x + y), which flips the first two columns.

A witness is more than an obstruction failing: column normalization turns
it into an explicit crossing of the diagram, and changing that crossing is
independently checked to give the unknot.
"""

from dataclasses import dataclass
from functools import lru_cache
from math import isqrt

from . import linalg
from .braid import (AltBraidWord, CrossingRef, almost_alt_unknot_test,
                    change_crossing, is_knot_closure, swap_generators)
from .goeritz import (GoeritzForm, determinant, goeritz_3braid, mirror_word,
                      signature_normal_form)


class TheoremViolation(AssertionError):
    """A structural consequence of the embedding theorems failed to hold.

    Raised instead of silently ignoring the matrix: it means either an
    internal bug or an input outside the theorems' hypotheses.
    """


@dataclass(frozen=True)
class EmbeddingMatrix:
    """(r+2) x (r+2) integer matrix with rows v_1..v_r, x, y."""

    rows: tuple
    r: int

    @property
    def x_row(self):
        return self.rows[self.r]

    @property
    def y_row(self):
        return self.rows[self.r + 1]

    @property
    def v_rows(self):
        return self.rows[:self.r]

    def c_block(self):
        """Upper-right r x r submatrix."""
        return tuple(row[2:] for row in self.rows[:self.r])

    def to_json(self):
        return [list(row) for row in self.rows]


def change_making_ok(xs):
    """Whether sorted coin values can make every amount up to their total.

    The chain condition: x_3 <= 1 and each value at most one more than the
    sum of the smaller ones.  The empty sequence qualifies.

    >>> change_making_ok((1, 1, 3))
    True
    >>> change_making_ok((2, 2, 2, 3, 3))
    False
    """
    total = 0
    for v in sorted(xs):
        if v > total + 1:
            return False
        total += v
    return True


def _x_tails(r, target, change_making):
    """Nondecreasing nonnegative r-tuples with squares summing to target."""
    out = []

    def rec(prefix, sumsq, total):
        slots = r - len(prefix)
        if slots == 0:
            if sumsq == target:
                out.append(tuple(prefix))
            return
        v = prefix[-1] if prefix else 0
        # entries are nondecreasing, so every remaining slot is at least v
        while sumsq + v * v * slots <= target:
            if change_making and v > total + 1:
                break
            rec(prefix + [v], sumsq + v * v, total + v)
            v += 1

    rec([], 0, 0)
    return out


@lru_cache(maxsize=None)
def _norm_vectors(norm, k):
    """All integer k-vectors with squared length equal to norm."""
    if k == 0:
        return ((),) if norm == 0 else ()
    out = []
    b = isqrt(norm)
    for v in range(-b, b + 1):
        for rest in _norm_vectors(norm - v * v, k - 1):
            out.append((v,) + rest)
    return tuple(out)


@lru_cache(maxsize=None)
def _row_candidates(diag, xbar):
    """Rows c with |c|^2 + 2 (c . xbar)^2 == diag, as tuples.

    These are the possible truncated cycle rows of a witness for the given
    x tail: the first two (equal) entries of the full row are forced to
    -(c . xbar), and the diagonal Gram entry prescribes the total.
    """
    r = len(xbar)
    order = sorted(range(r), key=lambda j: -xbar[j])
    first_zero = next((t for t in range(r) if xbar[order[t]] == 0), r)
    out = []
    entries = [0] * r

    def rec(idx, q, s):
        if q > diag:
            return
        if idx == first_zero:
            need = diag - q - 2 * s * s
            if need < 0:
                return
            zcols = order[idx:]
            for vec in _norm_vectors(need, len(zcols)):
                for j, v in zip(zcols, vec):
                    entries[j] = v
                out.append(tuple(entries))
            for j in zcols:
                entries[j] = 0
            return
        j = order[idx]
        b = isqrt(diag - q)
        for v in range(-b, b + 1):
            entries[j] = v
            rec(idx + 1, q + v * v, s + v * xbar[j])
        entries[j] = 0

    rec(0, 0, 0)
    return tuple(out)


def form_automorphisms(matrix):
    """All permutations p with matrix[p(i)][p(j)] == matrix[i][j].

    Found by backtracking on diagonal-compatible images; forms here are
    small cycles, so the group is at worst dihedral plus accidental
    symmetry.
    """
    r = len(matrix)
    perms = []
    image = [None] * r

    def rec(i):
        if i == r:
            perms.append(tuple(image))
            return
        for cand in range(r):
            if cand in image[:i]:
                continue
            if matrix[cand][cand] != matrix[i][i]:
                continue
            if any(matrix[cand][image[j]] != matrix[i][j] for j in range(i)):
                continue
            image[i] = cand
            rec(i + 1)
        image[i] = None

    rec(0)
    return tuple(perms)


def _canonical_columns(c_rows, xbar):
    """Canonicalize the tail columns under the stabilizer of the x row.

    Columns with equal x values may be permuted; columns with x value zero
    may also be negated.  Within each block, sign-normalize then sort.
    """
    r = len(xbar)
    cols = list(zip(*c_rows)) if c_rows else [() for _ in range(r)]
    blocks = {}
    for j in range(r):
        blocks.setdefault(xbar[j], []).append(j)
    ordered = []
    for x_val in sorted(blocks):
        group = []
        for j in blocks[x_val]:
            col = cols[j]
            if x_val == 0:
                col = max(col, tuple(-v for v in col))
            group.append(col)
        ordered.extend(sorted(group, reverse=True))
    return tuple(ordered)


def _witness_key(c_rows, z, xbar, auts):
    """Dedup key under every symmetry that preserves the witness shape.

    Besides tail column moves and G-preserving row permutations, the key
    quotients by the global flip (z, c) -> (-z, -c): it realizes the base
    change x -> -(x + y) on the surgery block followed by the column
    renormalization, so flipped solutions are the same embedding.
    """
    best = None
    for sign in (1, -1):
        sc = tuple(tuple(sign * v for v in row) for row in c_rows)
        sz = tuple(sign * v for v in z)
        for p in auts:
            pc = tuple(sc[p[i]] for i in range(len(sc)))
            pz = tuple(sz[p[i]] for i in range(len(sz)))
            key = (pz, _canonical_columns(pc, xbar))
            if best is None or key < best:
                best = key
    return (xbar, best)


def witness_class_key(a, g_matrix):
    """Class key of an embedding matrix, for equality testing in tests."""
    xbar = a.x_row[2:]
    z = tuple(row[0] for row in a.v_rows)
    return _witness_key(a.c_block(), z, xbar, form_automorphisms(g_matrix))


def _assemble(c_rows, z, xbar):
    r = len(xbar)
    rows = [(z[i], z[i]) + c_rows[i] for i in range(r)]
    rows.append((0, 1) + xbar)
    rows.append((1, -1) + (0,) * r)
    return EmbeddingMatrix(tuple(rows), r)


def criterion_search(form, n, change_making=True):
    """All witness matrices for a Goeritz form and determinant 2n-1.

    Returns canonical representatives (deterministically ordered) of every
    A with -A A^T = G + R_n whose rows have the prescribed shape, with
    det(C) = +-1, up to signed permutation of the tail columns and
    G-preserving row permutations.  With change_making=False the chain
    condition on the x tail is not imposed.
    """
    matrix = form.matrix if isinstance(form, GoeritzForm) else linalg.freeze(form)
    r = len(matrix)
    if n < 2:
        raise ValueError("need n >= 2 (determinant at least 3)")
    if abs(linalg.det(matrix)) != 2 * n - 1:
        raise ValueError("determinant of the form does not equal 2n - 1")
    diag = [-matrix[i][i] for i in range(r)]
    target = [[-matrix[i][j] for j in range(r)] for i in range(r)]
    auts = form_automorphisms(matrix)

    # contiguity-first row order: start at the largest diagonal, then always
    # extend by the unassigned row with the most assigned neighbours
    order = [max(range(r), key=lambda i: diag[i])]
    while len(order) < r:
        rest = [i for i in range(r) if i not in order]
        order.append(max(rest, key=lambda i: (
            sum(1 for j in order if matrix[i][j] != 0), diag[i])))

    found = {}
    for xbar in _x_tails(r, n - 1, change_making):
        pools = {d: _row_candidates(d, xbar) for d in set(diag)}
        rows = [None] * r
        zs = [None] * r

        def rec(t):
            if t == r:
                c_rows = tuple(rows)
                if abs(linalg.det(c_rows)) != 1:
                    return
                key = _witness_key(c_rows, tuple(zs), xbar, auts)
                if key not in found:
                    a = _assemble(c_rows, tuple(zs), xbar)
                    _check_witness(a, matrix, n)
                    found[key] = a
                return
            i = order[t]
            for cand in pools[diag[i]]:
                z = -sum(c * x for c, x in zip(cand, xbar))
                ok = True
                for t2 in range(t):
                    j = order[t2]
                    dot = sum(a * b for a, b in zip(cand, rows[j])) + 2 * z * zs[j]
                    if dot != target[i][j]:
                        ok = False
                        break
                if ok:
                    rows[i], zs[i] = cand, z
                    rec(t + 1)
                    rows[i], zs[i] = None, None

        rec(0)
    return tuple(found[k] for k in sorted(found))


def _check_witness(a, g_matrix, n):
    r = a.r
    rn = ((-n, 1), (1, -2))
    gram = linalg.neg(linalg.gram(a.rows))
    for i in range(r + 2):
        for j in range(r + 2):
            want = (g_matrix[i][j] if i < r and j < r
                    else rn[i - r][j - r] if i >= r and j >= r
                    else 0)
            if gram[i][j] != want:
                raise TheoremViolation("Gram identity failed on a found matrix")
    if abs(linalg.det(a.rows)) != 2 * n - 1:
        raise TheoremViolation("|det A| != D")


def embed_form(m, n_cols):
    """All embeddings of a negative definite form in the standard lattice.

    Returns every k x n integer matrix B with -B B^T = M, one canonical
    representative per signed column permutation class, deterministically
    ordered.  An empty result is the diagonalization obstruction firing.
    """
    m = linalg.freeze(m)
    k = len(m)
    if n_cols < k:
        raise ValueError("target rank below the rank of the form")
    diag = [-m[i][i] for i in range(k)]
    target = [[-m[i][j] for j in range(k)] for i in range(k)]
    results = {}
    rows = []

    def candidates(i):
        """Rows extending `rows` that keep columns canonical.

        Columns must stay lexicographically nonincreasing (reading down),
        with each column's first nonzero entry positive: within a run of
        columns equal so far the new entries must be nonincreasing, and a
        new entry in an all-zero column must be nonnegative.
        """
        prefixes = list(zip(*rows)) if rows else [()] * n_cols
        out = []
        entry = [0] * n_cols

        def rec(j, q):
            if q > diag[i]:
                return
            if j == n_cols:
                if q == diag[i]:
                    cand = tuple(entry)
                    if all(sum(a * b for a, b in zip(cand, rows[t])) == target[i][t]
                           for t in range(i)):
                        out.append(cand)
                return
            b = isqrt(diag[i] - q)
            lo, hi = -b, b
            if j > 0 and prefixes[j] == prefixes[j - 1]:
                hi = min(hi, entry[j - 1])
            if not any(prefixes[j]):
                lo = 0
            for v in range(hi, lo - 1, -1):
                entry[j] = v
                rec(j + 1, q + v * v)
            entry[j] = 0

        rec(0, 0)
        return out

    def rec_rows(i):
        if i == k:
            key = _signed_column_canonical(tuple(rows))
            results.setdefault(key, tuple(rows))
            return
        for cand in candidates(i):
            rows.append(cand)
            rec_rows(i + 1)
            rows.pop()

    rec_rows(0)
    return tuple(results[key] for key in sorted(results))


def _signed_column_canonical(b):
    cols = []
    for col in zip(*b):
        cols.append(max(col, tuple(-v for v in col)))
    return tuple(sorted(cols, reverse=True))


def normalize_sigma2(a):
    """Negate columns so the cycle rows sum to the all-ones vector.

    Valid for witnesses of signature-2 inputs, where that sum is already a
    +-1 vector; anything else is flagged as a violation.  The first two
    entries of the y row stay negatives of one another.
    """
    vsum = [sum(col) for col in zip(*a.v_rows)]
    if any(s not in (1, -1) for s in vsum):
        raise TheoremViolation(f"cycle rows sum to {vsum}, not a sign vector")
    rows = tuple(tuple(v if s == 1 else -v for v, s in zip(row, vsum))
                 for row in a.rows)
    out = EmbeddingMatrix(rows, a.r)
    y = out.y_row
    if y[0] != -y[1]:
        raise TheoremViolation("y row lost its (1, -1) head")
    return out


def extract_crossing_sigma2(a_norm, form):
    """The unknotting crossing a normalized signature-2 witness points at.

    Exactly one cycle row meets the first two columns; it marks a region
    with hub crossings, and changing any one of them undoes the knot.
    """
    hits = [i for i, row in enumerate(a_norm.v_rows)
            if (row[0], row[1]) == (1, 1)]
    if len(hits) != 1:
        raise TheoremViolation(f"expected one marked row, found {hits}")
    i = hits[0]
    row = a_norm.v_rows[i]
    if sum(v * v for v in row) <= 2:
        raise TheoremViolation("marked row has square -2 or worse shape")
    if form.region_map is None or not form.region_map[i]:
        raise TheoremViolation("marked region has no hub crossing")
    return form.region_map[i][0]


def normalize_sigma0_and_extract(a, form):
    """Normalize a signature-0 witness and read off its crossing.

    After column negations the cycle rows plus y sum to all ones, y becomes
    (1, 1, 0, ...), and exactly two cycle rows meet the first two columns,
    with patterns (1, -1) and (-1, 1).  Those regions must be adjacent in
    the cycle (their pairing is 1 for r > 2, 2 for r = 2); the crossing
    between them is returned.
    """
    total = [sum(col) for col in zip(*(a.v_rows + (a.y_row,)))]
    if any(s not in (1, -1) for s in total):
        raise TheoremViolation(f"rows sum to {total}, not a sign vector")
    rows = tuple(tuple(v if s == 1 else -v for v, s in zip(row, total))
                 for row in a.rows)
    out = EmbeddingMatrix(rows, a.r)
    if out.y_row[:2] != (1, 1) or any(out.y_row[2:]):
        raise TheoremViolation(f"y row is {out.y_row}, not (1, 1, 0, ...)")
    pos = [i for i, row in enumerate(out.v_rows) if (row[0], row[1]) == (1, -1)]
    neg = [i for i, row in enumerate(out.v_rows) if (row[0], row[1]) == (-1, 1)]
    rest = [i for i, row in enumerate(out.v_rows)
            if i not in pos and i not in neg and (row[0], row[1]) != (0, 0)]
    if len(pos) != 1 or len(neg) != 1 or rest:
        raise TheoremViolation(
            f"marked row patterns wrong: pos={pos} neg={neg} rest={rest}")
    i, j = pos[0], neg[0]
    pairing = -sum(x * y for x, y in zip(out.v_rows[i], out.v_rows[j]))
    r = a.r
    if r > 2 and pairing != 1:
        raise TheoremViolation(
            f"marked rows pair to {pairing}; adjacency demands 1")
    if r == 2 and pairing != 2:
        raise TheoremViolation(f"marked rows pair to {pairing} with r = 2")
    if form.cycle_edges is None:
        raise TheoremViolation("form carries no diagram bookkeeping")
    lo, hi = min(i, j), max(i, j)
    if r == 2:
        edge = 0
    elif hi == lo + 1:
        edge = lo
    elif lo == 0 and hi == r - 1:
        edge = r - 1
    else:
        raise TheoremViolation(f"marked regions {i}, {j} are not adjacent")
    return out, form.cycle_edges[edge]


def verify_unknotting(word, ref, witness=None):
    """Confirm that changing the crossing really yields the unknot.

    Runs the rewriting test on the changed word (through the generator
    swap when the crossing sits in an s2 block).  When a witness matrix is
    supplied, additionally checks |det(-C C^T)| = 1; the conjunction is
    returned.
    """
    changed = change_crossing(word, ref)
    if ref.letter_index % 2:
        changed = swap_generators(changed)
    ok = almost_alt_unknot_test(changed)
    if witness is not None:
        c = witness.c_block()
        ok = ok and abs(linalg.det(linalg.neg(linalg.gram(c)))) == 1
    return ok


def word_symmetry_obstruction(word):
    """Run the correction-term symmetry test on a word, handling orientation.

    The half-integer surgery description holds for one of the two
    orientations of the branched double cover, and which one is not
    pinned down by the sign conventions here; a signature-0 knot can
    moreover satisfy it on either mirror side.  The test therefore fires
    (returns False) only when every orientation fails, keeping it sound.
    Returns (passed, {"table": bool, "negated": bool}).
    """
    from .forms import DTable, d_table_sharp, halfint_symmetry_test

    g = goeritz_3braid(word)
    d = determinant(g)
    if d == 1:
        raise ValueError("determinant one: no surgery form to test")
    sigma = signature_normal_form(0, word)
    table = d_table_sharp(g.matrix)
    negated = DTable(d, tuple(-v for v in table.values))
    sides = {
        "table": halfint_symmetry_test(table, d),
        "negated": halfint_symmetry_test(negated, d),
    }
    if sigma == 0:
        passed = sides["table"] or sides["negated"]
    elif sigma > 0:
        passed = sides["negated"]
    else:
        passed = sides["table"]
    return passed, sides


@dataclass(frozen=True)
class CriterionWitness:
    """A witness matrix with its extracted, verified crossing.

    mirrored marks witnesses found on the mirror side of a signature-0
    run: their crossing refers to the mirrored diagram.
    """

    matrix: EmbeddingMatrix
    crossing: CrossingRef
    verified: bool
    case: str
    mirrored: bool = False

    def to_json(self):
        return {
            "matrix": self.matrix.to_json(),
            "crossing": None if self.crossing is None else self.crossing.to_json(),
            "verified": self.verified,
            "case": self.case,
            "mirrored": self.mirrored,
        }


@dataclass(frozen=True)
class PipelineReport:
    """Everything the unknotting-number-one decision produced.

    stage is how far the input survived: sigma_bound and parity verdicts
    need no search; search_empty and change_making are obstructions from
    the embedding stage; witness certifies u(K) = 1 with a verified
    crossing.  epsilon is the surgery sign (-1)^(sigma/2) for the mirrored
    representative actually searched.
    """

    word: AltBraidWord
    sigma: int
    determinant: int
    n: int
    epsilon: int
    stage: str
    witnesses: tuple
    input_mirrored: bool = False
    note: str = ""
    change_making_enforced: bool = True

    @property
    def verdict(self):
        if self.stage == "witness":
            return "witness"
        return "obstructed"

    def to_json(self):
        return {
            "word": self.word.to_json(),
            "sigma": self.sigma,
            "determinant": self.determinant,
            "n": self.n,
            "epsilon": self.epsilon,
            "stage": self.stage,
            "verdict": self.verdict,
            "witnesses": [w.to_json() for w in self.witnesses],
            "input_mirrored": self.input_mirrored,
            "note": self.note,
            "change_making_enforced": self.change_making_enforced,
        }

    @classmethod
    def from_json(cls, data):
        wits = []
        for w in data["witnesses"]:
            rows = tuple(tuple(int(x) for x in row) for row in w["matrix"])
            wits.append(CriterionWitness(
                EmbeddingMatrix(rows, len(rows) - 2),
                None if w["crossing"] is None
                else CrossingRef.from_json(w["crossing"]),
                bool(w["verified"]), w["case"], bool(w["mirrored"])))
        return cls(AltBraidWord.from_json(data["word"]), int(data["sigma"]),
                   int(data["determinant"]), int(data["n"]),
                   int(data["epsilon"]), data["stage"], tuple(wits),
                   bool(data["input_mirrored"]), data["note"],
                   bool(data["change_making_enforced"]))


def u1_pipeline(word, enforce_change_making=True):
    """Decide unknotting number one for an alternating 3-braid knot closure.

    Mirrors so the signature is 0 or 2; signature-0 inputs run on both the
    word and its mirror, covering both unknotting crossing signs.  The
    verdict is sound in both directions: obstructed certifies u != 1, and
    every witness carries a crossing checked by the rewriting test.
    """
    word = AltBraidWord.canonical(word.pairs)
    if not is_knot_closure(word.raw()):
        raise ValueError("closure is not a knot")
    sigma0 = signature_normal_form(0, word)
    d0 = determinant(goeritz_3braid(word))

    def report(stage, witnesses=(), mirrored=False, note="", sigma=sigma0):
        eps = (-1) ** (sigma // 2) if abs(sigma) <= 2 else 0
        return PipelineReport(word, sigma0, d0, (d0 + 1) // 2, eps, stage,
                              tuple(witnesses), mirrored, note,
                              enforce_change_making)

    if abs(sigma0) > 2:
        return report("sigma_bound",
                      note="|signature| exceeds 2, so u >= 2")
    if d0 == 1:
        return report("parity",
                      note="determinant one: the closure is already the unknot")

    mirrored_input = sigma0 < 0
    work = mirror_word(word) if mirrored_input else word
    sigma = -sigma0 if mirrored_input else sigma0
    n = (d0 + 1) // 2
    if (d0 - sigma - 1) % 4:
        return report("parity", mirrored=mirrored_input, sigma=sigma,
                      note="determinant incompatible with signature mod 4")

    sides = [(work, False)]
    if sigma == 0:
        mirrored = mirror_word(work)
        # a word equal to its own mirror already covers both crossing signs
        if mirrored != work:
            sides.append((mirrored, True))

    witnesses = []
    relaxed_hit = False
    for side_word, side_mirrored in sides:
        g = goeritz_3braid(side_word)
        sols = criterion_search(g, n, change_making=enforce_change_making)
        if not sols and enforce_change_making:
            if criterion_search(g, n, change_making=False):
                relaxed_hit = True
        for a in sols:
            crossing = None
            verified = False
            case = "sigma2" if sigma == 2 else "sigma0"
            try:
                if sigma == 2:
                    crossing = extract_crossing_sigma2(normalize_sigma2(a), g)
                else:
                    _, crossing = normalize_sigma0_and_extract(a, g)
            except TheoremViolation:
                if enforce_change_making:
                    raise
            if crossing is not None:
                verified = verify_unknotting(side_word, crossing, a)
            witnesses.append(CriterionWitness(
                a, crossing, verified, case,
                mirrored=side_mirrored != mirrored_input))

    if witnesses and (not enforce_change_making
                      or all(w.verified for w in witnesses)):
        return report("witness", witnesses, mirrored_input, sigma=sigma)
    if witnesses:
        raise TheoremViolation("witness found but its crossing failed to verify")
    stage = "change_making" if relaxed_hit else "search_empty"
    return report(stage, (), mirrored_input, sigma=sigma)
