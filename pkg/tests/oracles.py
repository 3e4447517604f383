"""Independent oracles used by the test suite.

Everything here recomputes expected values from first principles, without
going through the code paths under test: exhaustive scans over words,
determinants of incidence-flipped Goeritz matrices, plain product-loop
embedding searches, and a from-scratch solver for the partial witness
family.
"""

from functools import lru_cache
from math import isqrt

from threebraid import expansions as xp
from threebraid import linalg
from threebraid.braid import AltBraidWord
from threebraid.goeritz import (flip_cycle_crossing, flip_hub_crossing,
                                goeritz_3braid)


def all_alt_words(bound):
    """All canonical alternating words with total exponent <= bound."""
    seen = set()

    def rec(pairs, budget):
        if pairs:
            seen.add(AltBraidWord.canonical(pairs).pairs)
        for a in range(1, budget + 1):
            for b in range(1, budget - a + 1):
                rec(pairs + [(a, b)], budget - a - b)

    rec([], bound)
    return [AltBraidWord(p) for p in sorted(seen)]


def changed_determinant(word, block):
    """|det| of the closure after changing one crossing of the given block.

    Computed through the Goeritz matrix of the original alternating
    diagram with that crossing's incidence flipped: +2 on the diagonal for
    a hub crossing, the two-region surgery for a cycle crossing.
    """
    form = goeritz_3braid(word)
    if block % 2 == 0:
        l = block // 2
        region = sum(b for _, b in word.pairs[:l])
        flipped = flip_hub_crossing(form, region)
    else:
        l = block // 2
        edge = sum(b for _, b in word.pairs[:l])
        flipped = flip_cycle_crossing(form, edge)
    return abs(linalg.det(flipped))


@lru_cache(maxsize=None)
def norm_vectors(norm, k):
    if k == 0:
        return ((),) if norm == 0 else ()
    out = []
    for v in range(-isqrt(norm), isqrt(norm) + 1):
        for rest in norm_vectors(norm - v * v, k - 1):
            out.append((v,) + rest)
    return tuple(out)


def exhaustive_criterion(g_matrix, n):
    """All witness matrices by plain nested loops over norm vectors.

    No canonical-order pruning and no backtracking heuristics: rows are
    drawn from full norm pools and every Gram pair is checked at the end.
    Only feasible for rank <= 2 forms.
    """
    r = len(g_matrix)
    size = r + 2
    y = (1, -1) + (0,) * r
    sols = []
    pools = [norm_vectors(-g_matrix[i][i], size) for i in range(r)]
    x_pool = [x for x in norm_vectors(n, size) if x[0] == 0 and x[1] == 1
              and all(v >= 0 for v in x[2:])
              and all(x[i] <= x[i + 1] for i in range(2, size - 1))]

    def dot(u, v):
        return sum(a * b for a, b in zip(u, v))

    def rec(rows):
        if len(rows) == r:
            for x in x_pool:
                a = tuple(rows) + (x, y)
                ok = all(dot(a[i], a[j]) == -(g_matrix[i][j] if i < r and j < r
                                              else 0)
                         for i in range(r) for j in range(r))
                ok = ok and all(dot(rows[i], x) == 0 and dot(rows[i], y) == 0
                                for i in range(r))
                ok = ok and dot(x, y) == -1
                if ok and abs(linalg.det(tuple(row[2:] for row in rows))) == 1:
                    sols.append(a)
            return
        i = len(rows)
        for cand in pools[i]:
            if all(dot(cand, rows[j]) == -g_matrix[i][j] for j in range(i)):
                rec(rows + [cand])

    rec([])
    return sols


def compositions(total):
    if total == 0:
        yield ()
        return
    for first in range(1, total + 1):
        for rest in compositions(total - first):
            yield (first,) + rest


def _balanced_word_classes(r):
    """Balanced words with sum b = r, up to rotation and cycle reversal."""
    seen = set()
    out = []
    for a_parts in compositions(r):
        for b_parts in compositions(r):
            if len(a_parts) != len(b_parts):
                continue
            pairs = tuple(zip(a_parts, b_parts))
            m = len(pairs)
            variants = [tuple(pairs[(s + t) % m] for t in range(m))
                        for s in range(m)]
            rev = tuple((pairs[i][0], pairs[i - 1][1])
                        for i in range(m - 1, -1, -1))
            variants += [tuple(rev[(s + t) % m] for t in range(m))
                         for s in range(m)]
            key = min(variants)
            if key not in seen:
                seen.add(key)
                out.append(pairs)
    return out


@lru_cache(maxsize=None)
def _headed_pool(diag, tail_len, head):
    rem = diag - head[0] ** 2 - head[1] ** 2
    if rem < 0:
        return ()
    return tuple(head + t for t in norm_vectors(rem, tail_len))


def brute_balanced(r):
    """Partial witnesses over all balanced words, solved from scratch.

    Enforces the definition directly: Gram = Goeritz + (-2), columns sum
    to one, meridian row (1, 1, 0, ...), and the marked-head structure
    (one row starting (1, -1), one starting (-1, 1), zeros elsewhere).
    Returns a dict canonical form -> member.
    """
    width = r + 2
    found = {}
    heads = ((0, 0), (1, -1), (-1, 1))
    for pairs in _balanced_word_classes(r):
        word = AltBraidWord(pairs)
        g = goeritz_3braid(word).matrix
        diag0 = [-g[i][i] for i in range(r)]
        start = min(range(r), key=lambda i: diag0[i])
        order = [(start + t) % r for t in range(r)]
        diag = [diag0[i] for i in order]
        tgt = [[-g[order[k]][order[t]] for t in range(r)] for k in range(r)]
        bound = [0] * (r + 1)
        for k in range(r - 1, -1, -1):
            bound[k] = bound[k + 1] + isqrt(diag[k])
        colsum_target = [0, 0] + [1] * r
        rows = []

        def rec(k, used_pos, used_neg, colsums):
            if k == r:
                if used_pos and used_neg and list(colsums) == colsum_target:
                    ordered = [None] * r
                    for t, row in enumerate(rows):
                        ordered[order[t]] = row
                    pe = xp.PartialEmbedding(
                        tuple(ordered) + ((1, 1) + (0,) * r,))
                    found.setdefault(xp.canonical_form(pe), pe)
                return
            for head in heads:
                if head == (1, -1) and used_pos:
                    continue
                if head == (-1, 1) and used_neg:
                    continue
                for cand in _headed_pool(diag[k], width - 2, head):
                    bad = False
                    for t in range(k):
                        if sum(x * y for x, y in zip(cand, rows[t])) != tgt[k][t]:
                            bad = True
                            break
                    if not bad:
                        for j in range(width):
                            if abs(colsum_target[j] - colsums[j] - cand[j]) \
                                    > bound[k + 1]:
                                bad = True
                                break
                    if bad:
                        continue
                    rows.append(cand)
                    rec(k + 1, used_pos or head == (1, -1),
                        used_neg or head == (-1, 1),
                        [a + b for a, b in zip(colsums, cand)])
                    rows.pop()

        rec(0, False, False, [0] * width)
    return found
