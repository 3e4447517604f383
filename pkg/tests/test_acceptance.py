"""Acceptance gate: one test per criterion, at the stated tolerances.

Each test prints a PASS line on success; a failure prints the assertion
context.  Criterion 4 carries one deliberately red sub-assertion: the
originally reported count it pins ("20 of 25 classes") contradicts the
fixture matrix itself, whose determinant is -9, so the count is
unattainable; the companion test asserts the computed truth and the
structural conclusion both counts support.
"""

import time

from threebraid import braid, embed, expansions as xp, forms, goeritz, linalg
from threebraid.braid import AltBraidWord, CrossingRef
from threebraid.embed import EmbeddingMatrix

import oracles
from conftest import A87, A1079

W87 = AltBraidWord(((4, 1), (1, 2)))
W1079 = AltBraidWord(((3, 2), (2, 3)))


def test_acceptance_1_eight_seven():
    """8_7 end-to-end: witness, unique class, crossing, -CC^T; < 10 s."""
    t0 = time.time()
    rep = embed.u1_pipeline(W87)
    assert (rep.determinant, rep.sigma, rep.n) == (23, 2, 12)
    assert rep.stage == "witness"
    assert len(rep.witnesses) == 1
    wit = rep.witnesses[0]
    g = goeritz.goeritz_3braid(W87)
    assert embed.witness_class_key(wit.matrix, g.matrix) == \
        embed.witness_class_key(EmbeddingMatrix(A87, 3), g.matrix)
    assert wit.crossing == CrossingRef(2, 0)      # the s1^-1 block
    assert wit.verified
    assert embed.verify_unknotting(W87, wit.crossing, wit.matrix)
    expected = [list(r) for r in g.matrix]
    expected[1][1] = -1
    assert linalg.neg(linalg.gram(wit.matrix.c_block())) == \
        tuple(tuple(r) for r in expected)
    elapsed = time.time() - t0
    assert elapsed < 10
    print(f"\ncriterion 1 (8_7 end-to-end): PASS in {elapsed:.2f}s")


def test_acceptance_2_ten_seventy_nine():
    """10_79: obstructed at change-making; relaxed witness unique; < 60 s."""
    t0 = time.time()
    rep = embed.u1_pipeline(W1079)
    assert rep.stage == "change_making"
    g = goeritz.goeritz_3braid(W1079)
    relaxed = embed.criterion_search(g, 31, change_making=False)
    assert len(relaxed) == 1
    assert tuple(sorted(relaxed[0].x_row[2:])) == (2, 2, 2, 3, 3)
    assert embed.witness_class_key(relaxed[0], g.matrix) == \
        embed.witness_class_key(EmbeddingMatrix(A1079, 5), g.matrix)
    elapsed = time.time() - t0
    assert elapsed < 60
    print(f"\ncriterion 2 (10_79 end-to-end): PASS in {elapsed:.2f}s")


def test_acceptance_3_dtables():
    """Sharp tables equal the closed form for every odd D <= 99; < 30 s."""
    t0 = time.time()
    for d in range(3, 100, 2):
        closed = forms.d_table_halfint_unknot(d)
        sharp = forms.d_table_sharp(forms.twist_knot_form((d + 1) // 2))
        assert closed.values == sharp.values, d
        if d % 4 == 1:
            assert closed[0] == 0, d
    elapsed = time.time() - t0
    assert elapsed < 30
    print(f"\ncriterion 3 (correction-term cross-validation): PASS in "
          f"{elapsed:.2f}s")


def test_acceptance_4_pretzel_computed():
    """Pretzel reproduction at the computed group order; < 60 s.

    Embedding counts are as stated; the cokernel has 9 classes (the
    displayed plumbing has determinant -9), the chain embedding misses 6
    of them and the other embedding misses exactly the zero class, so
    neither is compatible with a sharp filling.
    """
    t0 = time.time()
    m = forms.PRETZEL_FORM
    assert len(embed.embed_form(m, 5)) == 1
    assert len(embed.embed_form(m, 6)) == 2
    assert len(embed.embed_form(m, 7)) == 2
    order = forms.coker_map(m).order
    assert order == 9
    full = {(i,) for i in range(order)}
    for n in (5, 6, 7, 8):
        cov = forms.one_vector_coverage(forms.pretzel_embedding(1, n), m)
        assert len(full - cov) == 6, n
    for n in (6, 7, 8):
        cov = forms.one_vector_coverage(forms.pretzel_embedding(2, n), m)
        assert full - cov == {(0,)}, n
    elapsed = time.time() - t0
    assert elapsed < 60
    print(f"\ncriterion 4 (pretzel, computed counts): PASS in {elapsed:.2f}s")


def test_acceptance_4_pretzel_stated_count():
    """The originally stated count: 20 of 25 classes missed for A1.

    Unattainable: the fixture plumbing matrix has determinant -9 (its
    boundary is -9 surgery on the trefoil, with cyclic first homology of
    order 9), so the cokernel has 9 classes, not 25, and the chain
    embedding misses 6 of them.  The assertion is kept faithful to the
    stated numbers and therefore red; the companion test above pins the
    computed truth, which still rules out a sharp filling.
    """
    m = forms.PRETZEL_FORM
    order = forms.coker_map(m).order
    cov = forms.one_vector_coverage(forms.pretzel_embedding(1, 5), m)
    missed = order - len(cov)
    print(f"\ncriterion 4 (stated count): FAIL expected -- "
          f"group order {order}, missed {missed} (stated: 25 and 20)")
    assert (order, missed) == (25, 20), (
        "stated count is 20 of 25 classes missed, but det(M) = "
        f"{linalg.det(m)} gives a cokernel of order {order} with {missed} "
        "classes missed")


def test_acceptance_5_desk_scale():
    """Pipeline verdict matches the family test on every word; < 30 min.

    Sweeps both mirror classes of every alternating 3-braid knot word with
    total exponent at most 12.  Determinant-one closures are exempt: they
    are already the unknot, where a crossing change certifies u <= 1 but
    the pipeline correctly reports u != 1.
    """
    t0 = time.time()
    checked = 0
    for word in oracles.all_alt_words(12):
        if not braid.is_knot_closure(word.raw()):
            continue
        if goeritz.determinant(goeritz.goeritz_3braid(word)) == 1:
            continue
        family = bool(braid.unknotting_crossings(word))
        verdict = embed.u1_pipeline(word).verdict == "witness"
        assert family == verdict, word.pairs
        checked += 1
    elapsed = time.time() - t0
    assert checked >= 333
    assert elapsed < 1800
    print(f"\ncriterion 5 (desk-scale main theorem, {checked} words): PASS "
          f"in {elapsed:.1f}s")


def test_acceptance_6_partial_witnesses():
    """Generator equals brute force at rank 5; checks pass; < 10 min."""
    t0 = time.time()
    layers = xp.generate_balanced(6)
    for r in range(2, 6):
        brute = oracles.brute_balanced(r)
        assert set(brute) == {xp.canonical_form(pe) for pe in layers[r]}, r
    for ms in layers.values():
        for pe in ms:
            assert xp.column_multiset_check(pe)
            if pe.pairing(*pe.marked_rows()) == 0:
                st = xp.orthogonal_marked_structure(pe)
                assert st.k >= 1 and st.l >= 1
    assert xp.no_orthogonal_completion(6)
    elapsed = time.time() - t0
    assert elapsed < 600
    print(f"\ncriterion 6 (partial witness machinery): PASS in {elapsed:.1f}s")


def test_acceptance_7_property_suites():
    """Key invariants rechecked in one place: termination, parity, windows,
    witness identities."""
    t0 = time.time()
    words = oracles.all_alt_words(9)

    # rewriting terminates within 4 * len^2 steps
    for word in words:
        for block in range(0, 2 * word.m, 2):
            changed = braid.change_crossing(word, CrossingRef(block, 0))
            out = braid.reduce_almost_alternating(changed)
            n = changed.total_exponent()
            assert len(out.trace) <= 4 * n * n

    # D odd and congruent to sigma + 1 mod 4 on the full enumeration
    for word in oracles.all_alt_words(12):
        if not braid.is_knot_closure(word.raw()):
            continue
        det = goeritz.determinant(goeritz.goeritz_3braid(word))
        sigma = goeritz.signature_normal_form(0, word)
        assert det % 2 == 1 and (det - sigma - 1) % 4 == 0

    # char-box window sufficiency at k <= 5 is covered in test_forms;
    # re-run the largest case here as the acceptance anchor
    from fractions import Fraction
    from itertools import product
    m = goeritz.goeritz_3braid(W1079).matrix
    coker = forms.coker_map(m)
    inv = linalg.inverse(m)

    def square(c):
        return sum(Fraction(c[i]) * inv[i][j] * c[j]
                   for i in range(5) for j in range(5))

    best, wide = {}, {}
    for c in forms.char_box(m):
        cls = coker.class_of(c)
        sq = square(c)
        if cls not in best or sq > best[cls]:
            best[cls] = sq
    for c in product(*[range(2 * m[i][i] + (m[i][i] % 2), -2 * m[i][i] + 1, 2)
                       for i in range(5)]):
        cls = coker.class_of(c)
        sq = square(c)
        if cls not in wide or sq > wide[cls]:
            wide[cls] = sq
    assert best == wide

    # witness identities on every emitted witness at small scale
    for word in words:
        if not braid.is_knot_closure(word.raw()):
            continue
        g = goeritz.goeritz_3braid(word)
        d = goeritz.determinant(g)
        sigma = goeritz.signature_normal_form(0, word)
        if d == 1 or sigma not in (0, 2):
            continue
        for a in embed.criterion_search(g, (d + 1) // 2):
            assert abs(linalg.det(a.rows)) == d
            assert abs(linalg.det(a.c_block())) == 1

    elapsed = time.time() - t0
    print(f"\ncriterion 7 (property suites): PASS in {elapsed:.1f}s")
