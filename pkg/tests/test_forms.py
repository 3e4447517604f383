from fractions import Fraction
from itertools import product

import pytest

from threebraid import forms, goeritz, linalg
from threebraid.braid import AltBraidWord


def test_twist_knot_form():
    assert forms.twist_knot_form(12) == ((-12, 1), (1, -2))
    assert linalg.det(forms.twist_knot_form(12)) == 23
    assert linalg.is_negative_definite(forms.twist_knot_form(2))


def test_negative_definite_guards(g87_matrix):
    assert linalg.is_negative_definite(g87_matrix)
    assert linalg.is_negative_definite(forms.twist_knot_form(12))
    assert not linalg.is_negative_definite(((1,),))


def test_coker_twist():
    cm = forms.coker_map(forms.twist_knot_form(12))
    assert cm.invariant_factors == (23,)
    assert cm.is_cyclic and cm.order == 23
    # the exact labelling (a, b) -> a + 12 b
    assert cm.label((1, 0)) == 1
    assert cm.label((0, 1)) == 12
    assert cm.label((-12, 1)) == 0
    assert cm.label((1, -2)) == 0


def test_coker_pretzel_and_trivial():
    cm = forms.coker_map(forms.PRETZEL_FORM)
    # the prose count of 25 classes contradicts the displayed matrix, whose
    # determinant is -9; see the decisions ledger
    assert cm.order == 9
    assert cm.invariant_factors == (9,)
    assert forms.coker_map(((-1,),)).order == 1


def test_coker_class_well_defined():
    cm = forms.coker_map(forms.twist_knot_form(7))
    for vec in ((1, 0), (0, 1), (3, -2)):
        shifted = tuple(v + r for v, r in zip(vec, forms.twist_knot_form(7)[0]))
        assert cm.class_of(vec) == cm.class_of(shifted)


def test_char_box_counts(g87_matrix):
    assert len(forms.char_box(forms.twist_knot_form(2))) == 9
    assert forms.char_box(((-1,),)) == ((-1,), (1,))
    box = forms.char_box(g87_matrix)
    # direct enumeration oracle: product of per-axis counts |M_ii| + 1
    assert len(box) == 7 * 4 * 3 == 84
    assert len(set(box)) == 84
    for c in box:
        assert all((ci - g87_matrix[i][i]) % 2 == 0 for i, ci in enumerate(c))


def test_covector_square():
    assert forms.covector_square(forms.twist_knot_form(5), (1, -2)) == -2
    assert forms.covector_square(((-1,),), (1,)) == -1
    with pytest.raises(ValueError):
        forms.covector_square(((-1,),), (1, 1))
    with pytest.raises(ValueError):
        forms.covector_square(forms.twist_knot_form(5), (2, 0))


def test_covector_square_nonpositive(g87_matrix):
    for c in forms.char_box(g87_matrix):
        sq = forms.covector_square(g87_matrix, c)
        assert sq <= 0
        assert (sq == 0) == (all(v == 0 for v in c))


def test_dtable_validation():
    with pytest.raises(ValueError):
        forms.DTable(3, (Fraction(0), Fraction(1), Fraction(0)))  # asymmetric
    with pytest.raises(ValueError):
        forms.DTable(3, (Fraction(1, 5), Fraction(0), Fraction(0)))
    t = forms.d_table_halfint_unknot(3)
    assert [str(v) for v in t.values] == ["1/2", "-1/6", "-1/6"]


def test_dtable_sharp_cross_validation():
    for d in range(3, 100, 2):
        tu = forms.d_table_halfint_unknot(d)
        ts = forms.d_table_sharp(forms.twist_knot_form((d + 1) // 2))
        assert tu.values == ts.values, d
        if d % 4 == 1:
            assert tu[0] == 0
        assert all(tu[i] == tu[-i] for i in range(d))


def test_dtable_sharp_trivial():
    assert forms.d_table_sharp(((-1,),)).values == (Fraction(0),)


def test_dtable_sharp_noncyclic():
    with pytest.raises(forms.NonCyclicCokernel) as exc:
        forms.d_table_sharp(((-5, 0), (0, -5)))
    assert exc.value.invariant_factors == (5, 5)


def test_window_sufficiency():
    """Per-class maxima over the box match the doubled box (k <= 5)."""
    cases = [forms.twist_knot_form(3), forms.twist_knot_form(6),
             goeritz.goeritz_3braid(AltBraidWord(((4, 1), (1, 2)))).matrix,
             goeritz.goeritz_3braid(AltBraidWord(((1, 1), (1, 1)))).matrix,
             goeritz.goeritz_3braid(AltBraidWord(((3, 2), (2, 3)))).matrix]
    for m in cases:
        k = len(m)
        coker = forms.coker_map(m)
        inv = linalg.inverse(m)

        def square(c):
            return sum(Fraction(c[i]) * inv[i][j] * c[j]
                       for i in range(k) for j in range(k))

        best = {}
        for c in forms.char_box(m):
            cls = coker.class_of(c)
            sq = square(c)
            if cls not in best or sq > best[cls]:
                best[cls] = sq
        # the doubled box, stepping only through characteristic values
        axes = [range(2 * m[i][i] + (m[i][i] % 2), -2 * m[i][i] + 1, 2)
                for i in range(k)]
        wide = {}
        for c in product(*axes):
            cls = coker.class_of(c)
            sq = square(c)
            if cls not in wide or sq > wide[cls]:
                wide[cls] = sq
        assert best == wide, m


def test_sharp_table_label_zero_is_quarter_signature():
    """Classical anchor: the value at the central label is -sigma/4.

    This pins the spin-c labelling and the table's overall orientation at
    once, independently of the maximizer bookkeeping.
    """
    import oracles
    from threebraid.braid import is_knot_closure

    checked = 0
    for word in oracles.all_alt_words(9):
        if not is_knot_closure(word.raw()):
            continue
        g = goeritz.goeritz_3braid(word)
        if goeritz.determinant(g) == 1:
            continue
        sigma = goeritz.signature_normal_form(0, word)
        try:
            table = forms.d_table_sharp(g.matrix)
        except forms.NonCyclicCokernel:
            continue
        assert table[0] == Fraction(-sigma, 4), word.pairs
        checked += 1
    assert checked >= 30


def test_symmetry_unknot_tables():
    for d in (3, 5, 9, 23):
        assert forms.halfint_symmetry_test(forms.d_table_halfint_unknot(d), d)


def test_symmetry_trefoil():
    table = forms.d_table_sharp(((-3,),))
    assert forms.halfint_symmetry_test(table, 3)


def test_symmetry_perturbation_fails():
    t = forms.d_table_halfint_unknot(9)
    vals = list(t.values)
    vals[1] += 1
    vals[8] += 1
    assert not forms.halfint_symmetry_test(forms.DTable(9, tuple(vals)), 9)


def test_symmetry_determinant_mismatch():
    with pytest.raises(ValueError):
        forms.halfint_symmetry_test(forms.d_table_halfint_unknot(9), 11)


def test_coverage_pretzel():
    m = forms.PRETZEL_FORM
    order = forms.coker_map(m).order
    full = {(i,) for i in range(order)}
    for n in (5, 6, 7, 8):
        cov = forms.one_vector_coverage(forms.pretzel_embedding(1, n), m)
        assert len(full - cov) == 6
        assert (0,) in cov
    for n in (6, 7, 8):
        cov = forms.one_vector_coverage(forms.pretzel_embedding(2, n), m)
        assert full - cov == {(0,)}


def test_coverage_trivial():
    assert forms.one_vector_coverage(((1,),), ((-1,),)) == {()}


def test_coverage_gram_mismatch():
    with pytest.raises(ValueError):
        forms.one_vector_coverage(((1, 0),), ((-2,),))


def test_coverage_signed_permutation_invariance():
    m = forms.PRETZEL_FORM
    a = forms.pretzel_embedding(1, 6)
    base = forms.one_vector_coverage(a, m)
    twisted = tuple((row[3], -row[0], row[5], row[2], -row[4], row[1])
                    for row in a)
    assert forms.one_vector_coverage(twisted, m) == base


def test_dtable_json_roundtrip():
    t = forms.d_table_halfint_unknot(9)
    assert forms.DTable.from_json(t.to_json()) == t


def test_pretzel_fixture_gram():
    for which, width in ((1, 5), (2, 6)):
        a = forms.pretzel_embedding(which, width + 2)
        assert linalg.neg(linalg.gram(a)) == forms.PRETZEL_FORM
    with pytest.raises(ValueError):
        forms.pretzel_embedding(2, 5)
