"""Negative definite integer forms: cokernels, characteristic covectors,
correction-term tables, the half-integer surgery symmetry test, and sign
coverage of cokernel classes.

Covectors live in dual-basis coordinates: c_i is the pairing of the class
against the i-th basis vector, so characteristic means c_i = M_ii mod 2.
All values are exact (ints and Fractions); there is no floating point in
this module.

The correction-term convention follows the maximizer table for the twist
knot forms; in particular the value at label 0 is +1/2 when the
determinant is 3 mod 4.  Only differences of tables enter the symmetry
test, so the overall sign convention cancels there.
"""

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from math import gcd

from . import linalg
from .linalg import is_negative_definite


class NonCyclicCokernel(ValueError):
    """Raised when an operation needs a cyclic cokernel but got a bigger group."""

    def __init__(self, invariant_factors):
        self.invariant_factors = tuple(invariant_factors)
        super().__init__(
            f"cokernel is not cyclic: invariant factors {self.invariant_factors}")


def twist_knot_form(n):
    """Goeritz form of the n-twist knot: [[-n, 1], [1, -2]], determinant 2n-1.

    This is also the linking form of the two-handle trace of -D/2 surgery,
    D = 2n - 1.
    """
    if n < 1:
        raise ValueError("n must be positive")
    return ((-n, 1), (1, -2))


@dataclass(frozen=True)
class CokerMap:
    """Presentation of coker(M) = Z^k / im(M) with a class labelling.

    invariant_factors lists the nontrivial cyclic orders.  For cyclic odd
    order the label function maps a dual covector to Z/D; twist knot forms
    get the exact labelling (a, b) -> a + n*b.
    """

    matrix: tuple
    invariant_factors: tuple
    transform: tuple          # U with U*M*V diagonal
    factor_rows: tuple        # rows of U matching the nontrivial factors
    twist_n: int = None

    @property
    def order(self):
        out = 1
        for d in self.invariant_factors:
            out *= d
        return out

    @property
    def is_cyclic(self):
        return len(self.invariant_factors) <= 1

    def class_of(self, vec):
        """Class of a dual vector, as coordinates in the cyclic factors."""
        if len(vec) != len(self.matrix):
            raise ValueError("dimension mismatch")
        return tuple(
            sum(self.transform[r][j] * vec[j] for j in range(len(vec))) % d
            for r, d in zip(self.factor_rows, self.invariant_factors))

    def label(self, vec):
        """Label in Z/D for cyclic cokernels of order D."""
        if not self.is_cyclic:
            raise NonCyclicCokernel(self.invariant_factors)
        if self.twist_n is not None:
            return (vec[0] + self.twist_n * vec[1]) % self.order
        if not self.invariant_factors:
            return 0
        return self.class_of(vec)[0]


def coker_map(m):
    """Smith-normal-form presentation of coker(M) for negative definite M."""
    m = linalg.freeze(m)
    if not is_negative_definite(m):
        raise ValueError("matrix must be negative definite")
    divisors, u = linalg.smith_normal_form(m)
    factors, rows = [], []
    for i, d in enumerate(divisors):
        if d != 1:
            factors.append(d)
            rows.append(i)
    twist_n = None
    if len(m) == 2 and m == twist_knot_form(-m[0][0]):
        twist_n = -m[0][0]
    return CokerMap(m, tuple(factors), u, tuple(rows), twist_n)


def char_box(m):
    """All characteristic covectors c with M_ii <= c_i <= -M_ii.

    The box contains a square-maximizer in every cokernel class: a
    characteristic covector outside it reflects inside by steps of twice a
    basis row without decreasing its square.
    """
    m = linalg.freeze(m)
    if not is_negative_definite(m):
        raise ValueError("matrix must be negative definite")
    axes = [range(m[i][i], -m[i][i] + 1, 2) for i in range(len(m))]
    return tuple(product(*axes))


def covector_square(m, c):
    """Exact value of c M^-1 c^T for a characteristic covector c."""
    if len(c) != len(m):
        raise ValueError("dimension mismatch")
    for ci, mii in zip(c, (m[i][i] for i in range(len(m)))):
        if (ci - mii) % 2:
            raise ValueError("covector is not characteristic")
    inv = linalg.inverse(m)
    return sum(Fraction(c[i]) * inv[i][j] * c[j]
               for i in range(len(c)) for j in range(len(c)))


@dataclass(frozen=True)
class DTable:
    """Correction terms of a half-integer-surgery candidate, by label in Z/D.

    Conjugate labels carry equal values, and 4*D times any value is an
    integer.
    """

    determinant: int
    values: tuple              # Fractions, index = label

    def __post_init__(self):
        D = self.determinant
        if D < 1 or D % 2 == 0 or len(self.values) != D:
            raise ValueError("need one value per label of an odd determinant")
        for i, v in enumerate(self.values):
            if v != self.values[-i % D]:
                raise ValueError("conjugation symmetry broken")
            if (4 * D * v).denominator != 1:
                raise ValueError(f"value {v} too far from integral")

    def __getitem__(self, i):
        return self.values[i % self.determinant]

    def to_json(self):
        return {"determinant": self.determinant,
                "values": {str(i): str(v) for i, v in enumerate(self.values)}}

    @classmethod
    def from_json(cls, data):
        D = int(data["determinant"])
        vals = [Fraction(data["values"][str(i)]) for i in range(D)]
        return cls(D, tuple(vals))


def d_table_sharp(m):
    """Correction terms read off a sharp negative definite form.

    d at a spin-c label t is the maximum of (c^2 + k)/4 over characteristic
    covectors c in every class restricting to t; the label of a covector
    divides its cokernel class by 2.  Needs odd determinant and cyclic
    cokernel.
    """
    m = linalg.freeze(m)
    coker = coker_map(m)
    D = coker.order
    if D % 2 == 0:
        raise ValueError("discriminant must be odd")
    if not coker.is_cyclic:
        raise NonCyclicCokernel(coker.invariant_factors)
    k = len(m)
    inv2 = pow(2, -1, D) if D > 1 else 0
    inv = linalg.inverse(m)
    best = [None] * D
    for c in char_box(m):
        sq = sum(Fraction(c[i]) * inv[i][j] * c[j]
                 for i in range(k) for j in range(k))
        label = (coker.label(c) * inv2) % D
        if best[label] is None or sq > best[label]:
            best[label] = sq
    assert all(b is not None for b in best)
    return DTable(D, tuple((b + k) / 4 for b in best))


def _table_maximizers(D, i):
    """Maximizer covectors over the twist knot form for spin-c label i.

    i is an integer representative with |i| <= n; the covector class is 2i.
    """
    n = (D + 1) // 2
    k = n // 2
    if n % 2 == 0:
        if abs(i) <= k:
            return ((2 * i, 0),)
        return ((2 * i - 2 * n, 2), (2 * i - 2 * n + 2, -2))
    if abs(i) <= k:
        return ((2 * i + 1, -2), (2 * i - 1, 2))
    return ((2 * i + 1 - 2 * n, 0),)


def d_table_halfint_unknot(D):
    """Closed-form correction terms of -D/2 surgery on the unknot.

    Values are (square of the tabulated maximizer + 2)/4 over the twist
    knot form with n = (D+1)/2, computed at the nonnegative label
    representatives and copied to negative labels by conjugation; labels
    reached twice are cross-checked for agreement.
    """
    if D < 3 or D % 2 == 0:
        raise ValueError("D must be odd and at least 3")
    n = (D + 1) // 2
    rn = twist_knot_form(n)
    coker = coker_map(rn)
    values = [None] * D
    for i in range(n + 1):
        squares = []
        for alpha in _table_maximizers(D, i):
            assert coker.label(alpha) == (2 * i) % D
            squares.append(covector_square(rn, alpha))
        sq = squares[0]
        assert all(s == sq for s in squares), (D, i, squares)
        val = (sq + 2) / 4
        for res in (i % D, -i % D):
            if values[res] is None:
                values[res] = val
            else:
                assert values[res] == val, (D, i)
    return DTable(D, tuple(values))


def halfint_symmetry_test(table, D):
    """Correction-term symmetry test against the unknot table.

    True iff some unit relabelling i -> u*i of the candidate table makes
    the differences against the unknot table symmetric about k, where
    D = 2n - 1 and n = 2k or 2k + 1; label 0 joins the checks only for odd
    n.  Quantifying over units keeps the obstruction conservative: a False
    here is certain.
    """
    if table.determinant != D:
        raise ValueError("table determinant mismatch")
    tU = d_table_halfint_unknot(D)
    n = (D + 1) // 2
    k = n // 2
    idxs = list(range(1, k + 1))
    if n % 2 == 1:
        idxs.append(0)
    for u in range(1, D):
        if gcd(u, D) != 1:
            continue
        if all(table[u * i] - tU[i] == table[u * (2 * k - i)] - tU[2 * k - i]
               for i in idxs):
            return True
    return False


def one_vector_coverage(a, m):
    """Cokernel classes hit by (row pairings with) sign vectors.

    Returns the set of classes of (a . alpha) over alpha in {-1, +1}^N, as
    class tuples of coker(M).  Computed by a subset sweep over the group:
    the reachable set after each column is folded in stays inside the
    finite cokernel, so the run is linear in N times the group order.
    """
    m = linalg.freeze(m)
    a = linalg.freeze(a)
    k = len(m)
    if len(a) != k:
        raise ValueError("row count mismatch")
    if linalg.neg(linalg.gram(a)) != m:
        raise ValueError("Gram mismatch: -A A^T != M")
    coker = coker_map(m)
    cols = list(zip(*a))
    col_classes = [coker.class_of(col) for col in cols]
    factors = coker.invariant_factors

    def add(x, y, sgn):
        return tuple((xi + sgn * yi) % d for xi, yi, d in zip(x, y, factors))

    reach = {tuple(0 for _ in factors)}
    for g in col_classes:
        reach = {add(x, g, +1) for x in reach} | {add(x, g, -1) for x in reach}
    return reach


# --- fixtures: the pretzel plumbing and its two stable embeddings ---------

PRETZEL_FORM = (
    (-2, 1, 0, 0, 0),
    (1, -2, 1, 0, 0),
    (0, 1, -2, 1, 1),
    (0, 0, 1, -2, 0),
    (0, 0, 1, 0, -3),
)

_PRETZEL_A1 = (
    (1, -1, 0, 0, 0),
    (0, 1, -1, 0, 0),
    (0, 0, 1, -1, 0),
    (0, 0, 0, 1, -1),
    (-1, -1, -1, 0, 0),
)

_PRETZEL_A2 = (
    (1, -1, 0, 0, 0, 0),
    (0, 1, -1, 0, 0, 0),
    (0, 0, 1, -1, 0, 0),
    (0, 0, 0, 1, -1, 0),
    (0, 0, 0, 1, 1, 1),
)


def pretzel_embedding(which, n):
    """The displayed pretzel embedding, padded with zero columns to width n."""
    base = {1: _PRETZEL_A1, 2: _PRETZEL_A2}[which]
    width = len(base[0])
    if n < width:
        raise ValueError(f"embedding {which} needs at least {width} columns")
    return tuple(row + (0,) * (n - width) for row in base)
