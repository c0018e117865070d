"""Exact linear algebra: canonical forms, lattice ops, distributivity.

Derived expected values (closure sizes, verdicts) were frozen from the
brute-force reference implementations at the bottom of this file.
"""

import random

import numpy as np
import pytest

from koszul.exactlin import (
    DISTRIBUTIVE,
    INCONCLUSIVE,
    INTERSECT,
    NOT_DISTRIBUTIVE,
    QUOTIENT_MAP,
    SUM,
    AmbientMismatchError,
    FieldMismatchError,
    GF,
    Mat,
    QQ,
    Subspace,
    combine,
    distributivity_check,
    echelonize,
    kernel,
    solve_in_span,
)

F2, F3, F5 = GF(2), GF(3), GF(5)


# ---------------------------------------------------------------------------
# reference implementations used as oracles


def closure_reference(subs):
    seen = {s.key(): s for s in subs}
    changed = True
    while changed:
        changed = False
        items = list(seen.values())
        for a in items:
            for b in items:
                for s in (a.sum(b), a.intersect(b)):
                    if s.key() not in seen:
                        seen[s.key()] = s
                        changed = True
    return list(seen.values())


def distributive_reference(subs):
    closed = closure_reference(subs)
    for x in closed:
        for y in closed:
            for z in closed:
                lhs = x.sum(y).intersect(z)
                rhs = x.intersect(z).sum(y.intersect(z))
                if lhs != rhs:
                    return False, len(closed)
    return True, len(closed)


def exterior_relations(field):
    # relations of the exterior algebra on x, y: x.x, y.y, x.y + y.x
    return field.array([[1, 0, 0, 0], [0, 0, 0, 1], [0, 1, 1, 0]])


def shifted_relation_space(field, rbasis, d, left, right):
    m = Mat.eye(field, d**left).kron(Mat(field, rbasis)).kron(Mat.eye(field, d**right))
    return Subspace.from_rows(field, d ** (left + 2 + right), m.a)


def random_matrix(field, rng, rows, cols):
    lo, hi = (-4, 5) if field.char is None else (0, field.char)
    data = np.array([rng.randrange(lo, hi) for _ in range(rows * cols)], dtype=np.int64)
    return Mat(field, data.reshape(rows, cols))


# ---------------------------------------------------------------------------
# echelon forms


def test_echelonize_collinear_rows_f5():
    s = echelonize(Mat(F5, [[2, 4], [1, 2]]))
    assert s.dim == 1
    assert s.basis.tolist() == [[1, 2]]
    assert s.pivots == (0,)


def test_echelonize_zero_matrix():
    s = echelonize(Mat.zeros(F3, 3, 3))
    assert s.dim == 0 and s.pivots == ()


def test_echelonize_identity_rational():
    s = echelonize(Mat.eye(QQ, 3))
    assert s.dim == 3 and s.pivots == (0, 1, 2)


def test_echelonize_idempotent_on_random_inputs():
    rng = random.Random(7)
    for field in (F2, F3, F5, QQ):
        for _ in range(20):
            m = random_matrix(field, rng, rng.randrange(1, 6), rng.randrange(1, 6))
            s = echelonize(m)
            again = Subspace.from_rows(field, s.ambient_dim, s.basis)
            assert s == again


def test_rank_nullity_on_random_inputs():
    rng = random.Random(11)
    for field in (F2, F3, F5, QQ):
        for _ in range(25):
            m = random_matrix(field, rng, rng.randrange(0, 6), rng.randrange(1, 6))
            assert m.rank() + kernel(m).dim == m.cols


def test_subspace_equality_is_set_equality():
    a = Subspace.from_rows(F3, 3, [[1, 1, 0], [0, 1, 1]])
    b = Subspace.from_rows(F3, 3, [[1, 2, 1], [2, 2, 0], [1, 1, 0]])
    assert a == b and hash(a) == hash(b)


def test_field_and_ambient_mismatches_rejected():
    x = Subspace.from_rows(F2, 2, [[1, 0]])
    y = Subspace.from_rows(F3, 2, [[1, 0]])
    z = Subspace.from_rows(F2, 3, [[1, 0, 0]])
    with pytest.raises(FieldMismatchError):
        x.sum(y)
    with pytest.raises(AmbientMismatchError):
        x.sum(z)


# ---------------------------------------------------------------------------
# combine


def test_sum_of_coordinate_lines():
    x = Subspace.from_rows(F2, 3, [[1, 0, 0]])
    y = Subspace.from_rows(F2, 3, [[0, 1, 0]])
    s = combine(x, y, SUM)
    assert s.dim == 2 and s.contains([1, 1, 0]) and not s.contains([0, 0, 1])


def test_intersection_of_planes_f3():
    x = Subspace.from_rows(F3, 3, [[1, 0, 0], [0, 1, 0]])
    y = Subspace.from_rows(F3, 3, [[0, 1, 0], [0, 0, 1]])
    m = combine(x, y, INTERSECT)
    assert m.dim == 1 and m.contains([0, 1, 0])


def test_intersection_against_reference_on_random_pairs():
    rng = random.Random(3)
    for field in (F2, F3, QQ):
        for _ in range(20):
            n = rng.randrange(1, 6)
            x = echelonize(random_matrix(field, rng, rng.randrange(0, n + 1), n))
            y = echelonize(random_matrix(field, rng, rng.randrange(0, n + 1), n))
            m = x.intersect(y)
            # containment in both, and dimension by inclusion-exclusion
            assert x.contains_space(m) and y.contains_space(m)
            assert m.dim == x.dim + y.dim - x.sum(y).dim


def test_quotient_map_kernel_is_exactly_the_subspace():
    x = Subspace.from_rows(F2, 2, [[1, 0]])
    q = combine(x, None, QUOTIENT_MAP)
    assert (q.rows, q.cols) == (1, 2)
    assert kernel(q) == x
    rng = random.Random(5)
    for field in (F3, QQ):
        for _ in range(15):
            n = rng.randrange(1, 6)
            s = echelonize(random_matrix(field, rng, rng.randrange(0, n + 1), n))
            q = s.quotient_map()
            assert q.rows == n - s.dim
            assert kernel(q) == s
            # the canonical section splits the projection
            sect = s.section_of_quotient()
            assert (q @ sect) == Mat.eye(field, n - s.dim)


def test_solve_in_span_round_trip():
    rng = random.Random(13)
    for field in (F2, F5, QQ):
        for _ in range(15):
            n = rng.randrange(1, 6)
            basis = random_matrix(field, rng, rng.randrange(1, n + 1), n)
            coeffs = random_matrix(field, rng, 3, basis.rows)
            targets = coeffs @ basis
            x = solve_in_span(basis, targets)
            assert (x @ basis) == targets


def test_solve_in_span_rejects_outside_vectors():
    basis = Mat(F2, [[1, 0, 0]])
    with pytest.raises(ValueError):
        solve_in_span(basis, Mat(F2, [[0, 1, 0]]))


# ---------------------------------------------------------------------------
# distributivity


def test_three_lines_in_the_plane_are_not_distributive():
    lines = [
        Subspace.from_rows(F2, 2, [[1, 0]]),
        Subspace.from_rows(F2, 2, [[0, 1]]),
        Subspace.from_rows(F2, 2, [[1, 1]]),
    ]
    v = distributivity_check(lines)
    assert v.status == NOT_DISTRIBUTIVE
    assert v.closure_size == 5  # frozen from distributive_reference
    x, y, z = v.witness
    assert x.sum(y).intersect(z) != x.intersect(z).sum(y.intersect(z))


def test_two_subspaces_always_distributive():
    rng = random.Random(17)
    for _ in range(20):
        n = rng.randrange(1, 5)
        x = echelonize(random_matrix(F2, rng, rng.randrange(0, n + 1), n))
        y = echelonize(random_matrix(F2, rng, rng.randrange(0, n + 1), n))
        assert distributivity_check([x, y]).status == DISTRIBUTIVE


def test_chains_are_distributive():
    rng = random.Random(19)
    for field in (F3, QQ):
        rows = random_matrix(field, rng, 4, 5)
        chain = [Subspace.from_rows(field, 5, rows.a[:k]) for k in range(5)]
        assert distributivity_check(chain).status == DISTRIBUTIVE


def test_exterior_shift_collection_at_degree_four_is_distributive():
    # frozen from distributive_reference: distributive, closure size 10
    for field in (F2, F3):
        r = exterior_relations(field)
        subs = [shifted_relation_space(field, r, 2, k - 1, 3 - k) for k in (1, 2, 3)]
        v = distributivity_check(subs)
        assert v.status == DISTRIBUTIVE
        assert v.closure_size == 10
        ok, size = distributive_reference(subs)
        assert ok and size == 10


def test_budget_overflow_is_inconclusive_in_large_ambient():
    # three generic planes in F_2^7 exceed a budget of 4; 2^7 > 4 so the
    # overflow cannot be promoted to a non-distributivity proof
    rng = random.Random(23)
    subs = [echelonize(random_matrix(F2, rng, 3, 7)) for _ in range(3)]
    v = distributivity_check(subs, budget=4)
    assert v.status == INCONCLUSIVE
    assert v.witness is None


def test_overflow_with_generous_budget_proves_non_distributivity():
    # in k^2 the whole lattice has 5 elements; budget 4 < 5 overflows, and
    # since 4 >= 2^2 the collection cannot be distributive
    lines = [
        Subspace.from_rows(F2, 2, [[1, 0]]),
        Subspace.from_rows(F2, 2, [[0, 1]]),
        Subspace.from_rows(F2, 2, [[1, 1]]),
    ]
    v = distributivity_check(lines, budget=4)
    assert v.status == NOT_DISTRIBUTIVE


def test_distributive_verdict_spot_checked_on_random_triples():
    for field in (F2, F3):
        r = exterior_relations(field)
        subs = [shifted_relation_space(field, r, 2, k - 1, 3 - k) for k in (1, 2, 3)]
        closed = closure_reference(subs)
        rng = random.Random(29)
        for _ in range(1000):
            x, y, z = (closed[rng.randrange(len(closed))] for _ in range(3))
            assert x.sum(y).intersect(z) == x.intersect(z).sum(y.intersect(z))


def test_empty_collection_distributive():
    v = distributivity_check([])
    assert v.status == DISTRIBUTIVE and v.closure_size == 0


# ---------------------------------------------------------------------------
# modular law sanity (subspace lattices are modular, never checked above)


def test_modular_law_holds_for_random_triples():
    rng = random.Random(31)
    for _ in range(30):
        n = 4
        x = echelonize(random_matrix(F3, rng, rng.randrange(0, 4), n))
        b = echelonize(random_matrix(F3, rng, rng.randrange(0, 4), n))
        a = x.sum(echelonize(random_matrix(F3, rng, rng.randrange(0, 4), n)))
        # x <= a implies x + (b ^ a) == (x + b) ^ a
        assert x.sum(b.intersect(a)) == x.sum(b).intersect(a)
