"""Bar, cobar, and Koszul-complex engines.

Bar homology of the one-generator tensor algebra is cross-checked against
a self-contained word-combinatorics oracle (compositions + merges, with a
plain-Python rank routine), so the engine's numbers are not trusted on
their own.  Cyclic-group cobar values are checked against the classical
cohomology rings of Z/2 and Z/3.
"""

import random
from math import prod

import pytest

from koszul.config import BudgetError, Config
from koszul.exactlin import GF, QQ, Mat, Subspace
from koszul.homology import (
    Certificate,
    CobarComplex,
    FDCoalgebra,
    FDComodule,
    coalgebra_table_from_presentation,
    cofree_comodule,
    cohomology_tables,
    corestricted_comodule,
    cot_bigraded,
    induced_cohomology_map,
    koszul_check,
    tor_bigraded,
    trivial_comodule,
    trivial_comodule_table,
)
from koszul.quadratic import (
    COALGEBRA,
    QuadPresentation,
    component,
    free_presentation,
    opposite_table,
    polynomial_presentation,
    table_from_presentation,
    trivial_module_table,
)

F2, F3 = GF(2), GF(3)


def exterior(field, labels):
    d = len(labels)
    rows = []
    for i in range(d):
        v = [0] * (d * d)
        v[i * d + i] = 1
        rows.append(v)
    for i in range(d):
        for j in range(i + 1, d):
            v = [0] * (d * d)
            v[i * d + j] = 1
            v[j * d + i] = 1
            rows.append(v)
    return QuadPresentation(field, labels, Subspace.from_rows(field, d * d, rows))


def group_coalgebra_local(field, table, ident):
    n = len(table)
    delta = field.zeros((n * n, n))
    for a in range(n):
        for b in range(n):
            delta[a * n + b, table[a][b]] = 1
    eps = field.zeros((1, n))
    eps[0, ident] = 1
    chi = field.zeros((n, 1))
    chi[:, 0] = 1
    return FDCoalgebra(field, n, Mat(field, delta), Mat(field, eps), Mat(field, chi))


Z2 = [[0, 1], [1, 0]]
Z3 = [[0, 1, 2], [1, 2, 0], [2, 0, 1]]


# ---------------------------------------------------------------------------
# oracle: bar homology of the one-generator tensor algebra by hand


def rank_mod(rows, p):
    rows = [r[:] for r in rows]
    cols = len(rows[0]) if rows else 0
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, len(rows)) if rows[i][c] % p), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = pow(rows[r][c], -1, p)
        rows[r] = [x * inv % p for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] % p:
                f = rows[i][c]
                rows[i] = [(a - f * b) % p for a, b in zip(rows[i], rows[r])]
        r += 1
    return r


def compositions(total, parts):
    if parts == 0:
        return [()] if total == 0 else []
    return [
        (first,) + rest
        for first in range(1, total - parts + 2)
        for rest in compositions(total - first, parts - 1)
    ]


def tensor_algebra_bar_oracle(p, i_max, j_max):
    """Homology of k (x) T(x)_+^i (x) k: merges concatenate powers of x,
    end merges act by zero on k."""
    dims = {}
    for j in range(j_max + 1):
        terms = {i: compositions(j, i) for i in range(j + 2)}
        rank = {}
        for i in range(1, j + 1):
            src, tgt = terms[i], terms[i - 1]
            index = {sig: k for k, sig in enumerate(tgt)}
            rows = []
            for sig in src:
                row = [0] * len(tgt)
                for t in range(1, i):
                    merged = sig[:t - 1] + (sig[t - 1] + sig[t],) + sig[t + 1:]
                    row[index[merged]] += (-1) ** t
                rows.append([x % p for x in row])
            rank[i] = rank_mod(rows, p) if rows and tgt else 0
        for i in range(min(i_max, j) + 1):
            dims[(i, j)] = len(terms[i]) - rank.get(i, 0) - rank.get(i + 1, 0)
    return dims


def bar_term_dim(n, a, m, i, j):
    tot = 0
    for a0 in range(j + 1):
        for b in range(j + 1 - a0):
            for sig in compositions(j - a0 - b, i):
                tot += n.dims[a0] * m.dims[b] * prod(a.dims[s] for s in sig)
    return tot


def random_presentation(field, rng, d, rank):
    while True:
        rows = [[rng.randrange(field.char) for _ in range(d * d)] for _ in range(rank)]
        r = Subspace.from_rows(field, d * d, rows)
        if r.dim == rank:
            return QuadPresentation(field, tuple(f"x{i}" for i in range(d)), r)


def tor_of(p, window, field=None):
    a = table_from_presentation(p, window[1])
    return a, tor_bigraded(
        trivial_module_table(a, "right"), a, trivial_module_table(a, "left"), window
    )


# ---------------------------------------------------------------------------
# bar / Tor


def test_bar_dims_match_word_oracle():
    for field, p in ((F2, 2), (F3, 3)):
        free = free_presentation(field, ("x",))
        _, table = tor_of(free, (3, 4))
        oracle = tensor_algebra_bar_oracle(p, 3, 4)
        for key, want in oracle.items():
            assert table[key] == want
        # tensor algebras have homology only at (0,0) and (1,1)
        assert {k: v for k, v in table.entries.items() if v} == {(0, 0): 1, (1, 1): 1}


def test_square_zero_bar_is_diagonal():
    # x with x.x = 0: every merge vanishes, so each diagonal slot survives
    sq = QuadPresentation(F2, ("x",), Subspace.from_rows(F2, 1, [[1]]))
    _, table = tor_of(sq, (4, 4))
    assert {k: v for k, v in table.entries.items() if v} == {
        (i, i): 1 for i in range(5)
    }


def test_window_zero_gives_unit_slot():
    p = exterior(F3, ("x", "y"))
    _, table = tor_of(p, (0, 0))
    assert table.entries == {(0, 0): 1}


def test_bar_diagonal_matches_dual_components():
    rng = random.Random(11)
    for field in (F2, F3):
        for rank in range(5):
            p = random_presentation(field, rng, 2, rank)
            _, table = tor_of(p, (4, 4))
            for i in range(5):
                assert table[(i, i)] == component(p, COALGEBRA, i).dim


def test_bar_dims_survive_side_swap():
    rng = random.Random(13)
    for _ in range(6):
        p = random_presentation(F3, rng, 2, rng.randrange(5))
        a = table_from_presentation(p, 4)
        opp = opposite_table(a)
        t = tor_bigraded(trivial_module_table(a, "right"), a,
                         trivial_module_table(a, "left"), (4, 4))
        t_op = tor_bigraded(trivial_module_table(opp, "right"), opp,
                            trivial_module_table(opp, "left"), (4, 4))
        assert t.entries == t_op.entries


def test_bar_euler_characteristic():
    rng = random.Random(17)
    p = random_presentation(F2, rng, 3, 4)
    a = table_from_presentation(p, 4)
    kr, kl = trivial_module_table(a, "right"), trivial_module_table(a, "left")
    table = tor_bigraded(kr, a, kl, (4, 4))
    for j in range(5):
        chi_terms = sum((-1) ** i * bar_term_dim(kr, a, kl, i, j) for i in range(j + 1))
        chi_h = sum((-1) ** i * table[(i, j)] for i in range(j + 1))
        assert chi_terms == chi_h


def test_bar_representatives_are_cycles():
    p = exterior(F2, ("x", "y"))
    a = table_from_presentation(p, 3)
    kr, kl = trivial_module_table(a, "right"), trivial_module_table(a, "left")
    table = tor_bigraded(kr, a, kl, (3, 3), representatives=True)
    for (i, j), dim in table.entries.items():
        assert table.representatives[(i, j)].rows == dim


def test_module_tor_of_trivial_module_stays_diagonal():
    # over an exterior algebra the trivial module resolves diagonally
    p = exterior(F3, ("x", "y"))
    a = table_from_presentation(p, 4)
    kr, kl = trivial_module_table(a, "right"), trivial_module_table(a, "left")
    table = tor_bigraded(kr, a, kl, (4, 4))
    assert table.diagonal_only()
    assert [table[(i, i)] for i in range(5)] == [1, 2, 3, 4, 5]


# ---------------------------------------------------------------------------
# cobar / Cot, finite-dimensional inputs


def test_point_coalgebra_has_unit_cohomology_only():
    c = group_coalgebra_local(F2, [[0]], 0)
    t = cot_bigraded(trivial_comodule(c, "right"), c, trivial_comodule(c, "left"), 4)
    assert [t[i] for i in range(5)] == [1, 0, 0, 0, 0]


def test_cyclic_two_cobar_matches_polynomial_ring():
    # classical: H^*(Z/2; F_2) = F_2[x], one dimension in every degree
    c = group_coalgebra_local(F2, Z2, 0)
    t = cot_bigraded(trivial_comodule(c, "right"), c, trivial_comodule(c, "left"), 4)
    assert [t[i] for i in range(5)] == [1, 1, 1, 1, 1]
    table = cohomology_tables(c, i_max=4)
    assert table.dims == (1, 1, 1, 1, 1)
    for i in range(1, 4):
        for j in range(1, 5 - i):
            assert not table.mult[(i, j)].is_zero()


def test_cyclic_three_cobar_matches_exterior_times_polynomial():
    # classical: H^*(Z/3; F_3) = exterior(x) tensor F_3[y], deg x = 1, deg y = 2
    c = group_coalgebra_local(F3, Z3, 0)
    t = cot_bigraded(trivial_comodule(c, "right"), c, trivial_comodule(c, "left"), 4)
    assert [t[i] for i in range(5)] == [1, 1, 1, 1, 1]
    table = cohomology_tables(c, i_max=4)
    assert table.dims == (1, 1, 1, 1, 1)
    assert table.mult[(1, 1)].is_zero()          # x.x = 0
    assert not table.mult[(1, 2)].is_zero()      # x.y spans degree 3
    assert not table.mult[(2, 2)].is_zero()      # y.y spans degree 4
    assert not table.mult[(2, 1)].is_zero()


def test_cofree_comodule_has_no_higher_cohomology():
    c = group_coalgebra_local(F2, Z2, 0)
    cf = cofree_comodule(c, 3, "left")
    t = cot_bigraded(trivial_comodule(c, "right"), c, cf, 3)
    assert [t[i] for i in range(4)] == [3, 0, 0, 0]


def test_module_cohomology_action_over_cyclic_group():
    # P = k(Z/2) over itself is cofree: H^0 two-dimensional, nothing above
    c = group_coalgebra_local(F2, Z2, 0)
    cf = cofree_comodule(c, 1, "left")
    table, module = cohomology_tables(c, cf, i_max=3)
    assert module.dims == (1, 0, 0, 0)


def test_identity_induces_identity_on_cohomology():
    c = group_coalgebra_local(F3, Z3, 0)
    kr, kl = trivial_comodule(c, "right"), trivial_comodule(c, "left")
    cx = CobarComplex(c, kr, kl, 3)
    g = Mat.eye(F3, cx.plus_dim)
    for i in range(4):
        m = induced_cohomology_map(g, cx, cx, i)
        assert m == Mat.eye(F3, cx.cohomology_dim(i))


def test_coalgebra_invariants_are_enforced():
    delta = F2.zeros((4, 2))
    eps = Mat(F2, F2.array([[1, 0]]))
    chi = Mat(F2, F2.array([[1], [0]]))
    with pytest.raises(ValueError, match="counit"):
        FDCoalgebra(F2, 2, Mat(F2, delta), eps, chi)


def test_comodule_axiom_is_enforced():
    # picks out the identity coordinate only: counit-compatible but
    # not coassociative over the function coalgebra of Z/2
    c = group_coalgebra_local(F2, Z2, 0)
    bad = Mat(F2, F2.array([[1], [0]]))
    with pytest.raises(ValueError, match="coaction axiom"):
        FDComodule(c, 1, bad, "left")


# ---------------------------------------------------------------------------
# cobar / Cot, graded inputs


def test_tensor_coalgebra_cot_concentrated_in_degree_one():
    full = QuadPresentation(F2, ("x", "y"), Subspace.full(F2, 4))
    ct = coalgebra_table_from_presentation(full, 3)
    assert ct.dims == (1, 2, 4, 8)
    t = cot_bigraded(trivial_comodule_table(ct, "right"), ct,
                     trivial_comodule_table(ct, "left"), (3, 3))
    assert {k: v for k, v in t.entries.items() if v} == {(0, 0): 1, (1, 1): 2}


def test_graded_cot_diagonal_matches_algebra_components():
    # for the dual coalgebra of an exterior presentation the diagonal
    # recovers the exterior algebra dims
    p = exterior(F3, ("x", "y"))
    ct = coalgebra_table_from_presentation(p, 4)
    t = cot_bigraded(trivial_comodule_table(ct, "right"), ct,
                     trivial_comodule_table(ct, "left"), (4, 4))
    assert t.diagonal_only()
    for i in range(5):
        assert t[(i, i)] == component(p, "algebra", i).dim


def test_coalgebra_over_itself_is_cofree():
    p = polynomial_presentation(F2, ("x", "y"))
    ct = coalgebra_table_from_presentation(p, 3)
    ident = {i: Mat.eye(F2, ct.dims[i]) for i in range(4)}
    as_comodule = corestricted_comodule(ct, ident, ct, "right")
    t = cot_bigraded(as_comodule, ct, trivial_comodule_table(ct, "left"), (3, 3))
    assert {k: v for k, v in t.entries.items() if v} == {(0, 0): 1}


def test_graded_cot_window_beyond_table_is_rejected():
    p = exterior(F2, ("x",))
    ct = coalgebra_table_from_presentation(p, 2)
    with pytest.raises(BudgetError):
        cot_bigraded(trivial_comodule_table(ct, "right"), ct,
                     trivial_comodule_table(ct, "left"), (3, 3))


# ---------------------------------------------------------------------------
# Koszul complexes


def test_koszul_complex_holds_on_standard_presentations():
    for p in (
        exterior(F2, ("x", "y")),
        exterior(F3, ("x", "y", "z")),
        polynomial_presentation(F3, ("x", "y")),
        QuadPresentation(F2, ("x",), Subspace.from_rows(F2, 1, [[1]])),
    ):
        cert = koszul_check(p, window=4)
        assert cert.holds and cert.methods_used == ("KoszulComplex",)


def test_koszul_complex_vacuous_on_ground_field():
    p = QuadPresentation(F2, (), Subspace.zero(F2, 0))
    assert koszul_check(p, window=3).holds


def test_koszul_complex_detects_failure():
    # relations {y.z + z.z, z.y} on three generators: the degree-4 lattice
    # collection is not distributive, and the complex picks it up at (2, 2)
    rows = [[0, 0, 0, 0, 0, 1, 0, 0, 1], [0, 0, 0, 0, 0, 0, 0, 1, 0]]
    p = QuadPresentation(F2, ("x", "y", "z"), Subspace.from_rows(F2, 9, rows))
    cert = koszul_check(p, window=4)
    assert cert.status == "fails_at"
    assert cert.fail_at == (2, 2)
    assert cert.witness_dim == 1


def test_koszul_complex_with_modules():
    p = exterior(F2, ("x", "y"))
    from koszul.quadratic import QuadModulePresentation

    free = QuadModulePresentation(F2, 2, ("u",), Subspace.zero(F2, 2))
    trivial = QuadModulePresentation(F2, 2, ("u",), Subspace.full(F2, 2))
    assert koszul_check(p, mod=free, window=3).holds
    assert koszul_check(p, mod=trivial, window=3).holds


def test_certificate_requires_consistent_failure_fields():
    with pytest.raises(ValueError):
        Certificate("s", (4, 4), "fails_at", ("KoszulComplex",))
    with pytest.raises(ValueError):
        Certificate("s", (4, 4), "nonsense", ())
