"""Group tables, the bundled catalog, and maximal l-quotients.

Expected values are classical: group counts per order, involution counts,
centers, and the known 2- and 3-quotients of the small symmetric and
alternating groups.  The l-quotient series is additionally cross-checked
against a brute-force oracle that scans every normal subgroup.
"""

import pytest

from koszul.groups import (
    GroupTable,
    catalog,
    central_product_16,
    cyclic,
    dicyclic,
    dihedral,
    direct_product,
    from_permutations,
    from_rows,
    heisenberg,
    is_l_group,
    klein_by_c4,
    maximal_l_quotient,
    metacyclic,
    normal_subgroups,
    quotient_table,
    signature,
    subgroups,
)

GROUPS_PER_ORDER = [1, 1, 1, 2, 1, 2, 1, 5, 2, 2, 1, 5, 1, 2, 1, 14]


def minimal_l_kernel_oracle(g, l):
    """Smallest normal subgroup with l-group quotient, by full scan."""
    best = None
    for n in normal_subgroups(g):
        if is_l_group(quotient_table(g, n)[0], l):
            if best is None or len(n) < len(best):
                best = n
    return best


class TestCatalog:
    def test_counts_per_order(self):
        groups = catalog()
        for order, expected in enumerate(GROUPS_PER_ORDER, start=1):
            got = sum(1 for g in groups.values() if g.order == order)
            assert got == expected, f"order {order}: {got} != {expected}"

    def test_signatures_separate_each_order(self):
        groups = catalog()
        by_order = {}
        for name, g in groups.items():
            by_order.setdefault(g.order, []).append((name, signature(g)))
        for order, items in by_order.items():
            sigs = [s for _, s in items]
            assert len(set(sigs)) == len(sigs), f"signature clash at order {order}"

    def test_all_tables_validate(self):
        for g in catalog().values():
            assert g.mul(g.identity, g.identity) == g.identity

    def test_lagrange(self):
        for g in catalog().values():
            for a in range(g.order):
                assert g.order % g.element_order(a) == 0

    def test_inverses(self):
        for g in catalog().values():
            for a in range(g.order):
                assert g.mul(a, g.inv(a)) == g.identity


class TestClassicalFacts:
    def test_quaternion_single_involution(self):
        q8 = dicyclic(2)
        assert sum(1 for a in range(8) if q8.element_order(a) == 2) == 1
        assert len(q8.center()) == 2

    def test_dihedral_involutions_and_center(self):
        d4 = dihedral(4)
        assert sum(1 for a in range(8) if d4.element_order(a) == 2) == 5
        assert len(d4.center()) == 2
        assert not d4.is_abelian()

    def test_heisenberg_mod_two_is_dihedral(self):
        assert signature(heisenberg(2)) == signature(dihedral(4))

    def test_heisenberg_mod_three(self):
        he3 = heisenberg(3)
        assert he3.order == 27
        assert max(he3.element_order(a) for a in range(27)) == 3
        assert len(he3.center()) == 3
        assert not he3.is_abelian()

    def test_modular_group_matches_abelian_order_spectrum(self):
        m16 = metacyclic(8, 2, 5)
        c8c2 = direct_product(cyclic(8), cyclic(2))
        same = sorted(m16.element_order(a) for a in range(16))
        assert same == sorted(c8c2.element_order(a) for a in range(16))
        assert not m16.is_abelian() and c8c2.is_abelian()

    def test_alternating_group_normal_subgroups(self):
        a4 = catalog()["A4"]
        assert sorted(len(n) for n in normal_subgroups(a4)) == [1, 4, 12]

    def test_pauli_center_is_cyclic_of_order_four(self):
        g = central_product_16()
        z = g.center()
        assert len(z) == 4
        assert max(g.element_order(a) for a in z) == 4

    def test_klein_semidirect_has_seven_involutions(self):
        g = klein_by_c4()
        assert sum(1 for a in range(16) if g.element_order(a) == 2) == 7

    def test_subgroup_count_elementary_abelian(self):
        g = catalog()["C2xC2xC2xC2"]
        assert len(subgroups(g)) == 67


class TestQuotients:
    def test_cyclic_quotient(self):
        c6 = cyclic(6)
        n = c6.subgroup({2})
        q, coset_of = quotient_table(c6, n)
        assert signature(q) == signature(cyclic(2))
        assert coset_of[0] == coset_of[2] == coset_of[4]

    def test_non_normal_rejected(self):
        s3 = dihedral(3)
        refl = next(a for a in range(6) if s3.element_order(a) == 2)
        with pytest.raises(ValueError, match="not normal"):
            quotient_table(s3, s3.subgroup({refl}))

    def test_symmetric_to_sign(self):
        s4 = catalog()["S4"]
        a4 = next(n for n in normal_subgroups(s4) if len(n) == 12)
        q, _ = quotient_table(s4, a4)
        assert signature(q) == signature(cyclic(2))


class TestMaximalLQuotient:
    KNOWN = {
        ("S3", 2): 2,
        ("S3", 3): 1,
        ("A4", 2): 1,
        ("A4", 3): 3,
        ("S4", 2): 2,
        ("S4", 3): 1,
        ("D6", 2): 4,
        ("D6", 3): 1,
        ("C12", 2): 4,
        ("C12", 3): 3,
        ("Dic3", 2): 4,
        ("Dic3", 3): 1,
        ("Q8", 2): 8,
        ("He3", 3): 27,
        ("He3", 2): 1,
        ("C9:C3", 3): 27,
        ("C15", 3): 3,
        ("C15", 5): 5,
        ("C15", 2): 1,
    }

    def test_known_quotient_sizes(self):
        groups = catalog()
        for (name, l), size in self.KNOWN.items():
            q, _, _ = maximal_l_quotient(groups[name], l)
            assert q.order == size, (name, l)
            assert is_l_group(q, l)

    def test_l_groups_are_their_own_quotient(self):
        for name, g in catalog().items():
            for l in (2, 3):
                if is_l_group(g, l):
                    q, kernel, _ = maximal_l_quotient(g, l)
                    assert q.order == g.order, (name, l)
                    assert kernel == frozenset({g.identity})

    def test_series_agrees_with_normal_subgroup_scan(self):
        groups = catalog()
        for name, g in groups.items():
            if g.order > 16:
                continue
            for l in (2, 3):
                _, kernel, _ = maximal_l_quotient(g, l)
                assert kernel == minimal_l_kernel_oracle(g, l), (name, l)

    def test_quotient_map_is_a_homomorphism(self):
        g = catalog()["D6"]
        q, _, coset_of = maximal_l_quotient(g, 2)
        for a in range(g.order):
            for b in range(g.order):
                assert coset_of[g.mul(a, b)] == q.mul(coset_of[a], coset_of[b])


class TestConstructors:
    def test_metacyclic_rejects_bad_twist(self):
        with pytest.raises(ValueError, match="unit of order"):
            metacyclic(8, 2, 2)
        with pytest.raises(ValueError, match="unit of order"):
            metacyclic(5, 2, 2)

    def test_permutation_closure(self):
        s3 = from_permutations([(1, 2, 0), (1, 0, 2)])
        assert s3.order == 6
        assert signature(s3) == signature(dihedral(3))

    def test_from_rows_finds_identity(self):
        c3 = cyclic(3)
        shuffled = [c3.table[2], c3.table[0], c3.table[1]]
        g = from_rows(shuffled)
        assert g.identity == 1
        assert signature(g) == signature(c3)

    def test_from_rows_rejects_garbage(self):
        with pytest.raises(ValueError, match="identity"):
            from_rows([[1, 0], [1, 0]])

    def test_validation_catches_non_associative(self):
        rows = [
            [0, 1, 2, 3, 4],
            [1, 0, 3, 4, 2],
            [2, 4, 0, 1, 3],
            [3, 2, 4, 0, 1],
            [4, 3, 1, 2, 0],
        ]
        with pytest.raises(ValueError, match="associative"):
            GroupTable(5, tuple(map(tuple, rows)), 0)

    def test_direct_product_multiplies(self):
        g = direct_product(dihedral(3), cyclic(2))
        assert g.order == 12
        assert signature(g) == signature(dihedral(6))
