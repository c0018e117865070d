"""Certification, morphism reports, and the module/comodule duality check.

The certifier's three methods (bar homology, lattice distributivity,
Koszul-complex exactness) are built on disjoint engines, so forcing them
to agree on a shared corpus is itself the oracle; any split verdict
raises instead of passing.  Morphism and duality expectations are frozen
from one- and two-generator exterior algebras, where kernels, cokernels,
and homology are small enough to write down by hand: the kernel (y) of
Lambda(x,y) ->> Lambda(x) is not free (y*x generates nothing new in
degree 2 but y itself sits in degree 1), the cokernel of Lambda(x)
into Lambda(x,y) is the free rank-one module on y, and homology over
the ground field is the module itself in homological degree 0.
"""

import dataclasses
import random

import pytest

from koszul.config import Config
from koszul.exactlin import GF, Mat, Subspace
from koszul.homology import (
    FAILS_AT,
    HOLDS,
    INCONCLUSIVE,
    coalgebra_table_from_presentation,
    cot_bigraded,
    tor_bigraded,
    trivial_comodule_table,
)
from koszul.koszulity import (
    ALL_METHODS,
    DISTRIBUTIVITY,
    HOMOLOGY,
    HypothesisFailure,
    MorphismPresentation,
    certify,
    dual_component_maps,
    free_up_to,
    module_generator_dims,
    morphism_duality_check,
    morphism_from_generators,
    morphism_report,
    regular_module_table,
)
from koszul.quadratic import (
    COALGEBRA,
    GradedAlgebraTable,
    LEFT,
    QuadModulePresentation,
    QuadPresentation,
    RIGHT,
    component,
    free_presentation,
    polynomial_presentation,
    quadratic_part,
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


def random_presentation(rng, field, d, r_rows):
    rows = [[rng.randrange(field.char) for _ in range(d * d)] for _ in range(r_rows)]
    return QuadPresentation(
        field, tuple(f"v{i}" for i in range(d)), Subspace.from_rows(field, d * d, rows)
    )


# relations y(x)z + z(x)z and z(x)y in three variables; not Koszul, with the
# first off-diagonal bar homology in bidegree (3, 4)
WITNESS_ROWS = [[0, 0, 0, 0, 0, 1, 0, 0, 1], [0, 0, 0, 0, 0, 0, 0, 1, 0]]


def witness_presentation():
    return QuadPresentation(
        F2, ("x", "y", "z"), Subspace.from_rows(F2, 9, WITNESS_ROWS)
    )


def truncated_poly_table(field):
    """k[x]/(x^3) as a bare table: quadratically presented it is not."""
    dims = (1, 1, 1, 0, 0)
    mult = {}
    for i in range(5):
        for j in range(5 - i):
            arr = field.zeros((dims[i + j], dims[i] * dims[j]))
            if dims[i + j] and dims[i] and dims[j]:
                arr[0, 0] = 1
            mult[(i, j)] = Mat(field, arr)
    return GradedAlgebraTable(field, dims, mult)


# ---------------------------------------------------------------------------
# certification


def test_exterior_presentations_certify_by_all_three_methods():
    for field in (F2, F3):
        for labels in (("x",), ("x", "y"), ("x", "y", "z")):
            cert = certify(exterior(field, labels), window=5)
            assert cert.status == HOLDS
            assert cert.holds
            assert set(cert.methods_used) == set(ALL_METHODS)
            assert cert.agreement
            assert "quadratic part recovers the algebra through degree 5" in cert.notes


def test_ground_field_certifies_vacuously():
    cert = certify(free_presentation(F2, ()), window=4)
    assert cert.holds and set(cert.methods_used) == set(ALL_METHODS)


def test_trivial_and_free_modules_certify_over_exterior():
    p = exterior(F2, ("x", "y"))
    trivial = QuadModulePresentation(F2, 2, ("u",), Subspace.full(F2, 2))
    free = QuadModulePresentation(F2, 2, ("u",), Subspace.zero(F2, 2))
    for mod in (trivial, free):
        cert = certify(p, mod=mod, window=4)
        assert cert.holds
        assert "module of 1 generators" in cert.subject
        assert "quadratic part recovers the module through degree 4" in cert.notes


def test_witness_failure_is_located_consistently():
    cert = certify(witness_presentation(), window=4)
    assert cert.status == FAILS_AT
    assert not cert.holds
    assert cert.fail_at == (3, 4)
    assert cert.witness_dim == 1
    assert set(cert.methods_used) == set(ALL_METHODS)
    # per-method locations in the notes: same internal degree, three readings
    assert "Homology locates the failure at (3, 4)" in cert.notes
    assert "Distributivity locates the failure at (None, 4)" in cert.notes
    assert "KoszulComplex locates the failure at (2, 2)" in cert.notes


def test_single_method_subsets():
    cert = certify(witness_presentation(), window=4, methods=(DISTRIBUTIVITY,))
    assert cert.status == FAILS_AT
    assert cert.fail_at == (None, 4)
    assert cert.methods_used == (DISTRIBUTIVITY,)
    cert = certify(exterior(F2, ("x", "y")), window=4, methods=(HOMOLOGY,))
    assert cert.holds and cert.methods_used == (HOMOLOGY,)
    with pytest.raises(ValueError, match="unknown method"):
        certify(exterior(F2, ("x",)), methods=("Magic",))


def test_budget_overflow_downgrades_to_inconclusive():
    # too little room to build the tables at all
    cert = certify(exterior(F2, ("x", "y")), window=5, config=Config(max_ambient=20))
    assert cert.status == INCONCLUSIVE and cert.methods_used == ()
    # tables fit but the lattice may not close
    cert = certify(
        exterior(F2, ("x", "y")),
        window=4,
        methods=(DISTRIBUTIVITY,),
        config=Config(lattice_budget=2),
    )
    assert cert.status == INCONCLUSIVE
    assert cert.methods_used == ()
    assert any("lattice budget exhausted at degree 4" in n for n in cert.notes)


def test_certify_rejects_mismatched_module_kind():
    p = exterior(F2, ("x", "y"))
    a = table_from_presentation(p, 4)
    with pytest.raises(ValueError, match="presentation modules"):
        certify(p, mod=trivial_module_table(a, LEFT), window=4)
    trivial = QuadModulePresentation(F2, 2, ("u",), Subspace.full(F2, 2))
    with pytest.raises(ValueError, match="module tables"):
        certify(a, mod=trivial, window=4)


def test_method_agreement_on_random_presentations():
    """The three engines must agree in verdict and failure degree; certify
    raises MethodDisagreement otherwise, so passing is the property."""
    rng = random.Random(101)
    seen = set()
    for field in (F2, F3):
        for d in (2, 3):
            for r_rows in range(0, d * d + 1, 2):
                cert = certify(random_presentation(rng, field, d, r_rows), window=4)
                seen.add(cert.status)
                if cert.holds:
                    assert (
                        "quadratic part recovers the algebra through degree 4"
                        in cert.notes
                    )
    assert seen == {HOLDS, FAILS_AT}


def test_method_agreement_with_random_modules():
    rng = random.Random(202)
    for trial in range(8):
        p = random_presentation(rng, F2, 2, rng.randrange(0, 4))
        u = 1 + trial % 2
        s_rows = [[rng.randrange(2) for _ in range(2 * u)] for _ in range(rng.randrange(0, 2 * u + 1))]
        mod = QuadModulePresentation(
            F2, 2, tuple(f"u{i}" for i in range(u)), Subspace.from_rows(F2, 2 * u, s_rows)
        )
        certify(p, mod=mod, window=3)


def test_module_diagonal_matches_dual_comodule_components():
    rng = random.Random(303)
    for field in (F2, F3):
        for _ in range(4):
            p = random_presentation(rng, field, 2, rng.randrange(0, 5))
            u = rng.randrange(1, 3)
            s_rows = [
                [rng.randrange(field.char) for _ in range(2 * u)]
                for _ in range(rng.randrange(0, 2 * u + 1))
            ]
            mod = QuadModulePresentation(
                field, 2, tuple(f"u{i}" for i in range(u)),
                Subspace.from_rows(field, 2 * u, s_rows),
            )
            a, mtab = table_from_presentation(p, 4, mod=mod)
            t = tor_bigraded(trivial_module_table(a, RIGHT), a, mtab, (4, 4))
            for i in range(5):
                assert t[(i, i)] == component(p, COALGEBRA, i, mod=mod).dim


def test_certified_tables_recover_quadraticity():
    a = table_from_presentation(exterior(F2, ("x", "y")), 4)
    cert = certify(a, window=4)
    assert cert.holds and set(cert.methods_used) == set(ALL_METHODS)
    qp = quadratic_part(a)
    assert all(v == "iso" for v in qp.comparison.values())


def test_non_quadratic_table_skips_structural_methods():
    cert = certify(truncated_poly_table(F2), window=4)
    assert cert.status == FAILS_AT
    assert cert.fail_at == (2, 3)
    assert cert.methods_used == (HOMOLOGY,)
    assert any("skipped" in n for n in cert.notes)
    assert "quadratic part recovers the algebra through degree 2" in cert.notes
    qp = quadratic_part(truncated_poly_table(F2))
    assert qp.comparison[2] == "iso" and qp.comparison[3] == "fails"


def test_partial_band_vanishing_is_two_sided():
    """Vanishing of H_{i,i+1} for i <= 3 holds on the algebra side iff it
    holds on the dual coalgebra side (checked as a paired property)."""

    def left_band(p):
        a = table_from_presentation(p, 4)
        t = tor_bigraded(
            trivial_module_table(a, RIGHT), a, trivial_module_table(a, LEFT), (3, 4)
        )
        return all(t[(i, i + 1)] == 0 for i in range(4))

    def right_band(p):
        c = coalgebra_table_from_presentation(p, 4)
        t = cot_bigraded(
            trivial_comodule_table(c, RIGHT), c, trivial_comodule_table(c, LEFT), (3, 4)
        )
        return all(t[(i, i + 1)] == 0 for i in range(4))

    rng = random.Random(404)
    samples = [witness_presentation(), exterior(F2, ("x", "y", "z"))]
    samples += [random_presentation(rng, f, 3, rng.randrange(0, 10)) for f in (F2, F3) for _ in range(3)]
    outcomes = set()
    for p in samples:
        lhs, rhs = left_band(p), right_band(p)
        assert lhs == rhs
        outcomes.add(lhs)
    assert outcomes == {True, False}


# ---------------------------------------------------------------------------
# morphism reports


def surjection_xy_to_x():
    return morphism_from_generators(
        exterior(F3, ("x", "y")), exterior(F3, ("x",)), Mat(F3, [[1, 0]]), window=4
    )


def inclusion_x_into_xy():
    return morphism_from_generators(
        exterior(F3, ("x",)), exterior(F3, ("x", "y")), Mat(F3, [[1], [0]]), window=4
    )


def unit_into(tgt_labels):
    field = F3
    tgt = exterior(field, tgt_labels)
    return morphism_from_generators(
        free_presentation(field, ()), tgt, Mat.zeros(field, len(tgt_labels), 0), window=4
    )


def test_identity_morphism_report():
    p = exterior(F2, ("x", "y"))
    f = morphism_from_generators(p, p, Mat.eye(F2, 2), window=4)
    rep = morphism_report(f)
    assert {k: v for k, v in rep.tor.entries.items() if v} == {(0, 0): 1}
    assert rep.first_kind and rep.second_kind
    assert rep.injective and rep.surjective
    assert rep.module_routes == {
        "target_module": True,
        "cokernel_shift1": True,
        "kernel_shift2": True,
    }
    assert rep.freeness == {
        "target_free": True,
        "kernel_free": True,
        "quotient_module_koszul": True,
    }
    assert rep.dual_map == {"surjective": True, "injective": True}


def test_surjection_report():
    rep = morphism_report(surjection_xy_to_x())
    assert {k: v for k, v in rep.tor.entries.items() if v} == {
        (i, i): 1 for i in range(5)
    }
    assert rep.first_kind and rep.second_kind
    assert rep.surjective and not rep.injective
    # the kernel (y) has a degree-1 part, so the shift-by-2 route is closed
    assert rep.module_routes == {
        "target_module": True,
        "cokernel_shift1": None,
        "kernel_shift2": False,
    }
    assert rep.freeness == {
        "target_free": False,
        "kernel_free": False,
        "quotient_module_koszul": None,
    }
    assert rep.dual_map == {"surjective": True, "injective": False}


def test_unit_maps_split_by_band():
    rep2 = morphism_report(unit_into(("x", "y")))
    assert [rep2.tor[(0, j)] for j in range(5)] == [1, 2, 1, 0, 0]
    assert not rep2.first_kind and not rep2.second_kind
    rep1 = morphism_report(unit_into(("x",)))
    assert [rep1.tor[(0, j)] for j in range(5)] == [1, 1, 0, 0, 0]
    assert not rep1.first_kind and rep1.second_kind
    assert rep1.injective and not rep1.surjective
    assert rep1.module_routes["cokernel_shift1"] is True
    assert rep1.freeness["target_free"] is True


def test_inclusion_report():
    rep = morphism_report(inclusion_x_into_xy())
    assert not rep.first_kind and rep.second_kind
    assert rep.injective and not rep.surjective
    # Lambda(x,y) = Lambda(x) + y*Lambda(x): free, cokernel free on y
    assert rep.module_routes["cokernel_shift1"] is True
    assert rep.freeness == {
        "target_free": True,
        "kernel_free": None,
        "quotient_module_koszul": True,
    }
    assert rep.dual_map == {"surjective": False, "injective": True}


def test_second_kind_transfers_certification():
    cases = (
        morphism_from_generators(
            exterior(F2, ("x", "y")), exterior(F2, ("x", "y")), Mat.eye(F2, 2), window=4
        ),
        surjection_xy_to_x(),
        inclusion_x_into_xy(),
        unit_into(("x",)),
        unit_into(("x", "y")),
    )
    transferred = 0
    for f in cases:
        rep = morphism_report(f)
        if rep.second_kind and certify(f.source, window=4).holds:
            assert certify(f.target, window=4).holds
            transferred += 1
    assert transferred >= 3


def test_non_multiplicative_extension_is_rejected():
    with pytest.raises(ValueError, match=r"degrees \(1, 1\)"):
        morphism_from_generators(
            polynomial_presentation(F3, ("x", "y")),
            exterior(F3, ("x", "y")),
            Mat.eye(F3, 2),
            window=4,
        )


def test_morphism_validation():
    p = exterior(F2, ("x", "y"))
    f = morphism_from_generators(p, p, Mat.eye(F2, 2), window=3)
    with pytest.raises(ValueError, match="degree 0"):
        MorphismPresentation(f.source, f.target, {**f.maps, 0: Mat.zeros(F2, 1, 1)})
    with pytest.raises(ValueError, match="missing degree"):
        MorphismPresentation(f.source, f.target, {0: f.maps[0], 1: f.maps[1]})
    with pytest.raises(ValueError, match="kind flags"):
        rep = morphism_report(unit_into(("x", "y")))
        dataclasses.replace(rep, first_kind=True)


def test_freeness_and_generators_of_regular_and_trivial_modules():
    a = table_from_presentation(exterior(F2, ("x", "y")), 4)
    for side in (LEFT, RIGHT):
        reg = regular_module_table(a, side)
        assert free_up_to(reg) == (True, None)
        assert module_generator_dims(reg) == (1, 0, 0, 0, 0)
    triv = trivial_module_table(a, LEFT)
    assert free_up_to(triv) == (False, 1)
    assert module_generator_dims(triv) == (1, 0, 0, 0, 0)


def test_dual_component_maps_of_identity():
    p = exterior(F2, ("x", "y"))
    f = morphism_from_generators(p, p, Mat.eye(F2, 2), window=4)
    maps = dual_component_maps(f, p, p, 4)
    # dual components of the exterior square grow like the symmetric algebra
    assert [maps[n].rows for n in range(5)] == [1, 2, 3, 4, 5]
    assert all(maps[n] == Mat.eye(F2, maps[n].rows) for n in range(5))


# ---------------------------------------------------------------------------
# duality crosscheck


def test_duality_identity_collapses_to_ground_field():
    p = exterior(F2, ("x", "y"))
    f = morphism_from_generators(p, p, Mat.eye(F2, 2), window=4)
    rep = morphism_duality_check(f)
    nonzero = {k: v for k, v in rep.module_side.entries.items() if v}
    assert nonzero == {(0, 0): 1}
    assert rep.module_side.entries == rep.comodule_side.entries == rep.mixed_complex.entries
    assert rep.dictionary == {
        "target_free_right": True,
        "dual_comodule_koszul": True,
        "kernel_free_right": True,
        "dual_band": True,
        "diagonal_vanishing": True,
        "shifted_generators_match": True,
    }


def test_duality_of_the_surjection():
    rep = morphism_duality_check(surjection_xy_to_x())
    assert {k: v for k, v in rep.module_side.entries.items() if v} == {
        (i, i): 1 for i in range(5)
    }
    assert rep.module_side.entries == rep.comodule_side.entries == rep.mixed_complex.entries
    # the kernel (y) is not a free right module and its dual side agrees;
    # its generator y in degree 1 shows up one step off the diagonal
    assert rep.dictionary == {
        "target_free_right": False,
        "dual_comodule_koszul": False,
        "kernel_free_right": False,
        "dual_band": False,
        "diagonal_vanishing": True,
        "shifted_generators_match": True,
    }


def test_duality_of_the_unit_map():
    rep = morphism_duality_check(unit_into(("x",)))
    nonzero = {k: v for k, v in rep.module_side.entries.items() if v}
    assert nonzero == {(0, 0): 1, (0, 1): 1}
    assert rep.dictionary["target_free_right"] is True
    assert rep.dictionary["dual_comodule_koszul"] is True
    assert rep.dictionary["dual_band"] is True
    # not surjective: the kernel facts do not apply
    assert rep.dictionary["kernel_free_right"] is None
    assert rep.dictionary["diagonal_vanishing"] is None
    assert rep.dictionary["shifted_generators_match"] is None


def test_duality_equivalences_across_morphisms():
    for f in (surjection_xy_to_x(), inclusion_x_into_xy(), unit_into(("x",)),
              unit_into(("x", "y"))):
        d = morphism_duality_check(f).dictionary
        assert d["target_free_right"] == d["dual_comodule_koszul"]
        if d["kernel_free_right"] is not None:
            assert d["kernel_free_right"] == d["dual_band"]
            assert d["diagonal_vanishing"] is True
            assert d["shifted_generators_match"] is True


def test_duality_requires_certified_endpoints():
    p = witness_presentation()
    f = morphism_from_generators(p, p, Mat.eye(F2, 3), window=4)
    with pytest.raises(HypothesisFailure, match="source is not certified"):
        morphism_duality_check(f, window=4)
    try:
        morphism_duality_check(f, window=4)
    except HypothesisFailure as e:
        assert e.certificate.fail_at == (3, 4)
