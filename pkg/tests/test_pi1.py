import pytest

from plsphere import generators, homology
from plsphere.complex_core import SimplicialComplex
from plsphere.errors import DimensionOutOfRange, NotConnected
from plsphere.pi1 import (
    GroupPresentation,
    Verdict,
    free_reduce,
    pi1_presentation,
    tietze_simplify,
    triviality_verdict,
)

G3 = GroupPresentation(2, ((1, 2, 1, -2, -1, -2), (1, 1, 1, -2, -2)))


def test_free_reduce():
    assert free_reduce((1, -1)) == ()
    assert free_reduce((1, 2, -2, -1, 3)) == (3,)
    assert free_reduce((1, 2, 3)) == (1, 2, 3)


def test_presentation_validation():
    with pytest.raises(ValueError):
        GroupPresentation(1, ((2,),))
    with pytest.raises(ValueError):
        GroupPresentation(1, ((1, -1),))


def test_presentation_counts_boundary_of_simplex_3():
    P = pi1_presentation(generators.boundary_of_simplex(3), base_tree_seed=0)
    assert P.generators == 6 - 3  # edges minus spanning-tree edges
    assert len(P.relators) <= 4


def test_presentation_counts_rp2():
    P = pi1_presentation(generators.rp2_6(), base_tree_seed=0)
    assert P.generators == 15 - 5
    assert len(P.relators) <= 10


def test_preconditions():
    with pytest.raises(DimensionOutOfRange):
        pi1_presentation(SimplicialComplex([(0, 1), (1, 2), (0, 2)]))
    with pytest.raises(NotConnected):
        pi1_presentation(SimplicialComplex([(0, 1, 2), (3, 4, 5)]))


def test_single_generator_trivial():
    P = GroupPresentation(1, ((1,),))
    simplified, trace = tietze_simplify(P)
    assert simplified.is_empty()
    assert trace.generators_eliminated == 1


def test_empty_presentation_is_trivial():
    assert triviality_verdict(GroupPresentation(0, ())).verdict is Verdict.TRIVIAL


def test_spheres_simplify_to_trivial():
    for K in (
        generators.boundary_of_simplex(3),
        generators.boundary_of_simplex(4),
        generators.boundary_of_simplex(3).barycentric_subdivision(),
    ):
        P = pi1_presentation(K, base_tree_seed=1)
        v = triviality_verdict(P)
        assert v.verdict is Verdict.TRIVIAL, K.f_vector()


def test_rp2_non_trivial_with_z2_witness():
    P = pi1_presentation(generators.rp2_6(), base_tree_seed=0)
    v = triviality_verdict(P)
    assert v.verdict is Verdict.NON_TRIVIAL
    assert v.abelianization == (0, (2,))


def test_g3_presentation_returns_unknown():
    # perfect-group shape: trivial abelianization, resists simplification
    v = triviality_verdict(G3)
    assert v.verdict is Verdict.UNKNOWN
    rank, torsion = G3.abelianization()
    assert rank == 0 and not torsion


def test_simplification_preserves_abelianization():
    for P in (
        G3,
        pi1_presentation(generators.rp2_6(), base_tree_seed=3),
        GroupPresentation(2, ((1, 1), (2, 2, 2), (1, 2, -1, -2))),
    ):
        before = P.abelianization()
        simplified, _ = tietze_simplify(P)
        assert simplified.abelianization() == before


def test_abelianization_matches_h1(small_corpus):
    for name, K in small_corpus.items():
        if K.dim < 2:
            continue
        P = pi1_presentation(K, base_tree_seed=0)
        rank, torsion = P.abelianization()
        hg = homology(K)
        assert rank == hg.betti[1], name
        assert tuple(sorted(torsion)) == _as_cyclic(hg.torsion[1]), name


def _as_cyclic(prime_powers):
    # recombine prime powers into the invariant-factor torsion orders
    from math import gcd

    parts = list(prime_powers)
    factors = []
    while parts:
        coprime = []
        rest = []
        for p in sorted(parts, reverse=True):
            if all(gcd(p, q) == 1 for q in coprime):
                coprime.append(p)
            else:
                rest.append(p)
        prod = 1
        for p in coprime:
            prod *= p
        factors.append(prod)
        parts = rest
    return tuple(sorted(factors))


def test_classification_stable_across_tree_seeds():
    for K, expected in (
        (generators.boundary_of_simplex(3), Verdict.TRIVIAL),
        (generators.rp2_6(), Verdict.NON_TRIVIAL),
    ):
        for seed in range(10):
            P = pi1_presentation(K, base_tree_seed=seed)
            assert triviality_verdict(P).verdict is expected, (K.f_vector(), seed)


def test_budget_exhaustion_is_honest():
    huge = GroupPresentation(2, ((1, 2, 1, -2, -1, -2) * 50, (1, 1, 1, -2, -2) * 50))
    v = triviality_verdict(huge, effort_limit=10)
    assert v.verdict in (Verdict.UNKNOWN, Verdict.NON_TRIVIAL)
    assert v.trace.budget_exhausted or v.verdict is not Verdict.TRIVIAL


def test_export_format():
    P = GroupPresentation(2, ((1, 2, -1, -2),))
    assert P.export_text() == "generators: 2\n1 2 -1 -2\n"
