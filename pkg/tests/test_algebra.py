"""Algebra construction, element arithmetic, moves, normalization, equivalence."""

import random

import pytest

from gradedpi.algebra import (
    M1,
    M2,
    M3,
    Presentation,
    apply_move,
    block_structure,
    build_algebra,
    is_crossed_product,
    is_graded_division,
    is_normalized,
    normalize_presentation,
    presentations_equivalent,
    support,
)
from gradedpi.cohomology import Cocycle2
from gradedpi.errors import (
    AlgebraMismatchError,
    HypothesisError,
    NotSubgroupError,
)
from gradedpi.groups import FiniteGroup
from gradedpi.scalars import CycScalar

from conftest import klein_nontrivial_cocycle


def test_group_algebra_components(p_group_algebra_z2):
    A = build_algebra(p_group_algebra_z2)
    assert A.dim == 2
    assert len(A.homogeneous_basis(0)) == 1
    assert len(A.homogeneous_basis(1)) == 1
    assert is_graded_division(A)


def test_m3_component_dimensions(p_z2_unbalanced):
    A = build_algebra(p_z2_unbalanced)
    assert A.dim == 9
    assert len(A.homogeneous_basis(0)) == 5
    assert len(A.homogeneous_basis(1)) == 4


def test_base_field_presentation():
    g = FiniteGroup.cyclic(1)
    H = g.full_subgroup()
    A = build_algebra(Presentation(g, H, Cocycle2.trivial(H, 1), (0,)))
    assert A.dim == 1
    one = A.one()
    assert one * one == one


def test_column_row_mismatch_vanishes(p_z2_unbalanced):
    A = build_algebra(p_z2_unbalanced)
    a = A.element({(0, 0, 1): CycScalar.one(1)})
    assert not (a * a)


def test_unit_is_two_sided(p_d4_klein):
    A = build_algebra(p_d4_klein)
    one = A.one()
    rng = random.Random(2)
    for _ in range(10):
        k = rng.randrange(A.dim)
        b = A.basis_element(k)
        assert one * b == b
        assert b * one == b


def test_anticommuting_pair(p_k4_twisted):
    A = build_algebra(p_k4_twisted)
    a = A.element({(2, 0, 0): CycScalar.one(2)})
    b = A.element({(1, 0, 0): CycScalar.one(2)})
    assert a * b == -(b * a)


def test_algebra_mismatch_rejected(p_z2_unbalanced, p_z2_balanced):
    A = build_algebra(p_z2_unbalanced)
    B = build_algebra(p_z2_balanced)
    with pytest.raises(AlgebraMismatchError):
        A.one() * B.one()


def test_degree_multiplicativity_exhaustive(p_d4_klein, p_z2_unbalanced, p_k4_twisted):
    for p in (p_d4_klein, p_z2_unbalanced, p_k4_twisted):
        A = build_algebra(p)
        G = p.group
        for i, ti in enumerate(A.basis):
            for j, tj in enumerate(A.basis):
                hit = A.mul_basis(ti, tj)
                if hit is not None:
                    _, t = hit
                    assert A.degree[A.index[t]] == G.mul(A.degree[i], A.degree[j])


def test_build_algebra_propagates_cocycle_errors(k4):
    from gradedpi.errors import CocycleError

    H = k4.full_subgroup()
    exps = [[0] * 4 for _ in range(4)]
    exps[1][2] = 1  # breaks the cocycle identity somewhere
    bad = Cocycle2(H, 2, exps)
    assert bad.violations()
    with pytest.raises(CocycleError):
        build_algebra(Presentation(k4, H, bad, (0,)))


def test_structure_constants_associate(p_d4_klein, p_k4_twisted):
    """Exhaustive associativity of basis products (the cocycle identity in
    algebra form)."""
    for p in (p_d4_klein, p_k4_twisted):
        A = build_algebra(p)
        elems = [A.basis_element(k) for k in range(A.dim)]
        for a in elems:
            for b in elems:
                ab = a * b
                for c in elems:
                    assert (ab) * c == a * (b * c)


def test_homogeneous_basis_empty_outside_support(z2):
    H = z2.trivial_subgroup()
    p = Presentation(z2, H, Cocycle2.trivial(H, 1), (0,))
    A = build_algebra(p)
    assert A.homogeneous_basis(1) == ()


def test_moves_basic(p_z2_unbalanced, z2):
    p = p_z2_unbalanced
    assert apply_move(p, M1((0, 1, 2))).grading == p.grading
    assert apply_move(p, M2((0, 0, 0))).grading == p.grading
    moved = apply_move(p, M3(1))
    assert moved.grading == (1, 1, 0)
    with pytest.raises(NotSubgroupError):
        apply_move(p, M2((1, 0, 0)))
    with pytest.raises(HypothesisError):
        apply_move(p, M1((0, 0, 1)))


def test_m3_transports_cocycle(p_d4_klein, d4):
    p = p_d4_klein
    moved = apply_move(p, M3(1))
    assert moved.subgroup.members == p.subgroup.members  # H normal: same subgroup
    assert moved.cocycle.violations() == []
    # transport then transport back is the identity
    back = apply_move(moved, M3(d4.inv(1)))
    assert back.cocycle == p.cocycle and back.grading == p.grading


def test_normalize_example(p_z2_unbalanced):
    np = normalize_presentation(p_z2_unbalanced)
    assert np.grading == (0, 1, 1)
    assert is_normalized(np)
    assert normalize_presentation(np) == np


def test_normalize_single_coset(z2):
    H = z2.full_subgroup()
    p = Presentation(z2, H, Cocycle2.trivial(H, 2), (1, 0, 1))
    np = normalize_presentation(p)
    assert np.grading == (0, 0, 0)


def test_normalize_groups_blocks_ascending(d4):
    H = d4.subgroup([0, 2, 4, 6])
    c = klein_nontrivial_cocycle(H)
    p = Presentation(d4, H, c, (1, 0, 1))
    np = normalize_presentation(p)
    assert np.grading[0] == 0
    bs = block_structure(np)
    assert bs.sizes == (1, 2)


def test_block_structure_requires_grouping(z2):
    H = z2.trivial_subgroup()
    p = Presentation(z2, H, Cocycle2.trivial(H, 1), (0, 1, 0))
    with pytest.raises(HypothesisError):
        block_structure(p)


def test_equivalence_respects_moves(p_z2_unbalanced, z2):
    rng = random.Random(17)
    p = p_z2_unbalanced
    q = p
    for _ in range(6):
        kind = rng.randrange(3)
        if kind == 0:
            sigma = list(range(q.size))
            rng.shuffle(sigma)
            q = apply_move(q, M1(tuple(sigma)))
        elif kind == 1:
            q = apply_move(q, M2(tuple(rng.choice(q.subgroup.members) for _ in range(q.size))))
        else:
            q = apply_move(q, M3(rng.randrange(z2.order)))
    assert presentations_equivalent(p, q)


def test_each_move_kind_preserves_identities(p_z2_unbalanced, p_d4_klein):
    """Identity verdicts agree between an algebra and each single-move image,
    sampled at degree up to 4 (composite sequences are swept in acceptance)."""
    import random

    from gradedpi.polynomials import is_identity
    from conftest import random_multilinear

    rng = random.Random(515)
    for p in (p_z2_unbalanced, p_d4_klein):
        A = build_algebra(p)
        moves = [
            M1(tuple(reversed(range(p.size)))),
            M2(tuple(rng.choice(p.subgroup.members) for _ in range(p.size))),
            M3(rng.randrange(1, p.group.order)),
        ]
        for move in moves:
            B = build_algebra(apply_move(p, move))
            for _ in range(10):
                f = random_multilinear(rng, A, rng.randint(2, 4), max_monomials=5)
                assert is_identity(f, A) == is_identity(f, B), (p.grading, move)


def test_equivalence_distinguishes_sizes(p_z2_balanced, p_z2_unbalanced):
    assert not presentations_equivalent(p_z2_balanced, p_z2_unbalanced)


def test_equivalence_requires_shared_group(p_z2_balanced, z3):
    H = z3.trivial_subgroup()
    q = Presentation(z3, H, Cocycle2.trivial(H, 1), (0, 1))
    with pytest.raises(HypothesisError):
        presentations_equivalent(p_z2_balanced, q)


def test_equivalence_distinguishes_cocycle_classes(k4):
    H = k4.full_subgroup()
    p = Presentation(k4, H, klein_nontrivial_cocycle(H), (0,))
    q = Presentation(k4, H, Cocycle2.trivial(H, 2), (0,))
    assert not presentations_equivalent(p, q)
    assert presentations_equivalent(p, p)


def test_equivalence_distinguishes_coset_distribution():
    z3 = FiniteGroup.cyclic(3)
    H = z3.trivial_subgroup()
    c = Cocycle2.trivial(H, 1)
    p = Presentation(z3, H, c, (0, 0, 1))
    q = Presentation(z3, H, c, (0, 0, 2))
    # (e,e,a) vs (e,e,a^2): no relabeling by left translation makes the
    # multiplicity functions match.
    assert not presentations_equivalent(p, q)


def test_crossed_product_certificates(p_z2_balanced, p_d4_klein, z2):
    for p in (p_z2_balanced, p_d4_klein):
        A = build_algebra(p)
        res = is_crossed_product(A)
        assert res
        one = A.one()
        for g, (u, v) in res.certificates.items():
            assert u * v == one and v * u == one
            assert u.is_homogeneous_of(g)
    # H = G: always a crossed product
    H = z2.full_subgroup()
    A = build_algebra(Presentation(z2, H, Cocycle2.trivial(H, 2), (0, 0)))
    assert is_crossed_product(A)


def test_crossed_product_dimension_dichotomy(p_z2_unbalanced, p_z2_balanced):
    A = build_algebra(p_z2_unbalanced)
    assert not is_crossed_product(A)
    assert len(A.homogeneous_basis(0)) > A.dim // A.group.order
    B = build_algebra(p_z2_balanced)
    assert is_crossed_product(B)
    for g in B.group.elements():
        assert len(B.homogeneous_basis(g)) == B.dim // B.group.order


def test_graded_division_cases(p_group_algebra_z2, p_z2_balanced, p_k4_twisted):
    assert is_graded_division(build_algebra(p_group_algebra_z2))
    assert not is_graded_division(build_algebra(p_z2_balanced))
    A = build_algebra(p_k4_twisted)
    assert is_graded_division(A)
    # every u_h is invertible: u_h * (c(h, h^-1)^-1 u_(h^-1)) = 1
    one = A.one()
    for h in A.presentation.subgroup.members:
        hinv = A.group.inv(h)
        u = A.element({(h, 0, 0): CycScalar.one(2)})
        from gradedpi.scalars import root_of_unity

        v = A.element({(hinv, 0, 0): root_of_unity(2, -A.presentation.cocycle.exp(h, hinv))})
        assert u * v == one and v * u == one


def test_support_connectedness(z2, d3):
    H = z2.trivial_subgroup()
    small = Presentation(z2, H, Cocycle2.trivial(H, 1), (0,))
    rep = support(build_algebra(small))
    assert rep.support == frozenset({0}) and not rep.connected
    rot = d3.subgroup(range(3))
    p = Presentation(d3, rot, Cocycle2.trivial(rot, 3), (0, 3))
    rep = support(build_algebra(p))
    assert rep.support == frozenset(d3.elements()) and rep.connected
