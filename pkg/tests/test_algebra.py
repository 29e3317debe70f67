import random

import pytest

from evoderive.algebra import (
    EvolutionAlgebra,
    apply_linear,
    is_derivation_conditions,
    is_derivation_leibniz,
    leibniz_defect,
    multiply,
)
from evoderive.field import FieldSpec, Matrix
from evoderive.graph import path_graph
from evoderive.suite import random_connected_graph, random_matrix


def test_structure_is_adjacency(seven):
    alg = EvolutionAlgebra.of_graph(seven, FieldSpec(0))
    assert alg.structure.tolist() == seven.adjacency()


def test_seven_vertex_squares(seven):
    alg = EvolutionAlgebra.of_graph(seven, FieldSpec(0))
    e = alg.basis_element
    assert multiply(alg, e(3), e(3)) == e(1) + e(2) + e(4)
    assert multiply(alg, e(1), e(1)) == multiply(alg, e(2), e(2)) == e(3)
    assert multiply(alg, e(4), e(4)) == e(3) + e(5) + e(6) + e(7)


def test_distinct_basis_elements_annihilate(seven):
    alg = EvolutionAlgebra.of_graph(seven, FieldSpec(5))
    for i in seven.vertices:
        for j in seven.vertices:
            if i != j:
                assert multiply(alg, alg.basis_element(i), alg.basis_element(j)).is_zero()


def test_square_of_sum_on_p2():
    alg = EvolutionAlgebra.of_graph(path_graph(2), FieldSpec(3))
    u = alg.element([1, 1])
    assert multiply(alg, u, u) == alg.element([1, 1])


def test_commutative():
    rng = random.Random(5)
    for p in (0, 2, 7):
        f = FieldSpec(p)
        g = random_connected_graph(rng, 6)
        alg = EvolutionAlgebra.of_graph(g, f)
        for _ in range(10):
            u = alg.element([rng.randint(-3, 3) for _ in range(g.n)])
            v = alg.element([rng.randint(-3, 3) for _ in range(g.n)])
            assert multiply(alg, u, v) == multiply(alg, v, u)


def test_multiply_mismatch(seven):
    a = EvolutionAlgebra.of_graph(seven, FieldSpec(2))
    b = EvolutionAlgebra.of_graph(path_graph(2), FieldSpec(2))
    with pytest.raises(ValueError):
        multiply(a, a.basis_element(1), b.basis_element(1))


def test_apply_linear(seven, seven_d, gf2):
    alg = EvolutionAlgebra.of_graph(seven, gf2)
    e1 = alg.basis_element(1)
    assert apply_linear(Matrix.identity(gf2, 7), e1) == e1
    assert apply_linear(Matrix.zeros(gf2, 7), e1).is_zero()
    assert apply_linear(seven_d, e1) == e1 + alg.basis_element(2)
    with pytest.raises(ValueError):
        apply_linear(Matrix.identity(gf2, 3), e1)


def test_derivation_examples(seven, seven_d, gf2, k23, k23_alpha, k23_beta):
    fig = EvolutionAlgebra.of_graph(seven, gf2)
    assert is_derivation_leibniz(fig, Matrix.zeros(gf2, 7))
    assert is_derivation_leibniz(fig, seven_d)
    assert is_derivation_conditions(fig, seven_d)

    p2_5 = EvolutionAlgebra.of_graph(path_graph(2), FieldSpec(5))
    ident = Matrix.identity(FieldSpec(5), 2)
    assert not is_derivation_leibniz(p2_5, ident)
    assert leibniz_defect(p2_5, ident) == (1, 1)
    assert not is_derivation_conditions(p2_5, Matrix.diag(FieldSpec(5), [1, 2]))

    p2_3 = EvolutionAlgebra.of_graph(path_graph(2), FieldSpec(3))
    assert is_derivation_conditions(p2_3, Matrix.diag(FieldSpec(3), [1, 2]))

    k = EvolutionAlgebra.of_graph(k23, FieldSpec(3))
    for d in (k23_alpha, k23_beta):
        assert is_derivation_conditions(k, d)
        assert is_derivation_leibniz(k, d)


def _brute_leibniz(alg, d):
    """Leibniz on every pair of basis vectors, written out with plain lists."""
    n, f = alg.n, alg.field
    w = alg.structure.tolist()
    dm = d.tolist()
    for i in range(n):
        for j in range(n):
            # d(e_i e_j) versus d(e_i) e_j + e_i d(e_j)
            lhs = [f.zero] * n
            if i == j:
                for k in range(n):
                    for c in range(n):
                        lhs[c] = f.add(lhs[c], f.mul(w[i][k], dm[k][c]))
            rhs = [f.zero] * n
            for c in range(n):
                rhs[c] = f.add(rhs[c], f.mul(dm[i][j], w[j][c]))
                rhs[c] = f.add(rhs[c], f.mul(dm[j][i], w[i][c]))
            if lhs != rhs:
                return False
    return True


def test_oracles_agree_on_random_matrices():
    rng = random.Random(2024)
    for p in (0, 2, 3, 5):
        f = FieldSpec(p)
        for _ in range(15):
            g = random_connected_graph(rng, 5)
            alg = EvolutionAlgebra.of_graph(g, f)
            for _ in range(10):
                d = random_matrix(rng, f, g.n)
                want = _brute_leibniz(alg, d)
                assert is_derivation_leibniz(alg, d) == want
                assert is_derivation_conditions(alg, d) == want
