import json
from fractions import Fraction
from itertools import combinations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from ospq import cache
from ospq.linalg import SMat
from ospq.repcore import (
    Intertwiner,
    Module,
    Scope,
    cartan_product_hom,
    decompose,
    direct_sum,
    dual_module,
    expected_M,
    extend_to_parabolic,
    hom_space,
    irreducible,
    irreducible_words,
    lowest_weight,
    lowest_weight_and_dagger,
    reductive,
    reductive_irreducible,
    self_duality_M,
    tensor,
    tensor_power,
    trivial_module,
    vector_index,
    vector_module,
    weight_module,
)
from ospq.rootdata import dominant_weights, weight
from ospq.scalars import ONE, Q, qpow
from ospq.uqalg import E, F, check_relations, eval_sum


def b_n_dimension(lam) -> Fraction:
    """Weyl dimension formula for so(2n+1); osp(1|2n) irreducibles share it."""
    n = len(lam)
    rho = [Fraction(2 * (n - i) - 1, 2) for i in range(n)]
    roots = [tuple(1 if k == i else -1 if k == j else 0 for k in range(n)) for i, j in combinations(range(n), 2)]
    roots += [tuple(1 if k in (i, j) else 0 for k in range(n)) for i, j in combinations(range(n), 2)]
    roots += [tuple(1 if k == i else 0 for k in range(n)) for i in range(n)]
    num = den = Fraction(1)
    for a in roots:
        num *= sum((x + r) * c for x, r, c in zip(lam, rho, a))
        den *= sum(r * c for r, c in zip(rho, a))
    return num / den


def test_vector_basis_order():
    assert [vector_index(2, mu) for mu in (1, 2, 0, -2, -1)] == [0, 1, 2, 3, 4]
    assert vector_module(2).parity == (0, 0, 1, 0, 0)


@pytest.mark.parametrize("n,lam", [(n, tuple(lam)) for n in (1, 2) for lam in dominant_weights(n, 3)] + [(3, (1, 1, 0))])
def test_irreducible_dimensions_match_weyl_formula(n, lam):
    assert irreducible(n, lam).dim == b_n_dimension(lam)


def test_irreducible_basis_comes_from_f_words():
    w = irreducible(1, (2,))
    words = irreducible_words(1, (2,))
    for k, word in enumerate(words):
        v = w.act(word, {0: ONE})
        assert v == {k: v[k]} and not v[k].is_zero()


def test_irreducible_rejects_non_dominant():
    with pytest.raises(ValueError):
        irreducible(2, (0, 1))


@pytest.mark.parametrize("n", [1, 2, 3])
def test_self_duality_matrix(n):
    assert self_duality_M(n) == expected_M(n)


def test_self_duality_matrix_values_rank_two():
    M = expected_M(2)
    got = {mu: M.get(vector_index(2, mu), vector_index(2, -mu)) for mu in (1, 2, 0, -2, -1)}
    assert got == {1: ONE, 2: -Q, 0: qpow(2), -2: qpow(2), -1: -qpow(3)}


def test_dual_of_vector_is_isomorphic_to_vector():
    lam = vector_module(1)
    d = dual_module(lam)
    assert check_relations(d).ok
    assert [h.degree for h in hom_space(d, lam)] == [0]


def test_schur_lemma():
    ws = [irreducible(1, (k,)) for k in range(3)]
    for a, wa in enumerate(ws):
        for b, wb in enumerate(ws):
            assert len(hom_space(wa, wb)) == (1 if a == b else 0)


def test_decompose_vector_square():
    dec = decompose(tensor(vector_module(1), vector_module(1)))
    assert dec.check().ok
    assert [(s.highest_weight, s.parity, s.module.dim) for s in dec.summands] == [
        (weight((2,)), 0, 5),
        (weight((1,)), 1, 3),
        (weight((0,)), 0, 1),
    ]


def test_decompose_vector_cube():
    dec = decompose(tensor_power(vector_module(1), 3))
    assert dec.check().ok
    assert sorted(dec.dims(), reverse=True) == [7, 5, 5, 3, 3, 3, 1]


def test_decompose_rank_two_square():
    dec = decompose(tensor(vector_module(2), vector_module(2)))
    assert dec.check().ok
    assert sorted(dec.dims(), reverse=True) == [14, 10, 1]


def test_direct_sum_decomposes_into_its_pieces():
    m = direct_sum([irreducible(1, (1,)), irreducible(1, (0,)), irreducible(1, (2,))])
    assert check_relations(m).ok
    assert sorted(decompose(m).dims()) == [1, 3, 5]


def test_lowest_weight_and_dagger():
    assert lowest_weight_and_dagger(2, (2, 1)) == (weight((-2, -1)), weight((2, 1)))
    assert lowest_weight(vector_module(2)) == weight((-1, 0))


def test_reductive_irreducible_embeds():
    v, emb, hat = reductive_irreducible(2, (1,), (1, 0))
    assert hat == weight((1, 0)) and v.dim == 2
    w = irreducible(2, (1, 0)).with_scope(reductive(2, (1,)))
    assert Intertwiner(emb, 0, v, w, v.scope).check().ok


def test_extend_to_parabolic_keeps_relations():
    v = extend_to_parabolic(weight_module(2, (-1, -1), (1,)))
    assert v.scope.flavor == "parabolic"
    assert v.gen_matrix(E(2)).is_zero()
    with pytest.raises(ValueError):
        v.gen_matrix(F(2))


def test_weight_module_needs_orthogonal_weight():
    with pytest.raises(ValueError):
        weight_module(2, (1, 0), (1,))


def test_cartan_product_hom():
    lam = vector_module(1)
    ident = Intertwiner(SMat.identity(3), 0, irreducible(1, (1,)), lam, Scope(1))
    phi = cartan_product_hom(ident, ident, (1,), (1,))
    assert phi.source.dim == 5
    assert phi.check().ok


def test_module_json_round_trip():
    w = irreducible(2, (1, 1))
    back = Module.from_json(json.loads(json.dumps(w.to_json())))
    assert back.parity == w.parity and back.weights == w.weights
    for g, m in w.gens.items():
        assert back.gens[g] == m


@given(st.sampled_from([(1, (1,)), (1, (2,)), (2, (1, 0))]), st.integers(0, 4))
def test_hom_space_maps_are_intertwiners(case, seed):
    n, lam = case
    w = irreducible(n, lam)
    target = tensor(w, vector_module(n)) if seed % 2 else tensor(vector_module(n), w)
    for h in hom_space(irreducible(n, (seed % 3,) + (0,) * (n - 1)), target):
        assert h.check().ok


def test_irreducible_cache_round_trip(tmp_path):
    cache.set_cache_dir(tmp_path)
    try:
        w = irreducible(1, (3,))
        cache.store_irreducible(1, weight((3,)), w, irreducible_words(1, (3,)))
        mod, words = cache.load_irreducible(1, weight((3,)))
        assert mod.parity == w.parity and mod.weights == w.weights
        assert words == irreducible_words(1, (3,))
        for g, m in w.gens.items():
            assert mod.gens[g] == m
    finally:
        cache.set_cache_dir(None)


def test_trivial_module_scope():
    t = trivial_module(2, reductive(2, (1,)))
    assert t.dim == 1 and t.scope.theta == frozenset({1})
    assert eval_sum(t, {(): ONE}) == SMat.identity(1)
