import pytest

import ospq.homogeneous as hg
from ospq.coordring import PWElement, circ, comodule_of, multiply
from ospq.homogeneous import (
    borel_weil_check,
    global_module_sections_check,
    eta,
    frobenius_check,
    functions,
    holomorphic_sections,
    invariance_failures,
    invariant_functions,
    module_structure_check,
    parabolic_irreducible,
    invariant_hom_counts,
    projectivity_witness,
    reductive_module,
    section_condition_failures,
    sections,
    trivialization,
)
from ospq.repcore import (
    extend_to_parabolic,
    irreducible,
    reductive,
    tensor,
    trivial_module,
    vector_module,
    weight_module,
)
from ospq.rootdata import dominant_weights, weight, weight_str


def weight_multiplicity_oracle(n, mu, cutoff):
    """Sections of C_mu over the torus: (multiplicity of mu in W(lam)) * d_lam per block."""
    out = {}
    for lam in dominant_weights(n, cutoff):
        w = irreducible(n, lam)
        m = sum(1 for x in w.weights if x == weight(mu))
        if m:
            out[weight_str(lam)] = m * w.dim
    return out


@pytest.mark.parametrize("cutoff,dim", [(0, 1), (1, 4), (2, 9), (3, 16)])
def test_invariant_functions_rank_one(cutoff, dim):
    assert invariant_functions(1, (), cutoff).dim == dim


def test_invariant_functions_rank_two_match_zero_weight_count():
    space = invariant_functions(2, (), 2)
    assert space.block_dims() == weight_multiplicity_oracle(2, (0, 0), 2)


@pytest.mark.parametrize("mu", [(-1,), (1,), (2,), (0,)])
def test_torus_sections_match_weight_multiplicities(mu):
    assert sections(weight_module(1, mu), 3).block_dims() == weight_multiplicity_oracle(1, mu, 3)


def test_sections_of_negative_eps1():
    space = sections(weight_module(1, (-1,)), 2)
    assert space.dim == 8
    assert space.block_dims() == {"1": 3, "2": 5}


def test_non_integral_weight_gives_zero_space():
    assert sections(weight_module(1, (hg.Fraction(1, 2),)), 3).dim == 0


def test_trivial_module_sections_are_invariant_functions():
    a = sections(trivial_module(1, reductive(1)), 2)
    b = invariant_functions(1, (), 2)
    assert a.basis() == b.basis()


def test_every_basis_section_satisfies_the_defining_condition():
    V = reductive_module(2, (1,), (1, 0))
    space = sections(V, 2)
    assert space.dim > 0
    for z in space.basis():
        assert section_condition_failures(V, z, V.scope) == []


def test_twisted_sign_rule_is_rejected(monkeypatch):
    # once odd generators are in scope, only ordinary graded intertwiners give sections
    monkeypatch.setattr(hg, "SECTION_SHIFT", 1)
    with pytest.raises(ArithmeticError):
        sections(vector_module(1).with_scope(reductive(1, (1,))), 1)


def test_invariant_functions_form_a_subalgebra():
    fs = functions(invariant_functions(1, (), 1))
    triv = trivial_module(1, reductive(1))
    for a in fs:
        for b in fs:
            prod = multiply(a, b)
            assert invariance_failures(triv, {(0, k): c for k, c in prod.terms.items()}, triv.scope) == []


def test_scoped_circ_preserves_blocks():
    space = invariant_functions(1, (), 2)
    for z in space.basis():
        f = PWElement(1, {k: c for (_, k), c in z.items()})
        for g in ((hg.K(1),), (hg.E(1),), (hg.F(1),)):
            assert circ(g, f).blocks() <= f.blocks()


def test_holomorphic_sections():
    assert holomorphic_sections(parabolic_irreducible(1, (), (0,)), 2).dim == 1
    assert holomorphic_sections(parabolic_irreducible(1, (), (-2,)), 3).dim == 5
    assert holomorphic_sections(parabolic_irreducible(1, (), (1,)), 3).dim == 0
    with pytest.raises(ValueError):
        holomorphic_sections(weight_module(1, (0,)), 2)


def test_parabolic_irreducible_needs_theta_dominant_weight():
    with pytest.raises(ValueError):
        parabolic_irreducible(2, (1,), (-1, 0))


@pytest.mark.parametrize("m", [0, 1, 2])
def test_borel_weil_rank_one(m):
    rpt = borel_weil_check(1, (), (-m,), 3)
    assert rpt.ok, rpt
    assert rpt.data["dim O_q"] == 2 * m + 1


@pytest.mark.parametrize("mu,dim", [((-1, -1), 10), ((0, -1), 5), ((0, -2), 14), ((1, 0), 0), ((1, -1), 0)])
def test_borel_weil_rank_two(mu, dim):
    rpt = borel_weil_check(2, (1,), mu, 2)
    assert rpt.ok, rpt
    assert rpt.data["dim O_q"] == dim


def test_borel_weil_with_odd_line():
    V = extend_to_parabolic(weight_module(1, (-1,), parity=1))
    O = holomorphic_sections(V, 2)
    assert O.dim == 3
    assert O.blocks[0].homs[0].degree == 1


@pytest.mark.parametrize(
    "W,V",
    [
        (trivial_module(1), weight_module(1, (0,))),
        (vector_module(1), weight_module(1, (0,))),
        (irreducible(1, (2,)), weight_module(1, (1,))),
        (irreducible(1, (2,)), weight_module(1, (3,))),
        (tensor(vector_module(1), vector_module(1)), weight_module(1, (-1,))),
        (vector_module(2), reductive_module(2, (1,), (1, 0))),
    ],
    ids=["triv-C0", "L-C0", "W2-C1", "W2-C3", "LL-C-1", "L-V10"],
)
def test_frobenius_reciprocity(W, V):
    rpt = frobenius_check(W, V, 3)
    assert rpt.ok, rpt
    assert rpt.data["dim Hom_U_k(W, V)"] == rpt.data["dim Hom_U_q(W, H(V))"]


def test_frobenius_needs_a_large_enough_cutoff():
    assert not frobenius_check(irreducible(1, (2,)), weight_module(1, (0,)), 1).ok


@pytest.mark.parametrize("W,dim", [(trivial_module(1), 1), (vector_module(1), 3), (tensor(vector_module(1), vector_module(1)), 9)])
def test_holomorphic_sections_of_a_global_module(W, dim):
    rpt = global_module_sections_check(W, (), 3)
    assert rpt.ok, rpt
    assert rpt.data["dim O_q(W)"] == dim


def test_trivialization_of_trivial_module_is_identity():
    cm = comodule_of(trivial_module(1))
    for z in invariant_functions(1, (), 2).basis():
        assert eta(cm, z) == z


def test_trivialization_of_vector_module():
    rpt = trivialization(vector_module(1), (), 2)
    assert rpt.ok, rpt
    # the block filtration is not preserved, so the truncations differ in size
    assert (rpt.data["dim H (cutoff)"], rpt.data["dim W (x) E_q (cutoff)"]) == (25, 27)


def test_projectivity_witness():
    rpt = projectivity_witness(weight_module(1, (-1,)), 2)
    assert rpt.ok, rpt
    assert rpt.data["V_s = V(-1)"] == "mu_hat = 1, dim V_s^perp = 2"


def test_projectivity_over_each_weight_line_of_the_vector_module():
    rpt = projectivity_witness(vector_module(1).with_scope(reductive(1)), 1)
    assert rpt.ok, rpt
    assert rpt.data["V_s = V(0)"] == "mu_hat = 0, dim V_s^perp = 0"
    assert rpt.data["blocks H(V) + H(V^perp) = H(W)"] == {"0": "1 + 2 = 3", "1": "9 + 12 = 21"}


def test_module_structure():
    rpt = module_structure_check(sections(weight_module(1, (-1,)), 2), seed=3)
    assert rpt.ok, rpt


def test_module_structure_with_nontrivial_theta():
    rpt = module_structure_check(sections(reductive_module(2, (1,), (1, 0)), 1), samples=3)
    assert rpt.ok, rpt


def test_invariant_hom_counts_are_reported():
    rpt = invariant_hom_counts(2, (), 2)
    assert rpt.data["counts"] == {1: {"actual": 2, "partitions": 1}, 2: {"actual": 3, "partitions": 2}}
    assert invariant_hom_counts(1, (), 3).data["counts"][3] == {"actual": 1, "partitions": 1}
