"""The acceptance battery: twelve exact checks spanning every layer.

Each ``criterion_*`` function returns a :class:`Report`; ``ACCEPTANCE`` lists
them in order.  ``battery`` runs a smaller, parametrized version for one rank.
"""

from __future__ import annotations

import random
import time
from typing import Callable

from .coordring import (
    PWElement,
    antipode0,
    classical_superdimension,
    coproduct0,
    evaluate,
    evaluate_sum,
    haar_invariance_check,
    orthogonality_check,
    pair_tensor,
    pw_basis,
    superdimension,
)
from .homogeneous import (
    borel_weil_check,
    frobenius_check,
    holomorphic_sections,
    invariant_functions,
    module_structure_check,
    parabolic_irreducible,
    projectivity_witness,
    sections,
    trivialization,
)
from .report import Report
from .repcore import (
    decompose,
    expected_M,
    irreducible,
    reductive_irreducible,
    self_duality_report,
    tensor,
    tensor_power,
    trivial_module,
    vector_index,
    vector_labels,
    vector_module,
    weight_module,
)
from .rootdata import build_root_datum, dominant_weights, eps, k2rho_exponents, two_rho, weight_str
from .scalars import ONE, rf_eval
from .uqalg import (
    ACTIVE,
    K,
    check_hopf,
    check_relations,
    check_s_squared,
    conjugate_by_k2rho,
    generators,
    normalize_word,
)


def conventions(n: int) -> dict:
    """The sign and normalization choices every report depends on."""
    d = build_root_datum(n)
    return {
        "hopf": ACTIVE.name,
        "graded 2rho": weight_str(two_rho(d)),
        "K_2rho exponents": list(k2rho_exponents(d)),
        "vector basis": "w_1..w_n, w_0, w_-n..w_-1 (0-based indices)",
    }


def _words(n: int, rng: random.Random, count: int, max_len: int = 3) -> list[tuple]:
    gens = generators(n) + [K(i, -1) for i in range(1, n + 1)]
    out = [()]
    while len(out) < count:
        out.append(normalize_word(tuple(rng.choice(gens) for _ in range(rng.randint(1, max_len)))))
    return out


def vector_formulas_check(n: int, seed: int = 0) -> Report:
    """``D_0`` and ``S_0`` on ``t_{mu nu}`` against their closed forms on the vector module."""
    rpt = Report(f"closed-form D_0 and S_0 on vector coefficients, n={n}")
    lam = eps(n, 1)
    M = expected_M(n)

    def m(mu: int):
        return M.get(vector_index(n, mu), vector_index(n, -mu))

    def t(mu: int, nu: int) -> PWElement:
        return PWElement.basis(n, lam, vector_index(n, mu), vector_index(n, nu))

    labels = vector_labels(n)
    words = _words(n, random.Random(seed), 12, 2)
    for mu in labels:
        for nu in labels:
            f = t(mu, nu)
            want: dict = {}
            for s in labels:
                sign = ((mu == 0) + (s == 0)) * ((nu == 0) + (s == 0)) % 2
                k1 = next(iter(t(mu, s).terms))
                k2 = next(iter(t(s, nu).terms))
                want[(k1, k2)] = -ONE if sign else ONE
            rpt.expect(coproduct0(f) == want, f"D_0(t_{mu},{nu}) differs from the closed form")
            for x in words[:4]:
                for y in words[:4]:
                    rpt.expect(
                        pair_tensor(want, x, y, n) == evaluate(f, x + y),
                        f"<D_0 t_{mu},{nu}, x (x) y> != <t_{mu},{nu}, xy>",
                    )
            sign = ((mu == 0) + (nu == 0)) * (mu == 0) % 2
            c = m(-mu) / m(-nu)
            rpt.expect(
                antipode0(f) == t(-nu, -mu).scale(-c if sign else c),
                f"S_0(t_{mu},{nu}) differs from m_(-mu) t_(-nu,-mu) / m_(-nu)",
            )
    rpt.data["entries"] = len(labels) ** 2
    return rpt


def s0_squared_check(n: int, max_size: int, seed: int = 0, samples: int = 8) -> Report:
    """``<S_0^2 f, x> = <f, K_2rho x K_2rho^-1>`` on the PW basis."""
    rpt = Report(f"S_0^2 = Ad K_2rho on PW basis, n={n}, |lam|<={max_size}")
    words = _words(n, random.Random(seed), samples)
    count = 0
    for lam in dominant_weights(n, max_size):
        for f in pw_basis(n, lam):
            s2 = antipode0(antipode0(f))
            for x in words:
                rpt.expect(evaluate(s2, x) == evaluate_sum(f, conjugate_by_k2rho(x, n)), f"fails on {f} at {x}")
            count += 1
    rpt.data["basis elements"] = count
    rpt.data["seed"] = seed
    return rpt


def superdimension_check(n: int, max_size: int) -> Report:
    rpt = Report(f"quantum superdimensions, n={n}, |lam|<={max_size}")
    for lam in dominant_weights(n, max_size):
        try:
            sd = superdimension(n, lam)
        except ArithmeticError as exc:
            rpt.fail(str(exc))
            continue
        classical = classical_superdimension(n, lam)
        rpt.expect(rf_eval(sd, 1) == classical, f"SD({weight_str(lam)}) at q=1 is {rf_eval(sd, 1)}, not {classical}")
        rpt.data[weight_str(lam)] = str(sd)
    return rpt


def growth_check(n: int, theta, max_cutoff: int, expected: list[int] | None = None) -> Report:
    rpt = Report(f"growth of truncated E_q, n={n}, theta={sorted(theta)}")
    dims = [invariant_functions(n, theta, k).dim for k in range(max_cutoff + 1)]
    rpt.data["dims"] = dims
    rpt.expect(all(a < b for a, b in zip(dims, dims[1:])), f"not strictly increasing: {dims}")
    if expected is not None:
        rpt.expect(dims == expected, f"dims {dims} != {expected}")
    return rpt


# -- the twelve criteria ------------------------------------------------------------


def criterion_relations() -> Report:
    rpt = Report("1. defining relations on the vector module, n=1,2,3")
    for n in (1, 2, 3):
        rpt.add(check_relations(vector_module(n)))
    return rpt


def criterion_hopf() -> Report:
    rpt = Report("2. Hopf axioms and closed-form coordinate-ring structure maps, n=1,2")
    for n in (1, 2):
        rpt.add(check_hopf(n))
        rpt.add(vector_formulas_check(n))
    return rpt


def criterion_self_duality() -> Report:
    rpt = Report("3. self-duality matrix of the vector module, n=1,2,3")
    rpt.data["active convention"] = ACTIVE.name
    for n in (1, 2, 3):
        rpt.add(self_duality_report(n))
    return rpt


def criterion_decompositions() -> Report:
    rpt = Report("4. tensor product decompositions")
    L1 = vector_module(1)
    d2 = decompose(tensor(L1, L1))
    sub = d2.check()
    sub.expect(sorted(d2.dims(), reverse=True) == [5, 3, 1], f"n=1 L(x)L dims {d2.dims()}")
    sub.data["dims"] = d2.dims()
    rpt.add(sub)
    d3 = decompose(tensor_power(L1, 3))
    sub = d3.check()
    sub.expect(sum(d3.dims()) == 27, f"n=1 L^3 dims sum to {sum(d3.dims())}")
    sub.data["dims"] = d3.dims()
    rpt.add(sub)
    L2 = vector_module(2)
    d = decompose(tensor(L2, L2))
    sub = d.check()
    sub.expect(sum(d.dims()) == 25, f"n=2 L(x)L dims sum to {sum(d.dims())}")
    sub.data["dims"] = d.dims()
    rpt.add(sub)
    return rpt


def criterion_s_squared() -> Report:
    rpt = Report("5. S^2 = Ad K_2rho with the graded 2rho")
    rpt.add(check_s_squared(vector_module(1)))
    rpt.add(check_s_squared(irreducible(1, (2,))))
    rpt.add(check_s_squared(vector_module(2)))
    rpt.add(s0_squared_check(1, 2))
    rpt.add(s0_squared_check(2, 2))
    return rpt


def criterion_superdimension() -> Report:
    rpt = Report("6. quantum superdimensions")
    rpt.add(superdimension_check(1, 3))
    rpt.add(superdimension_check(2, 3))
    sd = str(superdimension(1, (1,)))
    rpt.data["SD(eps_1), n=1"] = sd
    rpt.expect(sd == "q - 1 + q^-1", f"SD(eps_1) = {sd}")
    return rpt


def criterion_orthogonality() -> Report:
    rpt = Report("7. Peter-Weyl orthogonality, n=1, lam, mu in {0, eps_1, 2 eps_1}")
    for a in range(3):
        for b in range(3):
            rpt.add(orthogonality_check(1, (a,), (b,)))
    return rpt


def criterion_haar() -> Report:
    rpt = Report("8. Haar invariance")
    rpt.add(haar_invariance_check(1, 2))
    rpt.add(haar_invariance_check(2, 2))
    return rpt


def criterion_borel_weil() -> Report:
    rpt = Report("9. Borel-Weil realization")
    for m in (0, 1, 2):
        rpt.add(borel_weil_check(1, (), (-m,), 3))
    zero = borel_weil_check(1, (), (1,), 3)
    zero.expect(zero.data.get("dim O_q") == 0, "mu = eps_1 should give the zero space")
    rpt.add(zero)
    sub = borel_weil_check(2, (1,), (-1, -1), 2)
    sub.expect(sub.data.get("nu") == "1,1", f"expected W(1,1), got {sub.data.get('nu')}")
    rpt.add(sub)
    return rpt


def frobenius_triples() -> list[tuple]:
    L1, L2 = vector_module(1), vector_module(2)
    return [
        (trivial_module(1), weight_module(1, (0,)), 3),
        (L1, weight_module(1, (0,)), 3),
        (irreducible(1, (2,)), weight_module(1, (1,)), 3),
        (tensor(L1, L1), weight_module(1, (-1,)), 3),
        (L2, weight_module(2, (0, 0)), 3),
        (L2, reductive_irreducible(2, (1,), (1, 0))[0], 3),
        (L2, reductive_irreducible(2, (2,), (1, 0))[0], 3),
    ]


def criterion_frobenius() -> Report:
    rpt = Report("10. Frobenius reciprocity")
    for W, V, k in frobenius_triples():
        rpt.add(frobenius_check(W, V, k))
    return rpt


def criterion_bundle() -> Report:
    rpt = Report("11. bundle structure")
    rpt.add(trivialization(vector_module(1), (), 2))
    rpt.add(projectivity_witness(weight_module(1, (-1,)), 2))
    rpt.add(module_structure_check(sections(weight_module(1, (-1,)), 2)))
    return rpt


def criterion_growth() -> Report:
    rpt = Report("12. growth of the homogeneous superspace")
    rpt.add(growth_check(1, (), 3, [1, 4, 9, 16]))
    return rpt


ACCEPTANCE: list[tuple[int, str, Callable[[], Report]]] = [
    (1, "relations", criterion_relations),
    (2, "hopf", criterion_hopf),
    (3, "self-duality", criterion_self_duality),
    (4, "decompositions", criterion_decompositions),
    (5, "S^2 / 2rho", criterion_s_squared),
    (6, "superdimension", criterion_superdimension),
    (7, "orthogonality", criterion_orthogonality),
    (8, "haar", criterion_haar),
    (9, "borel-weil", criterion_borel_weil),
    (10, "frobenius", criterion_frobenius),
    (11, "bundle", criterion_bundle),
    (12, "growth", criterion_growth),
]


def run_acceptance(only: set[int] | None = None) -> Report:
    rpt = Report("acceptance battery")
    timings = {}
    for num, _, fn in ACCEPTANCE:
        if only and num not in only:
            continue
        t0 = time.perf_counter()
        rpt.add(fn())
        timings[num] = round(time.perf_counter() - t0, 2)
    rpt.data["conventions"] = conventions(1)
    rpt.data["seconds"] = timings
    return rpt


def battery(n: int, cutoff: int, seed: int = 0) -> Report:
    """Module-by-module checks for a single rank and cutoff."""
    rpt = Report(f"battery n={n} cutoff={cutoff}")
    rpt.data["conventions"] = conventions(n)
    rpt.data["seed"] = seed
    L = vector_module(n)
    rpt.add(check_relations(L))
    rpt.add(check_hopf(n))
    rpt.add(vector_formulas_check(n, seed))
    rpt.add(self_duality_report(n))
    dec = decompose(tensor(L, L))
    rpt.add(dec.check())
    rpt.add(check_s_squared(L))
    rpt.add(s0_squared_check(n, min(cutoff, 2), seed))
    rpt.add(superdimension_check(n, cutoff))
    if n == 1:
        for a in range(min(cutoff, 2) + 1):
            for b in range(min(cutoff, 2) + 1):
                rpt.add(orthogonality_check(1, (a,), (b,)))
    rpt.add(haar_invariance_check(n, min(cutoff, 2)))
    lowest = (-1,) + (0,) * (n - 1)
    theta = tuple(range(1, n))
    # (0,..,0,-1) is theta-dominant for theta = {1..n-1}; sections realize W(eps_1)
    rpt.add(borel_weil_check(n, theta, (0,) * (n - 1) + (-1,), cutoff))
    C = weight_module(n, (0,) * n)
    rpt.add(frobenius_check(L, C, max(cutoff, 1)))
    # products leave the truncation by one block; keep rank >= 2 affordable
    rpt.add(trivialization(L, (), min(cutoff, 2 if n == 1 else 1)))
    V = weight_module(n, lowest)
    rpt.add(module_structure_check(sections(V, min(cutoff, 2)), seed=seed))
    rpt.add(growth_check(n, (), cutoff))
    O = holomorphic_sections(parabolic_irreducible(n, (), (0,) * n), cutoff)
    rpt.expect(O.dim == 1, f"O_q(trivial) has dimension {O.dim}")
    return rpt

