"""Quantum homogeneous superspaces, section spaces of homogeneous vector
bundles, holomorphic sections, and the induced-representation checks.

Elements of ``V (x) T_q`` are dicts ``{(v, pwkey): coeff}`` where ``v``
indexes a basis vector of ``V``.  Sections are stored per block ``lam`` as
an intertwiner ``phi: W(lam) -> V`` plus a row index ``i``; the expansion
is ``zeta = sum_j phi(w_j) (x) t~^(lam)_ij``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .coordring import (
    Comodule,
    PWElement,
    antipode0,
    antipode0_inverse,
    antipode0_squared_scalar,
    circ,
    comodule_of,
    coproduct0,
    dot,
    evaluate,
    multiply,
    tilde,
)
from .linalg import Echelon, SMat
from .report import Report
from .repcore import (
    Intertwiner,
    Module,
    Scope,
    decompose,
    direct_sum,
    extend_to_parabolic,
    hom_space,
    irreducible,
    lowest_weight,
    lowest_weight_and_dagger,
    reductive_irreducible,
    trivial_module,
    weight_module,
)
from .rootdata import (
    WeightVec,
    build_root_datum,
    dominant_in_weyl_orbit,
    dominant_weights,
    is_dominant,
    size,
    weight,
    weight_str,
    wneg,
)
from .scalars import ONE, ZERO, RatFunc
from .uqalg import E, F, K, antipode, generators, word_parity

# Sections come from ordinary graded intertwiners W(lam) -> V; the twisted
# rule (shift 1) fails the section condition once odd generators are in scope.
SECTION_SHIFT = 0


def _acc(d: dict, k, x: RatFunc) -> None:
    cur = d.get(k)
    s = x if cur is None else cur + x
    if s.is_zero():
        d.pop(k, None)
    else:
        d[k] = s


def _key_parity(n: int, key) -> int:
    lam, i, j = key
    p = irreducible(n, lam).parity
    return (p[i] + p[j]) % 2


@dataclass(frozen=True)
class SubalgebraSpec:
    n: int
    theta: frozenset = frozenset()
    flavor: str = "reductive"

    def scope(self) -> Scope:
        return Scope(self.n, self.flavor, frozenset(self.theta))


# -- operations on V (x) T_q ----------------------------------------------------


def vt_circ(V: Module, x: tuple, zeta: Mapping) -> dict:
    """``x o (v (x) f) = (-1)^{[x][v]} v (x) x o f``."""
    n = V.n
    px = word_parity(x, n)
    out: dict = {}
    for (v, key), c in zeta.items():
        img = circ(x, PWElement(n, {key: c}))
        neg = px and V.parity[v]
        for k, y in img.terms.items():
            _acc(out, (v, k), -y if neg else y)
    return out


def vt_dot(V: Module, x: tuple, zeta: Mapping) -> dict:
    """``x . (v (x) f) = (-1)^{[x][v]} v (x) x . f``."""
    n = V.n
    px = word_parity(x, n)
    out: dict = {}
    for (v, key), c in zeta.items():
        img = dot(x, PWElement(n, {key: c}))
        neg = px and V.parity[v]
        for k, y in img.terms.items():
            _acc(out, (v, k), -y if neg else y)
    return out


def vt_act_left(V: Module, xs: Mapping, zeta: Mapping) -> dict:
    """``(X (x) id) zeta`` for a word sum ``X`` acting on ``V``."""
    out: dict = {}
    for (v, key), c in zeta.items():
        for w, a in xs.items():
            for r, y in V.act(w, {v: ONE}).items():
                _acc(out, (r, key), c * a * y)
    return out


def vt_scale(zeta: Mapping, c: RatFunc) -> dict:
    return {k: x * c for k, x in zeta.items()} if not c.is_zero() else {}


def vt_add(a: Mapping, b: Mapping, c: RatFunc = ONE) -> dict:
    out = dict(a)
    for k, x in b.items():
        _acc(out, k, x * c)
    return out


def vt_parity(V: Module, zeta: Mapping) -> int | None:
    ps = {(V.parity[v] + _key_parity(V.n, key)) % 2 for v, key in zeta}
    if not ps:
        return 0
    return ps.pop() if len(ps) == 1 else None


def vt_left_mult(V: Module, a: PWElement, zeta: Mapping) -> dict:
    """``a zeta = sum (-1)^{[a][v]} v (x) a f``."""
    pa = a.parity()
    out: dict = {}
    for (v, key), c in zeta.items():
        prod = multiply(a, PWElement(V.n, {key: c}))
        neg = pa and V.parity[v]
        for k, y in prod.terms.items():
            _acc(out, (v, k), -y if neg else y)
    return out


def vt_right_mult(V: Module, zeta: Mapping, a: PWElement) -> dict:
    out: dict = {}
    for (v, key), c in zeta.items():
        prod = multiply(PWElement(V.n, {key: c}), a)
        for k, y in prod.terms.items():
            _acc(out, (v, k), y)
    return out


def section_condition_failures(V: Module, zeta: Mapping, scope: Scope) -> list[str]:
    """Generators ``x`` of ``scope`` with ``x o zeta != (S(x) (x) id) zeta``."""
    bad = []
    n = V.n
    gens = [g for g in generators(n) if scope.has(g)]
    for g in gens:
        lhs = vt_circ(V, (g,), zeta)
        rhs = vt_act_left(V, antipode(g, n), zeta)
        if lhs != rhs:
            bad.append(str(g))
    return bad


def invariance_failures(W: Module, xi: Mapping, scope: Scope) -> list[str]:
    """Generators ``p`` with ``p o xi != eps(p) xi`` (membership in ``W (x) E_q``)."""
    bad = []
    for g in generators(W.n):
        if not scope.has(g):
            continue
        lhs = vt_circ(W, (g,), xi)
        rhs = xi if g.kind == "K" else {}
        if lhs != rhs:
            bad.append(str(g))
    return bad


# -- section spaces ------------------------------------------------------------------


@dataclass
class SectionBlock:
    lam: WeightVec
    homs: list[Intertwiner]

    @property
    def d(self) -> int:
        return irreducible(self.homs[0].source.n, self.lam).dim if self.homs else 0


@dataclass
class SectionSpace:
    """Sections with ``|lam| <= cutoff``; basis element ``(b, h, i)`` is row
    ``i`` of hom ``h`` in block ``b``."""

    V: Module
    scope: Scope
    cutoff: int
    blocks: list[SectionBlock] = field(default_factory=list)
    _expanded: dict = field(default_factory=dict, repr=False)
    _echelons: dict = field(default_factory=dict, repr=False)

    @property
    def n(self) -> int:
        return self.V.n

    def labels(self) -> list[tuple[int, int, int]]:
        out = []
        for b, blk in enumerate(self.blocks):
            for h in range(len(blk.homs)):
                for i in range(blk.d):
                    out.append((b, h, i))
        return out

    @property
    def dim(self) -> int:
        return sum(len(b.homs) * b.d for b in self.blocks)

    def block_dims(self) -> dict:
        return {weight_str(b.lam): len(b.homs) * b.d for b in self.blocks}

    def expand(self, label: tuple[int, int, int]) -> dict:
        hit = self._expanded.get(label)
        if hit is not None:
            return hit
        b, h, i = label
        blk = self.blocks[b]
        phi = blk.homs[h].matrix
        n = self.n
        out: dict = {}
        for j in range(blk.d):
            col = phi.cols[j]
            if not col:
                continue
            tt = tilde(n, blk.lam, i, j)
            for r, x in col.items():
                for k, y in tt.terms.items():
                    _acc(out, (r, k), x * y)
        self._expanded[label] = out
        return out

    def basis(self) -> list[dict]:
        return [self.expand(l) for l in self.labels()]

    def _echelon(self, b: int) -> Echelon:
        e = self._echelons.get(b)
        if e is None:
            e = Echelon()
            blk = self.blocks[b]
            for h in range(len(blk.homs)):
                for i in range(blk.d):
                    if not e.add(_sortable(self.expand((b, h, i)))):
                        raise ArithmeticError("section expansions are linearly dependent")
            self._echelons[b] = e
        return e

    def block_labels(self, b: int) -> list[tuple[int, int, int]]:
        blk = self.blocks[b]
        return [(b, h, i) for h in range(len(blk.homs)) for i in range(blk.d)]

    def coordinates(self, zeta: Mapping) -> dict | None:
        """Coordinates on :meth:`labels`, or ``None`` if outside the span."""
        if not zeta:
            return {}
        by_block: dict = {}
        index = {b.lam: k for k, b in enumerate(self.blocks)}
        for (v, key), c in zeta.items():
            bk = None
            for lam in _dagger_candidates(self.n, key[0]):
                if lam in index:
                    bk = index[lam]
            if bk is None:
                return None
            by_block.setdefault(bk, {})[(v, key)] = c
        out: dict = {}
        for b, part in by_block.items():
            coords = self._echelon(b).coordinates(_sortable(part))
            if coords is None:
                return None
            labels = self.block_labels(b)
            for k, c in coords.items():
                out[labels[k]] = c
        return out

    def block_module(self, b: int) -> Module:
        """Block ``b`` as a U_q module under the dot action."""
        labels = self.block_labels(b)
        return self._module_on(labels, [b])

    def as_module(self) -> Module:
        return self._module_on(self.labels(), list(range(len(self.blocks))))

    def _module_on(self, labels: list, blocks: list[int]) -> Module:
        n = self.n
        pos = {l: k for k, l in enumerate(labels)}
        exp = [self.expand(l) for l in labels]
        parity = []
        weights = []
        for z in exp:
            p = vt_parity(self.V, z)
            if p is None:
                raise ArithmeticError("inhomogeneous section")
            parity.append(p)
            weights.append(_dot_weight(self.V, z))
        gens = {}
        dim = len(labels)
        for i in range(1, n + 1):
            for g in (E(i), F(i)):
                cols = []
                for z in exp:
                    img = vt_dot(self.V, (g,), z)
                    coords = self.coordinates(img)
                    if coords is None:
                        raise ArithmeticError(f"dot action of {g} leaves the section space")
                    cols.append({pos[l]: c for l, c in coords.items()})
                gens[g] = SMat(dim, dim, cols)
        return Module(n, parity, weights, gens, name=f"H({self.V.name})")

    def to_json(self) -> dict:
        return {
            "scope": {"flavor": self.scope.flavor, "theta": sorted(self.scope.theta)},
            "cutoff": self.cutoff,
            "dim": self.dim,
            "blocks": [
                {
                    "lambda": [str(x) for x in blk.lam],
                    "d_lambda": blk.d,
                    "homs": [
                        {
                            "parity": h.degree,
                            "matrix": [[r, c, x.to_json()] for r, c, x in h.matrix.entries()],
                        }
                        for h in blk.homs
                    ],
                }
                for blk in self.blocks
            ],
        }


def _dagger_candidates(n: int, lam: WeightVec) -> list[WeightVec]:
    _, dag = lowest_weight_and_dagger(n, lam)
    return [lam, dag]


def _sortable(zeta: Mapping) -> dict:
    """Re-key ``(v, (lam, i, j))`` into totally ordered tuples for echelon pivots."""
    return {(k[0], tuple(k[1][0]), k[1][1], k[1][2]): c for k, c in zeta.items()}


def _dot_weight(V: Module, zeta: Mapping) -> WeightVec:
    """Weight of a dot-action weight vector, read off from the k eigenvalues."""
    n = V.n
    exps = []
    for i in range(1, n + 1):
        img = vt_dot(V, (K(i),), zeta)
        ratio = None
        for k, c in zeta.items():
            r = img.get(k, ZERO) / c
            if ratio is None:
                ratio = r
            elif r != ratio:
                raise ArithmeticError("section is not a weight vector for the dot action")
        if not ratio.is_monomial():
            raise ArithmeticError("k eigenvalue is not a power of q")
        exps.append(ratio.shift)
    # (alpha_i, mu) = exps[i]; alpha_n = eps_n, alpha_i = eps_i - eps_{i+1}
    mu = [Fraction(0)] * n
    mu[n - 1] = Fraction(exps[n - 1])
    for i in range(n - 2, -1, -1):
        mu[i] = exps[i] + mu[i + 1]
    return tuple(mu)


def sections(V: Module, cutoff: int, scope: Scope | None = None, verify: bool = True) -> SectionSpace:
    """Basis of the sections with blocks ``|lam| <= cutoff``.

    Every basis section is re-checked against its defining condition when
    ``verify`` is set.
    """
    scope = scope or V.scope
    if scope.flavor == "full":
        raise ValueError("sections need a reductive or parabolic scope")
    space = SectionSpace(V, scope, cutoff)
    if not V.has_integral_weights():
        return space
    from .uqalg import check_relations

    rel = check_relations(V, scope)
    if not rel.ok:
        raise ValueError(f"V is not a valid {scope.label()} module: {rel.failures[:2]}")
    n = V.n
    for lam in dominant_weights(n, cutoff):
        w = irreducible(n, lam)
        homs = hom_space(w, V, scope, shift=SECTION_SHIFT)
        if homs:
            space.blocks.append(SectionBlock(lam, homs))
    if verify:
        for label in space.labels():
            bad = section_condition_failures(V, space.expand(label), scope)
            if bad:
                raise ArithmeticError(f"section {label} violates the defining condition for {bad}")
    return space


def invariant_functions(n: int, theta: Iterable[int], cutoff: int) -> SectionSpace:
    """``E_q`` truncated to blocks ``|lam| <= cutoff`` (sections of the trivial module)."""
    scope = Scope(n, "reductive", frozenset(theta))
    return sections(trivial_module(n, scope), cutoff)


def functions(space: SectionSpace) -> list[PWElement]:
    """The T_q components of sections of a one-dimensional module."""
    if space.V.dim != 1:
        raise ValueError("only defined for one-dimensional V")
    return [PWElement(space.n, {k: c for (_, k), c in z.items()}) for z in space.basis()]


def holomorphic_sections(V: Module, cutoff: int) -> SectionSpace:
    if V.scope.flavor != "parabolic":
        raise ValueError("holomorphic sections need a parabolic module")
    return sections(V, cutoff)


# -- module structure -------------------------------------------------------------------


def module_structure_check(space: SectionSpace, e_cutoff: int = 1, seed: int = 0, samples: int = 6) -> Report:
    """Two-sided E_q action, dot action of U_q and the right coaction all
    preserve sections; the dot and circ actions graded-commute."""
    V, scope, n = space.V, space.scope, space.n
    rpt = Report(f"module structure of H({V.name}) over {scope.label()} (dim {space.dim})")
    E_q = functions(invariant_functions(n, scope.theta, e_cutoff))
    basis = space.basis()
    labels = space.labels()

    sub = Report("two-sided E_q module")
    one = PWElement.one(n)
    for lab, z in zip(labels, basis):
        sub.expect(vt_left_mult(V, one, z) == z and vt_right_mult(V, z, one) == z, f"1 does not act as identity on {lab}")
        for a_idx, a in enumerate(E_q):
            for side, prod in (("left", vt_left_mult(V, a, z)), ("right", vt_right_mult(V, z, a))):
                bad = section_condition_failures(V, prod, scope)
                sub.expect(not bad, f"{side} product of E_q[{a_idx}] with section {lab} violates {bad}")
    sub.data["E_q elements"] = len(E_q)
    rpt.add(sub)

    sub = Report("left U_q module under the dot action")
    for lab, z in zip(labels, basis):
        for g in generators(n):
            img = vt_dot(V, (g,), z)
            bad = section_condition_failures(V, img, scope)
            sub.expect(not bad, f"{g} . section {lab} violates {bad}")
            sub.expect(space.coordinates(img) is not None, f"{g} . section {lab} leaves the span")
    rpt.add(sub)

    sub = Report("right T_q coaction dual to the dot action")
    for lab, z in zip(labels, basis):
        parts = coaction(V, z)
        for k3, part in parts.items():
            bad = section_condition_failures(V, part, scope)
            sub.expect(not bad, f"coaction of section {lab}: component at {k3} violates {bad}")
        for g in generators(n):
            paired: dict = {}
            for k3, part in parts.items():
                c = evaluate(PWElement(n, {k3: ONE}), (g,))
                if not c.is_zero():
                    paired = vt_add(paired, part, c)
            if g.parity(n):
                # x passes v (x) f_(2) before reaching the last leg
                paired = {(v, k): -c if (V.parity[v] + _key_parity(n, k)) % 2 else c for (v, k), c in paired.items()}
            sub.expect(paired == vt_dot(V, (g,), z), f"coaction of section {lab} paired with {g} differs from the dot action")
    rpt.add(sub)

    sub = Report("graded commutation p o (x . zeta) = (-1)^{[p][x]} x . (p o zeta)")
    rng = random.Random(seed)
    pgens = [g for g in generators(n) if scope.has(g)]
    for _ in range(samples):
        if not basis:
            break
        k = rng.randrange(len(basis))
        p = rng.choice(pgens)
        x = rng.choice(generators(n))
        z = basis[k]
        lhs = vt_circ(V, (p,), vt_dot(V, (x,), z))
        rhs = vt_dot(V, (x,), vt_circ(V, (p,), z))
        if p.parity(n) and x.parity(n):
            rhs = vt_scale(rhs, -ONE)
        sub.expect(lhs == rhs, f"fails for p={p}, x={x}, section {labels[k]}")
    sub.data["seed"] = seed
    rpt.add(sub)
    return rpt


def coaction(V: Module, zeta: Mapping) -> dict:
    """Right coaction ``v (x) f -> sum (-1)^{[f_(1)][f_(2)]} v (x) f_(2) (x) S^-1(f_(1))``,
    returned as ``{pwkey: component in V (x) T_q}``.  Pairing the last leg with
    ``x`` (Koszul sign for moving ``x`` past ``v (x) f_(2)``) gives ``x . zeta``."""
    n = V.n
    out: dict = {}
    for (v, key), c in zeta.items():
        for (k1, k2), d in coproduct0(PWElement(n, {key: ONE})).items():
            if _key_parity(n, k1) and _key_parity(n, k2):
                d = -d
            for k3, e in antipode0_inverse(PWElement(n, {k1: ONE})).terms.items():
                _acc(out.setdefault(k3, {}), (v, k2), c * d * e)
    return {k: part for k, part in out.items() if part}


# -- trivialization -----------------------------------------------------------------------


def _coaction_terms(cm: Comodule, v: int) -> list[tuple[int, tuple, RatFunc]]:
    return [(i, key, c) for (i, key), c in cm.delta(v).items()]


def eta(cm: Comodule, zeta: Mapping) -> dict:
    """``(m) (delta (x) id)``: ``v (x) f -> sum v_(1) (x) v_(2) f``."""
    n = cm.module.n
    out: dict = {}
    for (v, key), c in zeta.items():
        f = PWElement(n, {key: c})
        for i, k, d in _coaction_terms(cm, v):
            for kk, y in multiply(PWElement(n, {k: d}), f).terms.items():
                _acc(out, (i, kk), y)
    return out


def eta_inverse(cm: Comodule, xi: Mapping) -> dict:
    """``v (x) f -> sum v_(1) (x) S(v_(2)) f``."""
    n = cm.module.n
    out: dict = {}
    for (v, key), c in xi.items():
        f = PWElement(n, {key: c})
        for i, k, d in _coaction_terms(cm, v):
            for kk, y in multiply(antipode0(PWElement(n, {k: d})), f).terms.items():
                _acc(out, (i, kk), y)
    return out


def kappa(cm: Comodule, zeta: Mapping, inverse: bool = False) -> dict:
    """``v (x) f -> sum v_(1) (x) (-1)^{[v_(2)][f]} f S^2(v_(2))``
    (``S`` in place of ``S^2`` for the inverse)."""
    n = cm.module.n
    out: dict = {}
    for (v, key), c in zeta.items():
        f = PWElement(n, {key: c})
        pf = _key_parity(n, key)
        for i, k, d in _coaction_terms(cm, v):
            g = PWElement(n, {k: d})
            if inverse:
                g = antipode0(g)
            else:
                g = PWElement(n, {k: d * antipode0_squared_scalar(n, k)})
            if pf and _key_parity(n, k):
                g = g.scale(-ONE)
            for kk, y in multiply(f, g).terms.items():
                _acc(out, (i, kk), y)
    return out


def _rank(vectors: Iterable[Mapping]) -> int:
    e = Echelon(track=False)
    for v in vectors:
        e.add(_sortable(v))
    return len(e)


def trivialization(W: Module, theta: Iterable[int], cutoff: int, e_cutoff: int = 1) -> Report:
    """Check the right-module map ``eta`` and the left-module map ``kappa``
    between sections of ``W`` (restricted to U_k) and ``W (x) E_q``."""
    n = W.n
    theta = frozenset(theta)
    scope = Scope(n, "reductive", theta)
    rpt = Report(f"trivialization of H({W.name}) over {scope.label()}, cutoff {cutoff}")
    cm = comodule_of(W)
    H = sections(W.with_scope(scope), cutoff)
    Eb = functions(invariant_functions(n, theta, cutoff))
    Esmall = functions(invariant_functions(n, theta, e_cutoff))
    hbasis = H.basis()
    free = [{(w, k): c for k, c in a.terms.items()} for w in range(W.dim) for a in Eb]
    rpt.data["dim H (cutoff)"] = H.dim
    rpt.data["dim W (x) E_q (cutoff)"] = len(free)

    for name, fwd, bwd, mult_check in (
        ("eta", lambda z: eta(cm, z), lambda x: eta_inverse(cm, x), "right"),
        ("kappa", lambda z: kappa(cm, z), lambda x: kappa(cm, x, inverse=True), "left"),
    ):
        sub = Report(f"{name}: {mult_check} E_q-module isomorphism")
        images = []
        for lab, z in zip(H.labels(), hbasis):
            xi = fwd(z)
            images.append(xi)
            bad = invariance_failures(W, xi, scope)
            sub.expect(not bad, f"{name}(section {lab}) is not in W (x) E_q ({bad})")
            sub.expect(bwd(xi) == z, f"{name}^-1 {name} != id on section {lab}")
        sub.expect(_rank(images) == len(hbasis), f"{name} is not injective on the truncated sections")
        for idx, xi in enumerate(free):
            z = bwd(xi)
            bad = section_condition_failures(W, z, scope)
            sub.expect(not bad, f"{name}^-1 of free basis element {idx} is not a section ({bad})")
            sub.expect(fwd(z) == xi, f"{name} {name}^-1 != id on free basis element {idx}")
        for lab, z in zip(H.labels(), hbasis):
            for a_idx, a in enumerate(Esmall):
                if mult_check == "right":
                    ok = fwd(vt_right_mult(W, z, a)) == vt_right_mult(W, fwd(z), a)
                else:
                    ok = fwd(vt_left_mult(W, a, z)) == vt_left_mult(W, a, fwd(z))
                sub.expect(ok, f"{name} does not intertwine {mult_check} multiplication by E_q[{a_idx}] on {lab}")
        rpt.add(sub)
    return rpt


# -- projectivity -----------------------------------------------------------------------------


def projectivity_witness(V: Module, cutoff: int) -> Report:
    """Complete every irreducible summand ``V_s`` of ``V`` to ``W(mu_hat_s)``
    and check the blockwise section count ``H(V) + H(V^perp) = H(W)``."""
    n = V.n
    scope = V.scope
    rpt = Report(f"projectivity witness for {V.name} over {scope.label()}, cutoff {cutoff}")
    if not V.has_integral_weights():
        rpt.fail("V has weights that are not integral")
        return rpt
    d = build_root_datum(n)
    dec = decompose(V, scope)
    perps: list[Module] = []
    ws: list[Module] = []
    for s in dec.summands:
        mu_hat = dominant_in_weyl_orbit(d, s.highest_weight)
        W = irreducible(n, mu_hat).with_scope(scope)
        inj = [h for h in hom_space(s.module, W, scope) if _rank_cols(h.matrix) == s.module.dim]
        if not inj:
            raise ArithmeticError(f"no embedding of V({weight_str(s.highest_weight)}) into W({weight_str(mu_hat)})")
        emb = inj[0].matrix
        ech = Echelon(track=False)
        for c in emb.cols:
            ech.add(c)
        chosen = []
        for t in decompose(W, scope).summands:
            trial = Echelon(track=False)
            trial.rows, trial.pivots, trial.count = list(ech.rows), dict(ech.pivots), ech.count
            if all(trial.add(c) for c in t.inclusion.cols):
                ech = trial
                chosen.append(t.module)
        if len(ech) != W.dim:
            rpt.fail(f"complement of V({weight_str(s.highest_weight)}) in W({weight_str(mu_hat)}) not found")
            continue
        perp_dim = sum(m.dim for m in chosen)
        rpt.data[f"V_s = V({weight_str(s.highest_weight)})"] = f"mu_hat = {weight_str(mu_hat)}, dim V_s^perp = {perp_dim}"
        perps.extend(chosen)
        ws.append(W)
    HV = sections(V, cutoff)
    Hperp = sections(direct_sum(perps, scope), cutoff) if perps else None
    Wsum = direct_sum(ws, scope)
    HW = sections(Wsum, cutoff)
    counts = {}
    for lam in dominant_weights(n, cutoff):
        key = weight_str(lam)
        a = HV.block_dims().get(key, 0)
        b = Hperp.block_dims().get(key, 0) if Hperp else 0
        c = HW.block_dims().get(key, 0)
        counts[key] = f"{a} + {b} = {c}"
        rpt.expect(a + b == c, f"block {key}: {a} + {b} != {c}")
    rpt.data["blocks H(V) + H(V^perp) = H(W)"] = counts
    wq = direct_sum([irreducible(n, dominant_in_weyl_orbit(d, s.highest_weight)) for s in dec.summands])
    rpt.add(trivialization(wq, scope.theta, cutoff))
    return rpt


def _rank_cols(m: SMat) -> int:
    e = Echelon(track=False)
    for c in m.cols:
        e.add(c)
    return len(e)


# -- Borel-Weil, Frobenius reciprocity, global modules -------------------------------------


def reductive_module(n: int, theta: Iterable[int], mu: Sequence) -> Module:
    """Irreducible U_k module with highest weight ``mu``; one-dimensional
    when ``mu`` is orthogonal to every root in ``theta``."""
    theta = frozenset(theta)
    mu = weight(mu)
    d = build_root_datum(n)
    if any(d.pairing(j, mu) < 0 or d.pairing(j, mu).denominator != 1 for j in theta):
        raise ValueError(f"({weight_str(mu)}) is not a dominant integral weight for theta={sorted(theta)}")
    if all(d.pairing(j, mu) == 0 for j in theta):
        return weight_module(n, mu, theta)
    return reductive_irreducible(n, theta, mu)[0]


def parabolic_irreducible(n: int, theta: Iterable[int], mu: Sequence) -> Module:
    """Irreducible U_p module with highest weight ``mu`` (e_j outside theta act by 0)."""
    return extend_to_parabolic(reductive_module(n, theta, mu))


def borel_weil_check(n: int, theta: Iterable[int], mu: Sequence, cutoff: int) -> Report:
    """``O_q(V_mu)`` is ``W((-mu~)^dagger)`` or zero, with the explicit action
    ``x . zeta_i = (-1)^{[x][phi]} sum_j t^(nu)_ji(x) zeta_j``."""
    theta = frozenset(theta)
    mu = weight(mu)
    V = parabolic_irreducible(n, theta, mu)
    low = lowest_weight(V)
    rpt = Report(f"Borel-Weil n={n} theta={sorted(theta)} mu=({weight_str(mu)})")
    rpt.data["lowest weight"] = weight_str(low)
    O = holomorphic_sections(V, cutoff)
    rpt.data["dim O_q"] = O.dim
    minus = wneg(low)
    d = build_root_datum(n)
    if not is_dominant(d, minus):
        rpt.expect(O.dim == 0, f"expected zero space, got dimension {O.dim}")
        return rpt
    _, nu = lowest_weight_and_dagger(n, minus)
    rpt.data["nu"] = weight_str(nu)
    if size(nu) > cutoff:
        rpt.fail(f"cutoff {cutoff} too small for nu = {weight_str(nu)}")
        return rpt
    wnu = irreducible(n, nu)
    rpt.expect(O.dim == wnu.dim, f"dim O_q = {O.dim}, expected d_nu = {wnu.dim}")
    rpt.expect([b.lam for b in O.blocks] == [nu], f"contributing blocks {[weight_str(b.lam) for b in O.blocks]}")
    if O.dim != wnu.dim or len(O.blocks) != 1 or len(O.blocks[0].homs) != 1:
        return rpt
    phi = O.blocks[0].homs[0]
    sgn_exp = phi.sign_degree
    rpt.data["phi parity"] = phi.degree
    for g in generators(n):
        pg = g.parity(n)
        for i in range(wnu.dim):
            lhs = vt_dot(V, (g,), O.expand((0, 0, i)))
            rhs: dict = {}
            for j, c in wnu.gen_matrix(g).cols[i].items():
                rhs = vt_add(rhs, O.expand((0, 0, j)), c)
            if pg and sgn_exp:
                rhs = vt_scale(rhs, -ONE)
            if lhs != rhs:
                rpt.fail(f"{g} . zeta_{i}: coordinates {O.coordinates(lhs)} vs predicted {O.coordinates(rhs)}")
    return rpt


def frobenius_check(W: Module, V: Module, cutoff: int) -> Report:
    """``Hom_{U_q}(W, H(V)) = Hom_{U_k}(W, V)`` with ``F`` and ``F-bar``
    mutually inverse on bases."""
    n = W.n
    scope = V.scope
    rpt = Report(f"Frobenius reciprocity W={W.name} V={V.name} over {scope.label()}, cutoff {cutoff}")
    decW = decompose(W)
    top = max((size(s.highest_weight) for s in decW.summands), default=0)
    if top > cutoff:
        rpt.fail(f"cutoff {cutoff} below the largest constituent |lambda| = {top}")
        return rpt
    H = sections(V, cutoff)
    rhs = hom_space(W, V, scope)
    rpt.data["dim Hom_U_k(W, V)"] = len(rhs)
    # left side, blockwise
    lhs_maps: list[tuple[int, Intertwiner]] = []
    mult = decW.multiplicities()
    pairing = 0
    for b, blk in enumerate(H.blocks):
        B = H.block_module(b)
        hs = hom_space(W, B)
        lhs_maps.extend((b, h) for h in hs)
        pairing += mult.get(blk.lam, 0) * len(blk.homs)
    rpt.data["dim Hom_U_q(W, H(V))"] = len(lhs_maps)
    rpt.data["multiplicity pairing"] = pairing
    rpt.expect(len(lhs_maps) == len(rhs), f"dimensions differ: {len(lhs_maps)} vs {len(rhs)}")
    rpt.expect(pairing == len(lhs_maps), f"multiplicity pairing {pairing} != {len(lhs_maps)}")
    cm = comodule_of(W)

    def psi_image(b: int, psi: Intertwiner, j: int) -> dict:
        labels = H.block_labels(b)
        out: dict = {}
        for k, c in psi.matrix.cols[j].items():
            out = vt_add(out, H.expand(labels[k]), c)
        return out

    def F(images: list[dict]) -> SMat:
        cols = []
        for z in images:
            col: dict = {}
            for (v, (lam, i, j)), c in z.items():
                if i == j:
                    _acc(col, v, c)
            cols.append(col)
        return SMat(V.dim, W.dim, cols)

    def Fbar(phi: SMat) -> list[dict]:
        out = []
        for j in range(W.dim):
            z: dict = {}
            for (i, key), c in cm.delta(j).items():
                img = phi.cols[i]
                if not img:
                    continue
                s = antipode0(PWElement(n, {key: c}))
                for r, x in img.items():
                    for k, y in s.terms.items():
                        _acc(z, (r, k), x * y)
            out.append(z)
        return out

    for idx, phi in enumerate(rhs):
        images = Fbar(phi.matrix)
        for j, z in enumerate(images):
            bad = section_condition_failures(V, z, scope)
            rpt.expect(not bad, f"Fbar(phi_{idx})(w_{j}) is not a section ({bad})")
        for g in generators(n):
            for j in range(W.dim):
                lhs = vt_dot(V, (g,), images[j])
                rhs_v: dict = {}
                for r, c in W.gen_matrix(g).cols[j].items():
                    rhs_v = vt_add(rhs_v, images[r], c)
                if g.parity(n) and phi.degree:
                    rhs_v = vt_scale(rhs_v, -ONE)
                rpt.expect(lhs == rhs_v, f"Fbar(phi_{idx}) does not intertwine {g} at w_{j}")
        rpt.expect(F(images) == phi.matrix, f"F Fbar != id on phi_{idx}")
    for idx, (b, psi) in enumerate(lhs_maps):
        images = [psi_image(b, psi, j) for j in range(W.dim)]
        f = F(images)
        it = Intertwiner(f, psi.degree, W, V, scope)
        chk = it.check()
        rpt.expect(chk.ok, f"F(psi_{idx}) is not a U_k intertwiner: {chk.failures[:1]}")
        back = Fbar(f)
        rpt.expect(back == images, f"Fbar F != id on psi_{idx}")
    return rpt


def global_module_sections_check(W: Module, theta: Iterable[int], cutoff: int) -> Report:
    """``O_q(W) = eps (x) W`` through ``w -> (id (x) S) delta(w)``."""
    n = W.n
    theta = frozenset(theta)
    scope = Scope(n, "parabolic", theta)
    rpt = Report(f"O_q(W) = W for W={W.name} over {scope.label()}, cutoff {cutoff}")
    O = holomorphic_sections(W.with_scope(scope), cutoff)
    rpt.data["dim O_q(W)"] = O.dim
    rpt.data["dim W"] = W.dim
    rpt.expect(O.dim == W.dim, "dimensions differ")
    cm = comodule_of(W)
    cols = []
    for j in range(W.dim):
        z: dict = {}
        for (i, key), c in cm.delta(j).items():
            for k, y in antipode0(PWElement(n, {key: c})).terms.items():
                _acc(z, (i, k), y)
        coords = O.coordinates(z)
        if coords is None:
            rpt.fail(f"(id (x) S) delta(w_{j}) is not a holomorphic section")
            return rpt
        pos = {l: k for k, l in enumerate(O.labels())}
        cols.append({pos[l]: c for l, c in coords.items()})
    mat = SMat(O.dim, W.dim, cols)
    rpt.expect(_rank_cols(mat) == W.dim == O.dim, "the map W -> O_q(W) is not bijective")
    mod = O.as_module()
    it = Intertwiner(mat, 0, W, mod, Scope(n))
    chk = it.check()
    rpt.expect(chk.ok, f"W -> O_q(W) is not a U_q map: {chk.failures[:1]}")
    dec = decompose(W)
    rpt.data["W summands"] = sorted(dec.dims(), reverse=True)
    rpt.data["O_q summands"] = sorted(decompose(mod).dims(), reverse=True)
    rpt.expect(rpt.data["W summands"] == rpt.data["O_q summands"], "decompositions differ")
    return rpt


def invariant_hom_counts(n: int, theta: Iterable[int], max_m: int) -> Report:
    """Actual ``dim Hom_{U_k}(W(m gamma), C)`` next to the partition count of
    ``m`` into at most ``N = n - |theta|`` parts.  Reported, not asserted."""
    theta = frozenset(theta)
    scope = Scope(n, "reductive", theta)
    N = n - len(theta)
    rpt = Report(f"invariant homs W(m gamma) -> C, n={n} theta={sorted(theta)} (N={N})")
    rows = {}
    for m in range(1, max_m + 1):
        lam = tuple(Fraction(2 * m) if i == 0 else Fraction(0) for i in range(n))
        actual = len(hom_space(irreducible(n, lam), trivial_module(n, scope), scope))
        rows[m] = {"actual": actual, "partitions": _partitions(m, N)}
    rpt.data["counts"] = rows
    return rpt


def _partitions(m: int, parts: int) -> int:
    if parts <= 0:
        return 1 if m == 0 else 0

    def p(k: int, largest: int, left: int) -> int:
        if k == 0:
            return 1
        if left == 0:
            return 0
        return sum(p(k - x, x, left - 1) for x in range(min(k, largest), 0, -1))

    return p(m, m, parts)
