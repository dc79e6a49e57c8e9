"""Finite-dimensional graded modules: construction, decomposition, intertwiners."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping, Sequence

from .linalg import Echelon, SMat, nullspace, solve_square
from .report import Report
from .rootdata import (
    WeightVec,
    build_root_datum,
    dominant_in_weyl_orbit,
    eps,
    is_dominant,
    wadd,
    weight,
    weight_str,
    wneg,
    zero_weight,
)
from .scalars import ONE, RatFunc, qpow
from .uqalg import (
    ACTIVE,
    E,
    F,
    Gen,
    HopfConvention,
    antipode,
    check_relations,
    coproduct,
    eval_sum,
    eval_tensor,
)


@dataclass(frozen=True)
class Scope:
    """Which generators act: the whole algebra, or a reductive / parabolic
    subalgebra attached to a subset ``theta`` of simple-root indices."""

    n: int
    flavor: str = "full"  # full | reductive | parabolic
    theta: frozenset = frozenset()

    def __post_init__(self):
        if self.flavor not in ("full", "reductive", "parabolic"):
            raise ValueError(f"unknown scope flavor {self.flavor!r}")
        if any(not 1 <= j <= self.n for j in self.theta):
            raise ValueError(f"theta {sorted(self.theta)} out of range for n={self.n}")

    def has(self, g: Gen) -> bool:
        if g.kind == "K" or self.flavor == "full" or g.index in self.theta:
            return True
        return self.flavor == "parabolic" and g.kind == "E"

    def ef_generators(self) -> list[Gen]:
        return [g for i in range(1, self.n + 1) for g in (E(i), F(i)) if self.has(g)]

    def contains(self, other: "Scope") -> bool:
        return all(self.has(g) for g in other.ef_generators())

    def label(self) -> str:
        if self.flavor == "full":
            return "U_q"
        t = ",".join(map(str, sorted(self.theta)))
        return f"{'U_k' if self.flavor == 'reductive' else 'U_p'}(theta={{{t}}})"


def full_scope(n: int) -> Scope:
    return Scope(n)


def reductive(n: int, theta: Iterable[int] = ()) -> Scope:
    return Scope(n, "reductive", frozenset(theta))


def parabolic(n: int, theta: Iterable[int] = ()) -> Scope:
    return Scope(n, "parabolic", frozenset(theta))


class Module:
    """A graded weight module given by sparse matrices of ``e_i, f_i``.

    ``k_i`` is never stored: it acts on a basis vector of weight ``mu`` by
    ``q^{(alpha_i, mu)}``.  Generators outside ``scope`` are unavailable.
    """

    def __init__(
        self,
        n: int,
        parity: Sequence[int],
        weights: Sequence[WeightVec],
        gens: Mapping[Gen, SMat],
        scope: Scope | None = None,
        name: str = "",
    ):
        self.n = n
        self.dim = len(parity)
        self.parity = tuple(int(p) % 2 for p in parity)
        self.weights = tuple(weight(w) for w in weights)
        self.scope = scope or Scope(n)
        self.name = name
        self.gens: dict[Gen, SMat] = {}
        for g in self.scope.ef_generators():
            m = gens.get(g)
            self.gens[g] = m if m is not None else SMat.zeros(self.dim, self.dim)
        self._words: dict = {}

    def __repr__(self) -> str:
        return f"Module({self.name or '?'}, n={self.n}, dim={self.dim}, {self.scope.label()})"

    def has_integral_weights(self) -> bool:
        d = build_root_datum(self.n)
        return all(d.pairing(i, w).denominator == 1 for w in self.weights for i in range(1, self.n + 1))

    def k_eigenvalue(self, i: int, power: int, b: int) -> RatFunc:
        a = build_root_datum(self.n).pairing(i, self.weights[b]) * power
        if a.denominator != 1:
            raise ValueError(f"k{i} does not act on weight {weight_str(self.weights[b])} with integral q-powers")
        return qpow(int(a))

    def gen_matrix(self, g: Gen) -> SMat:
        if g.kind == "K":
            return SMat.diagonal([self.k_eigenvalue(g.index, g.power, b) for b in range(self.dim)])
        try:
            return self.gens[g]
        except KeyError:
            raise ValueError(f"{g} is not in scope {self.scope.label()}") from None

    def word_matrix(self, w: tuple) -> SMat:
        m = self._words.get(w)
        if m is None:
            if not w:
                m = SMat.identity(self.dim)
            elif len(w) == 1:
                m = self.gen_matrix(w[0])
            else:
                m = self.gen_matrix(w[0]) @ self.word_matrix(w[1:])
            self._words[w] = m
        return m

    def act(self, w: tuple, v: Mapping) -> dict:
        out = v
        for g in reversed(w):
            if g.kind == "K":
                out = {b: c * self.k_eigenvalue(g.index, g.power, b) for b, c in out.items()}
            else:
                out = self.gen_matrix(g).apply(out)
        return dict(out)

    def weight_spaces(self) -> dict:
        out: dict = {}
        for b, w in enumerate(self.weights):
            out.setdefault(w, []).append(b)
        return out

    def character(self) -> list:
        return sorted(self.weights, reverse=True)

    def with_scope(self, scope: Scope, extend_zero: bool = False) -> "Module":
        """Same space with another generator set; missing generators act by
        zero only when ``extend_zero`` is set."""
        gens = dict(self.gens)
        for g in scope.ef_generators():
            if g not in gens and not extend_zero:
                raise ValueError(f"{g} has no matrix on {self!r}")
        m = Module(self.n, self.parity, self.weights, gens, scope, self.name)
        return m

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "dim": self.dim,
            "parity": list(self.parity),
            "weights": [[str(x) for x in w] for w in self.weights],
            "scope": {"flavor": self.scope.flavor, "theta": sorted(self.scope.theta)},
            "gens": {
                str(g): [[i, j, x.to_json()] for i, j, x in m.entries()]
                for g, m in sorted(self.gens.items())
            },
        }

    @classmethod
    def from_json(cls, data: Mapping) -> "Module":
        n = int(data["n"])
        dim = int(data["dim"])
        sc = data.get("scope") or {"flavor": "full", "theta": []}
        scope = Scope(n, sc["flavor"], frozenset(sc["theta"]))
        gens = {}
        for key, entries in data.get("gens", {}).items():
            kind, idx = key[0].upper(), int(key[1:])
            if kind not in "EF":
                raise ValueError(f"bad generator key {key!r}")
            gens[Gen(kind, idx)] = SMat.from_entries(dim, dim, [(int(i), int(j), RatFunc.from_json(x)) for i, j, x in entries])
        parity = data["parity"]
        weights = [weight(Fraction(x) for x in w) for w in data["weights"]]
        if len(parity) != dim or len(weights) != dim:
            raise ValueError("parity/weights length does not match dim")
        return cls(n, parity, weights, gens, scope)


# -- basic modules -------------------------------------------------------------


def vector_index(n: int, mu: int) -> int:
    """Position of ``w_mu`` in the basis ``w_1..w_n, w_0, w_-n..w_-1``."""
    if mu > 0:
        return mu - 1
    if mu == 0:
        return n
    return 2 * n + 1 + mu


def vector_labels(n: int) -> list[int]:
    return list(range(1, n + 1)) + [0] + list(range(-n, 0))


@lru_cache(maxsize=None)
def vector_module(n: int) -> Module:
    """The (2n+1)-dimensional module with highest weight eps_1."""
    if n < 1:
        raise ValueError("rank must be at least 1")
    dim = 2 * n + 1
    idx = lambda mu: vector_index(n, mu)  # noqa: E731
    labels = vector_labels(n)
    parity = [1 if mu == 0 else 0 for mu in labels]
    weights = [eps(n, mu) for mu in labels]
    gens: dict[Gen, SMat] = {}
    for i in range(1, n):
        gens[E(i)] = SMat.from_entries(dim, dim, [(idx(i), idx(i + 1), ONE), (idx(-i - 1), idx(-i), ONE)])
        gens[F(i)] = SMat.from_entries(dim, dim, [(idx(i + 1), idx(i), ONE), (idx(-i), idx(-i - 1), ONE)])
    gens[E(n)] = SMat.from_entries(dim, dim, [(idx(n), idx(0), ONE), (idx(0), idx(-n), -ONE)])
    gens[F(n)] = SMat.from_entries(dim, dim, [(idx(0), idx(n), ONE), (idx(-n), idx(0), ONE)])
    return Module(n, parity, weights, gens, name="vector")


def trivial_module(n: int, scope: Scope | None = None) -> Module:
    return Module(n, [0], [zero_weight(n)], {}, scope, name="trivial")


def weight_module(n: int, mu: WeightVec, theta: Iterable[int] = (), flavor: str = "reductive", parity: int = 0) -> Module:
    """One-dimensional module ``C_mu``; every e_j, f_j in scope acts by zero."""
    mu = weight(mu)
    scope = Scope(n, flavor, frozenset(theta))
    d = build_root_datum(n)
    for j in scope.theta:
        if d.pairing(j, mu) != 0:
            raise ValueError(f"C_mu needs (alpha_{j}, mu) = 0 for j in theta")
    return Module(n, [parity], [mu], {}, scope, name=f"C({weight_str(mu)})")


def dual_module(m: Module, conv: HopfConvention = ACTIVE) -> Module:
    """``x w*_a = sum_b (-1)^{[x][a]} t(S(x))_{ab} w*_b``."""
    n = m.n
    gens = {}
    for g in m.scope.ef_generators():
        s = eval_sum(m, antipode(g, n, conv))
        pg = g.parity(n)
        cols = []
        for a in range(m.dim):
            row = s.row(a)
            if pg and m.parity[a]:
                row = {b: -x for b, x in row.items()}
            cols.append(row)
        gens[g] = SMat(m.dim, m.dim, cols)
    return Module(n, m.parity, [wneg(w) for w in m.weights], gens, m.scope, name=f"dual({m.name})")


def tensor(a: Module, b: Module, conv: HopfConvention = ACTIVE) -> Module:
    """Graded tensor product; basis ``(i, j)`` flattened as ``i * dim(b) + j``."""
    if a.n != b.n:
        raise ValueError("rank mismatch in tensor product")
    n = a.n
    scope = a.scope if a.scope == b.scope else _meet(a.scope, b.scope)
    gens = {g: eval_tensor(coproduct(g, n, conv), [a, b], n) for g in scope.ef_generators()}
    parity = [(pa + pb) % 2 for pa in a.parity for pb in b.parity]
    weights = [wadd(wa, wb) for wa in a.weights for wb in b.weights]
    return Module(n, parity, weights, gens, scope, name=f"({a.name} x {b.name})")


def _meet(s: Scope, t: Scope) -> Scope:
    gens = [g for g in s.ef_generators() if t.has(g)]
    for cand in (
        Scope(s.n),
        Scope(s.n, "parabolic", s.theta & t.theta),
        Scope(s.n, "reductive", s.theta & t.theta),
    ):
        if cand.ef_generators() == gens:
            return cand
    return Scope(s.n, "reductive", s.theta & t.theta)


def tensor_power(m: Module, k: int) -> Module:
    if k == 0:
        return trivial_module(m.n, m.scope)
    out = m
    for _ in range(k - 1):
        out = tensor(out, m)
    return out


# -- highest weight vectors and generated submodules --------------------------


def _weight_order(m: Module) -> list:
    return sorted(m.weight_spaces(), reverse=True)


def highest_weight_vectors(m: Module, scope: Scope | None = None) -> list[tuple[WeightVec, int, dict]]:
    """Basis of the joint kernel of the scoped ``e``'s as ``(weight, parity, vector)``.

    Weights run in lexicographically descending order, even before odd; each
    weight/parity block is an echelon basis with leading entry 1.
    """
    scope = scope or m.scope
    es = [m.gen_matrix(g) for g in scope.ef_generators() if g.kind == "E"]
    rows_by_source = [e.rows() for e in es]
    out = []
    spaces = m.weight_spaces()
    for w in _weight_order(m):
        for p in (0, 1):
            unknowns = [b for b in spaces[w] if m.parity[b] == p]
            if not unknowns:
                continue
            uset = set(unknowns)
            eqs = []
            for rows in rows_by_source:
                for r in rows:
                    eq = {c: x for c, x in r.items() if c in uset}
                    if eq:
                        eqs.append(eq)
            for v in nullspace(eqs, unknowns):
                out.append((w, p, v))
    return out


@dataclass
class Generated:
    """Submodule spanned by ``word_k(u)``: basis vectors, their words and
    the induced module."""

    module: Module
    vectors: list[dict]
    words: list[tuple]


def generate_submodule(m: Module, u: Mapping, scope: Scope | None = None, name: str = "") -> Generated:
    """Close ``u`` (a weight vector annihilated by the scoped e's) under the
    scoped f's, breadth first; each new basis vector is literally
    ``f_i`` applied to an earlier one."""
    scope = scope or m.scope
    n = m.n
    fs = [g for g in scope.ef_generators() if g.kind == "F"]
    u = dict(u)
    w0 = _vector_weight(m, u)
    vectors = [u]
    words: list[tuple] = [()]
    ech: dict = {}
    index_of: dict = {}  # (weight, echelon input number) -> basis index
    ech[w0] = Echelon()
    ech[w0].add(u)
    index_of[(w0, 0)] = 0
    frontier = [0]
    while frontier:
        nxt = []
        for k in frontier:
            for g in fs:
                v = m.gen_matrix(g).apply(vectors[k])
                if not v:
                    continue
                wt = _vector_weight(m, v)
                e = ech.setdefault(wt, Echelon())
                if e.add(v):
                    index_of[(wt, e.count - 1)] = len(vectors)
                    vectors.append(v)
                    words.append((g,) + words[k])
                    nxt.append(len(vectors) - 1)
        frontier = nxt
    parity = [(_vector_parity(m, v)) for v in vectors]
    weights = [_vector_weight(m, v) for v in vectors]
    gens = {}
    dim = len(vectors)
    for g in scope.ef_generators():
        cols = []
        X = m.gen_matrix(g)
        for v in vectors:
            img = X.apply(v)
            if not img:
                cols.append({})
                continue
            wt = _vector_weight(m, img)
            e = ech.get(wt)
            coords = e.coordinates(img) if e is not None else None
            if coords is None:
                raise ArithmeticError(f"{g} leaves the generated subspace; input is not a highest weight vector")
            cols.append({index_of[(wt, c)]: x for c, x in coords.items()})
        gens[g] = SMat(dim, dim, cols)
    return Generated(Module(n, parity, weights, gens, scope, name=name), vectors, words)


def _vector_weight(m: Module, v: Mapping) -> WeightVec:
    ws = {m.weights[b] for b in v}
    if len(ws) != 1:
        raise ValueError("vector is not a weight vector")
    return next(iter(ws))


def _vector_parity(m: Module, v: Mapping) -> int:
    ps = {m.parity[b] for b in v}
    if len(ps) != 1:
        raise ValueError("vector is not homogeneous")
    return next(iter(ps))


# -- irreducibles ----------------------------------------------------------------


def _check_dominant(n: int, lam: WeightVec) -> WeightVec:
    lam = weight(lam)
    if len(lam) != n or not is_dominant(build_root_datum(n), lam):
        raise ValueError(f"weight {weight_str(lam)} is not dominant integral for n={n}")
    return lam


_IRREPS: dict = {}


def irreducible(n: int, lam: Sequence) -> Module:
    """``W(lambda)``.  Built inside ``W(lambda - eps_r) (x) Lambda``, ``r`` the
    last nonzero row, so every irreducible sits inside a tensor power of
    the vector module.  Basis vectors carry their f-words from the
    highest weight vector (see :func:`irreducible_words`)."""
    lam = _check_dominant(n, lam)
    key = (n, lam)
    hit = _IRREPS.get(key)
    if hit is not None:
        return hit[0]
    from . import cache

    cached = cache.load_irreducible(n, lam)
    if cached is not None:
        _IRREPS[key] = cached
        return cached[0]
    if all(x == 0 for x in lam):
        mod = trivial_module(n)
        mod.name = "W(0)"
        result = (mod, [()])
    elif lam == eps(n, 1):
        mod = vector_module(n)
        result = (Module(n, mod.parity, mod.weights, mod.gens, name=f"W({weight_str(lam)})"), _vector_words(n))
    else:
        r = max(i for i, x in enumerate(lam) if x != 0)
        prev = tuple(x - (1 if i == r else 0) for i, x in enumerate(lam))
        amb = tensor(irreducible(n, prev), vector_module(n))
        cands = [v for w, p, v in highest_weight_vectors(amb) if w == lam]
        if not cands:
            raise ArithmeticError(f"no highest weight vector of weight {weight_str(lam)} found")
        u = cands[0]
        if _vector_parity(amb, u):
            raise ArithmeticError("highest weight vector of an irreducible should be even")
        gen = generate_submodule(amb, u, name=f"W({weight_str(lam)})")
        result = (gen.module, gen.words)
    _IRREPS[key] = result
    cache.store_irreducible(n, lam, *result)
    return result[0]


def irreducible_words(n: int, lam: Sequence) -> list[tuple]:
    """``words[k]`` with ``b_k = words[k] b_0`` in :func:`irreducible`."""
    irreducible(n, lam)
    return _IRREPS[(n, weight(lam))][1]


def _vector_words(n: int) -> list[tuple]:
    words: list[tuple] = [()]
    for i in range(1, n + 1):
        words.append((F(i),) + words[-1])
    for i in range(n, 0, -1):
        words.append((F(i),) + words[-1])
    return words


def irreducible_dim(n: int, lam: Sequence) -> int:
    return irreducible(n, lam).dim


def lowest_weight_and_dagger(n: int, lam: Sequence) -> tuple[WeightVec, WeightVec]:
    """``(lambda_bar, lambda_dagger)``: the weight killed by every f, and its negative."""
    w = irreducible(n, lam)
    low = [w.weights[b] for b in range(w.dim) if all(not w.gen_matrix(F(i)).cols[b] for i in range(1, n + 1))]
    if len(set(low)) != 1:
        raise ArithmeticError("irreducible module must have a unique lowest weight")
    lbar = low[0]
    return lbar, wneg(lbar)


# -- intertwiners ----------------------------------------------------------------


@dataclass
class Intertwiner:
    """Graded map ``source -> target`` with
    ``phi(x v) = (-1)^{(degree + shift)[x]} x phi(v)`` for scoped ``x``.

    ``shift = 0`` is the usual graded-intertwiner rule; ``shift = 1`` flips the
    sign on odd generators.
    """

    matrix: SMat
    degree: int
    source: Module
    target: Module
    scope: Scope
    shift: int = 0

    @property
    def sign_degree(self) -> int:
        return (self.degree + self.shift) % 2

    def check(self) -> Report:
        rpt = Report(f"intertwiner {self.source.name}->{self.target.name} ({self.scope.label()})")
        n = self.source.n
        phi = self.matrix
        for r, c, _ in phi.entries():
            if self.source.weights[c] != self.target.weights[r]:
                rpt.fail(f"entry ({r},{c}) breaks weights")
            if (self.target.parity[r] - self.source.parity[c] - self.degree) % 2:
                rpt.fail(f"entry ({r},{c}) breaks degree {self.degree}")
        for g in self.scope.ef_generators():
            lhs = phi @ self.source.gen_matrix(g)
            rhs = self.target.gen_matrix(g) @ phi
            if self.sign_degree * g.parity(n):
                rhs = -rhs
            diff = lhs.first_difference(rhs)
            rpt.expect(diff is None, f"fails to commute with {g} at {diff and diff[:2]}")
        return rpt

    def compose(self, other: "Intertwiner") -> "Intertwiner":
        """``self o other``."""
        return Intertwiner(self.matrix @ other.matrix, (self.degree + other.degree) % 2, other.source, self.target, self.scope, self.shift)


def hom_space(a: Module, b: Module, scope: Scope | None = None, shift: int = 0, degrees: Sequence[int] = (0, 1)) -> list[Intertwiner]:
    """Basis of scoped graded intertwiners ``a -> b``, degree 0 first."""
    if a.n != b.n:
        raise ValueError("rank mismatch")
    n = a.n
    if scope is None:
        scope = a.scope if b.scope.contains(a.scope) else b.scope
    gens = scope.ef_generators()
    Xa = {g: a.gen_matrix(g) for g in gens}
    Xb = {g: b.gen_matrix(g) for g in gens}
    Xa_rows = {g: m.rows() for g, m in Xa.items()}
    out = []
    bspaces = b.weight_spaces()
    for d in degrees:
        unknowns = []
        for c in range(a.dim):
            for r in bspaces.get(a.weights[c], ()):
                if (b.parity[r] - a.parity[c] - d) % 2 == 0:
                    unknowns.append((r, c))
        if not unknowns:
            continue
        by_row: dict = {}
        by_col: dict = {}
        for r, c in unknowns:
            by_row.setdefault(r, []).append(c)
            by_col.setdefault(c, []).append(r)
        eqs: dict = {}
        for g in gens:
            s = -1 if ((d + shift) * g.parity(n)) % 2 else 1
            # (phi X_a)[r, c] = sum_k phi[r, k] X_a[k, c]
            rows = Xa_rows[g]
            for r, ks in by_row.items():
                for k in ks:
                    for c, x in rows[k].items():
                        eq = eqs.setdefault((g, r, c), {})
                        _acc(eq, (r, k), x)
            # -(s) (X_b phi)[r, c] = -s sum_k X_b[r, k] phi[k, c]
            Xbg = Xb[g]
            for c, ks in by_col.items():
                for k in ks:
                    for r, x in Xbg.cols[k].items():
                        eq = eqs.setdefault((g, r, c), {})
                        _acc(eq, (k, c), -x if s == 1 else x)
        sols = nullspace([e for e in eqs.values() if e], unknowns)
        for sol in sols:
            mat = SMat.from_entries(b.dim, a.dim, [(r, c, x) for (r, c), x in sol.items()])
            out.append(Intertwiner(mat, d, a, b, scope, shift))
    return out


def _acc(d: dict, k, x: RatFunc) -> None:
    cur = d.get(k)
    s = x if cur is None else cur + x
    if s.is_zero():
        d.pop(k, None)
    else:
        d[k] = s


# -- decomposition ----------------------------------------------------------------


@dataclass
class Summand:
    highest_weight: WeightVec
    parity: int  # degree of the inclusion
    module: Module
    inclusion: SMat  # module -> ambient
    projection: SMat  # ambient -> module


@dataclass
class Decomposition:
    ambient: Module
    scope: Scope
    summands: list[Summand] = field(default_factory=list)

    def multiplicities(self) -> dict:
        out: dict = {}
        for s in self.summands:
            out[s.highest_weight] = out.get(s.highest_weight, 0) + 1
        return out

    def dims(self) -> list[int]:
        return [s.module.dim for s in self.summands]

    def check(self) -> Report:
        rpt = Report(f"decomposition of {self.ambient.name} (dim {self.ambient.dim})")
        d = self.ambient.dim
        rpt.expect(sum(self.dims()) == d, f"summand dimensions {self.dims()} do not add up to {d}")
        total = SMat.zeros(d, d)
        for a, s in enumerate(self.summands):
            total = total + s.inclusion @ s.projection
            for b, t in enumerate(self.summands):
                prod = s.projection @ t.inclusion
                want = SMat.identity(s.module.dim) if a == b else SMat.zeros(s.module.dim, t.module.dim)
                rpt.expect(prod == want, f"projection {a} o inclusion {b} is not {'identity' if a == b else 'zero'}")
            for name, mat, src, tgt in (("inclusion", s.inclusion, s.module, self.ambient), ("projection", s.projection, self.ambient, s.module)):
                it = Intertwiner(mat, s.parity, src, tgt, self.scope)
                sub = it.check()
                if not sub.ok:
                    rpt.fail(f"{name} {a} is not an intertwiner: {sub.failures[:1]}")
        rpt.expect(total == SMat.identity(d), "sum of inclusion o projection is not the identity")
        return rpt


def decompose(m: Module, scope: Scope | None = None) -> Decomposition:
    """Split ``m`` into irreducibles for ``scope`` (default: its own scope).

    For the full algebra every summand is the canonical ``W(lambda)``; the
    inclusion of the summand generated by a highest weight vector ``u`` of
    parity ``d`` sends ``b_k = word_k b_0`` to ``(-1)^{d [b_k]} word_k u``.
    For subalgebras the summand is the generated submodule itself.
    """
    scope = scope or m.scope
    n = m.n
    hw = highest_weight_vectors(m, scope)
    pieces = []
    for w, p, u in hw:
        if scope.flavor == "full":
            mod = irreducible(n, w)
            words = irreducible_words(n, w)
            cols = []
            for k, wd in enumerate(words):
                v = m.act(wd, u)
                if p and mod.parity[k]:
                    v = {i: -x for i, x in v.items()}
                cols.append(v)
        else:
            gen = generate_submodule(m.with_scope(scope) if m.scope != scope else m, u, scope, name=f"V({weight_str(w)})")
            mod, cols = gen.module, gen.vectors
            p = 0
        pieces.append((w, p, mod, SMat(m.dim, mod.dim, cols)))
    # projections: invert the block matrix [inclusion_1 | inclusion_2 | ...] weight by weight
    allcols = []
    owner = []
    for s, (_, _, mod, inc) in enumerate(pieces):
        for k in range(mod.dim):
            allcols.append(inc.cols[k])
            owner.append((s, k))
    if len(allcols) != m.dim:
        raise ArithmeticError(f"summands span dimension {len(allcols)}, expected {m.dim}")
    proj_cols: list[list[dict]] = [[dict() for _ in range(m.dim)] for _ in pieces]
    spaces = m.weight_spaces()
    by_weight: dict = {}
    for idx, col in enumerate(allcols):
        by_weight.setdefault(_vector_weight(m, col), []).append(idx)
    for w, basis in spaces.items():
        idxs = by_weight.get(w, [])
        inv_rows = solve_square([allcols[i] for i in idxs], basis)
        for local, i in enumerate(idxs):
            s, k = owner[i]
            for amb, x in inv_rows[local].items():
                proj_cols[s][amb][k] = x
    dec = Decomposition(m, scope)
    for s, (w, p, mod, inc) in enumerate(pieces):
        proj = SMat(mod.dim, m.dim, proj_cols[s])
        dec.summands.append(Summand(w, p, mod, inc, proj))
    return dec


# -- duality ----------------------------------------------------------------------


def self_duality_M(n: int, conv: HopfConvention = ACTIVE) -> SMat:
    """The even isomorphism ``Lambda* -> Lambda`` sending ``w*_{-1}`` to ``w_1``,
    written in the ``w_mu`` / ``w*_nu`` bases (entry ``(mu, nu)`` holds
    ``m_mu delta_{mu+nu,0}``)."""
    lam = vector_module(n)
    dual = dual_module(lam, conv)
    homs = [h for h in hom_space(dual, lam) if h.degree == 0]
    if len(homs) != 1:
        raise ArithmeticError(f"expected a unique even isomorphism, found {len(homs)}")
    mat = homs[0].matrix
    c = mat.get(vector_index(n, 1), vector_index(n, -1))
    if c.is_zero():
        raise ArithmeticError("isomorphism does not pair w*_{-1} with w_1")
    return mat.scale(c.inverse())


def expected_M(n: int) -> SMat:
    """Antidiagonal matrix with ``m_mu = (-q)^{mu-1}`` (mu > 0),
    ``(-q)^n`` (mu = 0), ``(-q)^{2n+mu}`` (mu < 0)."""
    dim = 2 * n + 1
    entries = []
    for mu in vector_labels(n):
        if mu > 0:
            e = mu - 1
        elif mu == 0:
            e = n
        else:
            e = 2 * n + mu
        val = qpow(e) * (ONE if e % 2 == 0 else -ONE)
        entries.append((vector_index(n, mu), vector_index(n, -mu), val))
    return SMat.from_entries(dim, dim, entries)


def self_duality_report(n: int, conv: HopfConvention = ACTIVE) -> Report:
    rpt = Report(f"self-duality matrix n={n} [{conv.name}]")
    try:
        M = self_duality_M(n, conv)
    except ArithmeticError as exc:
        rpt.fail(str(exc))
        return rpt
    want = expected_M(n)
    diff = M.first_difference(want)
    rpt.expect(diff is None, f"mismatch at {diff and diff[:2]}: {diff and diff[2]} vs {diff and diff[3]}")
    rpt.data["m"] = {str(mu): str(M.get(vector_index(n, mu), vector_index(n, -mu))) for mu in vector_labels(n)}
    return rpt


# -- subalgebra modules ------------------------------------------------------------


def restrict(m: Module, theta: Iterable[int], flavor: str = "reductive") -> Module:
    return m.with_scope(Scope(m.n, flavor, frozenset(theta)))


def extend_to_parabolic(v: Module) -> Module:
    """Let ``e_j`` (j outside theta) act by zero on a reductive module."""
    if v.scope.flavor != "reductive":
        raise ValueError("extend_to_parabolic expects a reductive module")
    out = v.with_scope(Scope(v.n, "parabolic", v.scope.theta), extend_zero=True)
    rpt = check_relations(out)
    if not rpt.ok:
        raise ArithmeticError(f"extension violates relations: {rpt.failures[:2]}")
    return out


def reductive_irreducible(n: int, theta: Iterable[int], mu: Sequence) -> tuple[Module, SMat, WeightVec]:
    """Irreducible U_k module with highest weight ``mu``, realized inside
    ``W(mu_hat)`` for the dominant ``mu_hat`` in the orbit of ``mu``.

    Returns the module, its embedding and ``mu_hat``.
    """
    mu = weight(mu)
    scope = reductive(n, theta)
    d = build_root_datum(n)
    mu_hat = dominant_in_weyl_orbit(d, mu)
    w = irreducible(n, mu_hat).with_scope(scope)
    for wt, p, u in highest_weight_vectors(w, scope):
        if wt == mu:
            gen = generate_submodule(w, u, scope, name=f"V({weight_str(mu)})")
            emb = SMat(w.dim, gen.module.dim, gen.vectors)
            return gen.module, emb, mu_hat
    raise ArithmeticError(f"no theta-highest vector of weight {weight_str(mu)} in W({weight_str(mu_hat)})")


def lowest_weight(m: Module, scope: Scope | None = None) -> WeightVec:
    """The weight killed by all scoped f's (unique for irreducible modules)."""
    scope = scope or m.scope
    fs = [m.gen_matrix(g) for g in scope.ef_generators() if g.kind == "F"]
    low = {m.weights[b] for b in range(m.dim) if all(not f.cols[b] for f in fs)}
    if len(low) != 1:
        raise ValueError("module has no unique lowest weight")
    return next(iter(low))


def cartan_product_hom(phi1: Intertwiner, phi2: Intertwiner, lam1: Sequence, lam2: Sequence) -> Intertwiner:
    """Nonzero map ``W(lam1 + lam2) -> V1 (x) V2`` induced by ``phi1 (x) phi2``.

    ``W(lam1 + lam2)`` is located inside ``W(lam1) (x) W(lam2)`` as the summand
    of the top weight; composing its inclusion with ``phi1 (x) phi2`` gives
    an intertwiner into ``V1 (x) V2``.
    """
    n = phi1.source.n
    lam1, lam2 = weight(lam1), weight(lam2)
    top = wadd(lam1, lam2)
    w1, w2 = irreducible(n, lam1), irreducible(n, lam2)
    amb = tensor(w1, w2)
    dec = decompose(amb)
    inc = next(s.inclusion for s in dec.summands if s.highest_weight == top)
    # graded tensor of maps: (A (x) B)(v (x) w) = (-1)^{[B][v]} A v (x) B w
    A, B = phi1.matrix, phi2.matrix
    d2 = B.nrows
    cols = []
    for i in range(w1.dim):
        for j in range(w2.dim):
            sgn = -ONE if (phi2.degree * w1.parity[i]) % 2 else ONE
            col: dict = {}
            for r, x in A.cols[i].items():
                for s, y in B.cols[j].items():
                    col[r * d2 + s] = x * y * sgn
            cols.append(col)
    ab = SMat(A.nrows * d2, amb.dim, cols)
    target = tensor(phi1.target, phi2.target)
    out = Intertwiner(ab @ inc, (phi1.degree + phi2.degree) % 2, irreducible(n, top), target, phi1.scope, phi1.shift)
    if out.matrix.is_zero():
        raise ArithmeticError("induced homomorphism vanishes")
    return out


def direct_sum(mods: Sequence[Module], scope: Scope | None = None, name: str = "") -> Module:
    """Block-diagonal direct sum (all summands share the given scope)."""
    if not mods:
        raise ValueError("direct sum of no modules")
    n = mods[0].n
    scope = scope or mods[0].scope
    dim = sum(m.dim for m in mods)
    gens = {}
    for g in scope.ef_generators():
        cols = []
        off = 0
        for m in mods:
            for c in m.gen_matrix(g).cols:
                cols.append({i + off: x for i, x in c.items()})
            off += m.dim
        gens[g] = SMat(dim, dim, cols)
    parity = [p for m in mods for p in m.parity]
    weights = [w for m in mods for w in m.weights]
    return Module(n, parity, weights, gens, scope, name=name or " + ".join(m.name for m in mods))
