"""U_q(osp(1|2n)) as a Z2-graded Hopf superalgebra on formal words.

Elements are finite linear combinations of words in the generators
``e_i, f_i, k_i^{+-p}``.  Words are never normal ordered: every identity is
checked by evaluating in concrete modules.

Hopf convention (``PRIMARY``)::

    D(k) = k (x) k      D(e) = e (x) k + 1 (x) e      D(f) = f (x) 1 + k^-1 (x) f
    S(k) = k^-1         S(e) = -e k^-1                S(f) = -k f
    S^-1(e) = -k^-1 e   S^-1(f) = -f k

with the graded product ``(a (x) b)(c (x) d) = (-1)^{[b][c]} ac (x) bd`` and
``S(ab) = (-1)^{[a][b]} S(b) S(a)``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Mapping, Sequence

from .linalg import SMat
from .report import Report
from .rootdata import build_root_datum, inner
from .scalars import ONE, ZERO, RatFunc, qpow


@dataclass(frozen=True, order=True)
class Gen:
    kind: str  # "E", "F" or "K"
    index: int
    power: int = 1

    def parity(self, n: int) -> int:
        return 1 if self.kind != "K" and self.index == n else 0

    def __str__(self) -> str:
        if self.kind == "K":
            return f"k{self.index}" if self.power == 1 else f"k{self.index}^{self.power}"
        return f"{self.kind.lower()}{self.index}"


def E(i: int) -> Gen:
    return Gen("E", i)


def F(i: int) -> Gen:
    return Gen("F", i)


def K(i: int, power: int = 1) -> Gen:
    return Gen("K", i, power)


Word = tuple  # tuple[Gen, ...]; () is the identity


def word(*gens: Gen) -> Word:
    return normalize_word(gens)


def normalize_word(gens: Iterable[Gen]) -> Word:
    """Merge adjacent powers of the same ``k_i`` and drop ``k_i^0``."""
    out: list[Gen] = []
    for g in gens:
        if g.kind == "K":
            if out and out[-1].kind == "K" and out[-1].index == g.index:
                p = out[-1].power + g.power
                out.pop()
                if p:
                    out.append(Gen("K", g.index, p))
                continue
            if g.power == 0:
                continue
        out.append(g)
    return tuple(out)


def word_parity(w: Word, n: int) -> int:
    return sum(g.parity(n) for g in w) % 2


def word_str(w: Word) -> str:
    return " ".join(map(str, w)) if w else "1"


_TOKEN = re.compile(r"^([efk])(\d+)(?:\^(-?\d+))?$")


def parse_word(text: str, n: int) -> Word:
    """Parse ``"e1 f1 k2^-1"``; ``"1"`` or ``""`` is the identity."""
    gens = []
    for tok in text.replace("*", " ").split():
        if tok == "1":
            continue
        m = _TOKEN.match(tok)
        if not m:
            raise ValueError(f"bad generator token {tok!r}")
        kind, idx, power = m.group(1).upper(), int(m.group(2)), m.group(3)
        if not 1 <= idx <= n:
            raise ValueError(f"generator index {idx} out of range for n={n}")
        if kind == "K":
            gens.append(Gen("K", idx, int(power) if power else 1))
        else:
            if power is not None:
                p = int(power)
                if p < 0:
                    raise ValueError("negative powers only allowed for k")
                gens.extend([Gen(kind, idx)] * p)
            else:
                gens.append(Gen(kind, idx))
    return normalize_word(gens)


# -- linear combinations ----------------------------------------------------
# WordSum: {Word: RatFunc}; TensorSum: {(Word, Word, ...): RatFunc}


def _acc(out: dict, key, c: RatFunc) -> None:
    cur = out.get(key)
    s = c if cur is None else cur + c
    if s.is_zero():
        out.pop(key, None)
    else:
        out[key] = s


def wsum(terms: Iterable[tuple]) -> dict:
    out: dict = {}
    for c, key in terms:
        _acc(out, key, c if isinstance(c, RatFunc) else RatFunc(c))
    return out


@dataclass(frozen=True)
class HopfConvention:
    """Coproduct/antipode rules on generators.  ``mirrored`` selects the
    documented fallback ``D(e) = e (x) 1 + k (x) e``."""

    name: str
    mirrored: bool = False

    def coproduct_gen(self, g: Gen) -> list[tuple[RatFunc, Word, Word]]:
        i = g.index
        if g.kind == "K":
            return [(ONE, (g,), (g,))]
        if not self.mirrored:
            if g.kind == "E":
                return [(ONE, (g,), (K(i),)), (ONE, (), (g,))]
            return [(ONE, (g,), ()), (ONE, (K(i, -1),), (g,))]
        if g.kind == "E":
            return [(ONE, (g,), ()), (ONE, (K(i),), (g,))]
        return [(ONE, (g,), (K(i, -1),)), (ONE, (), (g,))]

    def antipode_gen(self, g: Gen) -> tuple[RatFunc, Word]:
        i = g.index
        if g.kind == "K":
            return ONE, (Gen("K", i, -g.power),)
        if not self.mirrored:
            if g.kind == "E":
                return -ONE, (g, K(i, -1))
            return -ONE, (K(i), g)
        if g.kind == "E":
            return -ONE, (K(i, -1), g)
        return -ONE, (g, K(i))

    def antipode_inverse_gen(self, g: Gen) -> tuple[RatFunc, Word]:
        i = g.index
        if g.kind == "K":
            return ONE, (Gen("K", i, -g.power),)
        if not self.mirrored:
            if g.kind == "E":
                return -ONE, (K(i, -1), g)
            return -ONE, (g, K(i))
        if g.kind == "E":
            return -ONE, (g, K(i, -1))
        return -ONE, (K(i), g)


PRIMARY = HopfConvention("primary: D(e)=e(x)k+1(x)e, D(f)=f(x)1+k^-1(x)f")
MIRRORED = HopfConvention("mirrored: D(e)=e(x)1+k(x)e, D(f)=f(x)k^-1+1(x)f", mirrored=True)
ACTIVE = PRIMARY


def counit_gen(g: Gen) -> RatFunc:
    return ONE if g.kind == "K" else ZERO


def counit(w: Word) -> RatFunc:
    for g in w:
        if g.kind != "K":
            return ZERO
    return ONE


def coproduct(x: Gen | Word | Mapping, n: int, conv: HopfConvention = PRIMARY) -> dict:
    """Coproduct of a generator, a word or a word sum, as ``{(w1, w2): c}``."""
    if isinstance(x, Gen):
        return wsum((c, (normalize_word(a), normalize_word(b))) for c, a, b in conv.coproduct_gen(x))
    if isinstance(x, tuple):
        acc: dict = {((), ()): ONE}
        for g in x:
            acc = tensor_product(acc, coproduct(g, n, conv), n)
        return acc
    out: dict = {}
    for w, c in x.items():
        for key, d in coproduct(w, n, conv).items():
            _acc(out, key, c * d)
    return out


def tensor_product(a: Mapping, b: Mapping, n: int) -> dict:
    """Product in the graded tensor algebra U (x) ... (x) U (any number of legs)."""
    out: dict = {}
    for ka, ca in a.items():
        for kb, cb in b.items():
            sign = 0
            # moving the legs of b past the later legs of a
            for t in range(len(ka)):
                pb = word_parity(kb[t], n)
                if pb:
                    sign += pb * sum(word_parity(ka[s], n) for s in range(t + 1, len(ka)))
            key = tuple(normalize_word(x + y) for x, y in zip(ka, kb))
            c = ca * cb
            _acc(out, key, -c if sign % 2 else c)
    return out


def _anti(w: Word, n: int, rule: Callable[[Gen], tuple[RatFunc, Word]]) -> tuple[RatFunc, Word]:
    odd = sum(g.parity(n) for g in w)
    coef, out = ONE, []
    for g in reversed(w):
        c, img = rule(g)
        coef = coef * c
        out.extend(img)
    if (odd * (odd - 1) // 2) % 2:
        coef = -coef
    return coef, normalize_word(out)


def antipode(x: Gen | Word | Mapping, n: int, conv: HopfConvention = PRIMARY) -> dict:
    """S as a graded anti-homomorphism; returns a word sum."""
    if isinstance(x, Gen):
        x = (x,)
    if isinstance(x, tuple):
        c, w = _anti(x, n, conv.antipode_gen)
        return {w: c}
    out: dict = {}
    for w, c in x.items():
        d, img = _anti(w, n, conv.antipode_gen)
        _acc(out, img, c * d)
    return out


def antipode_inverse(x: Gen | Word | Mapping, n: int, conv: HopfConvention = PRIMARY) -> dict:
    if isinstance(x, Gen):
        x = (x,)
    if isinstance(x, tuple):
        c, w = _anti(x, n, conv.antipode_inverse_gen)
        return {w: c}
    out: dict = {}
    for w, c in x.items():
        d, img = _anti(w, n, conv.antipode_inverse_gen)
        _acc(out, img, c * d)
    return out


def multiply_legs(t: Mapping) -> dict:
    """m: U (x) U -> U (concatenation)."""
    out: dict = {}
    for key, c in t.items():
        _acc(out, normalize_word(sum(key, ())), c)
    return out


def map_leg(t: Mapping, leg: int, fn: Callable[[Word], Mapping]) -> dict:
    """Apply a linear map (word -> word sum or tensor sum) to one leg.

    If ``fn`` returns tensor keys the leg is expanded in place.  Maps used
    here are even, so no Koszul sign arises.
    """
    out: dict = {}
    for key, c in t.items():
        for img, d in fn(key[leg]).items():
            new = key[:leg] + (img if isinstance(img, tuple) and img and isinstance(img[0], tuple) else (img,)) + key[leg + 1 :]
            _acc(out, new, c * d)
    return out


def conjugate_by_k2rho(w: Word, n: int) -> dict:
    """``K_{2rho} w K_{2rho}^{-1}`` as the scalar multiple of ``w``."""
    from .rootdata import two_rho

    d = build_root_datum(n)
    tr = two_rho(d)
    exp = Fraction(0)
    for g in w:
        if g.kind == "E":
            exp += inner(tr, d.alpha(g.index))
        elif g.kind == "F":
            exp -= inner(tr, d.alpha(g.index))
    assert exp.denominator == 1
    return {w: qpow(int(exp))}


def k2rho_word(n: int, inverse: bool = False) -> Word:
    from .rootdata import k2rho_exponents

    cs = k2rho_exponents(build_root_datum(n))
    s = -1 if inverse else 1
    return normalize_word(Gen("K", j, s * c) for j, c in enumerate(cs, start=1))


def generators(n: int) -> list[Gen]:
    return [g for i in range(1, n + 1) for g in (E(i), F(i), K(i))]


# -- evaluation in modules ---------------------------------------------------


def eval_sum(module, x: Mapping) -> SMat:
    """Matrix of a word sum in ``module``."""
    d = module.dim
    acc = SMat.zeros(d, d)
    for w, c in x.items():
        acc = acc + module.word_matrix(w).scale(c)
    return acc


def eval_tensor(t: Mapping, modules: Sequence, n: int) -> SMat:
    """Matrix of a tensor sum acting on ``modules[0] (x) modules[1] (x) ...``
    (flat row-major basis) with Koszul signs
    ``(x1 (x) x2)(v1 (x) v2) = (-1)^{[x2][v1]} x1 v1 (x) x2 v2``."""
    dims = [m.dim for m in modules]
    total = 1
    for dd in dims:
        total *= dd
    strides = []
    s = 1
    for dd in reversed(dims):
        strides.append(s)
        s *= dd
    strides.reverse()
    cols: list[dict] = [dict() for _ in range(total)]
    from itertools import product

    for key, c in t.items():
        mats = [m.word_matrix(w) for m, w in zip(modules, key)]
        wpar = [word_parity(w, n) for w in key]
        for idx in product(*[range(dd) for dd in dims]):
            sign = 0
            par_before = 0
            for leg, a in enumerate(idx):
                sign += wpar[leg] * par_before
                par_before += modules[leg].parity[a]
            # expand the product of columns
            terms = [((), -c if sign % 2 else c)]
            for leg, a in enumerate(idx):
                col = mats[leg].cols[a]
                if not col:
                    terms = []
                    break
                terms = [(r + (i,), v * x) for r, v in terms for i, x in col.items()]
            if not terms:
                continue
            j = sum(a * st for a, st in zip(idx, strides))
            out = cols[j]
            for r, v in terms:
                i = sum(a * st for a, st in zip(r, strides))
                _acc(out, i, v)
    return SMat(total, total, cols)


# -- relation checking ---------------------------------------------------------


def _graded_bracket(A: SMat, B: SMat, pa: int, pb: int) -> SMat:
    ab, ba = A @ B, B @ A
    return ab + ba if (pa and pb) else ab - ba


def check_relations(rep, scope=None) -> Report:
    """Check the defining relations as exact matrix identities on ``rep``.

    Only relations among generators available in ``scope`` (default: the
    module's own scope) are tested.
    """
    n = rep.n
    d = build_root_datum(n)
    scope = scope or rep.scope
    avail = set(scope.ef_generators())
    rpt = Report(f"relations (n={n}, dim={rep.dim})")
    integral = rep.has_integral_weights()
    dim = rep.dim
    ident = SMat.identity(dim)
    qq = qpow(1) - qpow(-1)

    if integral:
        for i in range(1, n + 1):
            prod = rep.gen_matrix(K(i)) @ rep.gen_matrix(K(i, -1))
            rpt.expect(prod == ident, f"k{i} k{i}^-1 != 1")
            for j in range(1, n + 1):
                kk = rep.gen_matrix(K(i)) @ rep.gen_matrix(K(j))
                rpt.expect(kk == rep.gen_matrix(K(j)) @ rep.gen_matrix(K(i)), f"k{i} k{j} != k{j} k{i}")
    for g in sorted(avail):
        X = rep.gen_matrix(g)
        sign = 1 if g.kind == "E" else -1
        for i in range(1, n + 1):
            a = inner(d.alpha(i), d.alpha(g.index)) * sign
            if integral:
                lhs = rep.gen_matrix(K(i)) @ X
                rhs = (X @ rep.gen_matrix(K(i))).scale(qpow(int(a)))
                diff = lhs.first_difference(rhs)
                rpt.expect(diff is None, f"k{i} {g} != q^{a} {g} k{i} at entry {diff and diff[:2]}")
        # weight structure (also covers modules with non-integral weights)
        alpha = d.alpha(g.index)
        for j, col in enumerate(X.cols):
            for r in col:
                target = tuple(
                    x + sign * y for x, y in zip(rep.weights[j], alpha)
                )
                if rep.weights[r] != target:
                    rpt.fail(f"{g} entry ({r},{j}) breaks the weight grading")
        # parity
        pg = g.parity(n)
        for j, col in enumerate(X.cols):
            for r in col:
                if (rep.parity[r] - rep.parity[j] - pg) % 2:
                    rpt.fail(f"{g} entry ({r},{j}) has the wrong parity")

    for i in range(1, n + 1):
        for j in range(1, n + 1):
            if E(i) not in avail or F(j) not in avail:
                continue
            pe, pf = E(i).parity(n), F(j).parity(n)
            lhs = _graded_bracket(rep.gen_matrix(E(i)), rep.gen_matrix(F(j)), pe, pf)
            if i == j:
                rhs_diag = []
                for w in rep.weights:
                    a = d.pairing(i, w)
                    if a.denominator != 1:
                        rhs_diag = None
                        break
                    rhs_diag.append((qpow(int(a)) - qpow(-int(a))) / qq)
                if rhs_diag is None:
                    rpt.fail(f"[e{i}, f{i}}} cannot be evaluated on non-integral weights")
                    continue
                rhs = SMat.diagonal(rhs_diag)
            else:
                rhs = SMat.zeros(dim, dim)
            diff = lhs.first_difference(rhs)
            rpt.expect(diff is None, f"[e{i}, f{j}}} mismatch at entry {diff and diff[:2]}: {diff and diff[2]} vs {diff and diff[3]}")

    # Serre relations through Ad x(y) = x y - (-1)^{[x][y]} k_i y k_i^-1 x
    for kind in ("E", "F"):
        for i in range(1, n + 1):
            xi = Gen(kind, i)
            if xi not in avail:
                continue
            for j in range(1, n + 1):
                xj = Gen(kind, j)
                if i == j or xj not in avail:
                    continue
                N = 1 - d.cartan[i - 1][j - 1]
                X = rep.gen_matrix(xi)
                Y = rep.gen_matrix(xj)
                py = xj.parity(n)
                px = xi.parity(n)
                alpha_i = d.alpha(i)
                wt_y = d.alpha(j) if kind == "E" else tuple(-c for c in d.alpha(j))
                step = alpha_i if kind == "E" else tuple(-c for c in alpha_i)
                for _ in range(N):
                    # k_i Y k_i^-1 = q^{(alpha_i, wt(Y))} Y
                    a = inner(alpha_i, wt_y)
                    sgn = -1 if (px * py) % 2 else 1
                    Y = (X @ Y) - (Y @ X).scale(qpow(int(a)) * sgn)
                    py = (py + px) % 2
                    wt_y = tuple(u + v for u, v in zip(wt_y, step))
                diff = Y.first_difference(SMat.zeros(dim, dim))
                rpt.expect(
                    diff is None,
                    f"(Ad {kind.lower()}{i})^{N}({kind.lower()}{j}) != 0 at entry {diff and diff[:2]}",
                )
    return rpt


# -- Hopf axioms in representations ---------------------------------------------


def _compare(rpt: Report, what: str, lhs: SMat, rhs: SMat) -> None:
    diff = lhs.first_difference(rhs)
    rpt.expect(diff is None, f"{what}: mismatch at entry {diff and diff[:2]} ({diff and diff[2]} vs {diff and diff[3]})")


def hopf_test_elements(n: int) -> list[Word]:
    """Generators, inverse k's and all products of two generators."""
    gens = generators(n) + [K(i, -1) for i in range(1, n + 1)]
    out = [(g,) for g in gens]
    out += [normalize_word((a, b)) for a in generators(n) for b in generators(n)]
    return out


def check_hopf(n: int, conv: HopfConvention = PRIMARY) -> Report:
    """Counit, antipode and coassociativity axioms as matrix identities on
    the vector module and its tensor square."""
    from .repcore import tensor, vector_module

    lam = vector_module(n)
    lam2 = tensor(lam, lam, conv)
    rpt = Report(f"Hopf axioms n={n} [{conv.name}]")
    elems = hopf_test_elements(n)
    for mod, label in ((lam, "L"), (lam2, "L(x)L")):
        sub = Report(f"counit and antipode on {label}")
        ident = SMat.identity(mod.dim)
        for w in elems:
            x = mod.word_matrix(w)
            dw = coproduct(w, n, conv)
            eps_left = multiply_legs(map_leg(dw, 0, lambda a: {(): counit(a)} if not counit(a).is_zero() else {}))
            eps_right = multiply_legs(map_leg(dw, 1, lambda a: {(): counit(a)} if not counit(a).is_zero() else {}))
            _compare(sub, f"m(eps(x)id)D({word_str(w)})", eval_sum(mod, eps_left), x)
            _compare(sub, f"m(id(x)eps)D({word_str(w)})", eval_sum(mod, eps_right), x)
            s_left = multiply_legs(map_leg(dw, 0, lambda a: antipode(a, n, conv)))
            s_right = multiply_legs(map_leg(dw, 1, lambda a: antipode(a, n, conv)))
            unit = ident.scale(counit(w))
            _compare(sub, f"m(S(x)id)D({word_str(w)})", eval_sum(mod, s_left), unit)
            _compare(sub, f"m(id(x)S)D({word_str(w)})", eval_sum(mod, s_right), unit)
            sinv = antipode_inverse(antipode(w, n, conv), n, conv)
            _compare(sub, f"S^-1 S({word_str(w)})", eval_sum(mod, sinv), x)
            ssinv = antipode(antipode_inverse(w, n, conv), n, conv)
            _compare(sub, f"S S^-1({word_str(w)})", eval_sum(mod, ssinv), x)
        rpt.add(sub)
    for legs, label in (((lam, lam, lam), "L,L,L"), ((lam2, lam, lam), "L(x)L,L,L")):
        sub = Report(f"coassociativity on {label}")
        for w in elems[: 4 * n]:
            dw = coproduct(w, n, conv)
            left = map_leg(dw, 0, lambda a: coproduct(a, n, conv))
            right = map_leg(dw, 1, lambda a: coproduct(a, n, conv))
            _compare(sub, f"(D(x)id)D({word_str(w)}) vs (id(x)D)D", eval_tensor(left, legs, n), eval_tensor(right, legs, n))
        rpt.add(sub)
    rel = check_relations(lam2)
    rel.name = "coproduct respects the relations (relations on L(x)L)"
    rpt.add(rel)
    return rpt


def check_s_squared(module, conv: HopfConvention = PRIMARY) -> Report:
    """``S^2(g) = K_{2rho} g K_{2rho}^{-1}`` for every generator, as matrices."""
    n = module.n
    rpt = Report(f"S^2 = Ad K_2rho on {module.name or 'module'} (dim {module.dim})")
    kw, kinv = k2rho_word(n), k2rho_word(n, inverse=True)
    for g in generators(n) + [K(i, -1) for i in range(1, n + 1)]:
        if g.kind != "K" and not module.scope.has(g):
            continue
        lhs = eval_sum(module, antipode(antipode(g, n, conv), n, conv))
        rhs = module.word_matrix(kw) @ module.gen_matrix(g) @ module.word_matrix(kinv)
        _compare(rpt, f"S^2({g})", lhs, rhs)
    return rpt
