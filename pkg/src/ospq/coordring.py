"""The coordinate superalgebra T_q in its Peter-Weyl basis.

A basis element ``t^(lam)_ij`` is the matrix-coefficient function
``x -> t^(lam)(x)_ij`` of the canonical irreducible ``W(lam)`` built by
:func:`ospq.repcore.irreducible` (indices are 0-based).  Its parity is
``[i] + [j]``.  Products are computed structurally: the matrix
coefficients of ``W(lam) (x) W(mu)`` are re-expanded through the
decomposition of the tensor product.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Mapping, Sequence

from .linalg import SMat, solve_square, vadd_into
from .report import Report
from .rootdata import WeightVec, build_root_datum, inner, two_rho, weight, weight_str, zero_weight
from .repcore import (
    Module,
    decompose,
    dual_module,
    hom_space,
    irreducible,
    lowest_weight_and_dagger,
    tensor,
)
from .scalars import ONE, ZERO, RatFunc, qpow
from .uqalg import (
    ACTIVE,
    antipode_inverse,
    coproduct,
    k2rho_word,
    word_parity,
)

PWKey = tuple  # (lam: WeightVec, i: int, j: int)


def _acc(d: dict, k, x: RatFunc) -> None:
    cur = d.get(k)
    s = x if cur is None else cur + x
    if s.is_zero():
        d.pop(k, None)
    else:
        d[k] = s


def _parity(n: int, lam: WeightVec, i: int) -> int:
    return irreducible(n, lam).parity[i]


class PWElement:
    """Finite combination of Peter-Weyl basis elements."""

    __slots__ = ("n", "terms")

    def __init__(self, n: int, terms: Mapping | None = None):
        self.n = n
        self.terms: dict = {}
        for k, c in (terms or {}).items():
            if not c.is_zero():
                self.terms[k] = c

    @classmethod
    def basis(cls, n: int, lam: Sequence, i: int, j: int) -> "PWElement":
        lam = weight(lam)
        d = irreducible(n, lam).dim
        if not (0 <= i < d and 0 <= j < d):
            raise IndexError(f"index ({i},{j}) outside W({weight_str(lam)}) of dimension {d}")
        return cls(n, {(lam, i, j): ONE})

    @classmethod
    def one(cls, n: int) -> "PWElement":
        return cls(n, {(zero_weight(n), 0, 0): ONE})

    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other: "PWElement") -> "PWElement":
        out = dict(self.terms)
        for k, c in other.terms.items():
            _acc(out, k, c)
        return PWElement(self.n, out)

    def __sub__(self, other: "PWElement") -> "PWElement":
        return self + other.scale(-ONE)

    def __neg__(self) -> "PWElement":
        return self.scale(-ONE)

    def scale(self, c: RatFunc) -> "PWElement":
        if c.is_zero():
            return PWElement(self.n)
        return PWElement(self.n, {k: x * c for k, x in self.terms.items()})

    def __mul__(self, other: "PWElement") -> "PWElement":
        return multiply(self, other)

    def __eq__(self, other) -> bool:
        if not isinstance(other, PWElement):
            return NotImplemented
        return self.n == other.n and self.terms == other.terms

    def __hash__(self):
        return hash(tuple(sorted(self.terms.items(), key=lambda t: _key_order(t[0]))))

    def parity(self) -> int | None:
        ps = {(_parity(self.n, lam, i) + _parity(self.n, lam, j)) % 2 for lam, i, j in self.terms}
        if not ps:
            return 0
        return ps.pop() if len(ps) == 1 else None

    def blocks(self) -> set:
        return {lam for lam, _, _ in self.terms}

    def sorted_terms(self) -> list:
        return sorted(self.terms.items(), key=lambda t: _key_order(t[0]))

    def to_json(self) -> list:
        return [
            {"lambda": [str(x) for x in lam], "i": i, "j": j, "coeff": c.to_json()}
            for (lam, i, j), c in self.sorted_terms()
        ]

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for (lam, i, j), c in self.sorted_terms():
            parts.append(f"({c})*t[{weight_str(lam)}]({i},{j})")
        return " + ".join(parts)

    __repr__ = __str__


def _key_order(k: PWKey):
    lam, i, j = k
    return (sum(lam), tuple(-x for x in lam), i, j)


def pw_basis(n: int, lam: Sequence) -> list[PWElement]:
    lam = weight(lam)
    d = irreducible(n, lam).dim
    return [PWElement(n, {(lam, i, j): ONE}) for i in range(d) for j in range(d)]


# -- evaluation ------------------------------------------------------------------


def evaluate(f: PWElement, x: tuple) -> RatFunc:
    """``<f, x>`` for a word ``x``."""
    out = ZERO
    for (lam, i, j), c in f.terms.items():
        v = irreducible(f.n, lam).word_matrix(x).get(i, j)
        if not v.is_zero():
            out = out + c * v
    return out


def evaluate_sum(f: PWElement, xs: Mapping) -> RatFunc:
    out = ZERO
    for w, c in xs.items():
        out = out + c * evaluate(f, w)
    return out


# -- product ---------------------------------------------------------------------


@lru_cache(maxsize=None)
def _product_table(n: int, lam: WeightVec, mu: WeightVec):
    a, b = irreducible(n, lam), irreducible(n, mu)
    dec = decompose(tensor(a, b))
    pieces = []
    for s in dec.summands:
        pieces.append((s.highest_weight, s.parity, s.module.parity, s.inclusion.rows(), s.projection.cols))
    return b.dim, pieces


def tensor_coefficient(n: int, lam: WeightVec, mu: WeightVec, a: int, b: int) -> dict:
    """Matrix coefficient ``(a, b)`` of ``W(lam) (x) W(mu)`` in the PW basis."""
    _, pieces = _product_table(n, lam, mu)
    out: dict = {}
    for nu, d, par, inc_rows, proj_cols in pieces:
        row = inc_rows[a]
        if not row:
            continue
        col = proj_cols[b]
        if not col:
            continue
        for k, x in row.items():
            for l, y in col.items():
                c = x * y
                if d and (par[k] + par[l]) % 2:
                    c = -c
                _acc(out, (nu, k, l), c)
    return out


_BASIS_PRODUCTS: dict = {}


def _basis_product(n: int, f: PWKey, g: PWKey) -> dict:
    key = (n, f, g)
    hit = _BASIS_PRODUCTS.get(key)
    if hit is not None:
        return hit
    lam, i, j = f
    mu, r, s = g
    dmu = irreducible(n, mu).dim
    # <fg, a> = sum (-1)^{[g][a_(1)]} f(a_(1)) g(a_(2)), while the tensor
    # module carries (-1)^{[a_(2)][j]}; the two differ by ([r]+[s])[i].
    out = tensor_coefficient(n, lam, mu, i * dmu + r, j * dmu + s)
    sign = ((_parity(n, mu, r) + _parity(n, mu, s)) * _parity(n, lam, i)) % 2
    if sign:
        out = {k: -c for k, c in out.items()}
    _BASIS_PRODUCTS[key] = out
    return out


def multiply(f: PWElement, g: PWElement) -> PWElement:
    if f.n != g.n:
        raise ValueError("rank mismatch")
    out: dict = {}
    for kf, cf in f.terms.items():
        for kg, cg in g.terms.items():
            c = cf * cg
            for k, x in _basis_product(f.n, kf, kg).items():
                _acc(out, k, c * x)
    return PWElement(f.n, out)


def signed_pairing_product(f: PWElement, g: PWElement, x: tuple, conv=ACTIVE) -> RatFunc:
    """``sum (-1)^{[g][x_(1)]} f(x_(1)) g(x_(2))``: the oracle for ``<fg, x>``."""
    n = f.n
    pg = g.parity()
    if pg is None:
        raise ValueError("second factor must be homogeneous")
    out = ZERO
    for (a, b), c in coproduct(x, n, conv).items():
        fa = evaluate(f, a)
        if fa.is_zero():
            continue
        gb = evaluate(g, b)
        if gb.is_zero():
            continue
        v = c * fa * gb
        out = out + (-v if (pg * word_parity(a, n)) % 2 else v)
    return out


# -- coproduct, counit, antipode ---------------------------------------------------


def coproduct0(f: PWElement) -> dict:
    """``{(key1, key2): coeff}`` with
    ``D(t_ij) = sum_k (-1)^{([i]+[k])([k]+[j])} t_ik (x) t_kj``."""
    out: dict = {}
    n = f.n
    for (lam, i, j), c in f.terms.items():
        w = irreducible(n, lam)
        pi, pj = w.parity[i], w.parity[j]
        for k in range(w.dim):
            pk = w.parity[k]
            s = ((pi + pk) * (pk + pj)) % 2
            _acc(out, ((lam, i, k), (lam, k, j)), -c if s else c)
    return out


def pair_tensor(t: Mapping, x: tuple, y: tuple, n: int) -> RatFunc:
    """``<sum f1 (x) f2, x (x) y> = sum (-1)^{[f1][f2]} f1(x) f2(y)``."""
    out = ZERO
    for (k1, k2), c in t.items():
        a = evaluate(PWElement(n, {k1: ONE}), x)
        if a.is_zero():
            continue
        b = evaluate(PWElement(n, {k2: ONE}), y)
        if b.is_zero():
            continue
        p1 = (_parity(n, k1[0], k1[1]) + _parity(n, k1[0], k1[2])) % 2
        p2 = (_parity(n, k2[0], k2[1]) + _parity(n, k2[0], k2[2])) % 2
        v = c * a * b
        out = out + (-v if p1 * p2 else v)
    return out


def counit0(f: PWElement) -> RatFunc:
    """``<f, 1>``: the trace of the coefficient matrix blockwise."""
    out = ZERO
    for (lam, i, j), c in f.terms.items():
        if i == j:
            out = out + c
    return out


@dataclass(frozen=True)
class DualData:
    """Even-or-odd isomorphism ``psi: W(dagger) -> W(lam)*``."""

    dagger: WeightVec
    psi: SMat
    psi_inv: SMat
    degree: int


@lru_cache(maxsize=None)
def dual_data(n: int, lam: WeightVec) -> DualData:
    w = irreducible(n, lam)
    _, dag = lowest_weight_and_dagger(n, lam)
    wd = irreducible(n, dag)
    homs = hom_space(wd, dual_module(w))
    if len(homs) != 1:
        raise ArithmeticError(f"W({weight_str(lam)})* is not isomorphic to W({weight_str(dag)}) (found {len(homs)} maps)")
    h = homs[0]
    rows = solve_square(h.matrix.cols, list(range(w.dim)))
    inv = SMat(w.dim, w.dim, [dict() for _ in range(w.dim)])
    for k, row in enumerate(rows):
        for key, x in row.items():
            inv.cols[key][k] = x
    return DualData(dag, h.matrix, inv, h.degree)


_TILDE: dict = {}


def tilde(n: int, lam: Sequence, a: int, b: int) -> PWElement:
    """``t~^(lam)_ab``: matrix coefficient of the dual module ``W(lam)*``,
    ``x w~_b = sum_a t~_ab(x) w~_a``."""
    lam = weight(lam)
    key = (n, lam, a, b)
    hit = _TILDE.get(key)
    if hit is not None:
        return hit
    dd = dual_data(n, lam)
    par = irreducible(n, dd.dagger).parity
    out: dict = {}
    for k, x in dd.psi.row(a).items():
        for l, y in dd.psi_inv.cols[b].items():
            c = x * y
            if dd.degree and (par[k] + par[l]) % 2:
                c = -c
            _acc(out, (dd.dagger, k, l), c)
    res = PWElement(n, out)
    _TILDE[key] = res
    return res


def antipode0(f: PWElement) -> PWElement:
    """``<S0 f, x> = <f, S x>``; on the basis
    ``S0(t_ij) = (-1)^{([i]+[j])[i]} t~_ji``."""
    n = f.n
    out = PWElement(n)
    for (lam, i, j), c in f.terms.items():
        par = irreducible(n, lam).parity
        s = -c if ((par[i] + par[j]) * par[i]) % 2 else c
        out = out + tilde(n, lam, j, i).scale(s)
    return out


def _weight_of_index(n: int, lam: WeightVec, i: int) -> WeightVec:
    return irreducible(n, lam).weights[i]


def antipode0_squared_scalar(n: int, key: PWKey, power: int = 1) -> RatFunc:
    """``S0^2 t_ij = q^{(2rho, wt_i - wt_j)} t_ij``; ``power`` = -1 for the inverse."""
    lam, i, j = key
    tr = two_rho(build_root_datum(n))
    e = inner(tr, _weight_of_index(n, lam, i)) - inner(tr, _weight_of_index(n, lam, j))
    assert e.denominator == 1
    return qpow(int(e) * power)


def antipode0_inverse(f: PWElement) -> PWElement:
    """``S0^{-1} = S0 o S0^{-2}``, using the diagonal form of ``S0^2``."""
    n = f.n
    g = PWElement(n, {k: c * antipode0_squared_scalar(n, k, -1) for k, c in f.terms.items()})
    return antipode0(g)


# -- Haar functional and actions -----------------------------------------------------


def haar(f: PWElement) -> RatFunc:
    """Coefficient of the unit ``t^(0)``."""
    return f.terms.get((zero_weight(f.n), 0, 0), ZERO)


def circ(x: tuple, f: PWElement) -> PWElement:
    """Right translation: ``x o t_ij = sum_k t_ik t_kj(x)``."""
    n = f.n
    out: dict = {}
    for (lam, i, j), c in f.terms.items():
        col = irreducible(n, lam).word_matrix(x).cols[j]
        for k, v in col.items():
            _acc(out, (lam, i, k), c * v)
    return PWElement(n, out)


def circ_sum(xs: Mapping, f: PWElement) -> PWElement:
    out = PWElement(f.n)
    for w, c in xs.items():
        out = out + circ(w, f).scale(c)
    return out


def dot(x: tuple, f: PWElement, conv=ACTIVE) -> PWElement:
    """Left translation ``x . f = sum <f_(1), S^{-1} x> f_(2)``:
    ``x . t_ij = sum_k (-1)^{([i]+[k])([k]+[j])} t_ik(S^{-1} x) t_kj``."""
    n = f.n
    sx = antipode_inverse(x, n, conv)
    out: dict = {}
    for (lam, i, j), c in f.terms.items():
        w = irreducible(n, lam)
        row: dict = {}
        for wd, a in sx.items():
            vadd_into(row, w.word_matrix(wd).row(i), a)
        pi, pj = w.parity[i], w.parity[j]
        for k, v in row.items():
            pk = w.parity[k]
            s = ((pi + pk) * (pk + pj)) % 2
            cc = c * v
            _acc(out, (lam, k, j), -cc if s else cc)
    return PWElement(n, out)


def dot_sum(xs: Mapping, f: PWElement) -> PWElement:
    out = PWElement(f.n)
    for w, c in xs.items():
        out = out + dot(w, f).scale(c)
    return out


def superdimension(n: int, lam: Sequence) -> RatFunc:
    """Supertrace of ``K_2rho`` on ``W(lam)``."""
    lam = weight(lam)
    w = irreducible(n, lam)
    k = w.word_matrix(k2rho_word(n))
    out = ZERO
    for i in range(w.dim):
        v = k.get(i, i)
        out = out - v if w.parity[i] else out + v
    if out.is_zero():
        raise ArithmeticError(f"quantum superdimension of W({weight_str(lam)}) vanishes")
    return out


def classical_superdimension(n: int, lam: Sequence) -> int:
    w = irreducible(n, weight(lam))
    return sum(-1 if p else 1 for p in w.parity)


# -- comodule --------------------------------------------------------------------------


@dataclass
class Comodule:
    """Right coaction ``delta(w_j) = sum_i (-1)^{[i]([i]+[j])} w_i (x) c_ij``.

    ``c_ij`` are the matrix coefficients of the module expressed in the PW
    basis.  The sign makes ``sum (-1)^{[x][w_(1)]} w_(1) <w_(2), x> = x w``.
    """

    module: Module
    coeffs: dict  # (i, j) -> PWElement

    def coefficient(self, i: int, j: int) -> PWElement:
        return self.coeffs.get((i, j)) or PWElement(self.module.n)

    def delta(self, j: int) -> dict:
        """``delta(w_j)`` as ``{(i, pwkey): coeff}``."""
        out: dict = {}
        par = self.module.parity
        for i in range(self.module.dim):
            c = self.coeffs.get((i, j))
            if c is None:
                continue
            neg = (par[i] * (par[i] + par[j])) % 2
            for k, x in c.terms.items():
                _acc(out, (i, k), -x if neg else x)
        return out


def comodule_of(w: Module) -> Comodule:
    n = w.n
    dec = decompose(w)
    coeffs: dict = {}
    for s in dec.summands:
        rows = s.inclusion.rows()
        par = s.module.parity
        for a in range(w.dim):
            if not rows[a]:
                continue
            for b in range(w.dim):
                col = s.projection.cols[b]
                if not col:
                    continue
                acc = coeffs.setdefault((a, b), {})
                for k, x in rows[a].items():
                    for l, y in col.items():
                        c = x * y
                        if s.parity and (par[k] + par[l]) % 2:
                            c = -c
                        _acc(acc, (s.highest_weight, k, l), c)
    return Comodule(w, {k: PWElement(n, v) for k, v in coeffs.items() if v})


def evaluate_coaction(cm: Comodule, j: int, x: tuple) -> dict:
    """``delta(w_j)(x)`` in the evaluation sense ``sum (-1)^{[x][w_(1)]} w_(1) <w_(2), x>``."""
    n = cm.module.n
    px = word_parity(x, n)
    out: dict = {}
    for (i, k), c in cm.delta(j).items():
        v = evaluate(PWElement(n, {k: ONE}), x)
        if v.is_zero():
            continue
        v = c * v
        _acc(out, i, -v if (px * cm.module.parity[i]) % 2 else v)
    return out


# -- orthogonality --------------------------------------------------------------------


def orthogonality_check(n: int, lam: Sequence, mu: Sequence) -> Report:
    """Both Peter-Weyl orthogonality identities for all index quadruples.

    ``int t^lam_ij t~^mu_rs (-1)^{[j][r]+[i]+[j]} = d_ir d_lam,mu t^lam_sj(K)/SD``
    ``int t~^lam_ij t^mu_rs (-1)^{[j][r]}         = d_js d_lam,mu t~^lam_ir(K)/SD``
    with ``K = K_2rho``.  Left sides use only ``multiply`` and ``haar``.
    """
    lam, mu = weight(lam), weight(mu)
    rpt = Report(f"orthogonality lam=({weight_str(lam)}) mu=({weight_str(mu)})")
    wl, wm = irreducible(n, lam), irreducible(n, mu)
    pl, pm = wl.parity, wm.parity
    same = lam == mu
    kw = k2rho_word(n)
    sd = superdimension(n, lam) if same else None
    checked = 0
    for i in range(wl.dim):
        for j in range(wl.dim):
            t_ij = PWElement(n, {(lam, i, j): ONE})
            tt_ij = tilde(n, lam, i, j)
            for r in range(wm.dim):
                for s in range(wm.dim):
                    lhs1 = haar(multiply(t_ij, tilde(n, mu, r, s)))
                    if (pl[j] * pm[r] + pl[i] + pl[j]) % 2:
                        lhs1 = -lhs1
                    rhs1 = ZERO
                    if same and i == r:
                        rhs1 = evaluate(PWElement(n, {(lam, s, j): ONE}), kw) / sd
                    lhs2 = haar(multiply(tt_ij, PWElement(n, {(mu, r, s): ONE})))
                    if (pl[j] * pm[r]) % 2:
                        lhs2 = -lhs2
                    rhs2 = ZERO
                    if same and j == s:
                        rhs2 = evaluate(tilde(n, lam, i, r), kw) / sd
                    if lhs1 != rhs1:
                        rpt.fail(f"first identity at (i,j,r,s)=({i},{j},{r},{s}): {lhs1} vs {rhs1}")
                    if lhs2 != rhs2:
                        rpt.fail(f"second identity at (i,j,r,s)=({i},{j},{r},{s}): {lhs2} vs {rhs2}")
                    checked += 1
    rpt.data["index combinations"] = checked
    if same:
        rpt.data["SD_q"] = str(sd)
    return rpt


def haar_invariance_check(n: int, max_size: int) -> Report:
    """``(int (x) id) D(f) = (id (x) int) D(f) = int(f) 1`` on every PW basis
    element with ``|lam| <= max_size``, plus ``int 1 = 1``."""
    from .rootdata import dominant_weights

    rpt = Report(f"Haar invariance n={n} |lam|<={max_size}")
    one = PWElement.one(n)
    rpt.expect(haar(one) == ONE, "int 1 != 1")
    count = 0
    for lam in dominant_weights(n, max_size):
        for f in pw_basis(n, lam):
            want = one.scale(haar(f))
            left: dict = {}
            right: dict = {}
            for (k1, k2), c in coproduct0(f).items():
                h1 = haar(PWElement(n, {k1: ONE}))
                if not h1.is_zero():
                    _acc(left, k2, c * h1)
                h2 = haar(PWElement(n, {k2: ONE}))
                if not h2.is_zero():
                    _acc(right, k1, c * h2)
            rpt.expect(PWElement(n, left) == want, f"left invariance fails on {f}")
            rpt.expect(PWElement(n, right) == want, f"right invariance fails on {f}")
            count += 1
    rpt.data["basis elements"] = count
    return rpt


def parse_pw_expression(text: str, n: int) -> PWElement:
    """Parse ``"2*t(1,0;0,0) + t(0,0;0,0)"``: ``t(lambda;i,j)`` with
    optional rational coefficients."""
    import re

    out = PWElement(n)
    s = text.replace(" ", "")
    if not s:
        raise ValueError("empty expression")
    pos = 0
    pat = re.compile(r"([+-]?)(?:(\d+(?:/\d+)?)\*)?t\(([^;]*);(\d+),(\d+)\)")
    while pos < len(s):
        m = pat.match(s, pos)
        if not m:
            raise ValueError(f"cannot parse element near {s[pos:]!r}")
        sign, coeff, lam, i, j = m.groups()
        c = Fraction(coeff) if coeff else Fraction(1)
        if sign == "-":
            c = -c
        from .rootdata import parse_weight

        out = out + PWElement.basis(n, parse_weight(lam, n), int(i), int(j)).scale(RatFunc(c))
        pos = m.end()
    return out
