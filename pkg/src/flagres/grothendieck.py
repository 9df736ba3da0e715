"""Refined shifted factorial Grothendieck polynomials and their determinantal formulas.

G_lambda(x | b, alpha, beta) is defined as a bialternant

    det(g_i(x_j) / x_j) / prod_{i<j} (x_i - x_j),

    g_i(u) = [u|b]^(lam_i + r - i) (1 - beta_1 u)...(1 - beta_{i-1} u) u
             / ((1 - alpha_1 u)...(1 - alpha_{lam_i} u)),

with the factorial bracket [u|b]^k = prod_{m<=k} (u + b_m + beta_0 u b_m).
For nonzero alpha the entries are power series; every alpha-dependent object
then lives in the ring truncated at total alpha-degree ``order``.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Mapping, Sequence

from .residue import BinomFactor, FactoredRational, Phi
from .ring import InexactDivision, LaurentPoly, Truncation, VarTable, as_fraction, determinant, divexact
from .symfun import Partition, h_k


def _param_seq(value, prefix: str, start: int, count: int):
    """Names and (name or value) entries for one parameter family.

    ``value`` is "sym", a single rational (broadcast), or a sequence of rationals.
    """
    idx = list(range(start, start + count))
    if isinstance(value, str) and value.strip().lower() == "sym":
        names = [f"{prefix}{i}" for i in idx]
        return names, list(names)
    if isinstance(value, (int, Fraction)) or (isinstance(value, str) and "," not in value):
        return [], [as_fraction(value)] * count
    if isinstance(value, str):
        value = [s for s in value.split(",") if s.strip()]
    values = [as_fraction(v) for v in value]
    if len(values) < count:
        raise ValueError(f"{prefix}: need {count} values, got {len(values)}")
    return [], values[:count]


@dataclass(frozen=True)
class GrothParams:
    r: int
    lam: Partition
    b: tuple
    alpha: tuple
    beta: tuple  # beta[0] is beta_0
    order: int
    table: VarTable

    @classmethod
    def make(cls, lam, r: int | None = None, b="sym", alpha=0, beta="sym", order: int = 4,
             extra_torus: Sequence[str] = ()) -> "GrothParams":
        """Build parameters; each family is "sym", a rational, or a list of rationals.

        Symbolic families get variables b1.., al1.., be0.. (parameter role).
        """
        lam = Partition(lam)
        if r is None:
            r = len(lam)
        if r < 1:
            raise ValueError("r must be positive")
        lam = lam.padded(r)
        if order < 0:
            raise ValueError("alpha order must be nonnegative")
        nb = lam[0] + r - 1
        bn, bv = _param_seq(b, "b", 1, nb)
        an, av = _param_seq(alpha, "al", 1, lam[0])
        en, ev = _param_seq(beta, "be", 0, r)
        if any(isinstance(v, Fraction) and v != 0 for v in av):
            raise ValueError("numeric alpha must be zero; use 'sym' for a deformation in alpha")
        xs = [f"x{i}" for i in range(1, r + 1)]
        table = VarTable.build(torus=xs + list(extra_torus), residue=["u"], parameter=bn + an + en)

        def lift(vals):
            return tuple(table.var(v) if isinstance(v, str) else table.const(v) for v in vals)

        return cls(r, lam, lift(bv), lift(av), lift(ev), order, table)

    @property
    def trunc(self) -> Truncation | None:
        names = {n for a in self.alpha for n in a.variables()}
        return Truncation(names, self.order) if names else None

    @property
    def xs(self) -> list[str]:
        return [f"x{i}" for i in range(1, self.r + 1)]

    def lenart_specialization(self) -> "GrothParams":
        """b = 0, alpha = 0, beta_1 = ... = beta_r = -beta_0 (beta_0 kept)."""
        t = self.table
        beta = (self.beta[0],) + tuple(-self.beta[0] for _ in self.beta[1:])
        zero = t.zero()
        return GrothParams(self.r, self.lam, tuple(zero for _ in self.b),
                           tuple(zero for _ in self.alpha), beta, self.order, t)


def bracket_power(k: int, params: GrothParams, at: LaurentPoly | None = None) -> LaurentPoly:
    """[at|b]^k = prod_{m=1..k} (at + b_m + beta_0 * at * b_m)."""
    if k < 0:
        raise ValueError("bracket power needs k >= 0")
    if k > len(params.b):
        raise ValueError(f"[u|b]^{k} needs {k} b-parameters, only {len(params.b)} available")
    t = params.table
    at = t.var("u") if at is None else at
    out = t.one()
    for m in range(k):
        bm = params.b[m]
        out = out * (at + bm + params.beta[0] * at * bm)
    return out


def build_g_i(params: GrothParams, i: int) -> FactoredRational:
    if not 1 <= i <= params.r:
        raise ValueError(f"row index {i} outside 1..{params.r}")
    t = params.table
    u = t.var("u")
    lam_i = params.lam[i - 1]
    num = bracket_power(lam_i + params.r - i, params)
    for m in range(1, i):
        num = num * (1 - params.beta[m] * u)
    num = num * u
    den = tuple(BinomFactor(a * u) for a in params.alpha[:lam_i] if a)
    return FactoredRational(num, den)


def _row_series(params: GrothParams, i: int) -> LaurentPoly:
    """g_i(u)/u expanded in the truncated ring (exact when alpha = 0)."""
    g = build_g_i(params, i)
    u_inv = params.table.var("u").inverse_monomial()
    body = FactoredRational(g.numerator * u_inv, g.denominator)
    trunc = params.trunc
    if trunc is None:
        if body.denominator:
            raise ValueError("nonzero alpha requires a truncation order")
        return body.numerator
    return body.expand(trunc)


def vandermonde_divide(p: LaurentPoly, xs: Sequence[str]) -> LaurentPoly:
    """p / prod_{i<j} (x_i - x_j), one exact linear factor at a time.

    A nonzero remainder at any step means the determinant was not antisymmetric.
    """
    t = p.table
    x = t.vars(xs)
    for i in range(len(x)):
        for j in range(i + 1, len(x)):
            try:
                p = divexact(p, x[i] - x[j])
            except InexactDivision:
                raise InexactDivision(
                    f"determinant not divisible by ({xs[i]} - {xs[j]}); antisymmetry broken"
                ) from None
    return p


def _x_point(params: GrothParams, at: Mapping[str, object]) -> dict[str, Fraction]:
    vals = {x: as_fraction(at[x]) for x in params.xs}
    if any(v == 0 for v in vals.values()) or len(set(vals.values())) != len(vals):
        raise ValueError("x values must be nonzero and pairwise distinct")
    return vals


def groth_direct(params: GrothParams, at: Mapping[str, object] | None = None) -> LaurentPoly:
    """G_lambda from its definition as a quotient by the Vandermonde product.

    With ``at`` the x's are replaced by the given rationals first and the
    result is a polynomial in the parameters only.
    """
    t = params.table
    trunc = params.trunc
    rows = [_row_series(params, i) for i in range(1, params.r + 1)]
    if at is None:
        matrix = [[row.substitute("u", t.var(x)) for x in params.xs] for row in rows]
        return vandermonde_divide(determinant(matrix, trunc), params.xs)
    vals = _x_point(params, at)
    vdm = Fraction(1)
    for i, xi in enumerate(params.xs):
        for xj in params.xs[i + 1:]:
            vdm *= vals[xi] - vals[xj]
    # the scalar Vandermonde goes into the first row, where entries are short
    matrix = [[row.substitute("u", vals[x]) for x in params.xs] for row in rows]
    matrix[0] = [p.scale(1 / vdm) for p in matrix[0]]
    return determinant(matrix, trunc)


def groth_determinant(params: GrothParams, at: Mapping[str, object] | None = None) -> LaurentPoly:
    """G_lambda as det(Phi(g_i(u) u^(j-1))), optionally at exact x values."""
    t = params.table
    phi = Phi(t, params.r, "u", params.xs, None if at is None else _x_point(params, at))
    u = t.var("u")
    matrix = []
    for i in range(1, params.r + 1):
        row = _row_series(params, i)
        matrix.append([phi(row * u ** j) for j in range(1, params.r + 1)])
    return determinant(matrix, params.trunc)


def lenart_det(lam, r: int, beta0, table: VarTable | None = None) -> LaurentPoly:
    """det( sum_m C(i-1, m) beta0^m h_{lam_i - i + j + m}(x) ) for b = alpha = 0, beta_i = -beta0.

    Row i carries the binomial weights and the index uses lam_i, the row's part;
    using the column's part lam_j instead gives a degenerate matrix.
    """
    lam = Partition(lam).padded(r)
    xs = [f"x{i}" for i in range(1, r + 1)]
    if table is None:
        params = ["be0"] if isinstance(beta0, str) else []
        table = VarTable.build(torus=xs, parameter=params)
    if isinstance(beta0, str):
        beta0 = table.var(beta0)
    elif not isinstance(beta0, LaurentPoly):
        beta0 = table.const(beta0)
    x = table.vars(xs)
    cache: dict[int, LaurentPoly] = {}

    def h(k):
        if k not in cache:
            cache[k] = h_k(k, x, table)
        return cache[k]

    matrix = []
    for i in range(1, r + 1):
        row = []
        for j in range(1, r + 1):
            entry = table.zero()
            for m in range(i):
                entry = entry + (beta0 ** m) * h(lam[i - 1] - i + j + m).scale(comb(i - 1, m))
            row.append(entry)
        matrix.append(row)
    return determinant(matrix)


# ---------------------------------------------------------------------------
# the general bialternant / Phi identity


def inverse_vandermonde(table: VarTable, xs: Sequence[str]) -> LaurentPoly:
    """prod_{i<j} (1/x_i - 1/x_j) as a Laurent polynomial."""
    x = table.vars(xs)
    out = table.one()
    for i in range(len(x)):
        for j in range(i + 1, len(x)):
            out = out * (x[i].inverse_monomial() - x[j].inverse_monomial())
    return out


def theorem_det_sides(g_list: Sequence[LaurentPoly], u: str = "u",
                      xs: Sequence[str] | None = None) -> tuple[LaurentPoly, LaurentPoly]:
    """Both sides of (-1)^(r(r-1)/2) f(x) / (x1...xr)^r = det(Phi(g_i(u) u^(j-1))).

    f = det(g_i(x_j)) / prod_{i<j}(1/x_i - 1/x_j).
    """
    r = len(g_list)
    if r == 0:
        raise ValueError("need at least one Laurent polynomial")
    t = g_list[0].table
    xs = list(xs) if xs is not None else [f"x{i}" for i in range(1, r + 1)]
    x = t.vars(xs)
    bialt = determinant([[g.substitute(u, xj) for xj in x] for g in g_list])
    try:
        f = divexact(bialt, inverse_vandermonde(t, xs))
    except InexactDivision:
        raise InexactDivision("bialternant not divisible by prod(1/x_i - 1/x_j)") from None
    prod = t.one()
    for v in x:
        prod = prod * v
    lhs = (f * prod.inverse_monomial() ** r).scale((-1) ** (r * (r - 1) // 2))
    phi = Phi(t, r, u, xs)
    uu = t.var(u)
    rhs = determinant([[phi(g * uu ** (j - 1)) for j in range(1, r + 1)] for g in g_list])
    return lhs, rhs


def theorem_det_check(g_list: Sequence[LaurentPoly], u: str = "u",
                      xs: Sequence[str] | None = None) -> bool:
    lhs, rhs = theorem_det_sides(g_list, u, xs)
    return lhs == rhs
