"""Push-forwards from Grassmann bundles Fl(E; d) -> B.

E is modelled by its characters x1..xr, V by formal exterior-power slots
Y1..Yd.  The K-theoretic push-forward is an iterated residue over u1..ud; the
fixed-point sum over d-subsets of {1..r} serves as an independent check.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import factorial
from typing import Mapping, Sequence

from .residue import BinomFactor, FactoredRational, iterated_residue
from .ring import LaurentPoly, VarTable, as_fraction
from .symfun import e_k, h_k, is_symmetric


def x_names(r: int) -> list[str]:
    return [f"x{i}" for i in range(1, r + 1)]


def u_names(d: int) -> list[str]:
    return [f"u{i}" for i in range(1, d + 1)]


def y_names(d: int) -> list[str]:
    return [f"Y{i}" for i in range(1, d + 1)]


def dual_names(d: int) -> list[str]:
    return [f"Yv{i}" for i in range(1, d + 1)]


def kt_table(r: int, d: int, parameters: Sequence[str] = ()) -> VarTable:
    """Standard table: x1..xr, u1..ud, optional parameters, slots Y1..Yd."""
    return VarTable.build(torus=x_names(r), residue=u_names(d), parameter=parameters, slot=y_names(d))


@dataclass(frozen=True)
class WedgePoly:
    """A polynomial in the slots Y1..Yd standing for the exterior powers of V."""

    poly: LaurentPoly
    d: int

    def __post_init__(self):
        if self.d < 0:
            raise ValueError("d must be nonnegative")
        allowed = set(y_names(self.d))
        for v in self.poly.variables():
            if self.poly.table.role(v) == "slot" and v not in allowed:
                raise ValueError(f"slot {v} out of range for d={self.d}")
            if self.poly.table.role(v) == "residue":
                raise ValueError(f"g must not involve residue variable {v}")


@dataclass(frozen=True)
class PushforwardSpec:
    r: int
    d: int
    g: WedgePoly

    def __post_init__(self):
        if self.r < 1:
            raise ValueError(f"rank r must be positive, got {self.r}")
        if not 0 <= self.d <= self.r:
            raise ValueError(f"need 0 <= d <= r, got d={self.d}, r={self.r}")
        if self.g.d != self.d:
            raise ValueError(f"g has {self.g.d} slots but d={self.d}")

    @classmethod
    def from_poly(cls, r: int, d: int, g: LaurentPoly) -> "PushforwardSpec":
        return cls(r, d, WedgePoly(g, d))

    @property
    def table(self) -> VarTable:
        return self.g.poly.table


def wedge_substitute(g: WedgePoly, lines: Sequence[LaurentPoly]) -> LaurentPoly:
    """g with Y_k replaced by e_k(lines), i.e. evaluated on a sum of line classes."""
    if len(lines) != g.d:
        raise ValueError(f"need {g.d} line classes, got {len(lines)}")
    table = g.poly.table
    lines = [ln.embed(table) for ln in lines]
    return g.poly.compose({f"Y{k}": e_k(k, lines, table) for k in range(1, g.d + 1)})


def _one_minus(a: LaurentPoly) -> LaurentPoly:
    return 1 - a


def _integrand_table(spec: PushforwardSpec) -> VarTable:
    return spec.table.extend(torus=x_names(spec.r), residue=u_names(spec.d))


def psi_d_integrand(spec: PushforwardSpec) -> FactoredRational:
    """g(u1+...+ud) prod_{i!=j}(1 - ui/uj) / (d! prod_{i,a}(1 - ui/xa))."""
    table = _integrand_table(spec)
    g = WedgePoly(spec.g.poly.embed(table), spec.d)
    u = table.vars(u_names(spec.d))
    x = table.vars(x_names(spec.r))
    num = wedge_substitute(g, u)
    for i in range(spec.d):
        for j in range(spec.d):
            if i != j:
                num = num * _one_minus(u[i] * u[j].inverse_monomial())
    num = num.scale(Fraction(1, factorial(spec.d)))
    den = [BinomFactor(ui * xa.inverse_monomial()) for ui in u for xa in x]
    return FactoredRational(num, tuple(den))


class IntegrandShapeError(RuntimeError):
    """The residue computation left residue variables or denominators behind."""


def pushforward_K(spec: PushforwardSpec) -> LaurentPoly:
    """Equivariant Euler characteristic of g(wedge V) on Fl(E; d), as a Laurent polynomial in x."""
    f = psi_d_integrand(spec)
    table = f.table
    us = u_names(spec.d)
    du = table.one()
    for name in us:
        du = du * table.var(name).inverse_monomial()
    res = iterated_residue(f * du, us)
    if res.denominator:
        raise IntegrandShapeError(f"denominator factors survived: {res}")
    out = res.numerator
    left = out.variables() & set(us)
    if left:
        raise IntegrandShapeError(f"residue variables {sorted(left)} survived")
    # symmetric coefficients in g force a symmetric result
    xs = [x for x in x_names(spec.r) if x in spec.table]
    if is_symmetric(spec.g.poly, xs) and not is_symmetric(out, x_names(spec.r)):
        raise IntegrandShapeError(f"push-forward {out} is not symmetric in x")
    return out


# ---------------------------------------------------------------------------
# wall-crossing recursion


@dataclass(frozen=True)
class WallCrossState:
    """psi_ell as a polynomial in the slots of the rank-(d - ell) bundle V.

    ``Y1..`` stand for the exterior powers of V and ``Yv1..`` for those of its
    dual; the numerator of ``integrand`` lives over both slot families and the
    residue variables already introduced.
    """

    r: int
    d: int
    ell: int
    integrand: FactoredRational

    @property
    def rank(self) -> int:
        return self.d - self.ell


def wallcross_start(spec: PushforwardSpec) -> WallCrossState:
    table = _integrand_table(spec).extend(slot=dual_names(spec.d))
    return WallCrossState(spec.r, spec.d, 0, FactoredRational(spec.g.poly.embed(table)))


def wallcross_step(state: WallCrossState, next_u: str | None = None) -> WallCrossState:
    """One wall-crossing: V = V' + u, times wedge(u V'^ + u^-1 V') / (rank V * wedge(u E^)).

    ``next_u`` defaults to u_{ell+1}.
    """
    if state.ell >= state.d:
        raise ValueError(f"no wall-crossing left: ell={state.ell} already equals d={state.d}")
    n = state.rank
    f = state.integrand
    table = f.table
    u = table.var(next_u or f"u{state.ell + 1}")
    uinv = u.inverse_monomial()
    one = table.one()

    def slot(name: str, k: int) -> LaurentPoly:
        # exterior powers of the rank-(n-1) bundle V'
        if k == 0:
            return one
        if k > n - 1:
            return table.zero()
        return table.var(f"{name}{k}")

    mapping = {}
    for k in range(1, n + 1):
        mapping[f"Y{k}"] = slot("Y", k) + u * slot("Y", k - 1)
        mapping[f"Yv{k}"] = slot("Yv", k) + uinv * slot("Yv", k - 1)
    num = f.numerator.compose(mapping)

    # wedge_{-1}(u V'^) * wedge_{-1}(u^-1 V')
    dual_part = sum(((-u) ** a * slot("Yv", a) for a in range(n)), table.zero())
    prim_part = sum(((-uinv) ** a * slot("Y", a) for a in range(n)), table.zero())
    num = (num * dual_part * prim_part).scale(Fraction(1, n))

    den = list(f.denominator)
    den += [BinomFactor(u * table.var(x).inverse_monomial()) for x in x_names(state.r)]
    return WallCrossState(state.r, state.d, state.ell + 1, FactoredRational(num, tuple(den)))


def wallcross_unroll(spec: PushforwardSpec) -> FactoredRational:
    """psi_d obtained by d wall-crossing steps from psi_0 = g."""
    state = wallcross_start(spec)
    while state.ell < state.d:
        state = wallcross_step(state)
    return state.integrand


def pushforward_K_from(integrand: FactoredRational, d: int) -> LaurentPoly:
    """Iterated residue of ``integrand * du1...dud/(u1...ud)`` (u_d innermost)."""
    table = integrand.table
    us = u_names(d)
    du = table.one()
    for name in us:
        du = du * table.var(name).inverse_monomial()
    res = iterated_residue(integrand * du, us)
    if res.denominator:
        raise IntegrandShapeError(f"denominator factors survived: {res}")
    return res.numerator


# ---------------------------------------------------------------------------
# fixed-point localization oracle


def fixed_point_oracle_K(spec: PushforwardSpec, assignment: Mapping[str, object]) -> Fraction:
    """Sum over fixed points S (d-subsets) of g(e(x_S)) / prod_{i in S, j not in S}(1 - x_i/x_j).

    The denominator is the K-theoretic Euler class of the dual tangent space
    Hom(V, W/V)^ at S; this is the orientation under which the sum agrees with
    the residue formula on P^1 for g = 1, Y1, Y1^2.
    """
    r, d = spec.r, spec.d
    xs = x_names(r)
    vals = [as_fraction(assignment[x]) for x in xs]
    if any(v == 0 for v in vals):
        raise ValueError("fixed-point oracle needs nonzero x values")
    if len(set(vals)) != len(vals):
        raise ValueError("fixed-point oracle needs pairwise distinct x values")
    point = {k: as_fraction(v) for k, v in assignment.items()}
    ys = y_names(d)
    total = Fraction(0)
    for S in combinations(range(r), d):
        chosen = [vals[i] for i in S]
        esym = _esym_numbers(chosen)
        at = dict(point)
        for k, name in enumerate(ys, start=1):
            at[name] = esym[k]
        num = spec.g.poly.evaluate(at)
        den = Fraction(1)
        for i in S:
            for j in range(r):
                if j not in S:
                    den *= 1 - vals[i] / vals[j]
        total += num / den
    return total


def _esym_numbers(values: Sequence[Fraction]) -> list[Fraction]:
    # coefficients of prod (1 + v t)
    coeffs = [Fraction(1)] + [Fraction(0)] * len(values)
    for v in values:
        for k in range(len(values), 0, -1):
            coeffs[k] += v * coeffs[k - 1]
    return coeffs


# ---------------------------------------------------------------------------
# cohomology


def cohom_table(r: int, d: int) -> VarTable:
    return VarTable.build(cohomology=[f"z{i}" for i in range(1, d + 1)] + [f"a{i}" for i in range(1, r + 1)])


def cohom_residue_closed(k: int, r: int, table: VarTable) -> LaurentPoly:
    """Res_{z=inf} z^k dz / prod_a(-z + a_a) = (-1)^(r-1) h_{k-r+1}(a), zero for k < r-1.

    Indexing h by k+r-1 with threshold k >= r instead is wrong: the series
    expansion at infinity (:func:`cohom_series_oracle`) gives -1 at r=2, k=1.
    """
    a = table.vars([f"a{i}" for i in range(1, r + 1)])
    return h_k(k - r + 1, a, table).scale((-1) ** (r - 1))


def _cohom_residue(p: LaurentPoly, var: str, r: int, residue_of) -> LaurentPoly:
    out = p.table.zero()
    for k, coeff in p.collect(var).items():
        if k < 0:
            raise ValueError(f"negative power of {var} in a cohomological integrand")
        out = out + coeff * residue_of(k)
    return out


def _cohom_numerator(f_poly: LaurentPoly, r: int, d: int) -> tuple[LaurentPoly, list[str]]:
    table = cohom_table(r, d)
    f = f_poly.embed(table)
    zs = [f"z{i}" for i in range(1, d + 1)]
    z = table.vars(zs)
    num = f
    for i in range(d):
        for j in range(d):
            if i != j:
                num = num * (z[i] - z[j])
    return num.scale(Fraction(1, factorial(d))), zs


def pushforward_cohom(f_poly: LaurentPoly, r: int, d: int) -> LaurentPoly:
    """Iterated Res_{z=inf} of f prod_{i!=j}(zi - zj) / (d! prod_i prod_a (-zi + a_a)).

    Result is a polynomial in a1..ar (z_d taken first).
    """
    if not 0 <= d <= r:
        raise ValueError(f"need 0 <= d <= r, got d={d}, r={r}")
    num, zs = _cohom_numerator(f_poly, r, d)
    cache: dict[int, LaurentPoly] = {}

    def res(k):
        if k not in cache:
            cache[k] = cohom_residue_closed(k, r, num.table)
        return cache[k]

    for z in reversed(zs):
        num = _cohom_residue(num, z, r, res)
    return num


def cohom_series_oracle(k: int, r: int, table: VarTable | None = None) -> LaurentPoly:
    """Res_{z=inf} z^k dz / prod_a(-z + a_a) read off a Laurent expansion at infinity.

    With z = 1/w:  z^k / prod(-z + a) = (-1)^r w^(r-k) prod 1/(1 - a w), and
    Res_{z=inf} F dz = -[w^-1] F(1/w) w^-2.  The geometric series are multiplied
    out term by term up to the one order that matters.
    """
    if k < 0:
        raise ValueError("k must be nonnegative")
    if table is None:
        table = cohom_table(r, 0)
    a = table.vars([f"a{i}" for i in range(1, r + 1)])
    need = k - r + 1  # power of w needed from the series
    if need < 0:
        return table.zero()
    series = [table.one()] + [table.zero()] * need
    for ai in a:
        geo = [ai ** n for n in range(need + 1)]
        series = [
            sum((series[m] * geo[n - m] for m in range(n + 1)), table.zero())
            for n in range(need + 1)
        ]
    return series[need].scale(-((-1) ** r))


def pushforward_cohom_series(f_poly: LaurentPoly, r: int, d: int) -> LaurentPoly:
    """Same iterated residue as :func:`pushforward_cohom`, using the series oracle per variable."""
    num, zs = _cohom_numerator(f_poly, r, d)
    for z in reversed(zs):
        num = _cohom_residue(num, z, r, lambda k: cohom_series_oracle(k, r, num.table))
    return num
