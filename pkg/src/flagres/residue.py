"""Residues at 0 and infinity of rational functions with binomial denominators.

The integrands handled here are a Laurent polynomial over a product of factors
``1 - m`` where the monomial ``m`` carries the active variable to the first
power or not at all.  Expanding each factor as a geometric series around 0
(and around infinity after ``v -> 1/w``) turns the residue into a finite
coefficient extraction.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .ring import LaurentPoly, Truncation, VarTable
from .symfun import h_k


@dataclass(frozen=True)
class BinomFactor:
    """The denominator factor ``1 - m`` for a nonconstant monomial ``m``."""

    m: LaurentPoly

    def __post_init__(self):
        if not self.m.is_monomial():
            raise ValueError(f"binomial factor needs a single-term monomial, got {self.m}")
        if self.m.is_constant():
            raise ValueError(f"factor 1 - ({self.m}) is constant and cannot be expanded")

    def exponent(self, var: str) -> int:
        (e, _), = self.m.terms.items()
        return e[self.m.table.index(var)]

    def value(self, assignment: Mapping[str, object]) -> Fraction:
        return 1 - self.m.evaluate(assignment)

    def sort_key(self) -> str:
        return str(self.m)

    def __str__(self) -> str:
        return f"(1 - {self.m})" if not str(self.m).startswith("-") else f"(1 + {str(self.m)[1:]})"


def _canon(factors: Iterable[BinomFactor]) -> tuple[BinomFactor, ...]:
    return tuple(sorted(factors, key=BinomFactor.sort_key))


@dataclass(frozen=True)
class FactoredRational:
    """``numerator / prod(1 - m)``; never reduced, denominators kept as a sorted multiset."""

    numerator: LaurentPoly
    denominator: tuple[BinomFactor, ...] = ()

    def __post_init__(self):
        table = self.numerator.table
        facs = (f if f.m.table == table else BinomFactor(f.m.embed(table)) for f in self.denominator)
        object.__setattr__(self, "denominator", _canon(facs))

    @property
    def table(self) -> VarTable:
        return self.numerator.table

    def __mul__(self, other):
        if isinstance(other, FactoredRational):
            return FactoredRational(
                self.numerator * other.numerator.embed(self.table),
                self.denominator + other.denominator,
            )
        return FactoredRational(self.numerator * other, self.denominator)

    __rmul__ = __mul__

    def __add__(self, other: "FactoredRational") -> "FactoredRational":
        if self.denominator != other.denominator:
            raise ValueError("can only add factored rationals with the same denominator")
        return FactoredRational(self.numerator + other.numerator, self.denominator)

    def scale(self, c) -> "FactoredRational":
        return FactoredRational(self.numerator.scale(c), self.denominator)

    def evaluate(self, assignment: Mapping[str, object]) -> Fraction:
        den = Fraction(1)
        for f in self.denominator:
            den *= f.value(assignment)
        if den == 0:
            raise ZeroDivisionError("denominator vanishes at this point")
        return self.numerator.evaluate(assignment) / den

    def expand(self, trunc: Truncation) -> LaurentPoly:
        """Expand every 1/(1 - m) as a geometric series, truncated by ``trunc``.

        Each ``m`` must have positive degree in the truncation variables,
        otherwise the series would not terminate.
        """
        idx = trunc.indices(self.table)
        result = trunc(self.numerator)
        for f in self.denominator:
            (e, _), = f.m.terms.items()
            if sum(e[i] for i in idx) <= 0:
                raise ValueError(f"factor {f} has no positive degree in {sorted(trunc.vars)}")
            series = self.table.one()
            power = self.table.one()
            while True:
                power = power.mul(f.m, trunc)
                if not power:
                    break
                series = series + power
            result = result.mul(series, trunc)
        return result

    def __str__(self) -> str:
        if not self.denominator:
            return str(self.numerator)
        return f"({self.numerator}) / ({'*'.join(str(f) for f in self.denominator)})"


def _geometric_coefficients(mus: Sequence[LaurentPoly], order: int, table: VarTable) -> list[LaurentPoly]:
    """Coefficients c_0..c_order of prod_j 1/(1 - mu_j t) as a power series in t.

    Dividing a series by (1 - mu t) is the recurrence c'_n = c_n + mu c'_{n-1}.
    """
    if order < 0:
        return []
    coeffs = [table.one()] + [table.zero()] * order
    for mu in mus:
        for n in range(1, order + 1):
            coeffs[n] = coeffs[n] + mu * coeffs[n - 1]
    return coeffs


def residue_sum(f: FactoredRational, var: str) -> FactoredRational:
    """Res_{var=0} f dvar + Res_{var=inf} f dvar.

    The residue at infinity is ``-Res_{w=0} f(1/w) w^-2 dw``.  Factors free of
    ``var`` pass through to the result's denominator.
    """
    table = f.table
    iv = table.index(var)
    active, passive = [], []
    for fac in f.denominator:
        k = fac.exponent(var)
        if k == 0:
            passive.append(fac)
        elif k == 1:
            active.append(fac)
        else:
            raise ValueError(f"factor {fac} has exponent {k} in {var}; only 0 or 1 supported")

    # m_j = mu_j * var
    shift = [0] * table.nvars
    shift[iv] = -1
    mus = [fac.m.shift(shift) for fac in active]
    s = len(mus)
    groups = f.numerator.collect(var)
    if not groups:
        return FactoredRational(table.zero(), tuple(passive))

    # at 0: coefficient of var^{-1-e} in prod 1/(1 - mu var)
    top0 = max(-1 - e for e in groups)
    series0 = _geometric_coefficients(mus, top0, table)
    res = table.zero()
    for e, part in groups.items():
        n = -1 - e
        if 0 <= n <= top0:
            res = res + part * series0[n]

    # at infinity: 1/(1 - mu/w) = -(w/mu) / (1 - w/mu)
    topinf = max(e + 1 - s for e in groups)
    if topinf >= 0:
        inv_mus = [mu.inverse_monomial() for mu in mus]
        series_inf = _geometric_coefficients(inv_mus, topinf, table)
        prefactor = table.one()
        for im in inv_mus:
            prefactor = prefactor * im
        prefactor = prefactor.scale(-((-1) ** s))
        acc = table.zero()
        for e, part in groups.items():
            n = e + 1 - s
            if 0 <= n <= topinf:
                acc = acc + part * series_inf[n]
        res = res + prefactor * acc
    return FactoredRational(res, tuple(passive))


def iterated_residue(f: FactoredRational, vars: Sequence[str]) -> FactoredRational:
    """Res_{v1} o Res_{v2} o ... o Res_{vn}: the last variable is taken first."""
    for v in reversed(list(vars)):
        f = residue_sum(f, v)
    return f


def _torus_table(r: int, table: VarTable | None) -> tuple[VarTable, list[str]]:
    xs = [f"x{i}" for i in range(1, r + 1)]
    if table is None:
        table = VarTable.build(torus=xs)
    return table, xs


def residue_k_closed(k: int, r: int, table: VarTable | None = None) -> LaurentPoly:
    """Closed form of Res_{u=0,inf} u^k / prod_a (1 - u/x_a) du/u."""
    if r < 1:
        raise ValueError("r must be positive")
    table, xs = _torus_table(r, table)
    x = table.vars(xs)
    if k <= 0:
        return h_k(-k, [v.inverse_monomial() for v in x], table)
    if k < r:
        return table.zero()
    prod = table.one()
    for v in x:
        prod = prod * v
    return (prod * h_k(k - r, x, table)).scale((-1) ** (r - 1))


class Phi:
    """The linear map u^k -> h_{-k}(1/x)/(x1...xr) (k <= 0), (-1)^(r-1) h_{k-r}(x) (k > 0).

    Images of powers of ``u`` are cached, so one instance should be reused for a
    batch of evaluations over the same table.
    """

    def __init__(self, table: VarTable, r: int, u: str = "u", xs: Sequence[str] | None = None,
                 at: Mapping[str, object] | None = None):
        self.table = table
        self.r = r
        self.u = u
        self.xs = list(xs) if xs is not None else [f"x{i}" for i in range(1, r + 1)]
        # optional exact values for the x's; images are then constants
        self.at = {x: table.const(at[x]) for x in self.xs} if at is not None else None
        self._x = table.vars(self.xs)
        self._xinv = [v.inverse_monomial() for v in self._x]
        prod = table.one()
        for v in self._x:
            prod = prod * v
        self._inv_prod = prod.inverse_monomial()
        self._cache: dict[int, LaurentPoly] = {}

    def power(self, k: int) -> LaurentPoly:
        if k not in self._cache:
            if k <= 0:
                img = h_k(-k, self._xinv, self.table) * self._inv_prod
            else:
                img = h_k(k - self.r, self._x, self.table).scale((-1) ** (self.r - 1))
            if self.at is not None:
                img = img.compose(self.at)
            self._cache[k] = img
        return self._cache[k]

    def __call__(self, p: LaurentPoly) -> LaurentPoly:
        p = p.embed(self.table)
        out = self.table.zero()
        for k, coeff in p.collect(self.u).items():
            out = out + coeff * self.power(k)
        return out


def phi(p: LaurentPoly, r: int, u: str = "u", xs: Sequence[str] | None = None) -> LaurentPoly:
    return Phi(p.table, r, u, xs)(p)
