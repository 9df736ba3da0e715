"""Identity suites shared by the command line and the test-suite.

Every suite is a generator of :class:`Check` objects, each holding the inputs
of one case and the two sides that must agree.  :func:`run_suites` stops at
the first disagreement and returns a JSON-ready counterexample.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations_with_replacement, permutations
from typing import Callable, Iterable, Iterator, Sequence

from .grothendieck import GrothParams, groth_determinant, groth_direct, lenart_det, theorem_det_sides
from .pushforward import (
    PushforwardSpec,
    cohom_residue_closed,
    cohom_series_oracle,
    cohom_table,
    fixed_point_oracle_K,
    kt_table,
    psi_d_integrand,
    pushforward_cohom,
    pushforward_cohom_series,
    pushforward_K,
    pushforward_K_from,
    u_names,
    wallcross_unroll,
    x_names,
    y_names,
)
from .residue import BinomFactor, FactoredRational, Phi, iterated_residue, residue_k_closed, residue_sum
from .ring import LaurentPoly, VarTable
from .symfun import Partition, e_k, partitions_in_box, schur


@dataclass
class Check:
    suite: str
    case: dict
    lhs: object
    rhs: object
    point: dict | None = None
    note: str = ""

    @property
    def ok(self) -> bool:
        return self.lhs == self.rhs

    def dump(self) -> dict:
        def enc(v):
            if isinstance(v, LaurentPoly):
                return {"text": str(v), "json": v.to_json()}
            if isinstance(v, FactoredRational):
                return {"text": str(v)}
            if isinstance(v, Fraction):
                return str(v)
            return v

        out = {"suite": self.suite, "case": self.case, "lhs": enc(self.lhs), "rhs": enc(self.rhs)}
        if self.point is not None:
            out["point"] = {k: str(v) for k, v in self.point.items()}
        if self.note:
            out["note"] = self.note
        return out


def random_point(rng: random.Random, names: Sequence[str]) -> dict[str, Fraction]:
    """Pairwise distinct nonzero rationals with small numerators and denominators."""
    seen: set[Fraction] = set()
    point = {}
    for name in names:
        while True:
            v = Fraction(rng.choice([-1, 1]) * rng.randint(1, 9), rng.randint(1, 9))
            if v not in seen:
                break
        seen.add(v)
        point[name] = v
    return point


def y_monomials(d: int, max_degree: int) -> list[dict[str, int]]:
    """Exponent maps of all monomials in Y1..Yd of total degree <= max_degree."""
    out = []
    names = y_names(d)
    for deg in range(max_degree + 1):
        for combo in combinations_with_replacement(names, deg):
            exps: dict[str, int] = {}
            for n in combo:
                exps[n] = exps.get(n, 0) + 1
            out.append(exps)
    return out


def _mono_text(exps: dict[str, int]) -> str:
    return "*".join(f"{n}^{k}" if k > 1 else n for n, k in sorted(exps.items())) or "1"


# ---------------------------------------------------------------------------
# suites


def residue_table(rs: Iterable[int] = range(1, 5), ks: Iterable[int] = range(-6, 7)) -> Iterator[Check]:
    """Residue engine and Phi against the three-branch closed form."""
    ks = list(ks)
    for r in rs:
        xs = x_names(r)
        table = VarTable.build(torus=xs, residue=["u"])
        u = table.var("u")
        den = tuple(BinomFactor(u * x.inverse_monomial()) for x in table.vars(xs))
        phi = Phi(table, r)
        prod = table.one()
        for x in table.vars(xs):
            prod = prod * x
        for k in ks:
            closed = residue_k_closed(k, r, table)
            res = residue_sum(FactoredRational(u ** (k - 1), den), "u")
            yield Check("residue-table", {"k": k, "r": r}, res.numerator, closed)
            yield Check("residue-table", {"k": k, "r": r, "map": "phi"}, prod * phi(u ** k), closed)


def pushforward_oracle(rs: Iterable[int] = range(1, 5), max_degree: int = 3, points: int = 20,
                       seed: int = 0, ds: Iterable[int] | None = None) -> Iterator[Check]:
    """Residue push-forward against the fixed-point sum at seeded random points."""
    rng = random.Random(seed)
    ds = None if ds is None else list(ds)
    for r in rs:
        for d in range(r + 1):
            if ds is not None and d not in ds:
                continue
            table = kt_table(r, d)
            for exps in y_monomials(d, max_degree):
                spec = PushforwardSpec.from_poly(r, d, table.monomial(exps))
                result = pushforward_K(spec)
                case = {"r": r, "d": d, "g": _mono_text(exps)}
                for _ in range(points):
                    pt = random_point(rng, x_names(r))
                    yield Check("pushforward-oracle", case, result.evaluate(pt),
                                fixed_point_oracle_K(spec, pt), point=pt)


def _recursion_gs(d: int) -> list[dict[str, int]]:
    return y_monomials(d, 2)


def recursion(rs: Iterable[int] = range(1, 4), ds: Iterable[int] | None = None) -> Iterator[Check]:
    """Unrolled wall-crossing equals the closed integrand and gives the same push-forward."""
    ds = None if ds is None else list(ds)
    for r in rs:
        for d in range(r + 1):
            if d > 3 or (ds is not None and d not in ds):
                continue
            table = kt_table(r, d)
            for exps in _recursion_gs(d):
                spec = PushforwardSpec.from_poly(r, d, table.monomial(exps))
                case = {"r": r, "d": d, "g": _mono_text(exps)}
                closed = psi_d_integrand(spec)
                unrolled = wallcross_unroll(spec)
                yield Check("recursion", dict(case, side="integrand numerator"),
                            unrolled.numerator, closed.numerator)
                yield Check("recursion", dict(case, side="integrand denominator"),
                            [str(f) for f in unrolled.denominator], [str(f) for f in closed.denominator])
                yield Check("recursion", dict(case, side="push-forward"),
                            pushforward_K_from(unrolled, d), pushforward_K(spec))


def _random_wedge(rng: random.Random, table: VarTable, d: int, xs: Sequence[str]) -> LaurentPoly:
    """A few Y-monomials of degree <= 3 with small rational (and x-monomial) coefficients."""
    out = table.zero()
    monos = y_monomials(d, 3)
    for _ in range(3):
        exps = dict(rng.choice(monos))
        if xs and rng.random() < 0.5:
            x = rng.choice(list(xs))
            exps[x] = exps.get(x, 0) + rng.randint(-1, 1)
        out = out + table.monomial(exps, Fraction(rng.randint(-5, 5), rng.randint(1, 3)))
    return out


def boundary(rs: Iterable[int] = range(1, 5), samples: int = 3, seed: int = 0) -> Iterator[Check]:
    """d = r gives g(e(x)); d = 0 gives g itself."""
    rng = random.Random(seed)
    for r in rs:
        xs = x_names(r)
        full = kt_table(r, r)
        x = full.vars(xs)
        esym = {f"Y{k}": e_k(k, x, full) for k in range(1, r + 1)}
        for i in range(samples):
            g = _random_wedge(rng, full, r, xs)
            yield Check("boundary", {"r": r, "d": r, "g": str(g)},
                        pushforward_K(PushforwardSpec.from_poly(r, r, g)), g.compose(esym))
            empty = kt_table(r, 0)
            c = _random_wedge(rng, empty, 0, xs)
            yield Check("boundary", {"r": r, "d": 0, "g": str(c)},
                        pushforward_K(PushforwardSpec.from_poly(r, 0, c)), c)


def random_laurent_family(rng: random.Random, table: VarTable, r: int, lo: int = -3, hi: int = 3,
                          terms: int = 3) -> list[LaurentPoly]:
    out = []
    for _ in range(r):
        g = table.zero()
        while not g:
            for _ in range(terms):
                g = g + table.monomial({"u": rng.randint(lo, hi)}, Fraction(rng.randint(-4, 4), rng.randint(1, 3)))
        out.append(g)
    return out


def theorem_det(families: int = 50, rs: Sequence[int] = (1, 2, 3), seed: int = 0) -> Iterator[Check]:
    """The general bialternant / Phi identity for random Laurent families."""
    rng = random.Random(seed)
    for n in range(families):
        r = rs[n % len(rs)]
        table = VarTable.build(torus=x_names(r), residue=["u"])
        g_list = random_laurent_family(rng, table, r)
        lhs, rhs = theorem_det_sides(g_list)
        yield Check("theorem-det", {"r": r, "g": [str(g) for g in g_list]}, lhs, rhs)


def groth_symbolic_x(r: int, lam: Sequence[int], alpha_symbolic: bool) -> bool:
    """Whether the x's stay symbolic; the largest alpha-deformed cases use exact points instead."""
    return not (alpha_symbolic and r >= 3 and max(lam, default=0) >= 2)


def groth_det(rs: Iterable[int] = range(1, 4), lam_max: int = 3, lams: Sequence[Sequence[int]] | None = None,
              alpha_modes: Sequence = (0, "sym"), b="sym", beta="sym", order: int = 4, seed: int = 0,
              points: int = 1) -> Iterator[Check]:
    """groth_determinant = groth_direct, exactly at alpha = 0 and modulo alpha-degree ``order`` otherwise.

    b and beta stay symbolic.  When :func:`groth_symbolic_x` says so, the x's are
    set to ``points`` seeded random rationals and both sides are compared as
    polynomials in the parameters at each point.
    """
    rng = random.Random(seed)
    for r in rs:
        cases = [Partition(l).padded(r) for l in lams] if lams is not None else partitions_in_box(r, lam_max)
        for lam in cases:
            for alpha in alpha_modes:
                params = GrothParams.make(lam, r, b=b, alpha=alpha, beta=beta, order=order)
                alpha_sym = bool(params.trunc)
                case = {"r": r, "lambda": str(lam), "alpha": str(alpha), "b": str(b), "beta": str(beta),
                        "alpha_order": order}
                if groth_symbolic_x(r, lam, alpha_sym):
                    yield Check("groth-det", case, groth_determinant(params), groth_direct(params))
                else:
                    for _ in range(points):
                        pt = random_point(rng, params.xs)
                        yield Check("groth-det", case, groth_determinant(params, pt),
                                    groth_direct(params, pt), point=pt)


def specializations(rs: Iterable[int] = range(1, 4), lam_max: int = 3,
                    lams: Sequence[Sequence[int]] | None = None) -> Iterator[Check]:
    """All parameters zero gives Schur; b = alpha = 0, beta_i = -beta_0 gives the binomial determinant."""
    for r in rs:
        cases = [Partition(l).padded(r) for l in lams] if lams is not None else partitions_in_box(r, lam_max)
        for lam in cases:
            zero = GrothParams.make(lam, r, b=0, alpha=0, beta=0)
            s = schur(lam, zero.table.vars(zero.xs), zero.table)
            yield Check("specializations", {"r": r, "lambda": str(lam), "to": "schur"}, groth_direct(zero), s)
            yield Check("specializations", {"r": r, "lambda": str(lam), "to": "schur", "via": "phi"},
                        groth_determinant(zero), s)
            lp = GrothParams.make(lam, r, b=0, alpha=0, beta="sym").lenart_specialization()
            yield Check("specializations", {"r": r, "lambda": str(lam), "to": "binomial determinant"},
                        groth_direct(lp), lenart_det(lam, r, "be0"))


def cohom(rs: Iterable[int] = range(1, 5), ks: Iterable[int] = range(0, 7),
          pairs: Sequence[tuple[int, int]] = ((2, 2), (3, 2)), max_degree: int = 4) -> Iterator[Check]:
    """Cohomological push-forward against residues read off series at infinity."""
    ks = list(ks)
    for r in rs:
        table = cohom_table(r, 1)
        for k in ks:
            yield Check("cohom", {"r": r, "d": 1, "k": k, "closed": "h_(k-r+1)"},
                        cohom_residue_closed(k, r, table), cohom_series_oracle(k, r, table))
            f = table.var("z1") ** k
            yield Check("cohom", {"r": r, "d": 1, "f": str(f)},
                        pushforward_cohom(f, r, 1), cohom_series_oracle(k, r, table))
    for r, d in pairs:
        table = cohom_table(r, d)
        zs = [f"z{i}" for i in range(1, d + 1)]
        for deg in range(max_degree + 1):
            for combo in combinations_with_replacement(zs, deg):
                f = table.one()
                for z in combo:
                    f = f * table.var(z)
                yield Check("cohom", {"r": r, "d": d, "f": str(f)},
                            pushforward_cohom(f, r, d), pushforward_cohom_series(f, r, d))


def order(rs: Iterable[int] = range(1, 4), ds: Iterable[int] | None = None, samples: int = 2,
          seed: int = 0) -> Iterator[Check]:
    """The iterated residue of psi_d does not depend on the order of the u's."""
    rng = random.Random(seed)
    ds = None if ds is None else list(ds)
    for r in rs:
        for d in range(2, min(r, 3) + 1):
            if ds is not None and d not in ds:
                continue
            table = kt_table(r, d)
            monos = y_monomials(d, 3)
            for _ in range(samples):
                exps = rng.choice(monos)
                spec = PushforwardSpec.from_poly(r, d, table.monomial(exps))
                f = psi_d_integrand(spec)
                du = f.table.one()
                for name in u_names(d):
                    du = du * f.table.var(name).inverse_monomial()
                f = f * du
                base = iterated_residue(f, u_names(d)).numerator
                for perm in permutations(u_names(d)):
                    yield Check("order", {"r": r, "d": d, "g": _mono_text(exps), "order": list(perm)},
                                iterated_residue(f, perm).numerator, base)


SUITES: dict[str, Callable[..., Iterator[Check]]] = {
    "residue-table": residue_table,
    "pushforward-oracle": pushforward_oracle,
    "recursion": recursion,
    "boundary": boundary,
    "theorem-det": theorem_det,
    "groth-det": groth_det,
    "specializations": specializations,
    "cohom": cohom,
    "order": order,
}


@dataclass
class Report:
    counts: dict[str, int] = field(default_factory=dict)
    failure: Check | None = None

    @property
    def ok(self) -> bool:
        return self.failure is None


def run_checks(checks: Iterable[Check], report: Report | None = None) -> Report:
    """Consume ``checks`` until the first failure."""
    report = report or Report()
    for chk in checks:
        report.counts[chk.suite] = report.counts.get(chk.suite, 0) + 1
        if not chk.ok:
            report.failure = chk
            break
    return report
