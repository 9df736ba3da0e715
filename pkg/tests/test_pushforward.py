from fractions import Fraction
from itertools import combinations

import pytest

from flagres.parser import parse_poly
from flagres.pushforward import (
    IntegrandShapeError,
    PushforwardSpec,
    WedgePoly,
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
    wallcross_start,
    wallcross_step,
    wallcross_unroll,
    wedge_substitute,
)
from flagres.symfun import h_k


def spec(r, d, g="1"):
    return PushforwardSpec.from_poly(r, d, parse_poly(g, kt_table(r, d)))


def kt(r, d, text):
    return parse_poly(text, kt_table(r, d))


def test_wedge_substitute_examples():
    t = kt_table(2, 2)
    u = t.vars(["u1", "u2"])
    assert wedge_substitute(WedgePoly(kt(2, 2, "Y1"), 2), u) == kt(2, 2, "u1 + u2")
    assert wedge_substitute(WedgePoly(kt(2, 2, "Y2"), 2), u) == kt(2, 2, "u1*u2")
    t1 = kt_table(1, 1)
    assert wedge_substitute(WedgePoly(parse_poly("Y1^2", t1), 1), [t1.var("u1")]) == parse_poly("u1^2", t1)
    with pytest.raises(ValueError):
        wedge_substitute(WedgePoly(kt(2, 2, "Y1"), 2), u[:1])


def test_spec_validation():
    with pytest.raises(ValueError):
        spec(2, 3)
    with pytest.raises(ValueError):
        spec(0, 0)
    with pytest.raises(ValueError):
        PushforwardSpec.from_poly(2, 1, kt(2, 2, "Y2"))
    with pytest.raises(ValueError):
        PushforwardSpec.from_poly(2, 1, kt(2, 1, "u1"))


def test_psi_shapes():
    f = psi_d_integrand(spec(1, 1))
    assert f.numerator == 1
    assert [str(x) for x in f.denominator] == ["(1 - x1^-1*u1)"]
    f = psi_d_integrand(spec(2, 2))
    t = f.table
    expected = parse_poly("1/2*(1 - u1*u2^-1)*(1 - u2*u1^-1)", t)
    assert f.numerator == expected
    assert len(f.denominator) == 4
    f = psi_d_integrand(spec(3, 0, "7"))
    assert f.numerator == 7 and f.denominator == ()


@pytest.mark.parametrize(
    "r, d, g, expected",
    [
        (2, 1, "1", "1"),
        (2, 1, "Y1", "0"),
        (2, 1, "Y1^2", "-x1*x2"),
        (2, 2, "Y1", "x1 + x2"),
        (3, 1, "Y1", "0"),
        (3, 1, "Y1^3", "x1*x2*x3"),
        (1, 1, "Y1^2", "x1^2"),
        (2, 0, "x1^-1", "x1^-1"),
    ],
)
def test_pushforward_examples(r, d, g, expected):
    assert pushforward_K(spec(r, d, g)) == kt(r, d, expected)


def test_slots_reject_negative_powers():
    with pytest.raises(ValueError):
        spec(2, 1, "Y1^-1")


def test_pushforward_with_x_coefficients():
    # coefficients from the base pass straight through
    out = pushforward_K(spec(2, 1, "x1^-1*Y1^2 + 3"))
    assert out == kt(2, 1, "-x2 + 3")


def test_oracle_examples():
    pt = {"x1": Fraction(2), "x2": Fraction(3)}
    assert fixed_point_oracle_K(spec(2, 1), pt) == 1
    assert fixed_point_oracle_K(spec(2, 2, "Y1"), pt) == 5
    assert fixed_point_oracle_K(spec(3, 1, "Y1"), {"x1": 2, "x2": 3, "x3": Fraction(-1, 7)}) == 0
    with pytest.raises(ValueError):
        fixed_point_oracle_K(spec(2, 1), {"x1": 2, "x2": 2})
    with pytest.raises(ValueError):
        fixed_point_oracle_K(spec(2, 1), {"x1": 0, "x2": 2})


def _oracle_other_orientation(sp, pt):
    r, d = sp.r, sp.d
    vals = [Fraction(pt[f"x{i}"]) for i in range(1, r + 1)]
    total = Fraction(0)
    for S in combinations(range(r), d):
        at = dict(pt)
        chosen = [vals[i] for i in S]
        for k in range(1, d + 1):
            at[f"Y{k}"] = _esym(chosen, k)
        num = sp.g.poly.evaluate(at)
        den = Fraction(1)
        for i in S:
            for j in range(r):
                if j not in S:
                    den *= 1 - vals[j] / vals[i]
        total += num / den
    return total


def _esym(vals, k):
    out = Fraction(0)
    for c in combinations(vals, k):
        p = Fraction(1)
        for v in c:
            p *= v
        out += p
    return out


def test_oracle_orientation_is_pinned():
    pt = {"x1": Fraction(2), "x2": Fraction(3)}
    for g in ["1", "Y1", "Y1^2"]:
        sp = spec(2, 1, g)
        assert fixed_point_oracle_K(sp, pt) == pushforward_K(sp).evaluate(pt)
    # the opposite orientation of the tangent weights disagrees already for g = Y1
    sp = spec(2, 1, "Y1")
    assert _oracle_other_orientation(sp, pt) == 5
    assert pushforward_K(sp).evaluate(pt) == 0


def test_wallcross_unroll_matches_closed_form():
    sp = spec(2, 2)
    unrolled = wallcross_unroll(sp)
    closed = psi_d_integrand(sp)
    assert unrolled.numerator == closed.numerator
    assert [str(f) for f in unrolled.denominator] == [str(f) for f in closed.denominator]
    assert pushforward_K_from(unrolled, 2) == pushforward_K(sp)


def test_wallcross_single_step_base():
    sp = spec(2, 1, "Y1")
    st = wallcross_step(wallcross_start(sp))
    assert st.ell == 1
    assert st.integrand.numerator == psi_d_integrand(sp).numerator
    with pytest.raises(ValueError):
        wallcross_step(st)


def test_wallcross_intermediate_keeps_slots():
    sp = spec(3, 3, "Y2")
    st = wallcross_step(wallcross_start(sp))
    assert st.rank == 2
    names = st.integrand.numerator.variables()
    assert "Y1" in names and "u1" in names


def test_pushforward_shape_error_class():
    assert issubclass(IntegrandShapeError, RuntimeError)


# -- cohomology ---------------------------------------------------------------


def cz(r, d, text):
    return parse_poly(text, cohom_table(r, d))


def test_cohom_examples():
    assert pushforward_cohom(cz(2, 1, "z1"), 2, 1) == -1
    assert pushforward_cohom(cz(2, 1, "1"), 2, 1) == 0
    assert pushforward_cohom(cz(2, 1, "z1^2"), 2, 1) == cz(2, 1, "-a1 - a2")
    with pytest.raises(ValueError):
        pushforward_cohom(cz(2, 1, "z1"), 2, 3)


def test_cohom_series_oracle_examples():
    assert cohom_series_oracle(0, 1) == 1
    assert cohom_series_oracle(1, 2) == -1
    assert cohom_series_oracle(2, 2) == parse_poly("-a1 - a2", cohom_table(2, 0))
    with pytest.raises(ValueError):
        cohom_series_oracle(-1, 2)


@pytest.mark.parametrize("r", [1, 2, 3, 4])
def test_cohom_closed_index(r):
    t = cohom_table(r, 1)
    a = t.vars([f"a{i}" for i in range(1, r + 1)])
    for k in range(0, 7):
        oracle = cohom_series_oracle(k, r, t)
        assert cohom_residue_closed(k, r, t) == oracle
        assert oracle == h_k(k - r + 1, a, t).scale((-1) ** (r - 1))


def test_shifted_cohom_index_disagrees():
    # (-1)^(r-1) h_{k+r-1}(a) for k >= r (zero below) misses r=2, k=1
    t = cohom_table(2, 1)
    a = t.vars(["a1", "a2"])

    def shifted(k, r):
        return h_k(k + r - 1, a, t).scale((-1) ** (r - 1)) if k >= r else t.zero()

    assert shifted(1, 2) == 0
    assert cohom_series_oracle(1, 2, t) == -1
    assert shifted(2, 2) != cohom_series_oracle(2, 2, t)


@pytest.mark.parametrize("r, d", [(2, 2), (3, 2), (3, 3)])
def test_cohom_iterated_against_series(r, d):
    zs = [f"z{i}" for i in range(1, d + 1)]
    for text in ["1", zs[0], f"{zs[0]}^2*{zs[-1]}", f"{zs[0]}^3 + {zs[-1]}^2", f"{zs[0]}^2*{zs[-1]}^2"]:
        f = cz(r, d, text)
        assert pushforward_cohom(f, r, d) == pushforward_cohom_series(f, r, d)


def test_cohom_grassmannian_degree():
    # G(2, 4): the top power of the hyperplane class z1 + z2 integrates to +-2 at a = 0
    f = cz(4, 2, "(z1 + z2)^4")
    out = pushforward_cohom(f, 4, 2)
    assert out.is_constant() and abs(out.constant_term()) == 2
