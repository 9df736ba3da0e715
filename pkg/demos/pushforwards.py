"""Push-forwards from Grassmann bundles, checked against fixed points.

Run with ``python demos/pushforwards.py``.
"""
from fractions import Fraction

from flagres.parser import parse_poly
from flagres.pushforward import (
    PushforwardSpec,
    cohom_series_oracle,
    cohom_table,
    fixed_point_oracle_K,
    kt_table,
    psi_d_integrand,
    pushforward_cohom,
    pushforward_K,
    pushforward_K_from,
    wallcross_unroll,
)

# %% Projective line: rank 2 bundle, rank 1 sub-bundle
r, d = 2, 1
table = kt_table(r, d)
for text in ["1", "Y1", "Y1^2", "Y1^3"]:
    spec = PushforwardSpec.from_poly(r, d, parse_poly(text, table))
    print(f"g = {text:<5} ->  {pushforward_K(spec)}")

# %% The residue answer agrees with a sum over the torus fixed points
r, d = 4, 2
table = kt_table(r, d)
spec = PushforwardSpec.from_poly(r, d, parse_poly("Y1^3*Y2 - 2*Y2^2 + x1", table))
result = pushforward_K(spec)
point = {"x1": Fraction(2), "x2": Fraction(-1, 3), "x3": Fraction(5, 2), "x4": Fraction(3)}
print(result.evaluate(point), fixed_point_oracle_K(spec, point))

# %% The integrand can also be built one wall-crossing at a time
unrolled = wallcross_unroll(spec)
closed = psi_d_integrand(spec)
print(unrolled.numerator == closed.numerator)
print(pushforward_K_from(unrolled, d) == result)

# %% Cohomology: integrals over G(2, 4) of powers of the hyperplane class
ct = cohom_table(4, 2)
print(pushforward_cohom(parse_poly("(z1 + z2)^4", ct), 4, 2))
print(pushforward_cohom(parse_poly("(z1 + z2)^5", ct), 4, 2))

# %% One-variable residues at infinity against a direct series expansion
for k in range(5):
    print(k, cohom_series_oracle(k, 3))
