"""Residues of rational functions in one variable u with poles at u = x_a.

Run with ``python demos/residues.py``.
"""
from flagres.parser import parse_poly
from flagres.residue import BinomFactor, FactoredRational, Phi, residue_k_closed, residue_sum
from flagres.ring import VarTable

# %% A table with two torus characters and one residue variable
r = 2
table = VarTable.build(torus=["x1", "x2"], residue=["u"])
u = table.var("u")
den = tuple(BinomFactor(u * x.inverse_monomial()) for x in table.vars(["x1", "x2"]))
print([str(f) for f in den])

# %% Res_{u=0} + Res_{u=inf} of u^k / prod(1 - u/x) du/u for a range of k
for k in range(-3, 5):
    res = residue_sum(FactoredRational(u ** (k - 1), den), "u")
    print(f"k={k:>2}:  {res.numerator}")
    assert res.numerator == residue_k_closed(k, r, table)

# %% The same numbers through the linear map Phi, after scaling by x1*x2
phi = Phi(table, r)
prod = table.var("x1") * table.var("x2")
print(phi(parse_poly("u^2 - 3*u^-1 + 1/2", table)))
print(prod * phi(u ** 3) == residue_k_closed(3, r, table))

# %% Phi evaluated at exact rational x values
at_point = Phi(table, r, at={"x1": 2, "x2": -3})
print(at_point(parse_poly("u^2 + u^-1", table)))

# %% Polynomials in u without the denominator have zero total residue
print(residue_sum(FactoredRational(parse_poly("u^4 - x1*u^-2 + 7", table)), "u").numerator)
