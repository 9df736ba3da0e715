"""Refined shifted factorial Grothendieck polynomials.

Run with ``python demos/grothendieck.py``.
"""
from flagres.grothendieck import GrothParams, groth_determinant, groth_direct, lenart_det
from flagres.symfun import schur

# %% All parameters symbolic (b, beta) with alpha = 0
params = GrothParams.make((2, 1), 2)
g = groth_direct(params)
print(len(g), "terms")
print(g == groth_determinant(params))

# %% Switching every parameter off leaves the Schur polynomial
zero = GrothParams.make((2, 1), 2, b=0, alpha=0, beta=0)
print(groth_direct(zero))
print(schur((2, 1), zero.table.vars(zero.xs)))

# %% b = 0 and beta_i = -beta_0 gives a binomial Jacobi-Trudi type determinant
spec = GrothParams.make((2, 1, 0), 3, b=0).lenart_specialization()
print(groth_direct(spec) == lenart_det((2, 1, 0), 3, "be0", spec.table))

# %% Symbolic alpha: power series truncated at total alpha-degree 2
deformed = GrothParams.make((1,), 1, alpha="sym", order=2)
print(groth_direct(deformed))

# %% Large cases can be compared at exact x values instead
big = GrothParams.make((3, 2, 1), 3, alpha="sym", order=2)
point = {"x1": 2, "x2": -3, "x3": 5}
print(groth_direct(big, point) == groth_determinant(big, point))
