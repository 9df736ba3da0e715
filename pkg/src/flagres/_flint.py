"""Optional python-flint backend for large exact determinants.

Entries are shifted to nonnegative exponents by one common monomial, moved to
``fmpq_mpoly`` and handled there.  Truncated determinants split each entry
into homogeneous pieces in the truncation variables so that products never
form terms above the truncation order.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Sequence

try:
    import flint
    from flint.utils.flint_exceptions import DomainError
except ImportError:  # pragma: no cover - exercised only without flint
    flint = None

AVAILABLE = flint is not None
EXPANSION_MAX = 4


def _context(names):
    return flint.fmpq_mpoly_ctx.get(tuple(names), "lex")


def _to_flint(ctx, terms, offset):
    return ctx.from_dict({
        tuple(k - o for k, o in zip(e, offset)): flint.fmpq(c.numerator, c.denominator)
        for e, c in terms.items()
    })


def _from_flint(p, offset, scale_exps=1):
    out = {}
    shift = [scale_exps * o for o in offset]
    if any(shift):
        keys = (tuple([int(k) + s for k, s in zip(e, shift)]) for e in p.monoms())
    else:
        keys = (tuple(map(int, e)) for e in p.monoms())
    for key, c in zip(keys, p.coeffs()):
        q = int(c.q)
        out[key] = Fraction(int(c.p)) if q == 1 else Fraction(int(c.p), q)
    return out


def determinant_terms(matrix: Sequence[Sequence], trunc_idx: Sequence[int] | None, order: int) -> dict:
    """Term dict of det(matrix); ``trunc_idx`` lists truncated variable positions."""
    n = len(matrix)
    table = matrix[0][0].table
    nv = table.nvars
    offset = [0] * nv
    for row in matrix:
        for p in row:
            for e in p.terms:
                for i, k in enumerate(e):
                    if k < offset[i]:
                        offset[i] = k
    ctx = _context(table.names)
    if not trunc_idx:
        m = [[_to_flint(ctx, p.terms, offset) for p in row] for row in matrix]
        # flint's exact division costs more than the extra products of a small expansion
        det = _minors(m, _mul, _add) if n <= EXPANSION_MAX else _bareiss(ctx, m)
        return _from_flint(det, offset, n)

    # graded pieces by truncation degree; truncation variables never go negative
    def pieces(p):
        parts = [dict() for _ in range(order + 1)]
        for e, c in p.terms.items():
            d = sum(e[i] for i in trunc_idx)
            if d <= order:
                parts[d][e] = c
        return [_to_flint(ctx, part, offset) for part in parts]

    m = [[pieces(p) for p in row] for row in matrix]
    zero = ctx.from_dict({})

    def mul(a, b):
        return [sum((a[i] * b[k - i] for i in range(k + 1)), zero) for k in range(order + 1)]

    def add(a, b, sign):
        if a is None:
            return b if sign > 0 else [-y for y in b]
        return [x + y if sign > 0 else x - y for x, y in zip(a, b)]

    det = _minors(m, mul, add)
    return _from_flint(sum(det, zero), offset, n)


def _minors(m, mul, add):
    """Cofactor expansion along rows, sharing minors of the bottom rows.

    ``add(a, b, sign)`` returns a + sign * b; ``a`` may be None for an empty sum.
    """
    n = len(m)
    # minors of the last rows keyed by their sorted column tuple
    level = {(j,): m[n - 1][j] for j in range(n)}
    for row in range(n - 2, -1, -1):
        nxt = {}
        for cols, minor in level.items():
            for j in range(n):
                if j in cols:
                    continue
                key = tuple(sorted(cols + (j,)))
                sign = -1 if key.index(j) % 2 else 1
                nxt[key] = add(nxt.get(key), mul(m[row][j], minor), sign)
        level = nxt
    (det,) = level.values()
    return det


def _mul(a, b):
    return a * b


def _add(a, b, sign):
    if a is None:
        return b if sign > 0 else -b
    return a + b if sign > 0 else a - b


def _bareiss(ctx, m):
    n = len(m)
    sign = 1
    prev = ctx.from_dict({(0,) * ctx.nvars(): 1})
    for k in range(n - 1):
        if m[k][k].is_zero():
            for i in range(k + 1, n):
                if not m[i][k].is_zero():
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return ctx.from_dict({})
        pivot = m[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (pivot * m[i][j] - m[i][k] * m[k][j]) / prev
        prev = pivot
    det = m[n - 1][n - 1]
    return -det if sign < 0 else det


def divexact_terms(p, q):
    """Term dict of the exact quotient p / q, or None when q does not divide p."""
    nv = p.table.nvars
    # true minima: the Laurent quotient's lowest exponent is min_p - min_q
    offp = [min(e[i] for e in p.terms) for i in range(nv)]
    offq = [min(e[i] for e in q.terms) for i in range(nv)]
    ctx = _context(p.table.names)
    fp = _to_flint(ctx, p.terms, offp)
    fq = _to_flint(ctx, q.terms, offq)
    try:
        quot = fp / fq
    except DomainError:
        return None
    return _from_flint(quot, [a - b for a, b in zip(offp, offq)])
