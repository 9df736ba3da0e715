"""Complete and elementary symmetric polynomials, Schur polynomials, partitions."""
from __future__ import annotations

from itertools import combinations, combinations_with_replacement
from typing import Iterable, Sequence

from .ring import LaurentPoly, VarTable, determinant


class Partition(tuple):
    """Weakly decreasing tuple of nonnegative integers; trailing zeros are kept."""

    def __new__(cls, parts: Iterable[int] = ()):
        parts = tuple(int(p) for p in parts)
        if any(p < 0 for p in parts):
            raise ValueError(f"partition parts must be nonnegative: {parts}")
        if any(a < b for a, b in zip(parts, parts[1:])):
            raise ValueError(f"partition must be weakly decreasing: {parts}")
        return super().__new__(cls, parts)

    @classmethod
    def parse(cls, text: str) -> "Partition":
        text = text.strip()
        if not text:
            return cls(())
        try:
            return cls(int(p) for p in text.split(","))
        except ValueError as exc:
            raise ValueError(f"bad partition {text!r}: {exc}") from None

    def __str__(self) -> str:
        return ",".join(str(p) for p in self)

    def __repr__(self) -> str:
        return f"Partition({str(self)!r})"

    @property
    def size(self) -> int:
        return sum(self)

    def padded(self, r: int) -> "Partition":
        if len(self) > r and any(self[r:]):
            raise ValueError(f"partition {self} has more than {r} nonzero parts")
        return Partition(tuple(self[:r]) + (0,) * (r - len(self)))

    def conjugate(self) -> "Partition":
        if not self or self[0] == 0:
            return Partition(())
        return Partition(sum(1 for p in self if p > j) for j in range(self[0]))


def partitions_in_box(rows: int, largest: int) -> list[Partition]:
    """All partitions with ``rows`` parts (zeros allowed), each at most ``largest``."""
    out = []

    def rec(prefix, cap):
        if len(prefix) == rows:
            out.append(Partition(prefix))
            return
        for p in range(cap, -1, -1):
            rec(prefix + [p], p)

    rec([], largest)
    return out


def _table_of(vars: Sequence[LaurentPoly], table: VarTable | None) -> VarTable:
    if table is not None:
        return table
    if not vars:
        raise ValueError("need a table when no variables are given")
    return vars[0].table


def h_k(k: int, vars: Sequence[LaurentPoly], table: VarTable | None = None) -> LaurentPoly:
    """Complete homogeneous symmetric polynomial of degree ``k``.

    ``vars`` may be arbitrary monomials (e.g. inverses ``x1^-1``); h_k is 0 for
    negative ``k`` and 1 for ``k == 0``.
    """
    table = _table_of(vars, table)
    if k < 0:
        return table.zero()
    if k == 0:
        return table.one()
    total = table.zero()
    for combo in combinations_with_replacement(vars, k):
        term = combo[0]
        for v in combo[1:]:
            term = term * v
        total = total + term
    return total


def e_k(k: int, vars: Sequence[LaurentPoly], table: VarTable | None = None) -> LaurentPoly:
    table = _table_of(vars, table)
    if k < 0 or k > len(vars):
        return table.zero()
    if k == 0:
        return table.one()
    total = table.zero()
    for combo in combinations(vars, k):
        term = combo[0]
        for v in combo[1:]:
            term = term * v
        total = total + term
    return total


def schur(lam: Sequence[int], vars: Sequence[LaurentPoly], table: VarTable | None = None) -> LaurentPoly:
    """Schur polynomial via Jacobi-Trudi, det(h_{lam_i - i + j})."""
    table = _table_of(vars, table)
    r = len(vars)
    lam = Partition(lam).padded(r)
    if r == 0:
        return table.one()
    cache: dict[int, LaurentPoly] = {}

    def h(k):
        if k not in cache:
            cache[k] = h_k(k, vars, table)
        return cache[k]

    matrix = [[h(lam[i] - i + j) for j in range(r)] for i in range(r)]
    return determinant(matrix)


def is_symmetric(p: LaurentPoly, vars: Sequence[str]) -> bool:
    """True iff ``p`` is invariant under every adjacent transposition of ``vars``."""
    return all(p.swap(a, b) == p for a, b in zip(vars, vars[1:]))
