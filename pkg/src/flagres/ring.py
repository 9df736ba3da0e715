"""Sparse multivariate Laurent polynomials over the rationals.

Every polynomial carries a :class:`VarTable`, an ordered list of named
variables with a role.  Torus and residue variables may carry negative
exponents; parameter, cohomology and slot variables may not.  Monomials are
exponent tuples aligned with the table, coefficients are
:class:`fractions.Fraction`.  Values are immutable once built.
"""
from __future__ import annotations

import heapq
import json
from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations
from typing import Iterable, Mapping, Sequence

from . import _flint

TORUS = "torus"
RESIDUE = "residue"
PARAMETER = "parameter"
COHOMOLOGY = "cohomology"
SLOT = "slot"

ROLES = (TORUS, RESIDUE, PARAMETER, COHOMOLOGY, SLOT)
LAURENT_ROLES = frozenset({TORUS, RESIDUE})


class VarTableMismatch(ValueError):
    """Raised when two polynomials over different tables are combined."""


class PoleError(ValueError):
    """Raised when evaluating at a point where a negative power blows up."""


class InexactDivision(ArithmeticError):
    """Raised when an exact division leaves a nonzero remainder."""


def as_fraction(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    raise TypeError(f"cannot use {value!r} as an exact rational")


@dataclass(frozen=True)
class VarTable:
    names: tuple[str, ...]
    roles: tuple[str, ...]

    def __post_init__(self):
        if len(self.names) != len(self.roles):
            raise ValueError("names and roles differ in length")
        if len(set(self.names)) != len(self.names):
            raise ValueError(f"duplicate variable names in {self.names}")
        for role in self.roles:
            if role not in ROLES:
                raise ValueError(f"unknown role {role!r}")
        object.__setattr__(self, "_index", {n: i for i, n in enumerate(self.names)})
        object.__setattr__(
            self,
            "_nonneg",
            tuple(i for i, r in enumerate(self.roles) if r not in LAURENT_ROLES),
        )

    @classmethod
    def build(cls, **groups: Iterable[str]) -> "VarTable":
        """Build a table from role groups, e.g. ``build(torus=["x1"], parameter=["b1"])``.

        Groups are laid out in the fixed role order torus, residue, parameter,
        cohomology, slot.
        """
        names, roles = [], []
        for role in ROLES:
            for name in groups.pop(role, ()):
                names.append(name)
                roles.append(role)
        if groups:
            raise ValueError(f"unknown role groups {sorted(groups)}")
        return cls(tuple(names), tuple(roles))

    @property
    def nvars(self) -> int:
        return len(self.names)

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise KeyError(f"variable {name!r} not in table {self.names}") from None

    def __contains__(self, name) -> bool:
        return name in self._index

    def role(self, name: str) -> str:
        return self.roles[self.index(name)]

    def names_with_role(self, role: str) -> list[str]:
        return [n for n, r in zip(self.names, self.roles) if r == role]

    @property
    def zero_exps(self) -> tuple[int, ...]:
        return (0,) * len(self.names)

    def zero(self) -> "LaurentPoly":
        return LaurentPoly._make(self, {})

    def one(self) -> "LaurentPoly":
        return self.const(1)

    def const(self, c) -> "LaurentPoly":
        c = as_fraction(c)
        return LaurentPoly._make(self, {self.zero_exps: c} if c else {})

    def var(self, name: str) -> "LaurentPoly":
        return self.monomial({name: 1})

    def vars(self, names: Iterable[str]) -> list["LaurentPoly"]:
        return [self.var(n) for n in names]

    def monomial(self, exps: Mapping[str, int], coeff=1) -> "LaurentPoly":
        e = [0] * len(self.names)
        for name, k in exps.items():
            e[self.index(name)] += int(k)
        return LaurentPoly(self, {tuple(e): as_fraction(coeff)})

    def extend(self, **groups: Iterable[str]) -> "VarTable":
        """A new table with extra variables appended (existing order kept)."""
        names, roles = list(self.names), list(self.roles)
        for role in ROLES:
            for name in groups.pop(role, ()):
                if name in self._index:
                    continue
                names.append(name)
                roles.append(role)
        if groups:
            raise ValueError(f"unknown role groups {sorted(groups)}")
        return VarTable(tuple(names), tuple(roles))


@dataclass(frozen=True)
class Truncation:
    """Drop every term whose total degree in ``vars`` exceeds ``order``."""

    vars: frozenset
    order: int

    def __post_init__(self):
        object.__setattr__(self, "vars", frozenset(self.vars))
        if self.order < 0:
            raise ValueError("truncation order must be nonnegative")

    def indices(self, table: VarTable) -> tuple[int, ...]:
        return tuple(table.index(v) for v in sorted(self.vars) if v in table)

    def degree(self, p: "LaurentPoly") -> int:
        idx = self.indices(p.table)
        return max((sum(e[i] for i in idx) for e in p.terms), default=0)

    def __call__(self, p: "LaurentPoly") -> "LaurentPoly":
        idx = self.indices(p.table)
        if not idx:
            return p
        keep = {e: c for e, c in p.terms.items() if sum(e[i] for i in idx) <= self.order}
        return LaurentPoly._make(p.table, keep)


def _add_exps(a, b):
    return tuple([x + y for x, y in zip(a, b)])


class _Packer:
    """Encode exponent vectors as integers so that adding keys adds vectors.

    Each variable gets a ``width``-bit field holding ``e + offset``; adding two
    packed keys and subtracting ``bias`` (the packed zero vector) yields the
    packed sum, provided the sum stays inside the field.
    """

    def __init__(self, nvars: int, *term_maps):
        span = 0
        for terms in term_maps:
            span += max((max((abs(k) for k in e), default=0) for e in terms), default=0)
        self.width = max(4, (2 * span + 1).bit_length() + 1)
        self.offset = 1 << (self.width - 1)
        self.nvars = nvars
        self.mask = (1 << self.width) - 1
        self.bias = sum(self.offset << (self.width * i) for i in range(nvars))

    def pack(self, e) -> int:
        w, off = self.width, self.offset
        key = 0
        for i, k in enumerate(e):
            key |= (k + off) << (w * i)
        return key

    def unpack(self, key: int) -> tuple:
        w, off, mask = self.width, self.offset, self.mask
        return tuple(((key >> (w * i)) & mask) - off for i in range(self.nvars))


def _fmt_coeff(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


class LaurentPoly:
    """A finite map monomial -> nonzero rational over a fixed VarTable."""

    __slots__ = ("table", "terms", "_hash")

    def __init__(self, table: VarTable, terms: Mapping[tuple, object] | None = None):
        clean = {}
        n = table.nvars
        for e, c in (terms or {}).items():
            e = tuple(int(k) for k in e)
            if len(e) != n:
                raise ValueError(f"exponent vector {e} does not match table of {n} vars")
            c = as_fraction(c)
            if c:
                clean[e] = clean.get(e, 0) + c
        clean = {e: c for e, c in clean.items() if c}
        _check_nonneg(table, clean)
        self.table = table
        self.terms = clean
        self._hash = None

    @classmethod
    def _make(cls, table: VarTable, terms: dict) -> "LaurentPoly":
        # terms must already be clean
        obj = cls.__new__(cls)
        obj.table = table
        obj.terms = terms
        obj._hash = None
        return obj

    # -- basic queries --------------------------------------------------
    def __bool__(self) -> bool:
        return bool(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        z = self.table.zero_exps
        return all(e == z for e in self.terms)

    def constant_term(self) -> Fraction:
        return self.terms.get(self.table.zero_exps, Fraction(0))

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def variables(self) -> set[str]:
        used = set()
        for e in self.terms:
            for i, k in enumerate(e):
                if k:
                    used.add(self.table.names[i])
        return used

    def degree_range(self, var: str) -> tuple[int, int]:
        """(min, max) exponent of ``var``; (0, 0) for the zero polynomial."""
        i = self.table.index(var)
        ks = [e[i] for e in self.terms]
        return (min(ks), max(ks)) if ks else (0, 0)

    def named_terms(self) -> frozenset:
        names = self.table.names
        return frozenset(
            (tuple(sorted((names[i], k) for i, k in enumerate(e) if k)), c)
            for e, c in self.terms.items()
        )

    # -- arithmetic -----------------------------------------------------
    def _coerce(self, other) -> "LaurentPoly":
        if isinstance(other, LaurentPoly):
            if other.table != self.table:
                raise VarTableMismatch(
                    f"tables differ: {self.table.names} vs {other.table.names}"
                )
            return other
        if isinstance(other, (int, Fraction)):
            return self.table.const(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self.terms)
        for e, c in other.terms.items():
            s = out.get(e, 0) + c
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        return LaurentPoly._make(self.table, out)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly._make(self.table, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other - self

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self.mul(other)

    __rmul__ = __mul__

    def mul(self, other: "LaurentPoly", trunc: Truncation | None = None) -> "LaurentPoly":
        other = self._coerce(other)
        if not self.terms or not other.terms:
            return self.table.zero()
        a, b = self.terms, other.terms
        if len(a) < len(b):
            a, b = b, a
        if len(b) == 1 and trunc is None:
            (eb, cb), = b.items()
            return LaurentPoly._make(self.table, {_add_exps(ea, eb): ca * cb for ea, ca in a.items()})
        packer = _Packer(self.table.nvars, a, b)
        pack = packer.pack
        out: dict = {}
        get = out.get
        if trunc is not None:
            idx = trunc.indices(self.table)
            order = trunc.order
            bl = [(pack(eb), cb, sum(eb[i] for i in idx)) for eb, cb in b.items()]
            bl.sort(key=lambda t: t[2])
            for ea, ca in a.items():
                room = order - sum(ea[i] for i in idx)
                if room < 0:
                    continue
                ka = pack(ea) - packer.bias
                for kb, cb, db in bl:
                    if db > room:
                        break
                    k = ka + kb
                    out[k] = get(k, 0) + ca * cb
        else:
            bl = [(pack(eb), cb) for eb, cb in b.items()]
            for ea, ca in a.items():
                ka = pack(ea) - packer.bias
                for kb, cb in bl:
                    k = ka + kb
                    out[k] = get(k, 0) + ca * cb
        unpack = packer.unpack
        return LaurentPoly._make(self.table, {unpack(k): c for k, c in out.items() if c})

    def scale(self, c) -> "LaurentPoly":
        c = as_fraction(c)
        if not c:
            return self.table.zero()
        return LaurentPoly._make(self.table, {e: v * c for e, v in self.terms.items()})

    def shift(self, exps: Sequence[int]) -> "LaurentPoly":
        """Multiply by the monomial with exponent vector ``exps``."""
        out = {_add_exps(e, exps): c for e, c in self.terms.items()}
        _check_nonneg(self.table, out)
        return LaurentPoly._make(self.table, out)

    def __pow__(self, n: int) -> "LaurentPoly":
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse_monomial() ** (-n)
        result = self.table.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def pow(self, n: int, trunc: Truncation | None = None) -> "LaurentPoly":
        if trunc is None or n < 0:
            return self ** n
        result = trunc(self.table.one())
        for _ in range(n):
            result = result.mul(self, trunc)
        return result

    def inverse_monomial(self) -> "LaurentPoly":
        if len(self.terms) != 1:
            raise ValueError(f"{self} is not a unit of the Laurent ring")
        (e, c), = self.terms.items()
        inv = {tuple(-k for k in e): 1 / c}
        _check_nonneg(self.table, inv)
        return LaurentPoly._make(self.table, inv)

    # -- comparison -----------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, LaurentPoly):
            if other.table == self.table:
                return self.terms == other.terms
            return self.named_terms() == other.named_terms()
        if isinstance(other, (int, Fraction)):
            if not other:
                return not self.terms
            return self.terms == {self.table.zero_exps: Fraction(other)}
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self.named_terms())
        return self._hash

    # -- structural operations -----------------------------------------
    def coefficient(self, var: str, k: int) -> "LaurentPoly":
        """Coefficient of ``var**k``, as a polynomial free of ``var``."""
        i = self.table.index(var)
        out = {}
        for e, c in self.terms.items():
            if e[i] == k:
                out[e[:i] + (0,) + e[i + 1:]] = c
        return LaurentPoly._make(self.table, out)

    def collect(self, var: str) -> dict[int, "LaurentPoly"]:
        """Split into {k: coefficient of var**k}."""
        i = self.table.index(var)
        groups: dict[int, dict] = {}
        for e, c in self.terms.items():
            groups.setdefault(e[i], {})[e[:i] + (0,) + e[i + 1:]] = c
        return {k: LaurentPoly._make(self.table, t) for k, t in sorted(groups.items())}

    def substitute(self, var: str, value) -> "LaurentPoly":
        """Replace ``var`` by ``value`` (a rational or a LaurentPoly over the same table)."""
        if not isinstance(value, LaurentPoly):
            value = self.table.const(value)
        else:
            value = self._coerce(value)
        return self.compose({var: value})

    def compose(self, mapping: Mapping[str, "LaurentPoly"]) -> "LaurentPoly":
        """Simultaneous substitution of several variables."""
        table = self.table
        subs = []
        for name, value in mapping.items():
            if not isinstance(value, LaurentPoly):
                value = table.const(value)
            subs.append((table.index(name), self._coerce(value)))
        if not subs:
            return self
        idx = [i for i, _ in subs]
        powers: list[dict[int, LaurentPoly]] = [{} for _ in subs]

        def power(j: int, k: int) -> LaurentPoly:
            cache = powers[j]
            if k not in cache:
                value = subs[j][1]
                if k < 0 and not value.is_monomial():
                    raise ValueError(
                        f"cannot substitute non-unit {value} into a negative power "
                        f"of {table.names[subs[j][0]]}"
                    )
                if k < 0 and not value:
                    raise PoleError(f"substituting 0 into a negative power of {table.names[subs[j][0]]}")
                cache[k] = value ** k
            return cache[k]

        # group terms by the exponents of substituted variables
        groups: dict[tuple, dict] = {}
        for e, c in self.terms.items():
            key = tuple(e[i] for i in idx)
            rest = list(e)
            for i in idx:
                rest[i] = 0
            groups.setdefault(key, {})[tuple(rest)] = c
        result = table.zero()
        for key, rest in groups.items():
            part = LaurentPoly._make(table, rest)
            for j, k in enumerate(key):
                if k:
                    part = part * power(j, k)
            result = result + part
        return result

    def evaluate(self, assignment: Mapping[str, object]) -> Fraction:
        """Exact value at a point; every occurring variable must be assigned."""
        names = self.table.names
        vals = []
        for i, n in enumerate(names):
            vals.append(as_fraction(assignment[n]) if n in assignment else None)
        total = Fraction(0)
        for e, c in self.terms.items():
            t = c
            for i, k in enumerate(e):
                if not k:
                    continue
                v = vals[i]
                if v is None:
                    raise KeyError(f"no value assigned to {names[i]!r}")
                if k < 0 and v == 0:
                    raise PoleError(f"{names[i]} = 0 hits a pole")
                t *= v ** k
            total += t
        return total

    def embed(self, table: VarTable) -> "LaurentPoly":
        """The same polynomial re-expressed over ``table`` (by variable name)."""
        if table == self.table:
            return self
        pos = [table.index(n) for n in self.table.names]
        out = {}
        zero = [0] * table.nvars
        for e, c in self.terms.items():
            ne = list(zero)
            for i, k in enumerate(e):
                if k:
                    ne[pos[i]] = k
            out[tuple(ne)] = c
        return LaurentPoly(table, out)

    def swap(self, a: str, b: str) -> "LaurentPoly":
        i, j = self.table.index(a), self.table.index(b)
        out = {}
        for e, c in self.terms.items():
            e = list(e)
            e[i], e[j] = e[j], e[i]
            out[tuple(e)] = c
        return LaurentPoly._make(self.table, out)

    # -- canonical forms ------------------------------------------------
    def sorted_terms(self) -> list[tuple[tuple, Fraction]]:
        """Terms in graded-lex order: total degree descending, then lex descending."""
        return sorted(self.terms.items(), key=lambda t: (sum(t[0]), t[0]), reverse=True)

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        names = self.table.names
        out = []
        for e, c in self.sorted_terms():
            mono = "*".join(
                names[i] if k == 1 else f"{names[i]}^{k}" for i, k in enumerate(e) if k
            )
            mag = abs(c)
            if not mono:
                body = _fmt_coeff(mag)
            elif mag == 1:
                body = mono
            else:
                body = f"{_fmt_coeff(mag)}*{mono}"
            if not out:
                out.append(f"-{body}" if c < 0 else body)
            else:
                out.append(f" - {body}" if c < 0 else f" + {body}")
        return "".join(out)

    def __repr__(self) -> str:
        return f"LaurentPoly({str(self)!r})"

    def to_json(self) -> dict:
        names = self.table.names
        return {
            "vars": list(names),
            "terms": [
                {
                    "coeff": _fmt_coeff(c),
                    "exps": {names[i]: k for i, k in enumerate(e) if k},
                }
                for e, c in self.sorted_terms()
            ],
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=False)

    @classmethod
    def from_json(cls, data, table: VarTable | None = None) -> "LaurentPoly":
        if isinstance(data, str):
            data = json.loads(data)
        if table is None:
            table = VarTable.build(torus=data["vars"])
        elif list(data["vars"]) != list(table.names):
            raise VarTableMismatch(f"JSON vars {data['vars']} do not match {table.names}")
        out = {}
        for t in data["terms"]:
            e = [0] * table.nvars
            for n, k in t["exps"].items():
                e[table.index(n)] = int(k)
            out[tuple(e)] = Fraction(t["coeff"])
        return cls(table, out)


def _check_nonneg(table: VarTable, terms) -> None:
    idx = table._nonneg
    if not idx:
        return
    for e in terms:
        for i in idx:
            if e[i] < 0:
                raise ValueError(
                    f"negative exponent for {table.roles[i]} variable {table.names[i]!r}"
                )


def lp_add(p: LaurentPoly, q: LaurentPoly) -> LaurentPoly:
    return p + q


def lp_mul(p: LaurentPoly, q: LaurentPoly, trunc: Truncation | None = None) -> LaurentPoly:
    return p.mul(q, trunc)


def lp_substitute(p: LaurentPoly, var: str, value) -> LaurentPoly:
    return p.substitute(var, value)


def lp_coefficient(p: LaurentPoly, var: str, k: int) -> LaurentPoly:
    return p.coefficient(var, k)


def lp_eval(p: LaurentPoly, assignment: Mapping[str, object]) -> Fraction:
    return p.evaluate(assignment)


# ---------------------------------------------------------------------------
# exact division and determinants


def divexact(p: LaurentPoly, q: LaurentPoly) -> LaurentPoly:
    """Exact quotient ``p / q`` in the Laurent ring.

    Uses leading-term elimination under lex order, which is a group order on
    exponent vectors, so each step peels off the lex-largest quotient term.
    Per-variable degree ranges are additive under multiplication, which boxes
    in every exponent the quotient can have; a step leaving that box means
    ``q`` does not divide ``p``.
    """
    q = p._coerce(q)
    if not q.terms:
        raise ZeroDivisionError("division by the zero polynomial")
    if not p.terms:
        return p
    if len(q.terms) == 1:
        (eq, cq), = q.terms.items()
        out = {tuple(a - b for a, b in zip(e, eq)): c / cq for e, c in p.terms.items()}
        if any(e[i] < 0 for e in out for i in p.table._nonneg):
            raise InexactDivision(f"{q} does not divide the dividend")
        return LaurentPoly._make(p.table, out)
    if _flint.AVAILABLE and len(p.terms) * len(q.terms) >= FLINT_THRESHOLD:
        quot = _flint.divexact_terms(p, q)
        if quot is None:
            raise InexactDivision(f"{q} does not divide the dividend")
        return LaurentPoly._make(p.table, quot)
    qterms = list(q.terms.items())
    lt_q = max(q.terms)
    lc_q = q.terms[lt_q]
    n = p.table.nvars
    pe, qe = list(p.terms), list(q.terms)
    lo = [min(e[i] for e in pe) - min(e[i] for e in qe) for i in range(n)]
    hi = [max(e[i] for e in pe) - max(e[i] for e in qe) for i in range(n)]
    for i in p.table._nonneg:
        lo[i] = max(lo[i], 0)

    rem = dict(p.terms)
    heap = [tuple(-k for k in e) for e in rem]
    heapq.heapify(heap)
    quot = {}
    while rem:
        neg = heapq.heappop(heap)
        lead = tuple(-k for k in neg)
        c = rem.get(lead)
        if c is None:
            continue
        t = tuple(a - b for a, b in zip(lead, lt_q))
        if any(k < a or k > b for k, a, b in zip(t, lo, hi)):
            raise InexactDivision(f"{q} does not divide the dividend")
        f = c / lc_q
        quot[t] = f
        for e, qc in qterms:
            k = _add_exps(e, t)
            v = rem.get(k, 0) - f * qc
            if v:
                if k not in rem:
                    heapq.heappush(heap, tuple(-x for x in k))
                rem[k] = v
            else:
                rem.pop(k, None)
    return LaurentPoly(p.table, quot)


def _perm_sign(perm: Sequence[int]) -> int:
    sign = 1
    seen = [False] * len(perm)
    for i in range(len(perm)):
        if seen[i]:
            continue
        j, length = i, 0
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


# below this estimated product size the pure-Python path is faster than converting
FLINT_THRESHOLD = 200


def determinant(matrix: Sequence[Sequence[LaurentPoly]], trunc: Truncation | None = None,
                backend: str = "auto") -> LaurentPoly:
    """Exact determinant.

    Without truncation this is fraction-free Bareiss elimination.  The
    truncated quotient ring has no exact division, so with ``trunc`` the
    division-free Leibniz expansion is used, truncating every product.

    ``backend`` is "python", "flint" or "auto" (flint for large inputs when
    python-flint is importable).
    """
    n = len(matrix)
    if any(len(row) != n for row in matrix):
        raise ValueError("determinant of a non-square matrix")
    if n == 0:
        raise ValueError("empty matrix has no table; handle n == 0 at the call site")
    table = matrix[0][0].table
    if any(p.table != table for row in matrix for p in row):
        raise VarTableMismatch("determinant entries use different variable tables")
    if backend not in ("auto", "python", "flint"):
        raise ValueError(f"unknown backend {backend!r}")
    if backend == "flint" and not _flint.AVAILABLE:
        raise RuntimeError("python-flint is not installed")
    if backend == "auto":
        work = 1
        for row in matrix:
            work *= max(len(p.terms) for p in row)
        backend = "flint" if _flint.AVAILABLE and n > 1 and work >= FLINT_THRESHOLD else "python"
    if backend == "flint":
        idx = trunc.indices(table) if trunc is not None else ()
        order = trunc.order if trunc is not None else 0
        return LaurentPoly._make(table, _flint.determinant_terms(matrix, idx, order))
    if trunc is not None:
        total = table.zero()
        for perm in permutations(range(n)):
            term = trunc(table.one())
            for i, j in enumerate(perm):
                term = term.mul(matrix[i][j], trunc)
                if not term:
                    break
            if term:
                total = total + term.scale(_perm_sign(perm))
        return total

    m = [list(row) for row in matrix]
    sign = 1
    prev = table.one()
    for k in range(n - 1):
        if not m[k][k]:
            for i in range(k + 1, n):
                if m[i][k]:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return table.zero()
        pivot = m[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = pivot * m[i][j] - m[i][k] * m[k][j]
                m[i][j] = divexact(num, prev) if k else num
        prev = pivot
    det = m[n - 1][n - 1]
    return -det if sign < 0 else det
