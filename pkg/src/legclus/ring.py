"""Exact sparse multivariate Laurent polynomial arithmetic.

Coefficients live in the integers or in a prime field F_p.  A polynomial is
stored as a mapping from dense integer exponent vectors to nonzero
coefficients; exponent vectors are tuples indexed by a shared
:class:`VariableTable`.  Negative exponents are permitted only at variables
flagged invertible (base points, frozen units), never at ordinary crossing
variables.

Example (table ``a1, a2`` with neither invertible)::

    a1*a2 - 1   ->   {(1, 1): 1, (0, 0): -1}

All values are immutable after construction, every operation is a pure
function, and results are always canonical (no stored zero coefficient).
Monomial order is lexicographic on the table order and is used only for
printing.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence, Union


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


@dataclass(frozen=True)
class Coefficients:
    """Coefficient ring: integers (``p is None``) or the prime field F_p."""

    p: int | None = None

    def __post_init__(self) -> None:
        if self.p is not None and not _is_prime(self.p):
            raise ValueError(f"characteristic {self.p} is not prime")

    @classmethod
    def integers(cls) -> "Coefficients":
        return cls(None)

    @classmethod
    def prime_field(cls, p: int) -> "Coefficients":
        return cls(p)

    @property
    def char(self) -> int:
        return self.p or 0

    def reduce(self, c: int) -> int:
        return c % self.p if self.p is not None else c

    def invert(self, c: int) -> int:
        if self.p is not None:
            c %= self.p
            if c == 0:
                raise ZeroDivisionError("inverting 0 in a prime field")
            return pow(c, self.p - 2, self.p)
        if c in (1, -1):
            return c
        raise ZeroDivisionError(f"{c} is not a unit in Z")

    def __str__(self) -> str:
        return "Z" if self.p is None else f"F{self.p}"


class VariableTable:
    """Ordered list of distinct variable names with per-variable unit flags."""

    __slots__ = ("names", "invertible", "_index", "continuant_cache")

    def __init__(self, names: Sequence[str], invertible: Iterable[str] = ()) -> None:
        names = tuple(names)
        if len(set(names)) != len(names):
            raise ValueError("variable names must be distinct")
        inv = frozenset(invertible)
        unknown = inv - set(names)
        if unknown:
            raise ValueError(f"invertible flags for unknown variables: {sorted(unknown)}")
        self.names = names
        self.invertible = tuple(n in inv for n in names)
        self._index = {n: i for i, n in enumerate(names)}
        self.continuant_cache: dict = {}

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise ValueError(f"unknown variable {name!r}") from None

    def __contains__(self, name: str) -> bool:
        return name in self._index

    def __len__(self) -> int:
        return len(self.names)

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, VariableTable)
            and self.names == other.names
            and self.invertible == other.invertible
        )

    def __hash__(self) -> int:
        return hash((self.names, self.invertible))

    def __repr__(self) -> str:
        return f"VariableTable({list(self.names)!r})"


PolyLike = Union["LaurentPolynomial", int]


class LaurentPolynomial:
    """A sparse Laurent polynomial bound to a table and a coefficient ring."""

    __slots__ = ("table", "ring", "terms")

    def __init__(
        self,
        table: VariableTable,
        ring: Coefficients,
        terms: Mapping[tuple, int],
        _checked: bool = False,
    ) -> None:
        self.table = table
        self.ring = ring
        if _checked:
            self.terms = dict(terms)
        else:
            clean: dict[tuple, int] = {}
            width = len(table)
            for exps, c in terms.items():
                if len(exps) != width:
                    raise ValueError("exponent vector has wrong length")
                c = ring.reduce(c)
                if c == 0:
                    continue
                for i, e in enumerate(exps):
                    if e < 0 and not table.invertible[i]:
                        raise ValueError(
                            f"negative exponent at non-invertible variable {table.names[i]!r}"
                        )
                clean[tuple(exps)] = c
            self.terms = clean

    # ------------------------------------------------------------------
    # constructors

    @classmethod
    def zero(cls, table: VariableTable, ring: Coefficients) -> "LaurentPolynomial":
        return cls(table, ring, {}, _checked=True)

    @classmethod
    def constant(cls, table: VariableTable, ring: Coefficients, c: int) -> "LaurentPolynomial":
        c = ring.reduce(c)
        if c == 0:
            return cls.zero(table, ring)
        return cls(table, ring, {(0,) * len(table): c}, _checked=True)

    @classmethod
    def variable(cls, table: VariableTable, ring: Coefficients, name: str) -> "LaurentPolynomial":
        exps = [0] * len(table)
        exps[table.index(name)] = 1
        return cls(table, ring, {tuple(exps): 1}, _checked=True)

    @classmethod
    def monomial(
        cls,
        table: VariableTable,
        ring: Coefficients,
        coeff: int,
        powers: Mapping[str, int],
    ) -> "LaurentPolynomial":
        exps = [0] * len(table)
        for name, e in powers.items():
            exps[table.index(name)] = e
        return cls(table, ring, {tuple(exps): coeff})

    def _coerce(self, other: PolyLike) -> "LaurentPolynomial":
        if isinstance(other, LaurentPolynomial):
            if other.table != self.table or other.ring != self.ring:
                raise ValueError("operands use different variable tables or rings")
            return other
        if isinstance(other, int):
            return LaurentPolynomial.constant(self.table, self.ring, other)
        return NotImplemented  # type: ignore[return-value]

    # ------------------------------------------------------------------
    # predicates

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def is_unit(self) -> bool:
        """True for a single term with unit coefficient and only unit variables."""
        if len(self.terms) != 1:
            return False
        (exps, c), = self.terms.items()
        for i, e in enumerate(exps):
            if e != 0 and not self.table.invertible[i]:
                return False
        if self.ring.p is None:
            return c in (1, -1)
        return c % self.ring.p != 0

    def invert_unit(self) -> "LaurentPolynomial":
        if not self.is_unit():
            raise ValueError(f"{self} is not a unit")
        (exps, c), = self.terms.items()
        return LaurentPolynomial(
            self.table,
            self.ring,
            {tuple(-e for e in exps): self.ring.invert(c)},
            _checked=True,
        )

    # ------------------------------------------------------------------
    # arithmetic

    def __add__(self, other: PolyLike) -> "LaurentPolynomial":
        other = self._coerce(other)
        ring = self.ring
        terms = dict(self.terms)
        for exps, c in other.terms.items():
            new = ring.reduce(terms.get(exps, 0) + c)
            if new:
                terms[exps] = new
            else:
                terms.pop(exps, None)
        return LaurentPolynomial(self.table, ring, terms, _checked=True)

    __radd__ = __add__

    def __neg__(self) -> "LaurentPolynomial":
        ring = self.ring
        return LaurentPolynomial(
            self.table, ring, {e: ring.reduce(-c) for e, c in self.terms.items()}, _checked=True
        )

    def __sub__(self, other: PolyLike) -> "LaurentPolynomial":
        return self + (-self._coerce(other))

    def __rsub__(self, other: PolyLike) -> "LaurentPolynomial":
        return self._coerce(other) + (-self)

    def __mul__(self, other: PolyLike) -> "LaurentPolynomial":
        other = self._coerce(other)
        ring = self.ring
        out: dict[tuple, int] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                new = ring.reduce(out.get(e, 0) + c1 * c2)
                if new:
                    out[e] = new
                else:
                    out.pop(e, None)
        return LaurentPolynomial(self.table, ring, out, _checked=True)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "LaurentPolynomial":
        if n < 0:
            return self.invert_unit() ** (-n)
        result = LaurentPolynomial.constant(self.table, self.ring, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base if n > 1 else base
            n >>= 1
        return result

    def __eq__(self, other: object) -> bool:
        if isinstance(other, int):
            return self == LaurentPolynomial.constant(self.table, self.ring, other)
        return (
            isinstance(other, LaurentPolynomial)
            and self.table == other.table
            and self.ring == other.ring
            and self.terms == other.terms
        )

    def __hash__(self) -> int:
        return hash((self.ring, frozenset(self.terms.items())))

    # ------------------------------------------------------------------
    # substitution and evaluation

    def substitute(self, assignments: Mapping[str, PolyLike]) -> "LaurentPolynomial":
        """Simultaneously substitute polynomials for variables.

        Unassigned variables are kept.  A variable flagged invertible may
        only receive a unit (a single term with unit coefficient supported
        on invertible variables); likewise any variable occurring with a
        negative exponent.
        """
        table, ring = self.table, self.ring
        values: dict[int, LaurentPolynomial] = {}
        for name, val in assignments.items():
            i = table.index(name)
            poly = val if isinstance(val, LaurentPolynomial) else LaurentPolynomial.constant(table, ring, val)
            poly = self._coerce(poly)
            if table.invertible[i] and not poly.is_unit():
                raise ValueError(
                    f"substituting a non-unit for invertible variable {name!r}"
                )
            values[i] = poly
        if not values:
            return self
        out = LaurentPolynomial.zero(table, ring)
        for exps, c in self.terms.items():
            factor = LaurentPolynomial.constant(table, ring, c)
            residual = list(exps)
            for i, poly in values.items():
                e = exps[i]
                if e == 0:
                    continue
                residual[i] = 0
                factor = factor * (poly ** e)
            mono = LaurentPolynomial(table, ring, {tuple(residual): 1}, _checked=True)
            out = out + factor * mono
        return out

    def evaluate(self, point: Mapping[str, int], p: int | None = None) -> int:
        """Evaluate at a point with coordinates in F_p.

        ``p`` defaults to the polynomial's own characteristic and must be a
        prime.  Every occurring variable needs a value; invertible variables
        must receive nonzero values.
        """
        if p is None:
            p = self.ring.p
        if p is None:
            raise ValueError("a prime characteristic is required for evaluation")
        field = Coefficients.prime_field(p)
        table = self.table
        occurring = set()
        for exps in self.terms:
            for i, e in enumerate(exps):
                if e != 0:
                    occurring.add(i)
        vals: dict[int, int] = {}
        for i in occurring:
            name = table.names[i]
            if name not in point:
                raise ValueError(f"no value assigned to variable {name!r}")
            v = point[name] % p
            if v == 0 and table.invertible[i]:
                raise ValueError(f"zero assigned to invertible variable {name!r}")
            vals[i] = v
        total = 0
        for exps, c in self.terms.items():
            term = c % p
            for i, e in enumerate(exps):
                if e == 0:
                    continue
                base = vals[i] if e > 0 else field.invert(vals[i])
                term = term * pow(base, abs(e), p) % p
            total = (total + term) % p
        return total

    def reduce_mod(self, p: int) -> "LaurentPolynomial":
        """The image of this integer polynomial in F_p (same table)."""
        return LaurentPolynomial(self.table, Coefficients.prime_field(p), self.terms)

    # ------------------------------------------------------------------
    # printing

    def _sorted_terms(self) -> list[tuple[tuple, int]]:
        return sorted(self.terms.items(), key=lambda t: t[0], reverse=True)

    def canonical_text(self) -> str:
        if not self.terms:
            return "0"
        pieces = []
        for exps, c in self._sorted_terms():
            factors = [
                f"{self.table.names[i]}^{e}" if e != 1 else self.table.names[i]
                for i, e in enumerate(exps)
                if e != 0
            ]
            body = "*".join(factors)
            mag = abs(c)
            if body:
                coeff = "" if mag == 1 else f"{mag}*"
                text = coeff + body
            else:
                text = str(mag)
            if not pieces:
                pieces.append(("-" if c < 0 else "") + text)
            else:
                pieces.append(("- " if c < 0 else "+ ") + text)
        return " ".join(pieces)

    def to_json_terms(self) -> list[dict]:
        out = []
        for exps, c in self._sorted_terms():
            out.append(
                {
                    "exponents": {
                        self.table.names[i]: e for i, e in enumerate(exps) if e != 0
                    },
                    "coefficient": c,
                }
            )
        return out

    def __str__(self) -> str:
        return self.canonical_text()

    def __repr__(self) -> str:
        return f"<{self.canonical_text()} over {self.ring}>"


# ----------------------------------------------------------------------
# exact division


def _monomial_content(poly: LaurentPolynomial) -> tuple:
    """Per-variable minimum exponent across all terms."""
    mins = None
    for exps in poly.terms:
        if mins is None:
            mins = list(exps)
        else:
            mins = [min(a, b) for a, b in zip(mins, exps)]
    return tuple(mins or ())


def _shift(poly: LaurentPolynomial, shift: tuple, table: VariableTable) -> dict:
    return {tuple(e - s for e, s in zip(exps, shift)): c for exps, c in poly.terms.items()}


def exact_divide(num: LaurentPolynomial, den: LaurentPolynomial) -> LaurentPolynomial | None:
    """Return ``q`` with ``q * den == num`` exactly, or None when no Laurent
    quotient exists.

    Division by the zero polynomial raises ``ZeroDivisionError``.  The
    algorithm strips monomial content from both operands, performs
    leading-term reduction in the ordinary polynomial cone (valid because
    the coefficients form an integral domain), and re-applies the content;
    a quotient with negative exponents at non-invertible variables counts
    as a failure.
    """
    if den.table != num.table or den.ring != num.ring:
        raise ValueError("operands use different variable tables or rings")
    if den.is_zero:
        raise ZeroDivisionError("division by the zero polynomial")
    table, ring = num.table, num.ring
    if num.is_zero:
        return num

    shift_n = _monomial_content(num)
    shift_d = _monomial_content(den)
    rem = _shift(num, shift_n, table)
    dterms = _shift(den, shift_d, table)
    lead_d = max(dterms)
    lead_dc = dterms[lead_d]

    quo: dict[tuple, int] = {}
    while rem:
        lead_r = max(rem)
        exps = tuple(a - b for a, b in zip(lead_r, lead_d))
        if any(e < 0 for e in exps):
            return None
        c = rem[lead_r]
        if ring.p is None:
            if c % lead_dc != 0:
                return None
            qc = c // lead_dc
        else:
            qc = c * ring.invert(lead_dc) % ring.p
        quo[exps] = qc
        for de, dc in dterms.items():
            e = tuple(a + b for a, b in zip(exps, de))
            new = ring.reduce(rem.get(e, 0) - qc * dc)
            if new:
                rem[e] = new
            else:
                rem.pop(e, None)

    net = tuple(a - b for a, b in zip(shift_n, shift_d))
    result: dict[tuple, int] = {}
    for exps, c in quo.items():
        e = tuple(a + b for a, b in zip(exps, net))
        for i, v in enumerate(e):
            if v < 0 and not table.invertible[i]:
                return None
        result[e] = c
    return LaurentPolynomial(table, ring, result, _checked=True)
