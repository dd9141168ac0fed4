"""Exact arithmetic kernel: rationals, sparse Laurent polynomials, linear algebra.

Every value is immutable and every operation is a pure function, so the whole
module is safe to use concurrently without coordination.  Coefficients are
``fractions.Fraction`` throughout; nothing here ever rounds.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm

Q = Fraction

__all__ = [
    "Q", "Symbol", "PolyExpr", "LinearSystem", "ContextError", "UnitError",
    "poly", "rref", "nullspace", "solve_linear", "linear_system_from",
    "span_equal", "SpanWitness",
]


class ContextError(ValueError):
    """A symbol name is used with inconsistent invertibility flags."""


class UnitError(ValueError):
    """A non-unit value was bound to a symbol occurring with negative power."""


@dataclass(frozen=True)
class Symbol:
    name: str
    invertible: bool = False

    def __repr__(self):
        return f"Symbol({self.name!r}{', invertible=True' if self.invertible else ''})"


# A monomial is a tuple of (name, exponent) pairs, sorted by name, exponents nonzero.
_EMPTY = ()


def _mono_mul(m1, m2):
    out = dict(m1)
    for name, e in m2:
        ne = out.get(name, 0) + e
        if ne:
            out[name] = ne
        else:
            out.pop(name, None)
    return tuple(sorted(out.items()))


def _mono_deg(m):
    return sum(e for _, e in m)


def _mono_key(m):
    # graded, then lexicographic on the (name, exponent) sequence
    return (_mono_deg(m), m)


class PolyExpr:
    """Sparse multivariate polynomial over Q, Laurent in flagged symbols.

    ``terms`` maps monomials to nonzero Fractions; ``inv`` records which symbol
    names of the expression's context are invertible.  Negative exponents are
    only legal on invertible names.
    """

    __slots__ = ("terms", "inv", "_hash")

    def __init__(self, terms, inv=frozenset()):
        clean = {}
        for m, c in terms.items():
            if not isinstance(c, Fraction):
                c = Fraction(c)
            if c == 0:
                continue
            for name, e in m:
                if e < 0 and name not in inv:
                    raise ContextError(
                        f"negative power of non-invertible symbol {name!r}")
            clean[m] = c
        object.__setattr__(self, "terms", clean)
        object.__setattr__(self, "inv", frozenset(inv))
        object.__setattr__(self, "_hash", None)

    # -- construction ------------------------------------------------------
    @staticmethod
    def zero():
        return PolyExpr({})

    @staticmethod
    def const(c):
        c = Fraction(c)
        return PolyExpr({_EMPTY: c}) if c else PolyExpr({})

    @staticmethod
    def var(sym):
        if isinstance(sym, str):
            sym = Symbol(sym)
        inv = frozenset([sym.name]) if sym.invertible else frozenset()
        return PolyExpr({((sym.name, 1),): Fraction(1)}, inv)

    # -- context -----------------------------------------------------------
    def names(self):
        out = set()
        for m in self.terms:
            for name, _ in m:
                out.add(name)
        return out

    def _merged_inv(self, other):
        mine, theirs = self.names(), other.names()
        for name in self.inv.symmetric_difference(other.inv):
            known_here = name in mine or name in self.inv
            known_there = name in theirs or name in other.inv
            if known_here and known_there:
                raise ContextError(
                    f"symbol {name!r} is invertible in one context but not the other")
        return self.inv | other.inv

    # -- predicates / access -------------------------------------------------
    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def is_const(self):
        return not self.terms or (len(self.terms) == 1 and _EMPTY in self.terms)

    def const_value(self):
        if not self.is_const():
            raise ValueError("not a constant: %s" % self)
        return self.terms.get(_EMPTY, Fraction(0))

    def constant_term(self):
        return self.terms.get(_EMPTY, Fraction(0))

    def total_degree(self):
        return max((_mono_deg(m) for m in self.terms), default=0)

    def degree_in(self, name):
        return max((dict(m).get(name, 0) for m in self.terms), default=0)

    def coeff_of(self, mono):
        return self.terms.get(tuple(sorted(mono)), Fraction(0))

    def as_unit(self):
        """Return (coeff, mono) if this is a single term in invertible symbols."""
        if len(self.terms) != 1:
            return None
        (m, c), = self.terms.items()
        if all(name in self.inv for name, _ in m):
            return (c, m)
        return None

    # -- arithmetic ----------------------------------------------------------
    def _coerce(self, other):
        if isinstance(other, PolyExpr):
            return other
        if isinstance(other, (int, Fraction)):
            return PolyExpr.const(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        inv = self._merged_inv(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            nc = out.get(m, Fraction(0)) + c
            if nc:
                out[m] = nc
            else:
                out.pop(m, None)
        return PolyExpr(out, inv)

    __radd__ = __add__

    def __neg__(self):
        return PolyExpr({m: -c for m, c in self.terms.items()}, self.inv)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        inv = self._merged_inv(other)
        out = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = _mono_mul(m1, m2)
                nc = out.get(m, Fraction(0)) + c1 * c2
                if nc:
                    out[m] = nc
                else:
                    out.pop(m, None)
        return PolyExpr(out, inv)

    __rmul__ = __mul__

    def __truediv__(self, other):
        """Divide by a single-term divisor.

        Exact when every dividend monomial carries the divisor's exponents;
        otherwise the divisor must be a unit (invertible symbols only).
        """
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if len(other.terms) != 1:
            raise UnitError("division only by single-term divisors")
        (m, c), = other.terms.items()
        inv = self.inv | other.inv
        out = {}
        for mono, coeff in self.terms.items():
            d = dict(mono)
            for name, e in m:
                d[name] = d.get(name, 0) - e
                if d[name] == 0:
                    del d[name]
            for name, e in d.items():
                if e < 0 and name not in inv:
                    raise UnitError(
                        f"{other} does not divide {self} exactly "
                        f"(negative power of {name!r})")
            out[tuple(sorted(d.items()))] = coeff / c
        return PolyExpr(out, inv)

    def __pow__(self, n):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            unit = self.as_unit()
            if unit is None:
                raise UnitError("negative power of a non-unit")
            c, m = unit
            return PolyExpr({tuple((nm, -e) for nm, e in m): 1 / c}, self.inv) ** (-n)
        result = PolyExpr.const(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base if n > 1 else base
            n >>= 1
        return result

    # -- structural ops --------------------------------------------------------
    def substitute(self, bindings):
        """Replace symbols by expressions.  ``bindings`` maps names (or Symbols)
        to PolyExpr / Fraction / int.  Names absent from the expression are
        ignored.  Substituting into a negative power requires the bound value
        to be a unit.
        """
        binds = {}
        for key, val in bindings.items():
            name = key.name if isinstance(key, Symbol) else key
            if not isinstance(val, PolyExpr):
                val = PolyExpr.const(val)
            binds[name] = val
        out = PolyExpr({}, self.inv.difference(binds))
        for m, c in self.terms.items():
            term = PolyExpr({_EMPTY: c}, out.inv)
            for name, e in m:
                if name not in binds:
                    term = term * PolyExpr({((name, e),): 1}, self.inv)
                    continue
                val = binds[name]
                if e >= 0:
                    term = term * val ** e
                else:
                    unit = val.as_unit()
                    if unit is None:
                        raise UnitError(
                            f"{name!r} occurs with negative power; "
                            f"binding {val} is not a unit")
                    term = term * val ** e
            out = out + term
        return out

    def derivative(self, name):
        if isinstance(name, Symbol):
            name = name.name
        out = {}
        for m, c in self.terms.items():
            d = dict(m)
            e = d.get(name, 0)
            if e == 0:
                continue
            if e == 1:
                d.pop(name)
            else:
                d[name] = e - 1
            mono = tuple(sorted(d.items()))
            nc = out.get(mono, Fraction(0)) + c * e
            if nc:
                out[mono] = nc
            else:
                out.pop(mono, None)
        return PolyExpr(out, self.inv)

    def truncate_degree(self, n):
        """Drop monomials of total degree > n."""
        return PolyExpr({m: c for m, c in self.terms.items() if _mono_deg(m) <= n},
                        self.inv)

    def homogeneous_part(self, n):
        return PolyExpr({m: c for m, c in self.terms.items() if _mono_deg(m) == n},
                        self.inv)

    def monic(self):
        """Scale so the leading coefficient (canonical order) is 1."""
        if not self.terms:
            return self
        lead = max(self.terms, key=_mono_key)
        return PolyExpr({m: c / self.terms[lead] for m, c in self.terms.items()},
                        self.inv)

    # -- comparison / output -----------------------------------------------------
    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            object.__setattr__(self, "_hash", hash(frozenset(self.terms.items())))
        return self._hash

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda t: _mono_key(t[0]), reverse=True)

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for m, c in self.sorted_terms():
            factors = []
            if abs(c) != 1 or not m:
                factors.append(str(abs(c)))
            for name, e in m:
                factors.append(name if e == 1 else f"{name}^{e}")
            s = "*".join(factors)
            if not parts:
                parts.append(s if c > 0 else "-" + s)
            else:
                parts.append(("+ " if c > 0 else "- ") + s)
        return " ".join(parts)

    def __repr__(self):
        return f"PolyExpr({self})"


def poly(value):
    """Coerce ints/Fractions/Symbols/PolyExpr to PolyExpr."""
    if isinstance(value, PolyExpr):
        return value
    if isinstance(value, Symbol):
        return PolyExpr.var(value)
    return PolyExpr.const(value)


# ---------------------------------------------------------------------------
# exact linear algebra
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class LinearSystem:
    """Homogeneous system ``matrix * x = 0`` with labelled unknowns."""
    matrix: tuple            # tuple of row tuples of Fraction
    unknowns: tuple          # unknown labels (strings)

    @staticmethod
    def from_rows(rows, unknowns):
        mat = tuple(tuple(Fraction(v) for v in row) for row in rows)
        for row in mat:
            if len(row) != len(unknowns):
                raise ValueError("row length does not match unknown count")
        return LinearSystem(mat, tuple(unknowns))


def _bareiss_echelon(mat):
    """Fraction-free Bareiss elimination on an integer matrix (in place).

    Returns (matrix, pivot list) where pivot list holds (row, col) pairs.
    """
    rows = len(mat)
    cols = len(mat[0]) if rows else 0
    pivots = []
    prev = 1
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, rows) if mat[i][c] != 0), None)
        if piv is None:
            continue
        if piv != r:
            mat[r], mat[piv] = mat[piv], mat[r]
        for i in range(r + 1, rows):
            for j in range(c + 1, cols):
                mat[i][j] = (mat[r][c] * mat[i][j] - mat[i][c] * mat[r][j]) // prev
            mat[i][c] = 0
        pivots.append((r, c))
        prev = mat[r][c]
        r += 1
        if r == rows:
            break
    return mat, pivots


def rref(rows):
    """Reduced row echelon form over Q via fraction-free elimination.

    Accepts an iterable of rows of Fraction/int; returns (rref rows as lists of
    Fraction, pivot column list).  Deterministic: leftmost pivot, top row first.
    """
    work = []
    for row in rows:
        row = [Fraction(v) for v in row]
        mult = lcm(*(v.denominator for v in row)) if row else 1
        g = 0
        scaled = [int(v * mult) for v in row]
        for v in scaled:
            g = gcd(g, abs(v))
        if g > 1:
            scaled = [v // g for v in scaled]
        work.append(scaled)
    if not work:
        return [], []
    ech, pivots = _bareiss_echelon(work)
    # back substitution in Fractions
    out = [[Fraction(v) for v in row] for row in ech]
    for r, c in reversed(pivots):
        pv = out[r][c]
        out[r] = [v / pv for v in out[r]]
        for r2 in range(r):
            f = out[r2][c]
            if f:
                out[r2] = [v2 - f * v1 for v1, v2 in zip(out[r], out[r2])]
    pivot_cols = [c for _, c in pivots]
    return out, pivot_cols


def nullspace(system):
    """Exact kernel basis of a LinearSystem (or plain row iterable).

    Basis vectors are produced one per free column, in ascending column order,
    normalized so the free coordinate is 1.
    """
    if isinstance(system, LinearSystem):
        rows = system.matrix
        ncols = len(system.unknowns)
    else:
        rows = [list(r) for r in system]
        ncols = len(rows[0]) if rows else 0
    red, pivot_cols = rref(rows)
    pivset = set(pivot_cols)
    free = [c for c in range(ncols) if c not in pivset]
    basis = []
    for fc in free:
        vec = [Fraction(0)] * ncols
        vec[fc] = Fraction(1)
        for r, pc in enumerate(pivot_cols):
            vec[pc] = -red[r][fc]
        basis.append(vec)
    return basis


def solve_linear(a_rows, rhs):
    """Solve ``A x = b`` with Fraction matrix and PolyExpr right-hand side.

    Returns (particular, null_basis, conditions, free_cols) where ``particular``
    expresses every unknown as a PolyExpr in the rhs symbols plus the free
    unknowns left symbolic is NOT done here -- free unknowns are set to zero.
    ``conditions`` collects rhs combinations that must vanish for solvability
    (zero rows of A with nonzero rhs).
    """
    rows = [[Fraction(v) for v in row] for row in a_rows]
    b = [poly(v) for v in rhs]
    n = len(rows[0]) if rows else 0
    # forward elimination with partial bookkeeping on b
    aug_rows = rows
    pivots = []
    r = 0
    m = len(aug_rows)
    for c in range(n):
        piv = next((i for i in range(r, m) if aug_rows[i][c] != 0), None)
        if piv is None:
            continue
        aug_rows[r], aug_rows[piv] = aug_rows[piv], aug_rows[r]
        b[r], b[piv] = b[piv], b[r]
        pv = aug_rows[r][c]
        aug_rows[r] = [v / pv for v in aug_rows[r]]
        b[r] = b[r] * (1 / pv)
        for i in range(m):
            if i != r and aug_rows[i][c]:
                f = aug_rows[i][c]
                aug_rows[i] = [vi - f * vr for vr, vi in zip(aug_rows[r], aug_rows[i])]
                b[i] = b[i] - f * b[r]
        pivots.append((r, c))
        r += 1
        if r == m:
            break
    conditions = []
    for i in range(r, m):
        if b[i]:
            conditions.append(b[i])
    particular = [PolyExpr.zero()] * n
    for rr, cc in pivots:
        particular[cc] = b[rr]
    pivot_cols = [c for _, c in pivots]
    free_cols = [c for c in range(n) if c not in set(pivot_cols)]
    null_basis = []
    for fc in free_cols:
        vec = [Fraction(0)] * n
        vec[fc] = Fraction(1)
        for rr, pc in enumerate(pivot_cols):
            vec[pc] = -aug_rows[rr][fc]
        null_basis.append(vec)
    return particular, null_basis, conditions, free_cols


def linear_system_from(polys, unknowns):
    """Extract ``A x + rest = 0`` from polynomials linear in ``unknowns``.

    Each polynomial must be degree <= 1 in the unknown names, with Fraction
    coefficients multiplying them.  Returns (rows, rest) with rest the
    unknown-free remainder of each polynomial.
    """
    unknowns = list(unknowns)
    index = {u: i for i, u in enumerate(unknowns)}
    rows, rest = [], []
    for p in polys:
        row = [Fraction(0)] * len(unknowns)
        rem = {}
        for m, c in p.terms.items():
            hits = [(name, e) for name, e in m if name in index]
            if not hits:
                rem[m] = c
                continue
            if len(hits) > 1 or hits[0][1] != 1:
                raise ValueError(f"polynomial is not linear in unknowns: {p}")
            others = tuple(t for t in m if t[0] not in index)
            if others:
                raise ValueError(
                    f"unknown {hits[0][0]!r} has non-constant coefficient in {p}")
            row[index[hits[0][0]]] += c
        rows.append(row)
        rest.append(PolyExpr(rem, p.inv))
    return rows, rest


# ---------------------------------------------------------------------------
# linear span comparison of polynomial sets
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SpanWitness:
    equal: bool
    a_in_b: tuple | None     # coefficient rows expressing each A member in B
    b_in_a: tuple | None


def _poly_matrix(polys, monomials):
    index = {m: j for j, m in enumerate(monomials)}
    rows = []
    for p in polys:
        row = [Fraction(0)] * len(monomials)
        for m, c in p.terms.items():
            row[index[m]] = c
        rows.append(row)
    return rows


def _express(targets, basis, monomials):
    """Coefficients writing each target in the span of basis, or None."""
    if not basis:
        return tuple(() for _ in targets) if all(not t for t in targets) else None
    bmat = _poly_matrix(basis, monomials)
    cols = list(zip(*bmat))          # len(monomials) x len(basis)
    index = {m: j for j, m in enumerate(monomials)}
    out = []
    for t in targets:
        tv = [Fraction(0)] * len(monomials)
        for m, c in t.terms.items():
            tv[index[m]] = c
        part, _, conds, _ = solve_linear(
            [list(col) for col in cols], [PolyExpr.const(v) for v in tv])
        if any(conds):
            return None
        out.append(tuple(p.const_value() for p in part))
    return tuple(out)


def span_equal(set_a, set_b):
    """Decide Q-linear span equality of two polynomial lists, with witness."""
    set_a = [poly(p) for p in set_a]
    set_b = [poly(p) for p in set_b]
    monomials = sorted({m for p in set_a + set_b for m in p.terms},
                       key=_mono_key)
    a_in_b = _express(set_a, set_b, monomials)
    b_in_a = _express(set_b, set_a, monomials)
    return SpanWitness(a_in_b is not None and b_in_a is not None, a_in_b, b_in_a)


def span_rank(polys):
    """Dimension of the Q-linear span of a polynomial list."""
    polys = [poly(p) for p in polys]
    monomials = sorted({m for p in polys for m in p.terms}, key=_mono_key)
    if not monomials:
        return 0
    _, pivots = rref(_poly_matrix(polys, monomials))
    return len(pivots)
