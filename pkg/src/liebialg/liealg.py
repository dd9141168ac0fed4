"""Lie algebras from structure constants; wedge and tensor calculus.

Elements, wedges and tensors carry PolyExpr coefficients so that everything
stays exact and may depend on free parameters.  All values are immutable.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations

from .symkernel import PolyExpr, Q, poly, nullspace, rref

__all__ = [
    "LieAlgebra", "AlgElement", "WedgeElement", "TensorElement",
    "bracket", "jacobi_residual", "ad_tensor", "schouten",
    "invariant_tensors", "apply_linear_map",
]


class LieAlgebra:
    """Finite-dimensional Lie algebra presented by structure constants.

    Structure constants are entered for ordered generator pairs i < j only;
    antisymmetry fills in the rest.  The Jacobi identity is *not* imposed at
    construction -- validate with :func:`jacobi_residual`.
    """

    __slots__ = ("names", "_sc", "_index")

    def __init__(self, names, brackets):
        """``brackets`` maps (name_i, name_j) -> {name_k: rational coefficient}
        for generators appearing earlier,later in ``names``.  Missing pairs are
        zero (e.g. central generators need no entries).
        """
        self.names = tuple(names)
        if len(set(self.names)) != len(self.names):
            raise ValueError("duplicate generator names")
        self._index = {g: i for i, g in enumerate(self.names)}
        n = len(self.names)
        sc = {}
        for (x, y), terms in brackets.items():
            i, j = self._index[x], self._index[y]
            if i == j:
                raise ValueError(f"bracket [{x},{x}] must not be declared")
            vals = {self._index[z]: Fraction(c) for z, c in terms.items() if c}
            if i < j:
                sc[(i, j)] = vals
            else:
                sc[(j, i)] = {k: -c for k, c in vals.items()}
        self._sc = sc

    @property
    def dim(self):
        return len(self.names)

    def index(self, name):
        return self._index[name]

    def sc(self, i, j):
        """[X_i, X_j] as a dict k -> Fraction."""
        if i == j:
            return {}
        if i < j:
            return self._sc.get((i, j), {})
        return {k: -c for k, c in self._sc.get((j, i), {}).items()}

    def gen(self, name):
        """Basis generator as an AlgElement."""
        i = self._index[name]
        coeffs = [PolyExpr.zero()] * self.dim
        coeffs[i] = PolyExpr.const(1)
        return AlgElement(self, tuple(coeffs))

    def element(self, mapping):
        coeffs = [PolyExpr.zero()] * self.dim
        for name, c in mapping.items():
            coeffs[self._index[name]] = poly(c)
        return AlgElement(self, tuple(coeffs))

    def __eq__(self, other):
        return (isinstance(other, LieAlgebra) and self.names == other.names
                and self._sc == other._sc)

    def __repr__(self):
        return f"LieAlgebra({', '.join(self.names)})"


class AlgElement:
    __slots__ = ("algebra", "coeffs")

    def __init__(self, algebra, coeffs):
        if len(coeffs) != algebra.dim:
            raise ValueError("dimension mismatch")
        self.algebra = algebra
        self.coeffs = tuple(poly(c) for c in coeffs)

    def __add__(self, other):
        self._check(other)
        return AlgElement(self.algebra,
                          tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other):
        self._check(other)
        return AlgElement(self.algebra,
                          tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self):
        return AlgElement(self.algebra, tuple(-a for a in self.coeffs))

    def scale(self, s):
        s = poly(s)
        return AlgElement(self.algebra, tuple(s * a for a in self.coeffs))

    def _check(self, other):
        if self.algebra is not other.algebra and self.algebra != other.algebra:
            raise ValueError("elements of different algebras")

    def is_zero(self):
        return all(not c for c in self.coeffs)

    def __eq__(self, other):
        return isinstance(other, AlgElement) and self.coeffs == other.coeffs

    def __str__(self):
        parts = [f"({c})*{g}" for c, g in zip(self.coeffs, self.algebra.names) if c]
        return " + ".join(parts) if parts else "0"

    __repr__ = __str__


def bracket(x, y):
    """Bilinear antisymmetric extension of the structure constants."""
    x._check(y)
    L = x.algebra
    out = [PolyExpr.zero()] * L.dim
    for i, ci in enumerate(x.coeffs):
        if not ci:
            continue
        for j, cj in enumerate(y.coeffs):
            if not cj:
                continue
            for k, c in L.sc(i, j).items():
                out[k] = out[k] + ci * cj * c
    return AlgElement(L, tuple(out))


def jacobi_residual(L):
    """[[X_i,X_j],X_k] + cyclic, for all i<j<k.  Empty means Lie algebra."""
    out = []
    for i, j, k in combinations(range(L.dim), 3):
        xi, xj, xk = (L.gen(L.names[t]) for t in (i, j, k))
        res = (bracket(bracket(xi, xj), xk)
               + bracket(bracket(xj, xk), xi)
               + bracket(bracket(xk, xi), xj))
        if not res.is_zero():
            out.append(((L.names[i], L.names[j], L.names[k]), res))
    return out


# ---------------------------------------------------------------------------
# wedge and tensor elements
# ---------------------------------------------------------------------------

def _sort_tuple(idx):
    """Sort an index tuple, returning (sorted, sign); sign 0 on repeats."""
    idx = list(idx)
    sign = 1
    for a in range(len(idx)):
        for b in range(len(idx) - 1 - a):
            if idx[b] > idx[b + 1]:
                idx[b], idx[b + 1] = idx[b + 1], idx[b]
                sign = -sign
    if len(set(idx)) != len(idx):
        return tuple(idx), 0
    return tuple(idx), sign


class _Multilinear:
    __slots__ = ("algebra", "degree", "terms")

    def __init__(self, algebra, degree, terms):
        self.algebra = algebra
        self.degree = degree
        clean = {}
        for key, c in terms.items():
            c = poly(c)
            if c:
                clean[tuple(key)] = c
        self.terms = clean

    def coeff(self, key):
        return self.terms.get(tuple(key), PolyExpr.zero())

    def is_zero(self):
        return not self.terms

    def __eq__(self, other):
        return (type(self) is type(other) and self.degree == other.degree
                and self.terms == other.terms)

    def _binop(self, other, op):
        if type(self) is not type(other) or self.degree != other.degree:
            raise ValueError("degree mismatch")
        out = dict(self.terms)
        for key, c in other.terms.items():
            out[key] = op(out.get(key, PolyExpr.zero()), c)
        return type(self)(self.algebra, self.degree, out)

    def __add__(self, other):
        return self._binop(other, lambda a, b: a + b)

    def __sub__(self, other):
        return self._binop(other, lambda a, b: a - b)

    def __neg__(self):
        return self.scale(-1)

    def scale(self, s):
        s = poly(s)
        return type(self)(self.algebra, self.degree,
                          {key: s * c for key, c in self.terms.items()})

    def map_coeffs(self, fn):
        return type(self)(self.algebra, self.degree,
                          {key: fn(c) for key, c in self.terms.items()})

    def substitute(self, bindings):
        return self.map_coeffs(lambda c: c.substitute(bindings))


class WedgeElement(_Multilinear):
    """Element of Lambda^2 g or Lambda^3 g on strictly increasing index tuples.

    The tensor normalization is X^Y = X(x)Y - Y(x)X (no 1/2), and for degree 3
    the full signed sum over permutations (no 1/6).
    """

    def __init__(self, algebra, degree, terms):
        fixed = {}
        for key, c in terms.items():
            key, sign = _sort_tuple(tuple(key))
            if sign == 0:
                continue
            c = poly(c) if sign == 1 else -poly(c)
            fixed[key] = fixed.get(key, PolyExpr.zero()) + c
        super().__init__(algebra, degree, fixed)

    @staticmethod
    def from_pairs(algebra, pairs, degree=2):
        """Build from (coefficient, name, name[, name]) tuples."""
        terms = {}
        for coeff, *gens in pairs:
            key, sign = _sort_tuple(tuple(algebra.index(g) for g in gens))
            if sign == 0:
                continue
            c = poly(coeff) if sign == 1 else -poly(coeff)
            terms[key] = terms.get(key, PolyExpr.zero()) + c
        return WedgeElement(algebra, degree, terms)

    def signed_coeff(self, gens):
        """Coefficient on an arbitrary-order wedge of named generators."""
        key, sign = _sort_tuple(tuple(self.algebra.index(g) for g in gens))
        if sign == 0:
            return PolyExpr.zero()
        c = self.coeff(key)
        return c if sign == 1 else -c

    def to_tensor(self):
        from itertools import permutations
        out = {}
        for key, c in self.terms.items():
            for perm in permutations(range(self.degree)):
                _, sign = _sort_tuple(perm)
                tk = tuple(key[t] for t in perm)
                out[tk] = out.get(tk, PolyExpr.zero()) + (c if sign == 1 else -c)
        return TensorElement(self.algebra, self.degree, out)

    def __str__(self):
        if not self.terms:
            return "0"
        names = self.algebra.names
        parts = []
        for key in sorted(self.terms):
            w = "^".join(names[i] for i in key)
            parts.append(f"({self.terms[key]})*{w}")
        return " + ".join(parts)

    __repr__ = __str__


class TensorElement(_Multilinear):
    """Element of g tensor g (degree 2) or g^(x)3 (degree 3)."""

    @staticmethod
    def from_pairs(algebra, pairs, degree=2):
        terms = {}
        for coeff, *gens in pairs:
            key = tuple(algebra.index(g) for g in gens)
            terms[key] = terms.get(key, PolyExpr.zero()) + poly(coeff)
        return TensorElement(algebra, degree, terms)

    def to_wedge(self):
        """Project an antisymmetric tensor onto the wedge basis.

        Raises if the tensor is not antisymmetric (so the projection would
        lose information).
        """
        out = {}
        for key, c in self.terms.items():
            skey, sign = _sort_tuple(key)
            if sign == 0:
                raise ValueError("tensor has a repeated-index component")
            want = self.coeff(skey) if sign == 1 else -self.coeff(skey)
            if c != want:
                raise ValueError("tensor is not antisymmetric")
            if key == skey:
                out[skey] = c
        return WedgeElement(self.algebra, self.degree, out)

    def __str__(self):
        if not self.terms:
            return "0"
        names = self.algebra.names
        parts = []
        for key in sorted(self.terms):
            w = "(x)".join(names[i] for i in key)
            parts.append(f"({self.terms[key]})*{w}")
        return " + ".join(parts)

    __repr__ = __str__


def ad_tensor(x, t):
    """Leibniz extension of ad_x to degree-2/3 tensors or wedges.

    ``x`` may be a generator name or an AlgElement.
    """
    L = t.algebra
    if isinstance(x, str):
        x = L.gen(x)
    if t.degree not in (2, 3):
        raise ValueError(f"unsupported degree {t.degree}")
    is_wedge = isinstance(t, WedgeElement)
    out = {}
    for key, c in t.terms.items():
        for slot in range(t.degree):
            j = key[slot]
            for i, ci in enumerate(x.coeffs):
                if not ci:
                    continue
                for k, s in L.sc(i, j).items():
                    nk = list(key)
                    nk[slot] = k
                    coeff = ci * c * s
                    if is_wedge:
                        nk, sign = _sort_tuple(tuple(nk))
                        if sign == 0:
                            continue
                        if sign < 0:
                            coeff = -coeff
                    else:
                        nk = tuple(nk)
                    out[tuple(nk)] = out.get(tuple(nk), PolyExpr.zero()) + coeff
    cls = WedgeElement if is_wedge else TensorElement
    return cls(L, t.degree, out)


def schouten(r):
    """Schouten bracket [[r,r]] of a degree-2 wedge, as a degree-3 wedge.

    Computed pair-by-pair on the wedge basis:  for stored terms c_p X_i^X_j and
    c_q X_k^X_l the contribution is (1/2) c_p c_q times

        [X_i,X_k]^X_j^X_l - [X_i,X_l]^X_j^X_k
        - [X_j,X_k]^X_i^X_l + [X_j,X_l]^X_i^X_k

    summed over ordered pairs (p, q) including p = q.
    """
    L = r.algebra
    out = {}

    def add(vec, other1, other2, coeff):
        for k, s in vec.items():
            key, sign = _sort_tuple((k, other1, other2))
            if sign == 0:
                continue
            c = coeff * s if sign == 1 else -(coeff * s)
            out[key] = out.get(key, PolyExpr.zero()) + c

    items = list(r.terms.items())
    half = Q(1, 2)
    for (i, j), cp in items:
        for (k, l), cq in items:
            c = cp * cq * half
            add(L.sc(i, k), j, l, c)
            add(L.sc(i, l), j, k, -c)
            add(L.sc(j, k), i, l, -c)
            add(L.sc(j, l), i, k, c)
    return WedgeElement(L, 3, out)


def invariant_tensors(L, degree=2):
    """Basis of Ad-invariant degree-2 tensors: {t : ad_tensor(X_i,t)=0 for all i}."""
    if degree != 2:
        raise ValueError("unsupported degree")
    n = L.dim
    keys = [(i, j) for i in range(n) for j in range(n)]
    col = {k: c for c, k in enumerate(keys)}
    rows = []
    for g in L.names:
        x = L.gen(g)
        for src in keys:
            t = TensorElement(L, 2, {src: PolyExpr.const(1)})
            img = ad_tensor(x, t)
            for dst, c in img.terms.items():
                rows.append((g, src, dst, c.const_value()))
    # assemble equations: for each generator and each dst component, sum over src
    eq = {}
    for g, src, dst, c in rows:
        eq.setdefault((g, dst), [Fraction(0)] * len(keys))[col[src]] += c
    matrix = [v for _, v in sorted(eq.items(), key=lambda kv: (kv[0][0], kv[0][1]))]
    basis = nullspace(matrix) if matrix else [
        [Fraction(1) if t == s else Fraction(0) for t in range(len(keys))]
        for s in range(len(keys))]
    out = []
    for vec in basis:
        terms = {keys[c]: PolyExpr.const(v) for c, v in enumerate(vec) if v}
        out.append(TensorElement(L, 2, terms))
    return out


def apply_linear_map(matrix, source, new_names=None, reference=None):
    """Change of basis X'_i = sum_j matrix[i][j] X_j, with homomorphism report.

    Returns (LieAlgebra in the new basis, residuals).  ``residuals`` compares
    [X'_i, X'_j] against the bracket table of ``reference`` (default: the
    source table), i.e. it is empty iff the map is an isomorphism onto the
    reference presentation.  Raises on singular matrices.
    """
    n = source.dim
    mat = [[Fraction(v) for v in row] for row in matrix]
    if len(mat) != n or any(len(row) != n for row in mat):
        raise ValueError("matrix shape does not match algebra dimension")
    red, piv = rref([list(row) for row in mat])
    if len(piv) != n:
        raise ValueError("singular matrix")
    if reference is None:
        reference = source
    new_names = tuple(new_names) if new_names else source.names
    prim = [source.element(dict(zip(source.names, row))) for row in mat]

    # invert the matrix to express brackets in the new basis
    aug = [row[:] + [Fraction(1) if i == j else Fraction(0) for j in range(n)]
           for i, row in enumerate(mat)]
    red, _ = rref(aug)
    inv = [row[n:] for row in red]

    brackets = {}
    residuals = []
    for i in range(n):
        for j in range(i + 1, n):
            br = bracket(prim[i], prim[j])
            # coefficients in the new basis: c'_k = sum_t br_t * inv[t][k]
            newc = [sum((br.coeffs[t] * inv[t][k] for t in range(n)),
                        PolyExpr.zero()) for k in range(n)]
            entry = {}
            for k in range(n):
                if newc[k]:
                    if not newc[k].is_const():
                        raise ValueError("non-constant structure constants")
                    entry[new_names[k]] = newc[k].const_value()
            if entry:
                brackets[(new_names[i], new_names[j])] = entry
            # residual against the reference table
            want = [PolyExpr.zero()] * n
            for k, c in reference.sc(i, j).items():
                want[k] = PolyExpr.const(c)
            diff = [a - b for a, b in zip(newc, want)]
            if any(diff):
                residuals.append(((new_names[i], new_names[j]),
                                  AlgElement(source, tuple(diff))))
    return LieAlgebra(new_names, brackets), residuals
