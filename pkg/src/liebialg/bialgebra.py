"""Coboundary cocommutators, cocycle solving, co-Jacobi constraints,
classification, the bialgebra automorphism and primitive-generator families."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from .symkernel import (PolyExpr, poly, nullspace, rref, solve_linear,
                        linear_system_from, span_equal)
from .liealg import (LieAlgebra, WedgeElement, ad_tensor, schouten,
                     apply_linear_map)

__all__ = [
    "Cocommutator", "BialgebraFamily", "InconsistencyError",
    "InfeasibleSpecialization", "delta_from_r", "cocycle_residual",
    "cocycle_solve", "CocycleSolution", "cojacobi_constraints",
    "coboundary_match", "CoboundaryMatch", "rmatrix_family", "classify_point",
    "automorphism_transform", "AutomorphismReport", "specialize",
    "impose_primitive", "SpecializationReport", "normalize_constraints",
]


class InconsistencyError(RuntimeError):
    """A check that the theory guarantees has failed; implementation bug."""


class InfeasibleSpecialization(ValueError):
    def __init__(self, violated):
        self.violated = violated
        super().__init__(f"binding violates constraint: {violated}")


class Cocommutator:
    """A linear map g -> Lambda^2 g given by one wedge per generator."""

    __slots__ = ("algebra", "rows")

    def __init__(self, algebra, rows):
        rows = tuple(rows)
        if len(rows) != algebra.dim:
            raise ValueError("need one row per generator")
        self.algebra = algebra
        self.rows = rows

    def row(self, gen):
        return self.rows[self.algebra.index(gen)]

    def of(self, elem):
        """delta of an AlgElement, by linearity."""
        out = WedgeElement(self.algebra, 2, {})
        for i, c in enumerate(elem.coeffs):
            if c:
                out = out + self.rows[i].scale(c)
        return out

    def substitute(self, bindings):
        return Cocommutator(self.algebra,
                            [r.substitute(bindings) for r in self.rows])

    def __eq__(self, other):
        return (isinstance(other, Cocommutator) and self.rows == other.rows)

    def is_zero(self):
        return all(r.is_zero() for r in self.rows)

    def __str__(self):
        return "\n".join(f"delta({g}) = {row}"
                         for g, row in zip(self.algebra.names, self.rows))


def delta_from_r(L, r):
    """Coboundary cocommutator delta(X) = [1(x)X + X(x)1, r]."""
    return Cocommutator(L, [ad_tensor(L.gen(g), r) for g in L.names])


def cocycle_residual(L, delta):
    """1-cocycle residuals, one wedge per generator pair i<j (nonzero only)."""
    out = []
    for i, j in combinations(range(L.dim), 2):
        lhs = WedgeElement(L, 2, {})
        for k, c in L.sc(i, j).items():
            lhs = lhs + delta.rows[k].scale(c)
        res = (lhs - ad_tensor(L.gen(L.names[i]), delta.rows[j])
               + ad_tensor(L.gen(L.names[j]), delta.rows[i]))
        if not res.is_zero():
            out.append(((L.names[i], L.names[j]), res))
    return out


@dataclass(frozen=True)
class CocycleSolution:
    algebra: LieAlgebra
    dim: int
    params: tuple                  # parameter names, one per kernel vector
    basis: tuple                   # kernel vectors over the unknown layout
    unknown_layout: tuple          # (gen index, (j, k)) per column
    cocommutator: Cocommutator     # general cocycle with the parameters inserted

    def basis_cocommutator(self, idx):
        """The idx-th kernel vector as a concrete Cocommutator."""
        L = self.algebra
        rows = [dict() for _ in range(L.dim)]
        for col, (gi, pair) in enumerate(self.unknown_layout):
            v = self.basis[idx][col]
            if v:
                rows[gi][pair] = PolyExpr.const(v)
        return Cocommutator(L, [WedgeElement(L, 2, r) for r in rows])


def cocycle_solve(L, prefix="t"):
    """General solution of the 1-cocycle condition with unknown coefficients.

    Treats every f_i^{jk} as an unknown, extracts the linear system from the
    cocycle residual and parameterizes the kernel with fresh symbols
    ``prefix1..prefixN``.
    """
    n = L.dim
    pairs = list(combinations(range(n), 2))
    layout = [(i, pr) for i in range(n) for pr in pairs]
    unames = [f"f{i+1}_{pr[0]+1}{pr[1]+1}" for i, pr in layout]
    rows = []
    for i in range(n):
        terms = {pr: PolyExpr.var(f"f{i+1}_{pr[0]+1}{pr[1]+1}") for pr in pairs}
        rows.append(WedgeElement(L, 2, terms))
    delta = Cocommutator(L, rows)
    eqs = []
    for _, res in cocycle_residual(L, delta):
        eqs.extend(res.terms.values())
    mat, rest = linear_system_from(eqs, unames)
    if any(rest):
        raise InconsistencyError("cocycle system is not homogeneous")
    basis = nullspace(mat) if mat else nullspace([[Fraction(0)] * len(unames)])
    params = tuple(f"{prefix}{k+1}" for k in range(len(basis)))
    gen_rows = [dict() for _ in range(n)]
    for col, (gi, pr) in enumerate(layout):
        val = PolyExpr.zero()
        for kvec, pname in zip(basis, params):
            if kvec[col]:
                val = val + PolyExpr.var(pname) * kvec[col]
        if val:
            gen_rows[gi][pr] = val
    cocomm = Cocommutator(L, [WedgeElement(L, 2, r) for r in gen_rows])
    return CocycleSolution(L, len(basis), params, tuple(tuple(v) for v in basis),
                           tuple(layout), cocomm)


def normalize_constraints(polys):
    """Monic-normalize, drop zeros and duplicates, sort canonically."""
    seen = {}
    for p in polys:
        p = poly(p)
        if not p:
            continue
        p = p.monic()
        seen[str(p)] = p
    return [seen[k] for k in sorted(seen)]


def cojacobi_constraints(L, delta):
    """Polynomial constraints equivalent to the co-Jacobi identity.

    Computes the cyclic sum of (delta (x) id) o delta in the tensor cube for
    every generator and returns the deduplicated coefficient polynomials.
    """
    n = L.dim
    tens = [row.to_tensor() for row in delta.rows]
    raw = []
    for i in range(n):
        cube = {}
        for (p, q), c in tens[i].terms.items():
            for (u, v), c2 in tens[p].terms.items():
                coeff = c * c2
                base = (u, v, q)
                for key in (base, (base[2], base[0], base[1]),
                            (base[1], base[2], base[0])):
                    cube[key] = cube.get(key, PolyExpr.zero()) + coeff
        raw.extend(v for v in cube.values() if v)
    return normalize_constraints(raw)


@dataclass(frozen=True)
class CoboundaryMatch:
    r: WedgeElement               # particular solution (free coefficients at 0)
    kernel: tuple                 # wedges spanning ker(r -> delta_r)
    residual: tuple               # must vanish for delta to be coboundary

    @property
    def is_coboundary(self):
        return not self.residual


def coboundary_match(L, delta):
    """Solve delta_from_r(L, r) = delta for the wedge coefficients of r."""
    n = L.dim
    pairs = list(combinations(range(n), 2))
    unames = [f"_r{i+1}_{j+1}" for i, j in pairs]
    r_sym = WedgeElement(L, 2, {pr: PolyExpr.var(nm)
                                for pr, nm in zip(pairs, unames)})
    dr = delta_from_r(L, r_sym)
    eqs = []
    for gi in range(n):
        for pr in pairs:
            eqs.append(dr.rows[gi].coeff(pr) - delta.rows[gi].coeff(pr))
    mat, rest = linear_system_from(eqs, unames)
    particular, null_basis, conditions, _ = solve_linear(
        mat, [-p for p in rest])
    r_part = WedgeElement(L, 2, dict(zip(pairs, particular)))
    kernel = tuple(WedgeElement(L, 2,
                                {pr: PolyExpr.const(v)
                                 for pr, v in zip(pairs, vec) if v})
                   for vec in null_basis)
    return CoboundaryMatch(r_part, kernel, tuple(normalize_constraints(conditions)))


# ---------------------------------------------------------------------------
# r-matrix families and classification
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class BialgebraFamily:
    algebra: LieAlgebra
    r: WedgeElement
    delta: Cocommutator
    params: tuple                 # free parameter names
    constraints: tuple            # generated constraint polynomials
    discriminant: PolyExpr        # Schouten coefficient on the invariant direction
    invariant_wedge: tuple        # generator names giving its presentation order

    def substitute(self, bindings):
        return BialgebraFamily(
            self.algebra,
            self.r.substitute(bindings),
            self.delta.substitute(bindings),
            tuple(p for p in self.params if p not in bindings),
            tuple(c.substitute(bindings) for c in self.constraints),
            self.discriminant.substitute(bindings),
            self.invariant_wedge)


def _invariant_wedge3_axes(L):
    """Basis triples (i<j<k) spanning the ad-invariant part of Lambda^3,
    provided that part is axis-aligned."""
    n = L.dim
    keys = list(combinations(range(n), 3))
    col = {k: c for c, k in enumerate(keys)}
    matrix = []
    for g in L.names:
        x = L.gen(g)
        block = {}
        for src in keys:
            img = ad_tensor(x, WedgeElement(L, 3, {src: PolyExpr.const(1)}))
            for dst, c in img.terms.items():
                block.setdefault(dst, [Fraction(0)] * len(keys))[col[src]] += \
                    c.const_value()
        matrix.extend(v for _, v in sorted(block.items()))
    basis = nullspace(matrix) if matrix else []
    axes = []
    for vec in basis:
        nz = [c for c, v in enumerate(vec) if v]
        if len(nz) != 1:
            raise NotImplementedError(
                "invariant subspace of Lambda^3 is not axis-aligned")
        axes.append(keys[nz[0]])
    return axes


def rmatrix_family(L, r, params=None, invariant_order=None):
    """Family generated by a symbolic r-matrix.

    The constraint set comes from the modified classical Yang-Baxter equation:
    [[r,r]] must be ad-invariant, and since the ad-invariant part of Lambda^3
    is spanned by basis wedges, that is equivalent to the vanishing of every
    Schouten component outside those axes.  The discriminant is the Schouten
    coefficient along the (unique) invariant direction.
    """
    s3 = schouten(r)
    axes = _invariant_wedge3_axes(L)
    if len(axes) != 1:
        raise NotImplementedError("need a unique invariant Lambda^3 direction")
    constraints = normalize_constraints(
        c for key, c in s3.terms.items() if key not in axes)
    if invariant_order is None:
        invariant_order = tuple(L.names[t] for t in axes[0])
    disc = s3.signed_coeff(invariant_order)
    if params is None:
        params = tuple(sorted(set().union(*(c.names() for c in r.terms.values()))
                              if r.terms else ()))
    return BialgebraFamily(L, r, delta_from_r(L, r), tuple(params),
                           tuple(constraints), disc, tuple(invariant_order))


def classify_point(family, bindings):
    """Label a concrete rational point Standard / Non-standard.

    Standard: nonzero Schouten bracket satisfying the modified classical YBE.
    Non-standard: vanishing Schouten bracket (classical YBE).
    """
    for con in family.constraints:
        v = con.substitute(bindings)
        if v.is_const() and v.const_value() != 0:
            raise InfeasibleSpecialization(con)
    r_point = family.r.substitute(bindings)
    w = schouten(r_point)
    if w.is_zero():
        return "non-standard"
    L = family.algebra
    for g in L.names:
        if not ad_tensor(L.gen(g), w).is_zero():
            raise InconsistencyError(
                f"Schouten bracket not ad-invariant at point (generator {g})")
    return "standard"


# ---------------------------------------------------------------------------
# the bialgebra automorphism
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class AutomorphismReport:
    rows_equal: dict              # generator -> bool, transformed row == original
    r_equal: bool
    row_pairing: dict             # generator -> generator whose row it came from
    constraints_span_preserved: bool


def _transform_wedge2(w, mat):
    L = w.algebra
    out = {}
    for (p, q), c in w.terms.items():
        for u in range(L.dim):
            if not mat[p][u]:
                continue
            for v in range(L.dim):
                if not mat[q][v]:
                    continue
                key, sign = ((u, v), 1) if u < v else ((v, u), -1)
                if u == v:
                    continue
                val = c * (mat[p][u] * mat[q][v] * sign)
                out[key] = out.get(key, PolyExpr.zero()) + val
    return WedgeElement(L, 2, out)


def automorphism_transform(family, gmatrix, pmap):
    """Push a bialgebra family through an algebra automorphism.

    ``gmatrix`` gives the automorphism O (rows = images of generators) and
    ``pmap`` the accompanying parameter substitution.  Returns the transformed
    family (delta' = (O(x)O) o delta o O^{-1}, parameters renamed) plus an
    equality report against the original.
    """
    L = family.algebra
    mat = [[Fraction(v) for v in row] for row in gmatrix]
    _, residuals = apply_linear_map(mat, L)
    if residuals:
        raise ValueError("gmap is not a Lie algebra automorphism")
    n = L.dim
    aug = [row[:] + [Fraction(1) if i == j else Fraction(0) for j in range(n)]
           for i, row in enumerate(mat)]
    red, _ = rref(aug)
    inv = [row[n:] for row in red]
    new_rows = []
    pairing = {}
    for i, g in enumerate(L.names):
        acc = WedgeElement(L, 2, {})
        support = [j for j in range(n) if inv[i][j]]
        for j in support:
            acc = acc + _transform_wedge2(family.delta.rows[j], mat).scale(inv[i][j])
        pairing[g] = L.names[support[0]] if len(support) == 1 else None
        new_rows.append(acc.substitute(pmap))
    delta_t = Cocommutator(L, new_rows)
    r_t = _transform_wedge2(family.r, mat).substitute(pmap)
    cons_t = normalize_constraints([c.substitute(pmap) for c in family.constraints])
    disc_t = family.discriminant.substitute(pmap)
    fam_t = BialgebraFamily(L, r_t, delta_t, family.params, tuple(cons_t),
                            disc_t, family.invariant_wedge)
    report = AutomorphismReport(
        rows_equal={g: delta_t.rows[i] == family.delta.rows[i]
                    for i, g in enumerate(L.names)},
        r_equal=(r_t == family.r),
        row_pairing=pairing,
        constraints_span_preserved=span_equal(cons_t, family.constraints).equal,
    )
    return fam_t, report


# ---------------------------------------------------------------------------
# specialization
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SpecializationReport:
    bindings: dict                # parameter -> PolyExpr value
    surviving: tuple
    forced_zero: tuple            # parameters killed by pure-power constraints


def specialize(family, bindings):
    """Substitute parameter bindings, checking them against the constraints.

    A binding that turns some constraint into a nonzero constant raises
    InfeasibleSpecialization carrying the violated polynomial.
    """
    for con in family.constraints:
        v = con.substitute(bindings)
        if v.is_const() and v.const_value() != 0:
            raise InfeasibleSpecialization(con)
    out = family.substitute(bindings)
    return BialgebraFamily(out.algebra, out.r, out.delta, out.params,
                           tuple(normalize_constraints(out.constraints)),
                           out.discriminant, out.invariant_wedge)


def _pure_power_param(p, params):
    """Name of the parameter forced to zero by p == coeff * name^k, else None."""
    if len(p.terms) != 1:
        return None
    (mono, _), = p.terms.items()
    if len(mono) != 1:
        return None
    name, e = mono[0]
    return name if name in params and e > 0 else None


def impose_primitive(family, gen):
    """Impose delta(gen) = 0 on a family, the primitive-generator reduction.

    Solves the linear conditions on the parameters (eliminating later
    parameters in favour of earlier ones), substitutes, and then repeatedly
    forces to zero any parameter whose constraint reduces to a pure power.
    Returns (specialized family, SpecializationReport).
    """
    params = list(family.params)
    row = family.delta.row(gen)
    eqs = list(row.terms.values())
    rev = list(reversed(params))
    mat, rest = linear_system_from(eqs, rev)
    if any(rest):
        raise InconsistencyError("delta row is not linear-homogeneous in params")
    red, pivot_cols = rref(mat)
    freeset = set(range(len(rev))).difference(pivot_cols)
    bindings = {}
    for rr, pc in enumerate(pivot_cols):
        val = PolyExpr.zero()
        for fc in freeset:
            if red[rr][fc]:
                val = val - PolyExpr.var(rev[fc]) * red[rr][fc]
        bindings[rev[pc]] = val
    fam = specialize(family, bindings)
    forced = []
    while True:
        surviving = set(fam.params)
        victim = None
        for con in fam.constraints:
            victim = _pure_power_param(con, surviving)
            if victim:
                break
        if not victim:
            break
        forced.append(victim)
        zero = {victim: PolyExpr.zero()}
        bindings = {k: v.substitute(zero) for k, v in bindings.items()}
        bindings[victim] = PolyExpr.zero()
        fam = specialize(fam, zero)
    report = SpecializationReport(bindings=bindings,
                                  surviving=fam.params,
                                  forced_zero=tuple(forced))
    return fam, report
