"""Sub-bialgebra analysis: when does a bialgebra on a subalgebra sit inside
a bialgebra of the full algebra?"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .symkernel import PolyExpr, rref, linear_system_from
from .liealg import LieAlgebra, WedgeElement
from .bialgebra import normalize_constraints, _pure_power_param

__all__ = [
    "SubalgebraSpan", "closure_check", "sub_bialgebra_condition",
    "EmbeddingReport", "match_sub_bialgebra", "proposition_rmatrix",
]


@dataclass(frozen=True)
class SubalgebraSpan:
    """Subspace of a parent algebra spanned by a subset of its generators."""
    parent: LieAlgebra
    members: tuple                # generator names

    def indices(self):
        return tuple(self.parent.index(g) for g in self.members)


def closure_check(span):
    """True iff the generator subset is closed under the bracket."""
    idx = set(span.indices())
    for i in idx:
        for j in idx:
            if i < j and any(k not in idx for k in span.parent.sc(i, j)):
                return False
    return True


def sub_bialgebra_condition(family, span):
    """Linear conditions on the family parameters forcing delta(X) into
    h^h for every X in the subalgebra h."""
    if not closure_check(span):
        raise ValueError("span is not a subalgebra")
    inside = set(span.indices())
    conds = []
    for i in sorted(inside):
        for key, c in family.delta.rows[i].terms.items():
            if any(t not in inside for t in key):
                conds.append(c)
    return normalize_constraints(conds)


@dataclass(frozen=True)
class EmbeddingReport:
    consistent: bool
    bindings: dict               # parent parameter -> PolyExpr in target params
    matching_constraints: tuple  # linear target-parameter conditions from matching
    free_parent: tuple           # parent parameters left free by the matching
    residual_raw: tuple          # parent constraints after substitution
    forced_zero: tuple           # target params killed by pure-power residuals
    residual: tuple              # residual after applying the forced zeros


def _rename_tensor2(wedge, phi, parent):
    """(phi (x) phi) of a target wedge, as a parent wedge."""
    out = {}
    for (p, q), c in wedge.terms.items():
        u = phi[p]
        v = phi[q]
        for iu, cu in enumerate(u.coeffs):
            if not cu:
                continue
            for iv, cv in enumerate(v.coeffs):
                if not cv:
                    continue
                if iu == iv:
                    continue
                key, sign = ((iu, iv), 1) if iu < iv else ((iv, iu), -1)
                val = c * cu * cv * sign
                out[key] = out.get(key, PolyExpr.zero()) + val
    return WedgeElement(parent, 2, out)


def match_sub_bialgebra(family, span, target, rename):
    """Match the family cocommutator against a target sub-bialgebra family.

    ``target`` is a Cocommutator on the subalgebra's own presentation with its
    own parameter symbols; ``rename`` maps each target generator name to an
    AlgElement of the parent.  Solves linearly for the parent parameters.
    An inconsistent system is reported (consistent=False), not raised.
    """
    if not closure_check(span):
        raise ValueError("span is not a subalgebra")
    parent = family.algebra
    tl = target.algebra
    phi = [rename[g] for g in tl.names]
    for img in phi:
        if img.algebra is not parent and img.algebra != parent:
            raise ValueError("rename images must live in the parent algebra")
    params = list(family.params)
    pairs = list(combinations(range(parent.dim), 2))
    eqs = []
    for ti, tg in enumerate(tl.names):
        lhs = _rename_tensor2(target.rows[ti], phi, parent)
        rhs = family.delta.of(phi[ti])
        for pr in pairs:
            eqs.append(rhs.coeff(pr) - lhs.coeff(pr))
    mat, rest = linear_system_from(eqs, params)
    # eliminate: A x = -rest ; do RREF on A while tracking rest
    m = len(mat)
    b = [-p for p in rest]
    r = 0
    pivots = []
    for cidx in range(len(params)):
        piv = next((i for i in range(r, m) if mat[i][cidx] != 0), None)
        if piv is None:
            continue
        mat[r], mat[piv] = mat[piv], mat[r]
        b[r], b[piv] = b[piv], b[r]
        pv = mat[r][cidx]
        mat[r] = [v / pv for v in mat[r]]
        b[r] = b[r] * (1 / pv)
        for i in range(m):
            if i != r and mat[i][cidx]:
                f = mat[i][cidx]
                mat[i] = [vi - f * vr for vr, vi in zip(mat[r], mat[i])]
                b[i] = b[i] - f * b[r]
        pivots.append((r, cidx))
        r += 1
    matching = normalize_constraints(b[i] for i in range(r, m) if b[i])
    # a matching constraint with no target parameters at all = hard inconsistency
    consistent = all(not c.is_const() for c in matching)
    pivot_cols = [c for _, c in pivots]
    free_cols = [c for c in range(len(params)) if c not in set(pivot_cols)]
    free_parent = tuple(params[c] for c in free_cols)
    bindings = {}
    for rr, pc in pivots:
        val = b[rr]
        for fc in free_cols:
            if mat[rr][fc]:
                val = val - PolyExpr.var(params[fc]) * mat[rr][fc]
        bindings[params[pc]] = val
    # the matching constraints are linear in the target parameters: solve and
    # substitute them (e.g. parameters forced to vanish outright)
    lin_subs = {}
    if matching and consistent:
        tnames = sorted({nm for cst in matching for nm in cst.names()})
        lmat, lrest = linear_system_from(matching, list(reversed(tnames)))
        if not any(lrest):
            lred, lpiv = rref(lmat)
            rev = list(reversed(tnames))
            freel = set(range(len(rev))).difference(lpiv)
            for rr, pc in enumerate(lpiv):
                val = PolyExpr.zero()
                for fc in freel:
                    if lred[rr][fc]:
                        val = val - PolyExpr.var(rev[fc]) * lred[rr][fc]
                lin_subs[rev[pc]] = val
    if lin_subs:
        bindings = {k: v.substitute(lin_subs) for k, v in bindings.items()}
    residual_raw = normalize_constraints(
        con.substitute(bindings).substitute(lin_subs)
        for con in family.constraints)
    # purify pure-power residuals (q^2 = 0 forces q = 0 over the reals)
    forced = []
    residual = list(residual_raw)
    tparams = set().union(*(cst.names() for cst in residual)) if residual else set()
    while True:
        victim = None
        for cst in residual:
            victim = _pure_power_param(cst, tparams)
            if victim:
                break
        if not victim:
            break
        forced.append(victim)
        zero = {victim: PolyExpr.zero()}
        bindings = {kk: v.substitute(zero) for kk, v in bindings.items()}
        residual = normalize_constraints(cst.substitute(zero) for cst in residual)
    return EmbeddingReport(
        consistent=consistent,
        bindings=bindings,
        matching_constraints=tuple(matching),
        free_parent=free_parent,
        residual_raw=tuple(residual_raw),
        forced_zero=tuple(forced),
        residual=tuple(residual),
    )


def proposition_rmatrix(family, report):
    """The parent r-matrix with the embedding bindings applied."""
    if not report.consistent:
        raise ValueError("no embedding: matching was inconsistent")
    return family.r.substitute(report.bindings)
