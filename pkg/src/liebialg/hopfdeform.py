"""Order-N verification of quantum deformations: PBW rewriting, coproducts,
Hopf axioms, antipodes and universal R-matrices.

An :class:`NCSeries` is a dict mapping normal-ordered words (tuples of
generator indices, non-decreasing) to PolyExpr coefficients in the deformation
symbols, truncated at total deformation degree N.  Tensor squares and cubes
map word tuples to coefficients, with factorwise normal ordering.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .symkernel import PolyExpr, Q, poly
from .liealg import WedgeElement
from . import schrodinger

__all__ = [
    "DeformedAlgebra", "HopfCase", "MalformedAlgebraError", "build_case",
    "CASE_NAMES", "diamond_check", "hopf_axiom_residuals", "antipode_solve",
    "first_order_check", "universal_r_check",
]


class MalformedAlgebraError(ValueError):
    """A relation right-hand side is not in normal form."""


def _is_sorted(word):
    return all(word[t] <= word[t + 1] for t in range(len(word) - 1))


class DeformedAlgebra:
    """Generators with deformed commutation relations, truncated at order N.

    ``relations[(j, i)]`` for j > i holds X_j X_i - X_i X_j as a normal-ordered
    series; missing pairs commute.  The zeroth deformation order of the table
    must reproduce a Lie algebra bracket (checked by the case builders).
    """

    def __init__(self, names, relations, deformation_symbols, order):
        self.names = tuple(names)
        self.n = len(self.names)
        self.order = int(order)
        if self.order < 0:
            raise ValueError("order must be >= 0")
        self.symbols = tuple(deformation_symbols)
        rels = {}
        for (j, i), series in relations.items():
            if not j > i:
                raise MalformedAlgebraError("relations must be keyed j > i")
            clean = self.truncate_series(series)
            for w in clean:
                if not _is_sorted(w):
                    raise MalformedAlgebraError(
                        f"relation [{self.names[j]},{self.names[i]}] "
                        f"right side contains unordered word {w}")
            rels[(j, i)] = clean
        self.relations = rels
        self._nf_cache = {}

    # -- series plumbing ---------------------------------------------------
    def truncate_series(self, s):
        out = {}
        for w, c in s.items():
            c = poly(c).truncate_degree(self.order)
            if c:
                out[tuple(w)] = c
        return out

    @staticmethod
    def add(s1, s2, scale=1):
        out = dict(s1)
        scale = poly(scale)
        for w, c in s2.items():
            nc = out.get(w, PolyExpr.zero()) + scale * c
            if nc:
                out[w] = nc
            else:
                out.pop(w, None)
        return out

    @staticmethod
    def sub(s1, s2):
        return DeformedAlgebra.add(s1, s2, -1)

    def scale(self, s, c):
        c = poly(c)
        return self.truncate_series({w: c * v for w, v in s.items()})

    def rel(self, j, i):
        return self.relations.get((j, i), {})

    # -- rewriting -----------------------------------------------------------
    def nf_word(self, word):
        """Normal form of a single word, as a series.  Deterministic strategy:
        always rewrite the leftmost descent."""
        word = tuple(word)
        cached = self._nf_cache.get(word)
        if cached is not None:
            return cached
        pos = next((t for t in range(len(word) - 1)
                    if word[t] > word[t + 1]), None)
        if pos is None:
            res = {word: PolyExpr.const(1)}
        else:
            a, b = word[pos], word[pos + 1]
            left, right = word[:pos], word[pos + 2:]
            res = dict(self.nf_word(left + (b, a) + right))
            for w, c in self.rel(a, b).items():
                for w2, c2 in self.nf_word(left + w + right).items():
                    nc = res.get(w2, PolyExpr.zero()) + c * c2
                    nc = nc.truncate_degree(self.order)
                    if nc:
                        res[w2] = nc
                    else:
                        res.pop(w2, None)
        self._nf_cache[word] = res
        return res

    def nf(self, series):
        """Normal form of a word-combination series."""
        out = {}
        for w, c in series.items():
            c = poly(c)
            for w2, c2 in self.nf_word(tuple(w)).items():
                nc = out.get(w2, PolyExpr.zero()) + c * c2
                if nc:
                    out[w2] = nc
                else:
                    out.pop(w2, None)
        return self.truncate_series(out)

    def mul(self, s1, s2):
        out = {}
        for w1, c1 in s1.items():
            for w2, c2 in s2.items():
                c = (c1 * c2).truncate_degree(self.order)
                if not c:
                    continue
                for w, cw in self.nf_word(w1 + w2).items():
                    nc = out.get(w, PolyExpr.zero()) + c * cw
                    if nc:
                        out[w] = nc
                    else:
                        out.pop(w, None)
        return self.truncate_series(out)

    def commutator(self, s1, s2):
        return self.sub(self.mul(s1, s2), self.mul(s2, s1))

    def gen(self, name):
        return {(self.names.index(name),): PolyExpr.const(1)}

    @staticmethod
    def one():
        return {(): PolyExpr.const(1)}

    @staticmethod
    def one_tensor():
        return {((), ()): PolyExpr.const(1)}

    # -- tensor squares / cubes ------------------------------------------------
    def tensor_mul(self, t1, t2):
        out = {}
        for ws1, c1 in t1.items():
            for ws2, c2 in t2.items():
                c = (c1 * c2).truncate_degree(self.order)
                if not c:
                    continue
                factors = [self.nf_word(a + b) for a, b in zip(ws1, ws2)]
                # distribute the factorwise normal forms
                partial = [((), PolyExpr.const(1))]
                for fac in factors:
                    nxt = []
                    for key, cc in partial:
                        for w, cw in fac.items():
                            ncc = (cc * cw).truncate_degree(self.order)
                            if ncc:
                                nxt.append((key + (w,), ncc))
                    partial = nxt
                for key, cc in partial:
                    nc = out.get(key, PolyExpr.zero()) + c * cc
                    nc = nc.truncate_degree(self.order)
                    if nc:
                        out[key] = nc
                    else:
                        out.pop(key, None)
        return out

    @staticmethod
    def tensor_swap(t):
        return {(w2, w1): c for (w1, w2), c in t.items()}

    @staticmethod
    def embed_cube(t, slots):
        """Place a tensor-square series into a cube at the given slot pair."""
        out = {}
        for (w1, w2), c in t.items():
            key = [(), (), ()]
            key[slots[0]] = w1
            key[slots[1]] = w2
            out[tuple(key)] = c
        return out

    def substitute(self, bindings):
        """New algebra with deformation symbols substituted (e.g. a limit)."""
        rels = {key: {w: c.substitute(bindings) for w, c in series.items()}
                for key, series in self.relations.items()}
        syms = tuple(s for s in self.symbols if s not in bindings)
        return DeformedAlgebra(self.names, rels, syms, self.order)


def series_eq(s1, s2):
    return {w: c for w, c in s1.items() if c} == {w: c for w, c in s2.items() if c}


def deformation_slice(series, degree):
    """The part of a series whose coefficients are homogeneous of the given
    total degree in the deformation symbols."""
    out = {}
    for w, c in series.items():
        h = c.homogeneous_part(degree)
        if h:
            out[w] = h
    return out


# ---------------------------------------------------------------------------
# case registry
# ---------------------------------------------------------------------------

CASE_NAMES = ("ucc", "uac")


@dataclass
class HopfCase:
    """A deformed algebra with its coproduct table and R-matrix data."""
    name: str
    algebra: DeformedAlgebra
    coproduct: dict               # generator index -> tensor-square series
    classical_r_pairs: tuple      # (param, gen, gen) wedge data for delta
    r_exponents: tuple            # ((coeff sign * param, genA, genB), ...) for R
    nonstandard_limit: dict       # bindings giving the triangular limit

    def delta_word(self, word):
        A = self.algebra
        out = {((), ()): PolyExpr.const(1)}
        for letter in word:
            out = A.tensor_mul(out, self.coproduct[letter])
        return out

    def delta_series(self, series):
        A = self.algebra
        out = {}
        for w, c in series.items():
            for key, cc in self.delta_word(w).items():
                nc = out.get(key, PolyExpr.zero()) + c * cc
                nc = nc.truncate_degree(A.order)
                if nc:
                    out[key] = nc
                else:
                    out.pop(key, None)
        return out

    def counit_slot(self, t, slot):
        """(eps (x) id) or (id (x) eps) of a tensor square; eps kills every
        generator, so only empty words in the given slot survive."""
        out = {}
        for key, c in t.items():
            if key[slot]:
                continue
            w = key[1 - slot]
            nc = out.get(w, PolyExpr.zero()) + c
            if nc:
                out[w] = nc
        return out

    def delta_slot(self, t, slot):
        """Apply the coproduct inside one slot of a tensor square -> cube."""
        A = self.algebra
        out = {}
        for (w1, w2), c in t.items():
            inner = self.delta_word(w1 if slot == 0 else w2)
            for (u, v), cc in inner.items():
                key = (u, v, w2) if slot == 0 else (w1, u, v)
                nc = out.get(key, PolyExpr.zero()) + c * cc
                nc = nc.truncate_degree(A.order)
                if nc:
                    out[key] = nc
                else:
                    out.pop(key, None)
        return out

    def limit(self, bindings=None):
        """The case with deformation symbols substituted; by default the
        non-standard (triangular) limit."""
        binds = self.nonstandard_limit if bindings is None else bindings
        alg = self.algebra.substitute(binds)
        cop = {g: {key: c.substitute(binds) for key, c in t.items()}
               for g, t in self.coproduct.items()}
        cop = {g: {key: c for key, c in t.items() if c} for g, t in cop.items()}
        rexp = tuple((poly(c).substitute(binds), ga, gb)
                     for c, ga, gb in self.r_exponents)
        return HopfCase(self.name + "-limit", alg, cop, self.classical_r_pairs,
                        rexp, {})

    def universal_r(self):
        """R = exp(term1) exp(term2) from the registered exponent data."""
        A = self.algebra
        out = A.one_tensor()
        for coeff, ga, gb in self.r_exponents:
            ia, ib = A.names.index(ga), A.names.index(gb)
            term = {}
            power = PolyExpr.const(1)
            fact = 1
            term[((), ())] = PolyExpr.const(1)
            for t in range(1, A.order + 1):
                power = (power * poly(coeff)).truncate_degree(A.order)
                if not power:
                    break
                fact *= t
                term[((ia,) * t, (ib,) * t)] = power * Q(1, fact)
            out = A.tensor_mul(out, term)
        return out


def _kp_relation(names, order):
    """[P, K] = -(1 - e^{-2 c2 M})/(2 c2) as a normal-ordered series."""
    c2 = PolyExpr.var("c2")
    iM = names.index("M")
    out = {}
    # (1 - e^{-2 c2 M})/(2 c2) = sum_{t>=1} (-1)^{t+1} (2 c2)^{t-1} M^t / t!
    coeff = PolyExpr.const(1)
    fact = 1
    for t in range(1, order + 2):
        fact *= t
        term = coeff * Q((-1) ** (t + 1), fact)
        if term.truncate_degree(order):
            out[(iM,) * t] = -term
        coeff = coeff * (2 * c2)
    return out


def _classical_relations(names):
    L = schrodinger.algebra()
    assert L.names == tuple(names)
    rels = {}
    for i, j in combinations(range(len(names)), 2):
        terms = {(k,): PolyExpr.const(-c) for k, c in L.sc(i, j).items()}
        if terms:
            rels[(j, i)] = terms    # X_j X_i - X_i X_j = [X_j, X_i] = -[X_i, X_j]
    return rels


def _exp_leg(params_words, order):
    """Series for products of exponentials acting on one tensor leg.

    ``params_words`` is a list of (coefficient PolyExpr, generator index);
    the generators involved must commute among themselves (they do in every
    coproduct leg used here), so the result is the termwise product.
    """
    out = {(): PolyExpr.const(1)}
    for coeff, gi in params_words:
        coeff = poly(coeff)
        new = {}
        power = PolyExpr.const(1)
        fact = 1
        expo = {(): PolyExpr.const(1)}
        for t in range(1, order + 1):
            power = (power * coeff).truncate_degree(order)
            if not power:
                break
            fact *= t
            expo[(gi,) * t] = power * Q(1, fact)
        for w1, c1 in out.items():
            for w2, c2 in expo.items():
                c = (c1 * c2).truncate_degree(order)
                if not c:
                    continue
                w = tuple(sorted(w1 + w2))
                nc = new.get(w, PolyExpr.zero()) + c
                if nc:
                    new[w] = nc
                else:
                    new.pop(w, None)
        out = new
    return out


def build_case(name, order=4):
    """Construct a registered quantum-deformation case at truncation order N."""
    names = schrodinger.GENERATORS
    idx = {g: i for i, g in enumerate(names)}
    iD, iC, iH, iK, iP, iM = (idx[g] for g in "DCHKPM")
    if name == "ucc":
        c1, c2 = PolyExpr.var("c1"), PolyExpr.var("c2")
        rels = _classical_relations(names)
        rels[(iP, iK)] = _kp_relation(names, order)
        alg = DeformedAlgebra(names, rels, ("c1", "c2"), order)
        prim = lambda g: {((), (idx[g],)): PolyExpr.const(1),
                          ((idx[g],), ()): PolyExpr.const(1)}
        cop = {iD: prim("D"), iM: prim("M")}
        for g, expo in (("P", c1 - c2), ("K", -(c1 + c2)),
                        ("H", 2 * c1), ("C", -2 * c1)):
            leg = _exp_leg([(expo, iM)], order)
            t = {((), (idx[g],)): PolyExpr.const(1)}
            for w, c in leg.items():
                t[((idx[g],), w)] = t.get(((idx[g],), w), PolyExpr.zero()) + c
            cop[idx[g]] = t
        return HopfCase(
            name="ucc", algebra=alg, coproduct=cop,
            classical_r_pairs=((c1, "D", "M"), (c2, "P", "K")),
            r_exponents=((-c1, "M", "D"), (c1, "D", "M")),
            nonstandard_limit={"c2": PolyExpr.zero()},
        )
    if name == "uac":
        a2, c2 = PolyExpr.var("a2"), PolyExpr.var("c2")
        rels = _classical_relations(names)
        rels[(iP, iK)] = _kp_relation(names, order)
        # [H, D] = (1 - e^{-2 a2 H})/a2 = sum_{t>=1} (-1)^{t+1} 2^t a2^{t-1} H^t/t!
        hd = {}
        coeff = PolyExpr.const(2)
        fact = 1
        for t in range(1, order + 2):
            fact *= t
            term = coeff * Q((-1) ** (t + 1), fact)
            if term.truncate_degree(order):
                hd[(iH,) * t] = term
            coeff = coeff * (2 * a2)
        rels[(iH, iD)] = hd
        rels[(iC, iD)] = {(iC,): PolyExpr.const(-2), (iD, iD): a2}
        rels[(iK, iC)] = {(iD, iK): -a2, (iK,): a2 * Q(1, 2)}
        rels[(iP, iC)] = {(iK,): PolyExpr.const(-1), (iD, iP): a2,
                          (iP,): a2 * Q(1, 2)}
        # [K, H] = e^{-2 a2 H} P
        kh = {}
        coeff = PolyExpr.const(1)
        fact = 1
        kh[(iP,)] = PolyExpr.const(1)
        for t in range(1, order + 1):
            fact *= t
            coeff = (coeff * (-2 * a2)).truncate_degree(order)
            if not coeff:
                break
            kh[(iH,) * t + (iP,)] = coeff * Q(1, fact)
        rels[(iK, iH)] = kh
        alg = DeformedAlgebra(names, rels, ("a2", "c2"), order)
        prim = lambda g: {((), (idx[g],)): PolyExpr.const(1),
                          ((idx[g],), ()): PolyExpr.const(1)}
        cop = {iH: prim("H"), iM: prim("M")}
        for g, legs in (("D", [(-2 * a2, iH)]), ("C", [(-2 * a2, iH)]),
                        ("P", [(a2, iH), (-c2, iM)]),
                        ("K", [(-a2, iH), (-c2, iM)])):
            leg = _exp_leg(legs, order)
            t = {((), (idx[g],)): PolyExpr.const(1)}
            for w, c in leg.items():
                t[((idx[g],), w)] = t.get(((idx[g],), w), PolyExpr.zero()) + c
            cop[idx[g]] = t
        # extra a2 D (x) e^{-2 a2 H} P term in Delta(K)
        t = cop[iK]
        leg = _exp_leg([(-2 * a2, iH)], order)
        for w, c in leg.items():
            word = tuple(sorted(w + (iP,)))
            key = ((iD,), word)
            t[key] = t.get(key, PolyExpr.zero()) + a2 * c
        cop[iK] = {k: v.truncate_degree(order) for k, v in t.items()
                   if v.truncate_degree(order)}
        return HopfCase(
            name="uac", algebra=alg, coproduct=cop,
            classical_r_pairs=((a2, "D", "H"), (c2, "P", "K")),
            r_exponents=((-a2, "H", "D"), (a2, "D", "H")),
            nonstandard_limit={"c2": PolyExpr.zero()},
        )
    raise KeyError(f"unknown case {name!r}; choices: {CASE_NAMES}")


# ---------------------------------------------------------------------------
# checks
# ---------------------------------------------------------------------------

def diamond_check(A):
    """Overlap residuals: for every i<j<k reduce X_k X_j X_i along both
    association orders; all zero certifies a flat order-N deformation."""
    out = {}
    for i, j, k in combinations(range(A.n), 3):
        left = A.mul(A.nf_word((k, j)), {(i,): PolyExpr.const(1)})
        right = A.mul({(k,): PolyExpr.const(1)}, A.nf_word((j, i)))
        res = A.sub(left, right)
        out[(A.names[i], A.names[j], A.names[k])] = res
    return out


def hopf_axiom_residuals(case):
    """Coproduct homomorphism, coassociativity and counit residuals."""
    A = case.algebra
    hom = {}
    for (j, i), rhs in sorted(A.relations.items()):
        di, dj = case.coproduct[i], case.coproduct[j]
        lhs = A.sub(A.tensor_mul(dj, di), A.tensor_mul(di, dj))
        res = A.sub(lhs, case.delta_series(rhs))
        hom[(A.names[j], A.names[i])] = res
    coassoc = {}
    counit = {}
    for g in range(A.n):
        t = case.coproduct[g]
        coassoc[A.names[g]] = A.sub(case.delta_slot(t, 0), case.delta_slot(t, 1))
        lres = A.sub(case.counit_slot(t, 0), A.gen(A.names[g]))
        rres = A.sub(case.counit_slot(t, 1), A.gen(A.names[g]))
        counit[A.names[g]] = A.add(lres, rres) if (lres or rres) else {}
    return {"homomorphism": hom, "coassociativity": coassoc, "counit": counit}


def _antipode_word(A, smap, word):
    out = A.one()
    for letter in reversed(word):
        out = A.mul(out, smap[letter])
    return out


def antipode_solve(case):
    """Solve m (S (x) id) Delta(X) = eps(X) 1 order by order.

    Returns (antipode series per generator, right-axiom residuals).  The right
    counit axiom is the independent verification; a nonzero entry there means
    the structure is not a Hopf algebra at this order.
    """
    A = case.algebra
    smap = {g: {(g,): PolyExpr.const(-1)} for g in range(A.n)}

    def left_axiom(g):
        acc = {}
        for (w1, w2), c in case.coproduct[g].items():
            term = A.mul(_antipode_word(A, smap, w1),
                         {w2: PolyExpr.const(1)})
            acc = A.add(acc, A.scale(term, c))
        return acc

    for tau in range(A.order + 1):
        for g in range(A.n):
            res = deformation_slice(left_axiom(g), tau)
            if res:
                smap[g] = A.sub(smap[g], res)
    right = {}
    for g in range(A.n):
        acc = {}
        for (w1, w2), c in case.coproduct[g].items():
            term = A.mul({w1: PolyExpr.const(1)},
                         _antipode_word(A, smap, w2))
            acc = A.add(acc, A.scale(term, c))
        right[A.names[g]] = acc
    return {A.names[g]: smap[g] for g in range(A.n)}, right


def classical_algebra(A):
    """The Lie algebra carried by the deformation-degree-zero slice of the
    relation table."""
    from .liealg import LieAlgebra
    brackets = {}
    for (j, i), series in A.relations.items():
        entry = {}
        for w, c in deformation_slice(series, 0).items():
            if len(w) != 1 or not c.is_const():
                raise MalformedAlgebraError(
                    "degree-zero slice is not a Lie bracket")
            entry[A.names[w[0]]] = -c.const_value()
        if entry:
            brackets[(A.names[i], A.names[j])] = entry
    return LieAlgebra(A.names, brackets)


def first_order_check(case, r=None):
    """(Delta - sigma Delta)(X) at first deformation order against the
    cocommutator of the classical r-matrix."""
    from .bialgebra import delta_from_r
    A = case.algebra
    L = classical_algebra(A)
    if r is None:
        r = WedgeElement.from_pairs(
            L, [(c, x, y) for c, x, y in case.classical_r_pairs])
    delta = delta_from_r(L, r)
    residuals = {}
    for g in range(A.n):
        t = case.coproduct[g]
        skew = A.sub(t, A.tensor_swap(t))
        got = deformation_slice(skew, 1)
        want = {}
        for (i, j), c in delta.rows[g].to_tensor().terms.items():
            want[((i,), (j,))] = c
        residuals[A.names[g]] = A.sub(got, want)
    return residuals


def universal_r_check(case):
    """Intertwining, triangularity and quantum YBE residuals for the
    registered exponential R-matrix, at the case's non-standard limit."""
    lim = case.limit() if case.nonstandard_limit else case
    A = lim.algebra
    R = lim.universal_r()
    inter = {}
    for g in range(A.n):
        t = lim.coproduct[g]
        lhs = A.tensor_mul(R, t)
        rhs = A.tensor_mul(A.tensor_swap(t), R)
        inter[A.names[g]] = A.sub(lhs, rhs)
    tri = A.sub(A.tensor_mul(A.tensor_swap(R), R), A.one_tensor())

    def cube_mul(t1, t2):
        out = {}
        for ws1, c1 in t1.items():
            for ws2, c2 in t2.items():
                c = (c1 * c2).truncate_degree(A.order)
                if not c:
                    continue
                factors = [A.nf_word(a + b) for a, b in zip(ws1, ws2)]
                partial = [((), PolyExpr.const(1))]
                for fac in factors:
                    nxt = []
                    for key, cc in partial:
                        for w, cw in fac.items():
                            ncc = (cc * cw).truncate_degree(A.order)
                            if ncc:
                                nxt.append((key + (w,), ncc))
                    partial = nxt
                for key, cc in partial:
                    nc = out.get(key, PolyExpr.zero()) + c * cc
                    nc = nc.truncate_degree(A.order)
                    if nc:
                        out[key] = nc
                    else:
                        out.pop(key, None)
        return out

    r12 = A.embed_cube(R, (0, 1))
    r13 = A.embed_cube(R, (0, 2))
    r23 = A.embed_cube(R, (1, 2))
    lhs = cube_mul(cube_mul(r12, r13), r23)
    rhs = cube_mul(cube_mul(r23, r13), r12)
    qybe = {}
    for key in set(lhs) | set(rhs):
        d = lhs.get(key, PolyExpr.zero()) - rhs.get(key, PolyExpr.zero())
        if d:
            qybe[key] = d
    return {"intertwining": inter, "triangularity": tri, "qybe": qybe}
