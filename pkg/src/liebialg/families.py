"""Named r-matrix families and the sub-bialgebra embedding setups.

Each family records its packaged tables, free parameters, and a list of
*charts*: substitutions that resolve the family's constraint set identically,
jointly covering every real solution.  Verifications that must hold on the
whole constraint variety (e.g. Poisson-Jacobi) run once per chart.
"""

from __future__ import annotations

from dataclasses import dataclass

from .symkernel import PolyExpr, Symbol
from .bialgebra import rmatrix_family
from .embed import SubalgebraSpan, match_sub_bialgebra
from . import formats
from . import schrodinger


def _inv(name):
    return PolyExpr.var(Symbol(name, invertible=True))


def _v(name):
    return PolyExpr.var(name)


@dataclass(frozen=True)
class FamilySpec:
    name: str
    rmat_table: str
    params: tuple
    charts: tuple                # substitution dicts resolving the constraints
    delta_table: str = None
    ptable: str = None


FAMILIES = {
    "general": FamilySpec(
        name="general",
        rmat_table="general.rmat",
        params=schrodinger.ALL_PARAMS,
        charts=(),
        delta_table="cocommutators_general.delta",
        ptable="poisson_general.ptable",
    ),
    "d-primitive": FamilySpec(
        name="d-primitive",
        rmat_table="d_primitive.rmat",
        params=("c1", "c2"),
        charts=({},),
        delta_table="d_primitive.delta",
        ptable="poisson_d_primitive.ptable",
    ),
    "p-primitive": FamilySpec(
        name="p-primitive",
        rmat_table="p_primitive.rmat",
        params=("a1", "a3", "a4", "a5", "b3", "c1"),
        # constraint a1*a4 + a5*c1 = 0, covered by inverting c1 plus the
        # two branches of the c1 = 0 locus
        charts=(
            {"c1": _inv("c1"), "a5": -_v("a1") * _v("a4") / _inv("c1")},
            {"c1": 0, "a1": 0},
            {"c1": 0, "a4": 0},
        ),
        delta_table="p_primitive.delta",
        ptable="poisson_p_primitive.ptable",
    ),
    "h-primitive-standard": FamilySpec(
        name="h-primitive-standard",
        rmat_table="h_primitive_standard.rmat",
        params=("a2", "a3", "a4", "c2"),
        charts=({},),            # the constraint is built into the r-matrix
        delta_table="h_primitive_standard.delta",
        ptable="poisson_h_primitive_standard.ptable",
    ),
    "h-primitive-nonstandard": FamilySpec(
        name="h-primitive-nonstandard",
        rmat_table="h_primitive_nonstandard.rmat",
        params=("a2", "a4", "a5"),
        charts=({},),
        delta_table="h_primitive_nonstandard.delta",
        ptable="poisson_h_primitive_nonstandard.ptable",
    ),
    "oscillator": FamilySpec(
        name="oscillator",
        rmat_table="oscillator_family.rmat",
        params=("ap", "am", "bp", "bm", "theta", "xi"),
        # constraints ap*am = ap*(xi+theta) = am*(xi-theta) = 0
        charts=(
            {"ap": 0, "am": 0},
            {"am": 0, "xi": -_v("theta")},
            {"ap": 0, "xi": _v("theta")},
        ),
        delta_table="oscillator_family.delta",
    ),
    "gl2": FamilySpec(
        name="gl2",
        rmat_table="gl2_family.rmat",
        params=("ap", "am", "bp", "bm", "a", "b", "c2"),
        charts=(),
        delta_table="gl2_family.delta",
    ),
    "galilei": FamilySpec(
        name="galilei",
        rmat_table="galilei_family.rmat",
        params=("xi", "beta1", "beta2", "beta3", "beta4", "a3"),
        # constraint beta2*(2*beta4 - xi) = 0
        charts=(
            {"beta2": 0},
            {"xi": 2 * _v("beta4")},
        ),
        delta_table="galilei_family.delta",
    ),
    "hstd-deformation": FamilySpec(
        name="hstd-deformation",
        rmat_table="hstd_deformation.rmat",
        params=("a2", "c2"),
        charts=({},),
        delta_table="hstd_deformation.delta",
    ),
}


def load_rmatrix(spec_or_name, L=None):
    spec = FAMILIES[spec_or_name] if isinstance(spec_or_name, str) else spec_or_name
    L = L or schrodinger.algebra()
    return formats.parse_rmatrix(formats.load_table(spec.rmat_table), L)


def family(spec_or_name, L=None):
    spec = FAMILIES[spec_or_name] if isinstance(spec_or_name, str) else spec_or_name
    L = L or schrodinger.algebra()
    r = load_rmatrix(spec, L)
    return rmatrix_family(L, r, params=spec.params,
                          invariant_order=("K", "M", "P"))


# ---------------------------------------------------------------------------
# embedding setups
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class EmbeddingSpec:
    name: str
    members: tuple               # parent generators spanning the subalgebra
    target_table: str            # self-contained target cocommutator family
    map_table: str
    bindings_table: str          # expected parent-parameter bindings
    residual_tables: tuple       # expected residual constraint sets


EMBEDDINGS = {
    "oscillator": EmbeddingSpec(
        name="oscillator",
        members=("D", "P", "K", "M"),
        target_table="oscillator_target.delta",
        map_table="oscillator_embedding.map",
        bindings_table="oscillator_bindings.subs",
        residual_tables=("oscillator_constraints.eqs",),
    ),
    "gl2": EmbeddingSpec(
        name="gl2",
        members=("D", "H", "C", "M"),
        target_table="gl2_target.delta",
        map_table="gl2_embedding.map",
        bindings_table="gl2_bindings.subs",
        residual_tables=("gl2_constraints.eqs", "gl2_obstruction.eqs"),
    ),
    "galilei": EmbeddingSpec(
        name="galilei",
        members=("K", "H", "P", "M"),
        target_table="galilei_target.delta",
        map_table="galilei_embedding.map",
        bindings_table="galilei_bindings.subs",
        residual_tables=("galilei_constraint.eqs",),
    ),
}


def run_embedding(name, fam=None):
    """Execute a registered embedding match, returning (report, target, span)."""
    spec = EMBEDDINGS[name]
    L = schrodinger.algebra()
    if fam is None:
        fam = family("general", L)
    target_alg, target = formats.parse_delta(
        formats.load_table(spec.target_table))
    rename = formats.parse_map(formats.load_table(spec.map_table), L)
    span = SubalgebraSpan(L, spec.members)
    report = match_sub_bialgebra(fam, span, target, rename)
    return report, target, span
