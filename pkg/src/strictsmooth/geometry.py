"""Blow-up geometry for a hypersurface in affine space.

A scene is an affine ambient space, a hypersurface f = 0 and a list of
coordinate-subspace centers contained in it.  For each center the module
computes the vanishing order k along the center, the leading form of f in
the normal variables, and two independent smoothness routes for the strict
transform of the hypersurface in the blow-up:

* the hypothesis route checks that the hypersurface is smooth away from the
  centers and that the projectivized leading form cuts a smooth effective
  divisor out of each exceptional projective bundle (with a base-locus
  specialization when k = 1);
* the chart oracle substitutes explicit blow-up coordinates chart by chart
  and runs the Jacobian criterion on the strict transform directly.

The hypothesis route is a sufficient criterion only: when it fails the
verdict is Inconclusive, never Singular.  The chart oracle always decides.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from enum import Enum
from typing import Optional

from .errors import InternalCheckError, SceneError, StructuralError
from .groebner import (
    Ideal,
    groebner,
    ideal_power_membership,
    is_empty_affine,
    krull_dimension,
    minors_ideal,
    radical_membership,
)
from .poly import Monomial, Polynomial


class Status(str, Enum):
    SMOOTH = "smooth"
    SINGULAR = "singular"
    INCONCLUSIVE = "inconclusive"


@dataclass(frozen=True)
class Verdict:
    status: Status
    detail: str = ""
    witness: Optional[Ideal] = None
    witness_names: Optional[tuple] = None
    chart: Optional[tuple] = None  # (center name, chart variable index)


@dataclass(frozen=True)
class Center:
    """A coordinate subspace, given by the variables that vanish on it."""

    name: str
    vanishing: tuple

    def __post_init__(self):
        vanishing = tuple(sorted(set(self.vanishing)))
        if not vanishing:
            raise SceneError(f"center {self.name!r} has an empty vanishing set")
        object.__setattr__(self, "vanishing", vanishing)

    @property
    def codimension(self) -> int:
        return len(self.vanishing)

    def tangent(self, nvars: int) -> tuple:
        normal = set(self.vanishing)
        return tuple(i for i in range(nvars) if i not in normal)

    def ideal(self, nvars: int, field) -> Ideal:
        gens = tuple(Polynomial.variable(i, nvars, field) for i in self.vanishing)
        return Ideal(gens, nvars, field)


@dataclass(frozen=True)
class Scene:
    """Ambient space, hypersurface and centers: the whole input universe."""

    nvars: int
    names: tuple
    f: Polynomial
    centers: tuple

    def __post_init__(self):
        object.__setattr__(self, "names", tuple(self.names))
        object.__setattr__(self, "centers", tuple(self.centers))

    @property
    def field(self):
        return self.f.field

    def validate(self):
        """Check every scene invariant; raises SceneError on the first failure."""
        if len(self.names) != self.nvars:
            raise SceneError("variable name list does not match the ambient dimension")
        if len(set(self.names)) != self.nvars:
            raise SceneError("variable names must be unique")
        if self.f.nvars != self.nvars:
            raise SceneError("hypersurface polynomial does not live in the ambient ring")
        if self.f.is_zero:
            raise SceneError("the hypersurface polynomial is zero")
        if self.f.is_constant:
            raise SceneError("the hypersurface polynomial is a nonzero constant (a unit)")
        seen = set()
        for center in self.centers:
            if center.name in seen:
                raise SceneError(f"duplicate center name {center.name!r}")
            seen.add(center.name)
            if center.vanishing[-1] >= self.nvars:
                raise SceneError(
                    f"center {center.name!r} names a variable outside the ambient space"
                )
            gb = groebner(center.ideal(self.nvars, self.field))
            if not gb.contains(self.f):
                raise SceneError(
                    f"center {center.name!r} is not contained in the hypersurface"
                )
        for a, b in itertools.combinations(self.centers, 2):
            joined = a.ideal(self.nvars, self.field).join(b.ideal(self.nvars, self.field))
            if not is_empty_affine(joined):
                raise SceneError(
                    f"centers {a.name!r} and {b.name!r} are not disjoint"
                )


@dataclass(frozen=True)
class BaseLocusResult:
    """Outcome of the k = 1 specialization on one center.

    The base locus is the common zero set, inside the center, of the
    coefficient polynomials of the (linear) leading form.  The verdict is
    Smooth when the locus is empty (vacuously, flagged) or has the expected
    dimension and full-rank Jacobian everywhere.
    """

    equations: tuple               # coefficient polynomials in the tangent ring
    dimension: Optional[int]       # None when the base locus is empty
    expected_dimension: int
    vacuous: bool
    verdict: Verdict


@dataclass(frozen=True)
class CenterAnalysis:
    center: Center
    multiplicity: int
    leading_form: Polynomial
    section: Polynomial            # the same polynomial, read on the projective bundle
    section_verdict: Verdict
    base_locus: Optional[BaseLocusResult]
    discrepancy: int
    lefschetz_applicable: bool


@dataclass(frozen=True)
class BlowupChart:
    """One affine chart of the blow-up along one center.

    In the chart of the vanishing variable with index `variable`, that
    variable becomes the exceptional coordinate t and every other vanishing
    variable y_l becomes t*u_l; tangent variables are untouched.  The pulled
    back hypersurface is exactly t^exponent times the strict transform and
    the strict transform is not divisible by t.
    """

    center: Center
    variable: int
    names: tuple                   # display names of the chart coordinates
    substitution: dict             # ambient variable index -> chart polynomial
    strict_transform: Polynomial
    exceptional_exponent: int


@dataclass(frozen=True)
class DivisorClass:
    """Integer vector on a labelled divisor basis (exact lattice arithmetic)."""

    coeffs: tuple  # sorted (label, coefficient) pairs, zero entries dropped

    @classmethod
    def from_dict(cls, mapping) -> "DivisorClass":
        return cls(tuple(sorted((k, v) for k, v in mapping.items() if v != 0)))

    def as_dict(self) -> dict:
        return dict(self.coeffs)

    def coefficient(self, label: str) -> int:
        return self.as_dict().get(label, 0)

    def plus(self, other: "DivisorClass") -> "DivisorClass":
        total = self.as_dict()
        for k, v in other.coeffs:
            total[k] = total.get(k, 0) + v
        return DivisorClass.from_dict(total)


@dataclass(frozen=True)
class DiscrepancyRecord:
    center: str
    codimension: int
    multiplicity: int
    by_formula: int
    by_lattice: int
    crepant: bool
    class_identity: Optional[dict]


@dataclass(frozen=True)
class AdjunctionLedger:
    records: tuple
    strict_transform: DivisorClass
    canonical: DivisorClass        # pullback of the canonical class plus discrepancies
    assumes_normal: bool


@dataclass(frozen=True)
class Analysis:
    scene: Scene
    centers: tuple                 # CenterAnalysis per center, input order
    singular_containment: Verdict
    section_route: Verdict
    base_locus_route: Optional[Verdict]
    oracle: Verdict
    consistent: bool
    notes: tuple
    warnings: tuple
    charts: tuple                  # tuple of chart tuples, parallel to centers
    ledger: AdjunctionLedger


def exceptional_label(center: Center) -> str:
    return f"E:{center.name}"


# --------------------------------------------------------------------------
# per-center computations


def multiplicity(f: Polynomial, center: Center) -> int:
    """Largest k such that f lies in the k-th power of the center ideal."""
    ideal = center.ideal(f.nvars, f.field)
    if not ideal_power_membership(f, ideal, 1):
        raise SceneError(
            f"center {center.name!r} is not contained in the hypersurface"
        )
    bound = f.total_degree()
    k = 1
    while k <= bound and ideal_power_membership(f, ideal, k + 1):
        k += 1
    return k


def leading_form(f: Polynomial, center: Center, k: int) -> Polynomial:
    """The degree-k part of f in the normal variables of the center.

    This is the representative of f in I^k / I^(k+1); the postcondition
    f - phi in I^(k+1) is asserted.
    """
    phi = f.graded_part(center.vanishing, k)
    if phi.is_zero:
        raise InternalCheckError(
            f"leading form vanishes at center {center.name!r} with k={k}"
        )
    ideal = center.ideal(f.nvars, f.field)
    if not ideal_power_membership(f - phi, ideal, k + 1):
        raise InternalCheckError(
            f"f minus its leading form is not in I^{k + 1} at center {center.name!r}"
        )
    return phi


def section_smoothness(center: Center, phi: Polynomial) -> Verdict:
    """Decide whether the projectivized leading form cuts a smooth divisor.

    The zero locus of the section lives on (center) x P^(d-1).  It is a
    smooth effective divisor exactly when the affine cone defined by phi is
    nonsingular away from the zero section, i.e. when the common zero set of
    phi and all of its partials lies inside the locus where every normal
    variable vanishes.
    """
    if phi.is_zero:
        raise SceneError(
            f"the exceptional section at center {center.name!r} is zero: not a divisor"
        )
    nvars, fld = phi.nvars, phi.field
    gens = [phi]
    for i in range(nvars):
        dp = phi.partial(i)
        if not dp.is_zero:
            gens.append(dp)
    jac = Ideal(tuple(gens), nvars, fld)
    for l in center.vanishing:
        y_l = Polynomial.variable(l, nvars, fld)
        if not radical_membership(y_l, jac):
            return Verdict(
                Status.SINGULAR,
                detail=(
                    f"the zero locus of the exceptional section at center "
                    f"{center.name!r} is singular away from the irrelevant locus"
                ),
                witness=jac,
            )
    return Verdict(Status.SMOOTH)


def base_locus_check(center: Center, phi: Polynomial, nvars: int) -> BaseLocusResult:
    """k = 1 specialization: smoothness and dimension of the base locus.

    The linear leading form phi = sum c_l * y_l gives d coefficient
    polynomials on the center.  Their common zero locus must be smooth of
    dimension 2*dim(center) - dim(ambient); smoothness is decided by
    adjoining the d x d minors of the coefficient Jacobian and testing
    emptiness.  An empty base locus passes vacuously (flagged).
    """
    d = center.codimension
    fld = phi.field
    if phi.degree_in(center.vanishing) != 1 or not all(
        m.degree_in(center.vanishing) == 1 for m in phi.monomials()
    ):
        raise StructuralError("base locus check requires a leading form of degree 1")
    tangent = center.tangent(nvars)
    tdim = len(tangent)
    position = {v: i for i, v in enumerate(tangent)}
    rows = {l: {} for l in center.vanishing}
    for mono, coeff in phi.terms():
        normal_part = [(i, e) for i, e in enumerate(mono.exps) if e and i in rows]
        (l, _), = normal_part
        texps = [0] * tdim
        for i, e in enumerate(mono.exps):
            if e and i not in rows:
                texps[position[i]] = e
        rows[l][Monomial(texps)] = coeff
    equations = tuple(
        Polynomial(tdim, fld, rows[l]) for l in center.vanishing
    )
    nonzero = tuple(eq for eq in equations if not eq.is_zero)
    b_ideal = Ideal(nonzero, tdim, fld)
    dim_b = krull_dimension(b_ideal)
    expected = 2 * tdim - nvars
    if dim_b is None:
        verdict = Verdict(
            Status.SMOOTH,
            detail="base locus is empty; the dimension condition holds vacuously",
        )
        return BaseLocusResult(equations, dim_b, expected, True, verdict)
    if expected < 0:
        verdict = Verdict(
            Status.SINGULAR,
            detail=(
                f"expected dimension {expected} is negative but the base locus "
                f"is nonempty (dimension {dim_b})"
            ),
            witness=b_ideal,
        )
        return BaseLocusResult(equations, dim_b, expected, False, verdict)
    if dim_b != expected:
        verdict = Verdict(
            Status.SINGULAR,
            detail=(
                f"base locus has dimension {dim_b}, expected {expected}"
            ),
            witness=b_ideal,
        )
        return BaseLocusResult(equations, dim_b, expected, False, verdict)
    jacobian = [
        [eq.partial(j) for j in range(tdim)]
        for eq in equations
    ]
    rank_drop = minors_ideal(jacobian, d)
    singular_locus = b_ideal.join(rank_drop) if rank_drop.generators else b_ideal
    if rank_drop.generators:
        smooth = is_empty_affine(singular_locus)
    else:
        # every d x d minor vanishes identically: rank never reaches d
        smooth = False
    if smooth:
        verdict = Verdict(Status.SMOOTH)
    else:
        verdict = Verdict(
            Status.SINGULAR,
            detail=f"base locus of center {center.name!r} is singular",
            witness=singular_locus,
        )
    return BaseLocusResult(equations, dim_b, expected, False, verdict)


def analyze_center(scene: Scene, center: Center) -> CenterAnalysis:
    k = multiplicity(scene.f, center)
    phi = leading_form(scene.f, center, k)
    section = section_smoothness(center, phi)
    base = base_locus_check(center, phi, scene.nvars) if k == 1 else None
    d = center.codimension
    discrepancy = d - k - 1
    return CenterAnalysis(
        center=center,
        multiplicity=k,
        leading_form=phi,
        section=phi,
        section_verdict=section,
        base_locus=base,
        discrepancy=discrepancy,
        lefschetz_applicable=k < d,
    )


# --------------------------------------------------------------------------
# global checks


def singular_locus_in_centers(scene: Scene) -> Verdict:
    """Whether the singular locus of the hypersurface sits inside the centers.

    With no centers this is emptiness of the singular locus.  Otherwise the
    containment V(jacobian) in the union of the centers is equivalent to
    radical membership of every product of one generator per center ideal.
    """
    f = scene.f
    gens = [f]
    for i in range(scene.nvars):
        dp = f.partial(i)
        if not dp.is_zero:
            gens.append(dp)
    jac = Ideal(tuple(gens), scene.nvars, scene.field)
    if not scene.centers:
        if is_empty_affine(jac):
            return Verdict(Status.SMOOTH)
        return Verdict(
            Status.SINGULAR,
            detail="the hypersurface is singular and there are no centers",
            witness=jac,
        )
    generator_lists = [
        [Polynomial.variable(i, scene.nvars, scene.field) for i in c.vanishing]
        for c in scene.centers
    ]
    for combo in itertools.product(*generator_lists):
        product = combo[0]
        for g in combo[1:]:
            product = product * g
        if not radical_membership(product, jac):
            return Verdict(
                Status.SINGULAR,
                detail="the hypersurface is singular away from the centers",
                witness=jac,
            )
    return Verdict(Status.SMOOTH)


def chart_names(scene_names, center: Center, variable: int) -> tuple:
    names = list(scene_names)
    taken = set(names)
    for l in center.vanishing:
        taken.discard(names[l])

    def fresh(base):
        candidate = base
        while candidate in taken:
            candidate = "_" + candidate
        taken.add(candidate)
        return candidate

    for l in center.vanishing:
        names[l] = fresh("t") if l == variable else fresh(f"u_{scene_names[l]}")
    return tuple(names)


def charts(scene: Scene, center: Center, k: Optional[int] = None) -> tuple:
    """All affine blow-up charts of one center, with strict transforms.

    The pullback of f in every chart is divisible by t^k; the quotient by
    the full t-valuation is the strict transform.
    """
    if k is None:
        k = multiplicity(scene.f, center)
    n, fld = scene.nvars, scene.field
    out = []
    for j in center.vanishing:
        t = Polynomial.variable(j, n, fld)
        substitution = {}
        for l in center.vanishing:
            substitution[l] = t if l == j else t * Polynomial.variable(l, n, fld)
        pullback = scene.f.substitute(substitution)
        if pullback.is_zero:
            raise InternalCheckError("chart pullback of a nonzero hypersurface is zero")
        valuation = min(m.exps[j] for m in pullback.monomials())
        if valuation < k:
            raise InternalCheckError(
                f"chart valuation {valuation} below the vanishing order {k}"
            )
        stripped = {}
        for m, c in pullback.terms():
            exps = list(m.exps)
            exps[j] -= valuation
            stripped[Monomial(exps)] = c
        strict = Polynomial(n, fld, stripped)
        out.append(
            BlowupChart(
                center=center,
                variable=j,
                names=chart_names(scene.names, center, j),
                substitution=substitution,
                strict_transform=strict,
                exceptional_exponent=valuation,
            )
        )
    return tuple(out)


def _chart_exceptional_singularities(chart: BlowupChart, fld) -> Ideal:
    """Ideal cutting out the singular points of the strict transform on t = 0."""
    strict = chart.strict_transform
    n = strict.nvars
    gens = [strict]
    for i in range(n):
        dp = strict.partial(i)
        if not dp.is_zero:
            gens.append(dp)
    gens.append(Polynomial.variable(chart.variable, n, fld))
    return Ideal(tuple(gens), n, fld)


def chart_oracle(
    scene: Scene,
    containment: Optional[Verdict] = None,
    chart_map: Optional[dict] = None,
) -> Verdict:
    """Direct smoothness decision for the strict transform, chart by chart.

    Singular points away from every exceptional locus correspond one to one
    to singular points of the hypersurface away from the centers, so they
    are covered by the containment check; each chart then only needs the
    Jacobian criterion on the exceptional locus t = 0.  The verdict is never
    Inconclusive.
    """
    if containment is None:
        containment = singular_locus_in_centers(scene)
    if chart_map is None:
        chart_map = {
            center.name: charts(scene, center) for center in scene.centers
        }
    for center in scene.centers:
        for chart in chart_map[center.name]:
            locus = _chart_exceptional_singularities(chart, scene.field)
            if not is_empty_affine(locus):
                return Verdict(
                    Status.SINGULAR,
                    detail=(
                        f"strict transform is singular on the exceptional locus "
                        f"in the {scene.names[chart.variable]!r}-chart of center "
                        f"{center.name!r}"
                    ),
                    witness=locus,
                    witness_names=chart.names,
                    chart=(center.name, chart.variable),
                )
    if containment.status is not Status.SMOOTH:
        return Verdict(
            Status.SINGULAR,
            detail=(
                "the hypersurface is singular away from the centers, and those "
                "points persist on the strict transform"
            ),
            witness=containment.witness,
        )
    return Verdict(Status.SMOOTH)


# --------------------------------------------------------------------------
# divisor-class bookkeeping


def adjunction_ledger(scene: Scene, analyses) -> AdjunctionLedger:
    """Discrepancy of every center computed two independent ways.

    Route one is the closed formula d - k - 1.  Route two adds honest
    divisor-class vectors: the canonical class of the blow-up picks up
    (d - 1) times each exceptional divisor, the strict transform is the
    pullback of the hypersurface minus k times each exceptional divisor,
    and adjunction restricts their sum.  Both routes must agree.
    """
    strict = DivisorClass.from_dict(
        {"pullback:Y": 1, **{exceptional_label(a.center): -a.multiplicity for a in analyses}}
    )
    blowup_canonical = DivisorClass.from_dict(
        {"pullback:K_Z": 1, **{exceptional_label(a.center): a.center.codimension - 1 for a in analyses}}
    )
    restricted = blowup_canonical.plus(strict)
    records = []
    canonical_coeffs = {"pullback:K_Y": 1}
    for a in analyses:
        label = exceptional_label(a.center)
        by_formula = a.center.codimension - a.multiplicity - 1
        by_lattice = restricted.coefficient(label)
        if by_formula != by_lattice:
            raise InternalCheckError(
                f"discrepancy mismatch at center {a.center.name!r}: "
                f"{by_formula} by formula, {by_lattice} by lattice"
            )
        canonical_coeffs[label] = by_formula
        identity = None
        if a.center.codimension == 2 and a.multiplicity == 1:
            identity = {
                "lhs": "exceptional divisor of the base locus inside the center",
                "rhs": {
                    "pullback:det_conormal": 1,
                    "pullback:Y": 1,
                    label: 2 - a.multiplicity,
                },
            }
        records.append(
            DiscrepancyRecord(
                center=a.center.name,
                codimension=a.center.codimension,
                multiplicity=a.multiplicity,
                by_formula=by_formula,
                by_lattice=by_lattice,
                crepant=by_formula == 0,
                class_identity=identity,
            )
        )
    return AdjunctionLedger(
        records=tuple(records),
        strict_transform=strict,
        canonical=DivisorClass.from_dict(canonical_coeffs),
        assumes_normal=True,
    )


# --------------------------------------------------------------------------
# full pipeline


def analyze(scene: Scene) -> Analysis:
    """Run the hypothesis routes and the chart oracle and reconcile them."""
    scene.validate()
    analyses = tuple(analyze_center(scene, c) for c in scene.centers)
    containment = singular_locus_in_centers(scene)
    chart_map = {
        a.center.name: charts(scene, a.center, a.multiplicity) for a in analyses
    }

    if containment.status is not Status.SMOOTH:
        section_route = Verdict(
            Status.INCONCLUSIVE,
            detail="hypothesis fails: " + containment.detail,
            witness=containment.witness,
        )
    else:
        bad = next(
            (a for a in analyses if a.section_verdict.status is not Status.SMOOTH), None
        )
        if bad is None:
            section_route = Verdict(Status.SMOOTH)
        else:
            section_route = Verdict(
                Status.INCONCLUSIVE,
                detail="hypothesis fails: " + bad.section_verdict.detail,
                witness=bad.section_verdict.witness,
            )

    base_route = None
    if analyses and all(a.multiplicity == 1 for a in analyses):
        if containment.status is not Status.SMOOTH:
            base_route = Verdict(
                Status.INCONCLUSIVE,
                detail="hypothesis fails: " + containment.detail,
                witness=containment.witness,
            )
        else:
            bad = next(
                (a for a in analyses if a.base_locus.verdict.status is not Status.SMOOTH),
                None,
            )
            if bad is None:
                base_route = Verdict(Status.SMOOTH)
            else:
                base_route = Verdict(
                    Status.INCONCLUSIVE,
                    detail="hypothesis fails: " + bad.base_locus.verdict.detail,
                    witness=bad.base_locus.verdict.witness,
                )

    oracle = chart_oracle(scene, containment, chart_map)

    consistent = not (
        section_route.status is Status.SMOOTH and oracle.status is not Status.SMOOTH
    )
    if base_route is not None and base_route.status is Status.SMOOTH:
        consistent = consistent and oracle.status is Status.SMOOTH

    notes = []
    if section_route.status is Status.INCONCLUSIVE and oracle.status is Status.SMOOTH:
        notes.append(
            "the smoothness criterion is sufficient only: the chart oracle "
            "certifies smoothness although a hypothesis fails"
        )
    for a in analyses:
        if a.base_locus is not None and a.base_locus.vacuous:
            notes.append(
                f"center {a.center.name!r}: empty base locus accepted vacuously "
                f"(expected dimension {a.base_locus.expected_dimension})"
            )

    warnings = []
    p = scene.field.characteristic
    if p:
        threshold = max(
            [a.multiplicity for a in analyses] + [scene.f.total_degree()]
        )
        if p <= threshold:
            warnings.append(
                f"prime characteristic {p} is at most max(multiplicity, deg f) = "
                f"{threshold}: Jacobian-based verdicts certify smoothness of the "
                f"hypersurface scheme over the algebraic closure and may differ "
                f"from characteristic-zero behaviour"
            )

    ledger = adjunction_ledger(scene, analyses)
    return Analysis(
        scene=scene,
        centers=analyses,
        singular_containment=containment,
        section_route=section_route,
        base_locus_route=base_route,
        oracle=oracle,
        consistent=consistent,
        notes=tuple(notes),
        warnings=tuple(warnings),
        charts=tuple(chart_map[a.center.name] for a in analyses),
        ledger=ledger,
    )
