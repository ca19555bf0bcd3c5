"""Homology of the total space of a surface bundle over a surface.

Everything is computed from the holonomy matrices M_1, ..., M_{2g} acting on
H_1 of the fiber.  Four objects drive all formulas:

* W = Σ Im(M_i − I): the span quotiented out of H_1(fiber) to get the
  coinvariants (the fiber's contribution to H_1 of the total space).
* Fix = ∩ Ker(M_i − I): the simultaneously invariant classes, which index
  the fibered 3-cycles α⊗[S¹] over a closed base.
* K: the cylinder space, all tuples (α_1, ..., α_{2g}) with
  Σα_i = Σ M_i·α_i; such a tuple glues into a closed 2-cycle made of
  cylinders lying over the base's generating circles.
* B: the boundary-transport matrix of the closed-base gluing, sending a
  fiber class α to the cylinder tuple swept out when α is carried once
  around the curve that the base is glued along.

For a base with one boundary component the Betti numbers are
(1, 2h − dim W + 2g, 1 + dim K, 2g, 0); for a closed base they are
(1, 2h − dim W + 2g, 2 + dim K − rank B, 2g + dim Fix, 1).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .linalg import (Matrix, Subspace, Vector, commutator, fvec, hstack,
                     image_basis, kernel_basis, rank, subspace_sum, vstack)
from .symplectic import (CLOSED, ONE_BOUNDARY, HolonomyProblem,
                         ValidationError, check_surface_relation)

FIBER_CLASS = "fiber_class"
EULER_DUAL = "euler_dual"
BASE_CIRCLE = "base_circle"
COINVARIANT_CLASS = "coinvariant_class"
CYLINDER_CLASS = "cylinder_class"
VERTICAL_3MFLD = "vertical_3mfld"
INVARIANT_3MFLD = "invariant_3mfld"
FUNDAMENTAL_CLASS = "fundamental_class"

PASS = "pass"
FAIL = "fail"
NOT_APPLICABLE = "n/a"

VALIDATION_NAMES = ("euler_characteristic", "poincare_duality",
                    "symplectic_duality", "beta_kernel", "beta_image_in_K")


@dataclass(frozen=True)
class CylinderClass:
    """A tuple of one fiber class per base generator, gluing into a 2-cycle
    exactly when the total defect Σ(M_i − I)·α_i vanishes."""

    components: tuple[Vector, ...]

    @classmethod
    def from_flat(cls, flat, g: int, h: int) -> "CylinderClass":
        vec = fvec(flat)
        n = 2 * h
        if len(vec) != 2 * g * n:
            raise ValidationError(f"cylinder vector must have length {2 * g * n}")
        return cls(tuple(vec[i * n:(i + 1) * n] for i in range(2 * g)))

    def flat(self) -> Vector:
        return tuple(x for comp in self.components for x in comp)

    def gluing_defect(self, p: HolonomyProblem) -> Vector:
        if len(self.components) != 2 * p.g:
            raise ValidationError("component count does not match the base genus")
        total = [0] * (2 * p.h)
        for m, alpha in zip(p.matrices, self.components):
            moved = m.apply(alpha)
            total = [t + mv - av for t, mv, av in zip(total, moved, alpha)]
        return fvec(total)

    def is_valid(self, p: HolonomyProblem) -> bool:
        return not any(self.gluing_defect(p))


@dataclass(frozen=True)
class GeneratorEntry:
    """One labeled homology generator with its exact coordinate data."""

    label: str
    degree: int
    index: Optional[int] = None
    vector: Optional[Vector] = None
    cylinder: Optional[CylinderClass] = None
    coefficient: Optional[int] = None


@dataclass(frozen=True)
class Verdict:
    name: str
    status: str
    detail: str

    @property
    def passed(self) -> bool:
        return self.status != FAIL


@dataclass(frozen=True)
class BettiReport:
    """Betti numbers, auxiliary dimensions, labeled generators, and the
    validation verdicts for one bundle."""

    problem: HolonomyProblem
    betti: tuple[int, int, int, int, int]
    dim_W: int
    dim_Fix: int
    dim_K: int
    rank_beta: Optional[int]
    generators: tuple[GeneratorEntry, ...]
    validations: tuple[Verdict, ...]

    @property
    def h(self) -> int:
        return self.problem.h

    @property
    def g(self) -> int:
        return self.problem.g

    @property
    def base_type(self) -> str:
        return self.problem.base_type

    @property
    def all_valid(self) -> bool:
        return all(v.passed for v in self.validations)


def _differences(p: HolonomyProblem) -> list[Matrix]:
    ident = Matrix.identity(2 * p.h)
    return [m - ident for m in p.matrices]


def coinvariant_quotient(p: HolonomyProblem) -> tuple[Subspace, list[Vector]]:
    """W = Σ Im(M_i − I) plus representatives of a basis of H_1(fiber)/W,
    chosen as the standard basis vectors at the non-pivot columns of W."""
    w = subspace_sum([image_basis(d) for d in _differences(p)])
    n = 2 * p.h
    reps = []
    for c in w.non_pivot_cols():
        e = [0] * n
        e[c] = 1
        reps.append(fvec(e))
    return w, reps


def invariant_space(p: HolonomyProblem) -> Subspace:
    """Fix = ∩ Ker(M_i − I), computed as one stacked kernel."""
    return kernel_basis(vstack(_differences(p)))


def cylinder_space(p: HolonomyProblem) -> Subspace:
    """Kernel of (α_1, ..., α_{2g}) ↦ Σ(M_i − I)·α_i inside Q^{4gh}."""
    return kernel_basis(hstack(_differences(p)))


def beta_map(p: HolonomyProblem) -> Matrix:
    """The (4gh)×(2h) transport matrix of α ↦ i(α ⊗ [S¹]) over a closed base.

    Block row 2k−1 is (I − M_{2k-1}⁻¹·M_{2k}·M_{2k-1})·Q_{k-1} and block row
    2k is M_{2k-1}·Q_{k-1} − Q_k, where Q_0 = I and
    Q_k = [M_{2k}⁻¹, M_{2k-1}⁻¹]·Q_{k-1} accumulates the transport around the
    first k handles.  Columns glue (land in the cylinder space) exactly when
    Q_g = I; that holds for commuting pairs and always for g = 1, but for
    g ≥ 2 it is strictly stronger than the surface relator, and the
    beta_image_in_K verdict reports any violation.
    """
    if p.base_type != CLOSED:
        raise ValidationError("the transport matrix only exists over a closed base")
    if not check_surface_relation(p):
        raise ValidationError("holonomy violates the closed-surface relator "
                              "prod [M_(2i-1), M_(2i)] = I")
    ident = Matrix.identity(2 * p.h)
    ms = p.matrices
    blocks = []
    q = ident
    for k in range(1, p.g + 1):
        modd, meven = ms[2 * k - 2], ms[2 * k - 1]
        q_next = commutator(meven.inverse(), modd.inverse()) * q
        blocks.append((ident - modd.inverse() * meven * modd) * q)
        blocks.append(modd * q - q_next)
        q = q_next
    return vstack(blocks)


def _euler_expected(h: int, g: int, base_type: str) -> int:
    chi_base = 2 - 2 * g if base_type == CLOSED else 1 - 2 * g
    return (2 - 2 * h) * chi_base


def _verdicts(p: HolonomyProblem, betti, dim_w: int, dim_fix: int) -> tuple[Verdict, ...]:
    closed = p.base_type == CLOSED
    out = []

    total = sum((-1) ** i * b for i, b in enumerate(betti))
    expected = _euler_expected(p.h, p.g, p.base_type)
    out.append(Verdict("euler_characteristic",
                       PASS if total == expected else FAIL,
                       f"alternating sum {total}, expected {expected}"))

    if closed:
        ok = betti[1] == betti[3] and betti[0] == betti[4]
        out.append(Verdict("poincare_duality",
                           PASS if ok else FAIL,
                           f"b1={betti[1]} b3={betti[3]} b0={betti[0]} b4={betti[4]}"))
    else:
        out.append(Verdict("poincare_duality", NOT_APPLICABLE,
                           "base has boundary"))

    ok = dim_w + dim_fix == 2 * p.h
    out.append(Verdict("symplectic_duality",
                       PASS if ok else FAIL,
                       f"dim W {dim_w} + dim Fix {dim_fix} vs 2h = {2 * p.h}"))

    if closed:
        beta = beta_map(p)
        fix = invariant_space(p)
        ok = kernel_basis(beta) == fix
        out.append(Verdict("beta_kernel", PASS if ok else FAIL,
                           "Ker(B) equals the invariant space" if ok
                           else "Ker(B) differs from the invariant space"))
        bad = [j + 1 for j, col in enumerate(beta.columns())
               if not CylinderClass.from_flat(col, p.g, p.h).is_valid(p)]
        out.append(Verdict("beta_image_in_K", PASS if not bad else FAIL,
                           "every column satisfies the gluing condition" if not bad
                           else f"columns {bad} violate the gluing condition"))
    else:
        out.append(Verdict("beta_kernel", NOT_APPLICABLE, "base has boundary"))
        out.append(Verdict("beta_image_in_K", NOT_APPLICABLE, "base has boundary"))

    return tuple(out)


def validate_report(r: BettiReport) -> tuple[Verdict, ...]:
    """Recompute all cross-check verdicts for a report.

    Arithmetic checks (Euler characteristic, Poincaré duality, symplectic
    duality) use the report's own fields, so a hand-forged report fails
    exactly the forged checks; the subspace-level beta checks are recomputed
    from the carried problem.
    """
    return _verdicts(r.problem, r.betti, r.dim_W, r.dim_Fix)


def _degree1_generators(p: HolonomyProblem, reps) -> list[GeneratorEntry]:
    out = [GeneratorEntry(BASE_CIRCLE, 1, index=i + 1) for i in range(2 * p.g)]
    out.extend(GeneratorEntry(COINVARIANT_CLASS, 1, vector=v) for v in reps)
    return out


def _cylinder_entries(p: HolonomyProblem, vectors) -> list[GeneratorEntry]:
    return [GeneratorEntry(CYLINDER_CLASS, 2,
                           cylinder=CylinderClass.from_flat(v, p.g, p.h))
            for v in vectors]


def homology_bounded(p: HolonomyProblem) -> BettiReport:
    """Betti numbers and generators for a base of genus g with one boundary
    component (no relator constraint on the holonomy)."""
    if p.base_type != ONE_BOUNDARY:
        raise ValidationError("expected a one-boundary base")
    w, reps = coinvariant_quotient(p)
    fix = invariant_space(p)
    cyl = cylinder_space(p)
    h, g = p.h, p.g
    betti = (1, 2 * h - w.dim + 2 * g, 1 + cyl.dim, 2 * g, 0)

    generators = _degree1_generators(p, reps)
    generators.append(GeneratorEntry(FIBER_CLASS, 2))
    generators.extend(_cylinder_entries(p, cyl.basis))
    generators.extend(GeneratorEntry(VERTICAL_3MFLD, 3, index=i + 1)
                      for i in range(2 * g))

    verdicts = _verdicts(p, betti, w.dim, fix.dim)
    return BettiReport(p, betti, w.dim, fix.dim, cyl.dim, None,
                       tuple(generators), verdicts)


def homology_closed(p: HolonomyProblem) -> BettiReport:
    """Betti numbers and generators for a closed base of genus g.

    Degree 2 is spanned by the dual of the fiberwise Euler class (whose
    boundary transport coefficient is the fiber Euler characteristic
    2 − 2h), the fiber class, and the cylinder classes modulo the image of
    the transport matrix; degree 3 adds the invariant fibered 3-cycles.
    """
    if p.base_type != CLOSED:
        raise ValidationError("expected a closed base")
    if not check_surface_relation(p):
        raise ValidationError("holonomy violates the closed-surface relator "
                              "prod [M_(2i-1), M_(2i)] = I")
    w, reps = coinvariant_quotient(p)
    fix = invariant_space(p)
    cyl = cylinder_space(p)
    beta = beta_map(p)
    rank_beta = rank(beta)
    h, g = p.h, p.g
    betti = (1, 2 * h - w.dim + 2 * g, 2 + cyl.dim - rank_beta,
             2 * g + fix.dim, 1)

    # quotient representatives: cylinder basis vectors whose pivot is not a
    # pivot of Im(B); leading coordinates outside Im(B)'s pivot set stay
    # independent in the quotient
    beta_image = image_basis(beta)
    taken = set(beta_image.pivot_cols)
    selected = [v for v, piv in zip(cyl.basis, cyl.pivot_cols) if piv not in taken]

    generators = _degree1_generators(p, reps)
    generators.append(GeneratorEntry(EULER_DUAL, 2, coefficient=2 - 2 * h))
    generators.append(GeneratorEntry(FIBER_CLASS, 2))
    generators.extend(_cylinder_entries(p, selected))
    generators.extend(GeneratorEntry(VERTICAL_3MFLD, 3, index=i + 1)
                      for i in range(2 * g))
    generators.extend(GeneratorEntry(INVARIANT_3MFLD, 3, vector=v)
                      for v in fix.basis)
    generators.append(GeneratorEntry(FUNDAMENTAL_CLASS, 4))

    verdicts = _verdicts(p, betti, w.dim, fix.dim)
    return BettiReport(p, betti, w.dim, fix.dim, cyl.dim, rank_beta,
                       tuple(generators), verdicts)


def homology(p: HolonomyProblem) -> BettiReport:
    """Dispatch on the base type."""
    if p.base_type == CLOSED:
        return homology_closed(p)
    return homology_bounded(p)
