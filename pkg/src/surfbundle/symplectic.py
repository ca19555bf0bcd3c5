"""Symplectic data for the homology action of surface homeomorphisms.

H_1 of the genus-h fiber carries the intersection form; in the basis
(a1, b1, ..., ah, bh) the form is block diagonal with blocks [[0,1],[-1,0]]
and ω(a_i, b_i) = +1.  A Dehn twist about a curve with class c acts as the
transvection x ↦ x ± ω(x, c)·c, and products of such transvections give the
homology action of twist words.  A holonomy tuple is one integer symplectic
matrix per generator of the base surface group; for a closed base the images
must kill the surface relator ∏[M_{2i-1}, M_{2i}].

>>> t = transvection(named_curve_class("a1", 2), 2)
>>> t.m.row(1)
(Fraction(0, 1), Fraction(1, 1), Fraction(0, 1), Fraction(0, 1))
>>> is_symplectic(t.m, 2)
True
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence, Union

from .linalg import Matrix, Vector, commutator, fvec

CLOSED = "closed"
ONE_BOUNDARY = "one_boundary"
BASE_TYPES = (CLOSED, ONE_BOUNDARY)


class ValidationError(ValueError):
    """Input data violates a structural invariant (named in the message)."""


def standard_form(h: int) -> Matrix:
    """The 2h×2h intersection form J in the (a1, b1, ..., ah, bh) basis."""
    if h < 1:
        raise ValidationError("fiber genus must be at least 1 for the standard form")
    n = 2 * h
    rows = [[0] * n for _ in range(n)]
    for i in range(h):
        rows[2 * i][2 * i + 1] = 1
        rows[2 * i + 1][2 * i] = -1
    return Matrix(rows)


def omega(x: Sequence, y: Sequence, h: int) -> Fraction:
    """Intersection pairing ω(x, y) = xᵀ·J·y."""
    xv, yv = fvec(x), fvec(y)
    if len(xv) != 2 * h or len(yv) != 2 * h:
        raise ValidationError(f"vectors must have length {2 * h}")
    total = Fraction(0)
    for i in range(h):
        total += xv[2 * i] * yv[2 * i + 1] - xv[2 * i + 1] * yv[2 * i]
    return total


def is_symplectic(m: Matrix, h: int) -> bool:
    """True iff mᵀ·J·m = J exactly."""
    if m.rows != 2 * h or m.cols != 2 * h:
        raise ValidationError(f"matrix must be {2 * h}x{2 * h}, got {m.rows}x{m.cols}")
    j = standard_form(h)
    return m.transpose() * j * m == j


@dataclass(frozen=True)
class SymplecticMatrix:
    """An integer matrix preserving the intersection form of genus ``h``."""

    h: int
    m: Matrix

    def __post_init__(self):
        if not self.m.is_integral():
            raise ValidationError("symplectic matrix entries must be integers")
        if not is_symplectic(self.m, self.h):
            raise ValidationError("matrix does not preserve the intersection form")
        if self.m.det() != 1:
            # implied by symplecticity; kept as a cheap independent sanity check
            raise ValidationError("symplectic matrix must have determinant +1")

    @classmethod
    def identity(cls, h: int) -> "SymplecticMatrix":
        return cls(h, Matrix.identity(2 * h))

    def __mul__(self, other: "SymplecticMatrix") -> "SymplecticMatrix":
        if not isinstance(other, SymplecticMatrix):
            return NotImplemented
        if other.h != self.h:
            raise ValidationError("genus mismatch in symplectic product")
        return SymplecticMatrix(self.h, self.m * other.m)

    def inverse(self) -> "SymplecticMatrix":
        # m⁻¹ = J⁻¹·mᵀ·J stays integral, no rational elimination needed
        j = standard_form(self.h)
        return SymplecticMatrix(self.h, j.inverse() * self.m.transpose() * j)

    def pow(self, k: int) -> "SymplecticMatrix":
        base = self if k >= 0 else self.inverse()
        return SymplecticMatrix(self.h, base.m.pow(abs(k)))

    def int_rows(self) -> list[list[int]]:
        return [[int(e) for e in row] for row in self.m.entries]


def named_curve_class(name: str, h: int) -> Vector:
    """Homology class of a named curve: a_i, b_i are basis vectors and the
    chain curve c_i carries a_i − a_{i+1}."""
    match = re.fullmatch(r"([abc])(\d+)", name)
    if not match:
        raise ValidationError(f"unknown curve name {name!r}")
    kind, idx = match.group(1), int(match.group(2))
    n = 2 * h
    vec = [Fraction(0)] * n
    if kind in ("a", "b"):
        if not 1 <= idx <= h:
            raise ValidationError(f"curve {name!r} out of range for fiber genus {h}")
        vec[2 * (idx - 1) + (0 if kind == "a" else 1)] = Fraction(1)
    else:
        if not 1 <= idx <= h - 1:
            raise ValidationError(f"curve {name!r} out of range for fiber genus {h}")
        vec[2 * (idx - 1)] = Fraction(1)
        vec[2 * idx] = Fraction(-1)
    return tuple(vec)


def transvection(c: Sequence, h: int, sign: int = 1) -> SymplecticMatrix:
    """Homology action of a Dehn twist about a curve with class ``c``:
    x ↦ x + sign·ω(x, c)·c.  Sign +1 is the right-handed twist."""
    if sign not in (1, -1):
        raise ValidationError("transvection sign must be +1 or -1")
    cv = fvec(c)
    if len(cv) != 2 * h:
        raise ValidationError(f"curve class must have length {2 * h}")
    n = 2 * h
    weights = []
    for j in range(n):
        e = [Fraction(0)] * n
        e[j] = Fraction(1)
        weights.append(sign * omega(e, cv, h))
    rows = [[(Fraction(1) if i == j else Fraction(0)) + weights[j] * cv[i]
             for j in range(n)] for i in range(n)]
    return SymplecticMatrix(h, Matrix(rows))


Letter = tuple[Union[str, Vector], int]


@dataclass(frozen=True)
class TwistWord:
    """A word in Dehn twists: letters are (curve, exponent) with exponent ±1.

    A curve is either a name resolvable by :func:`named_curve_class` or an
    explicit integer class vector."""

    letters: tuple[Letter, ...]

    def __post_init__(self):
        for curve, exp in self.letters:
            if exp not in (1, -1):
                raise ValidationError("twist exponents must be +1 or -1")
            if not isinstance(curve, str) and not isinstance(curve, tuple):
                raise ValidationError("twist curve must be a name or a vector")


_LETTER_RE = re.compile(r"T([abc]\d+)(\^-1)?")


def parse_twist_word(text: str) -> TwistWord:
    """Parse a word like ``"Ta1 Tb2^-1 Tc1"`` (whitespace-separated letters)."""
    letters = []
    for token in text.split():
        match = _LETTER_RE.fullmatch(token)
        if not match:
            raise ValidationError(f"invalid twist letter {token!r}")
        letters.append((match.group(1), -1 if match.group(2) else 1))
    return TwistWord(tuple(letters))


def evaluate_word(word: TwistWord, h: int) -> SymplecticMatrix:
    """Homology action of a twist word, leftmost letter applied first, so the
    matrix of the composite is M_last ··· M_first."""
    acc = Matrix.identity(2 * h)
    for curve, exp in word.letters:
        cv = named_curve_class(curve, h) if isinstance(curve, str) else fvec(curve)
        acc = transvection(cv, h, exp).m * acc
    return SymplecticMatrix(h, acc)


@dataclass(frozen=True)
class HolonomyProblem:
    """Fiber genus, base descriptor, and the 2g holonomy matrices.

    Construction validates the structure: h ≥ 2, g ≥ 1, entry count, and
    symplecticity of every entry.  The closed-base relator is deliberately
    not enforced here, so it can be queried with
    :func:`check_surface_relation`; the validated entry points
    (:func:`build_problem`, file parsing, the homology engines) reject
    relator violations.  ``source_entries`` optionally keeps the raw file
    entries for echoing.
    """

    h: int
    base_type: str
    g: int
    holonomy: tuple[SymplecticMatrix, ...]
    source_entries: tuple = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        if self.base_type not in BASE_TYPES:
            raise ValidationError(f"base type must be one of {BASE_TYPES}")
        if self.h < 2:
            raise ValidationError("fiber genus must be at least 2")
        if self.g < 1:
            raise ValidationError("base genus must be at least 1")
        if len(self.holonomy) != 2 * self.g:
            raise ValidationError(
                f"expected 2g = {2 * self.g} holonomy entries, got {len(self.holonomy)}")
        for i, entry in enumerate(self.holonomy):
            if not isinstance(entry, SymplecticMatrix) or entry.h != self.h:
                raise ValidationError(
                    f"holonomy entry {i + 1} is not a genus-{self.h} symplectic matrix")

    @property
    def matrices(self) -> list[Matrix]:
        return [s.m for s in self.holonomy]


def _relator_holds(p: HolonomyProblem) -> bool:
    n = 2 * p.h
    acc = Matrix.identity(n)
    for i in range(p.g):
        acc = acc * commutator(p.holonomy[2 * i].m, p.holonomy[2 * i + 1].m)
    return acc == Matrix.identity(n)


def check_surface_relation(p: HolonomyProblem) -> bool:
    """True iff ∏ [M_{2i-1}, M_{2i}] = I.  Only meaningful for a closed base;
    calling it on a one-boundary problem is a usage error."""
    if p.base_type != CLOSED:
        raise ValidationError("surface relation only applies to a closed base")
    return _relator_holds(p)


def build_problem(h: int, base_type: str, g: int,
                  entries: Sequence[Union[SymplecticMatrix, TwistWord, str, Sequence]],
                  source_entries=None) -> HolonomyProblem:
    """Assemble a problem from mixed entries: matrices, twist words, word
    strings, or raw integer row arrays."""
    resolved = []
    for i, entry in enumerate(entries):
        try:
            if isinstance(entry, SymplecticMatrix):
                resolved.append(entry)
            elif isinstance(entry, TwistWord):
                resolved.append(evaluate_word(entry, h))
            elif isinstance(entry, str):
                resolved.append(evaluate_word(parse_twist_word(entry), h))
            else:
                resolved.append(SymplecticMatrix(h, Matrix(entry)))
        except ValueError as exc:
            raise ValidationError(f"holonomy entry {i + 1}: {exc}") from exc
    problem = HolonomyProblem(h, base_type, g, tuple(resolved),
                              source_entries=source_entries)
    if base_type == CLOSED and not _relator_holds(problem):
        raise ValidationError("holonomy violates the closed-surface relator "
                              "prod [M_(2i-1), M_(2i)] = I")
    return problem
