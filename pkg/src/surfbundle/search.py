"""Bounded-depth search for holonomy products with eigenvalue 1.

A cycle of fiber classes α_1 → M_{i_1}·α_1 → ... closing up after k steps is
the same thing as a product of holonomy generators fixing a nonzero class,
so the search enumerates freely reduced words in the generators and their
inverses, breadth first, deduplicating by exact product matrix, and reports
every distinct product P with det(P − I) = 0 together with Ker(P − I).

A product equal to the identity with a nonempty word is reported but
flagged: a fixed homology class never certifies a fixed curve (the acting
mapping class could be homologically trivial yet dynamically complicated),
so hits are candidates only.  When the fiber has genus 2 a second flag marks
that disjoint homologous simple closed curves on such a fiber are freely
homotopic, which makes a hit a better torus candidate, still inconclusive.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator, Sequence

from .linalg import Matrix, Subspace, Vector, fvec, kernel_basis
from .symplectic import HolonomyProblem, SymplecticMatrix, ValidationError

Word = tuple[tuple[int, int], ...]   # (generator index 1..2g, exponent ±1)

DEFAULT_MAX_STATES = 1_000_000


class StateLimitError(RuntimeError):
    """Raised when the number of stored distinct products exceeds the cap."""


def word_str(word: Word) -> str:
    return " ".join(f"g{i}" + ("" if e == 1 else "^-1") for i, e in word)


@dataclass(frozen=True)
class SearchHit:
    """A word whose product fixes a nonzero subspace, with one orbit cycle."""

    word: Word
    product: SymplecticMatrix
    fixed_space: Subspace
    cycle: tuple[Vector, ...]
    product_is_identity: bool
    fiber_genus_two_note: bool
    problem: HolonomyProblem = field(repr=False, compare=False)


def _alphabet(p: HolonomyProblem) -> list[tuple[tuple[int, int], Matrix]]:
    letters = []
    for i, s in enumerate(p.holonomy, start=1):
        letters.append(((i, 1), s.m))
        letters.append(((i, -1), s.inverse().m))
    return letters


def enumerate_products(p: HolonomyProblem, max_len: int,
                       max_states: int = DEFAULT_MAX_STATES,
                       ) -> Iterator[tuple[Word, SymplecticMatrix]]:
    """Stream (word, product) over freely reduced nonempty words of length
    ≤ max_len, each distinct product exactly once.

    Breadth-first in word length, then lexicographic in the letter order
    g1 < g1⁻¹ < g2 < g2⁻¹ < ..., so the witness kept for each product is its
    shortest-then-lexicographically-first freely reduced word.  Only the
    first witness of a product is expanded; any extension pruned that way
    either repeats a known product or shortens to an already-seen one, so
    the product set per depth is still complete.
    """
    if max_len < 1:
        raise ValidationError("max_len must be at least 1")
    if max_states < 1:
        raise ValidationError("max_states must be at least 1")
    letters = _alphabet(p)
    ident = Matrix.identity(2 * p.h)
    # the empty word seeds the walk but is not part of the stream; when a
    # nonempty word first reaches the identity it is emitted (not re-expanded:
    # the root's children already cover every extension of I)
    seen: dict[Matrix, Word] = {ident: ()}
    identity_emitted = False
    frontier: list[tuple[Word, Matrix]] = [((), ident)]
    for _ in range(max_len):
        next_frontier = []
        for word, prod in frontier:
            last = word[-1] if word else None
            for letter, m in letters:
                if last is not None and last == (letter[0], -letter[1]):
                    continue  # free reduction
                new_prod = m * prod
                new_word = word + (letter,)
                if new_prod in seen:
                    if new_prod == ident and not identity_emitted:
                        identity_emitted = True
                        yield new_word, SymplecticMatrix(p.h, new_prod)
                    continue
                if len(seen) > max_states:
                    raise StateLimitError(
                        f"distinct product count exceeded max_states={max_states}")
                seen[new_prod] = new_word
                next_frontier.append((new_word, new_prod))
                yield new_word, SymplecticMatrix(p.h, new_prod)
        frontier = next_frontier


def _letter_matrix(p: HolonomyProblem, letter: tuple[int, int]) -> Matrix:
    i, e = letter
    s = p.holonomy[i - 1]
    return s.m if e == 1 else s.inverse().m


def _orbit(p: HolonomyProblem, word: Word, v: Vector) -> list[Vector]:
    cycle = [v]
    for letter in word[:-1]:
        cycle.append(_letter_matrix(p, letter).apply(cycle[-1]))
    return cycle


def cycle_from_hit(hit: SearchHit, v: Sequence) -> list[Vector]:
    """Orbit (α_1 = v, α_2 = M_{i_1}·α_1, ...) along the hit's word; the word
    length equals the cycle length and fixedness closes it up."""
    vec = fvec(v)
    if hit.product.m.apply(vec) != vec:
        raise ValidationError("vector is not fixed by the product")
    return _orbit(hit.problem, hit.word, vec)


def find_fixed_classes(p: HolonomyProblem, max_len: int,
                       max_states: int = DEFAULT_MAX_STATES) -> list[SearchHit]:
    """All distinct products at depth ≤ max_len with eigenvalue 1, sorted by
    word length then lexicographic order, with their fixed spaces and one
    orbit cycle each (for the first fixed-space basis vector)."""
    ident = Matrix.identity(2 * p.h)
    hits = []
    for word, product in enumerate_products(p, max_len, max_states=max_states):
        delta = product.m - ident
        if delta.det() != 0:
            continue
        fixed = kernel_basis(delta)
        hits.append(SearchHit(
            word=word, product=product, fixed_space=fixed,
            cycle=tuple(_orbit(p, word, fixed.basis[0])),
            product_is_identity=product.m == ident,
            fiber_genus_two_note=p.h == 2, problem=p))
    return hits
