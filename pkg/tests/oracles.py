"""Independent oracle implementations used to cross-check the package.

Everything here deliberately avoids surfbundle's own linear algebra: ranks,
echelon forms, and kernels go through sympy, and the word search uses a
plain recursive enumerator over integer tuples.  Where a formula is shared
(the Betti expressions), only the arithmetic inputs come from this module.
"""

from fractions import Fraction

import sympy


def sym(rows):
    return sympy.Matrix([[sympy.Rational(x) for x in row] for row in rows])


def sym_rank(rows) -> int:
    return sym(rows).rank()


def sym_rref_rows(rows):
    """Nonzero RREF rows as tuples of Fraction (canonical subspace basis)."""
    m, pivots = sym(rows).rref()
    out = []
    for i in range(len(pivots)):
        out.append(tuple(Fraction(int(x.p), int(x.q)) for x in m.row(i)))
    return tuple(out), tuple(int(p) for p in pivots)


def sym_nullspace_dim(rows) -> int:
    m = sym(rows)
    return m.cols - m.rank()


def sym_kernel_rows(rows):
    """Canonical kernel basis: RREF of sympy's nullspace vectors."""
    vecs = sym(rows).nullspace()
    if not vecs:
        return (), ()
    stacked = sympy.Matrix.hstack(*vecs).T
    return sym_rref_rows(stacked.tolist())


def sym_dims(problem):
    """(dim W, dim Fix, dim K) from the holonomy matrices, via sympy only."""
    ms = [sym(s.int_rows()) for s in problem.holonomy]
    n = 2 * problem.h
    ident = sympy.eye(n)
    diffs = [m - ident for m in ms]
    dim_w = sympy.Matrix.hstack(*diffs).rank()
    dim_fix = n - sympy.Matrix.vstack(*diffs).rank()
    dim_k = 2 * problem.g * n - dim_w  # 4gh - dim W
    return dim_w, dim_fix, dim_k


def sym_beta(problem):
    """The closed-base transport matrix rebuilt with sympy arithmetic."""
    ms = [sym(s.int_rows()) for s in problem.holonomy]
    n = 2 * problem.h
    ident = sympy.eye(n)

    def comm(a, b):
        return a * b * a.inv() * b.inv()

    blocks = []
    q = ident
    for k in range(1, problem.g + 1):
        modd, meven = ms[2 * k - 2], ms[2 * k - 1]
        q_next = comm(meven.inv(), modd.inv()) * q
        blocks.append((ident - modd.inv() * meven * modd) * q)
        blocks.append(modd * q - q_next)
        q = q_next
    return sympy.Matrix.vstack(*blocks)


# ---------------------------------------------------------------------------
# independent word enumeration over integer tuple matrices

def _tmul(a, b, n):
    return tuple(tuple(sum(a[i][k] * b[k][j] for k in range(n))
                       for j in range(n)) for i in range(n))


def _tident(n):
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


def _tinv(rows):
    m = sym(rows).inv()
    return tuple(tuple(int(x) for x in m.row(i)) for i in range(m.rows))


def _letter_key(letter):
    # canonical letter order: g1 < g1^-1 < g2 < g2^-1 < ...
    return (letter[0], 0 if letter[1] == 1 else 1)


def _gen_matrices(problem):
    gens = {}
    for i, s in enumerate(problem.holonomy, start=1):
        rows = tuple(tuple(r) for r in s.int_rows())
        gens[(i, 1)] = rows
        gens[(i, -1)] = _tinv(rows)
    return gens


def brute_distinct_products(problem, max_len):
    """Products of all freely reduced nonempty words of length ≤ max_len,
    deduplicated, by exhaustive recursion (independent of the BFS)."""
    n = 2 * problem.h
    gens = _gen_matrices(problem)
    letters = sorted(gens, key=_letter_key)
    seen = {}

    def rec(word, prod):
        if word:
            seen.setdefault(prod, tuple(word))
        if len(word) == max_len:
            return
        for letter in letters:
            if word and word[-1] == (letter[0], -letter[1]):
                continue
            rec(word + [letter], _tmul(gens[letter], prod, n))

    rec([], _tident(n))
    return seen


def brute_shortlex_witnesses(problem, max_len):
    """First witness per distinct product when all freely reduced nonempty
    words are visited in shortest-then-lexicographic order."""
    n = 2 * problem.h
    gens = _gen_matrices(problem)
    letters = sorted(gens, key=_letter_key)
    seen = {}
    level = [((), _tident(n))]
    for _ in range(max_len):
        nxt = []
        for word, prod in level:
            for letter in letters:
                if word and word[-1] == (letter[0], -letter[1]):
                    continue
                w = word + (letter,)
                p = _tmul(gens[letter], prod, n)
                nxt.append((w, p))
        nxt.sort(key=lambda wp: tuple(_letter_key(l) for l in wp[0]))
        for w, p in nxt:
            seen.setdefault(p, w)
        level = nxt
    return seen


def brute_eigenvalue_one_products(problem, max_len):
    """Subset of brute_distinct_products whose product has eigenvalue 1."""
    out = {}
    n = 2 * problem.h
    for prod, word in brute_distinct_products(problem, max_len).items():
        m = sym(prod) - sympy.eye(n)
        if m.det() == 0:
            out[prod] = word
    return out
