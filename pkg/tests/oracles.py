"""Independent reference implementations used only by the tests.

Everything here is built from sympy dense matrices and brute-force search,
sharing no code with the package beyond the basis-ordering convention:
slot s of V^{(x)k} is bit s-1 of the basis index, so an operator A on the
early slots tensored with B on the later ones is ``kron(B, A)``.
"""

from __future__ import annotations

import itertools

import sympy as sp

from annular_rt import LaurentPoly, LinearOperator, TensorVector

q = sp.Symbol("q")


def to_sympy(p: LaurentPoly) -> sp.Expr:
    return sp.Add(*[c * q**e for e, c in p.items()])


def from_sympy(expr) -> LaurentPoly:
    expr = sp.expand(expr)
    terms: dict[int, int] = {}
    for term in sp.Add.make_args(expr):
        if term == 0:
            continue
        c, e = term.as_coeff_exponent(q)
        assert c.is_integer, f"non-integer coefficient in {expr}"
        terms[int(e)] = terms.get(int(e), 0) + int(c)
    return LaurentPoly(terms)


def dense(op: LinearOperator) -> sp.Matrix:
    r, s = op.domain_arity, op.codomain_arity
    M = sp.zeros(1 << s, 1 << r)
    for col, vec in op.columns():
        for row, c in vec.items():
            M[row, col] = to_sympy(c)
    return M


def dense_vec(v: TensorVector) -> sp.Matrix:
    M = sp.zeros(1 << v.arity, 1)
    for row, c in v.items():
        M[row, 0] = to_sympy(c)
    return M


def same(a: sp.Matrix, b: sp.Matrix) -> bool:
    return a.shape == b.shape and sp.expand(a - b) == sp.zeros(*a.shape)


def eye(slots: int) -> sp.Matrix:
    return sp.eye(1 << slots)


def kron(*ms) -> sp.Matrix:
    out = sp.Matrix([[1]])
    for m in ms:
        out = sp.kronecker_product(out, m)
    return out


# 2-slot blocks read straight from the defining tables
CAP = sp.Matrix([[0, -1, q, 0]])                # v_10 -> -1, v_01 -> q
CUP = sp.Matrix([[0], [q**-1], [-1], [0]])      # 1 -> q^-1 v_10 - v_01
EGF = CUP * CAP


def crossing_block(l: int) -> sp.Matrix:
    return sp.eye(4) + (q if l == 1 else q**-1) * EGF


def place(block: sp.Matrix, n_free_before: int, n_free_after: int) -> sp.Matrix:
    """Block acting on the slots following ``n_free_before`` untouched ones."""
    return kron(eye(n_free_after), block, eye(n_free_before))


def cup(n: int, i: int) -> sp.Matrix:
    return place(CUP, i - 1, n - i - 1)


def cap(n: int, i: int) -> sp.Matrix:
    return place(CAP, i - 1, n - i - 1)


def cross(n: int, i: int, l: int) -> sp.Matrix:
    return place(crossing_block(l), i - 1, n - i - 1)


def twist_scalar(l: int):
    """The one-strand kink cap(3,1) cross(3,2,l) cup(3,1), which must be a scalar."""
    M = sp.expand(cap(3, 1) * cross(3, 2, l) * cup(3, 1))
    assert M[0, 1] == 0 and M[1, 0] == 0 and sp.expand(M[0, 0] - M[1, 1]) == 0
    return M[0, 0]


def wind(n: int) -> sp.Matrix:
    W = sp.Matrix([[2 * q**-2, q**n], [-q**(-4 - n), 0]])
    return kron(W, eye(n - 1))


def rot(n: int, chain: int = 1) -> sp.Matrix:
    M = wind(n)
    for i in range(n - 1, 0, -1):
        M = M * cross(n, i, chain)
    return M


def base_class(m: int) -> sp.Matrix:
    out = sp.Matrix([[1]])
    for i in range(1, m + 1):
        out = kron(sp.Matrix([[1], [-q**-i]]), out)
    return out


# -- matchings --------------------------------------------------------------

def _interleave(a, b, c, d) -> bool:
    a, b = sorted((a, b))
    return (a < c < b) != (a < d < b)


def brute_force_matchings(m: int, n: int) -> set[tuple[tuple[int, int], ...]]:
    """Chord diagrams on N = m+2n circle points with n chords, drawable on the
    annulus with the m leftover points joined to the inner circle."""
    N = m + 2 * n
    found = set()
    for through in itertools.combinations(range(1, N + 1), m):
        rest = [p for p in range(1, N + 1) if p not in through]
        for pairing in _pairings(rest):
            if any(_interleave(*x, *y) for x, y in itertools.combinations(pairing, 2)):
                continue
            # each cup must leave every through point on one side of it
            ok = True
            for a, b in pairing:
                inside = sum(a < d < b for d in through)
                if 0 < inside < m:
                    ok = False
                    break
            if ok:
                found.add(tuple(sorted(pairing)))
    return found


def _pairings(points):
    if not points:
        yield []
        return
    first = points[0]
    for j in range(1, len(points)):
        rest = points[1:j] + points[j + 1:]
        for p in _pairings(rest):
            yield [(first, points[j])] + p
