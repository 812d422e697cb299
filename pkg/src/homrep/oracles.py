"""Independent oracles: Fox-calculus Burau matrices, transcribed Lawrence-Krammer-Bigelow
matrices, and a comparator that searches a small set of conventions for an exact match.

Fox convention.  ``burau_unreduced(b)`` has entry (i, j) equal to the
abelianized derivative of a(b)(x_i) with respect to x_j.  Since braids act on
the left, the chain rule gives ``J(b1 b2) = J(b2) J(b1)``: this matrix is an
anti-homomorphism.  Its transpose is a homomorphism, and ``burau_reduced``
is the transpose restricted to the invariant sum-zero submodule, written in
the difference basis d_i = e_i - e_{i+1}.  That submodule is dual to the
quotient by the fixed all-ones vector.
"""

from __future__ import annotations

import itertools
import json
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from importlib import resources
from typing import Sequence

from .groupring import A1, A2, Elem, Ring
from .partitions import enum_P
from .repmatrix import RepMatrix
from .words import BraidWord, FreeGroupWord, artin_act, generator

# -- Fox calculus -------------------------------------------------------------------


def fox_derivative(w: FreeGroupWord, j: int) -> Elem:
    """Abelianized Fox derivative d w / d x_j in Z[x^{+-1}] (every x_i maps to x)."""
    total = A1.zero()
    prefix = 0  # abelianized exponent of the part of w already read
    for i, s in w.letters:
        if s == 1:
            if i == j:
                total = total + A1.monomial((prefix,))
            prefix += 1
        else:
            prefix -= 1
            if i == j:
                total = total - A1.monomial((prefix,))
    return total


def burau_unreduced(b: BraidWord) -> RepMatrix:
    """n x n Fox Jacobian of the Artin automorphism of ``b`` (anti-multiplicative in b)."""
    n = b.strands
    entries = {}
    for i in range(1, n + 1):
        image = artin_act(b, FreeGroupWord(n, ((i, 1),)))
        for j in range(1, n + 1):
            entries[i - 1, j - 1] = fox_derivative(image, j)
    return RepMatrix(A1, n, n, entries)


def burau_reduced(b: BraidWord) -> RepMatrix:
    """(n-1) x (n-1) reduced Burau matrix; multiplicative in b."""
    n = b.strands
    if n < 2:
        raise ValueError("reduced Burau needs n >= 2")
    jt = burau_unreduced(b).transpose()
    columns = []
    for c in range(n - 1):
        # image of d_c = e_c - e_{c+1}; coordinates in the d basis are prefix sums
        col = [jt[r, c] - jt[r, c + 1] for r in range(n)]
        acc, coords = A1.zero(), {}
        for r in range(n - 1):
            acc = acc + col[r]
            if acc:
                coords[r] = acc
        if acc + col[n - 1]:
            raise AssertionError("sum-zero submodule not preserved")
        columns.append(coords)
    labels = list(range(n - 1))
    return RepMatrix.from_columns(A1, labels, labels, columns)


def burau_reduced_generators(n: int) -> list[RepMatrix]:
    return [burau_reduced(generator(n, i)) for i in range(1, n)]


# -- Lawrence-Krammer-Bigelow ------------------------------------------------------------


def lkb_pairs(n: int) -> list[tuple[int, int]]:
    return [(j, k) for j in range(1, n + 1) for k in range(j + 1, n + 1)]


def _lkb_column(n: int, i: int, j: int, k: int) -> dict[tuple[int, int], Elem]:
    """Image of v_{j,k} under sigma_i in the Bigelow-Krammer form."""
    q, t = A2.var("q"), A2.var("t")
    one = A2.one()
    if i not in (j - 1, j, k - 1, k):
        return {(j, k): one}
    if i == j - 1:
        return {(i, k): q, (i, j): q * q - q, (j, k): one - q}
    if i == j and i != k - 1:
        return {(j + 1, k): one}
    if i == k - 1 and i != j:
        return {(j, i): q, (j, k): one - q, (i, k): -(q * q - q) * t}
    if i == k:
        return {(j, k + 1): one}
    return {(j, k): -t * q * q}  # i == j == k - 1


def lkb_from_rules(n: int, i: int) -> RepMatrix:
    if n < 2 or not 1 <= i <= n - 1:
        raise ValueError("need n >= 2 and 1 <= i <= n-1")
    pairs = lkb_pairs(n)
    cols = []
    for j, k in pairs:
        col: dict[tuple[int, int], Elem] = {}
        for key, v in _lkb_column(n, i, j, k).items():
            col[key] = col[key] + v if key in col else v
        cols.append(col)
    return RepMatrix.from_columns(A2, pairs, pairs, cols)


@lru_cache(maxsize=1)
def _lkb_data() -> dict:
    with resources.files("homrep.data").joinpath("lkb_generators.json").open() as fh:
        return json.load(fh)


def lkb_reference(n: int, i: int) -> RepMatrix:
    """Transcribed LKB generator sigma_i on the basis v_{j,k}, j < k (from the shipped data file)."""
    data = _lkb_data()["matrices"]
    key = f"{n},{i}"
    if key in data:
        return RepMatrix.from_json(data[key])
    return lkb_from_rules(n, i)


def build_lkb_data(max_n: int = 6) -> dict:
    """Contents of ``lkb_generators.json``."""
    return {
        "version": 1,
        "source": "Bigelow/Krammer generator formulas, basis v_{j,k} with 1 <= j < k <= n",
        "matrices": {
            f"{n},{i}": lkb_from_rules(n, i).to_json() for n in range(2, max_n + 1) for i in range(1, n)
        },
    }


def lkb_basis_change(n: int) -> list[list[int]]:
    """Integer matrix P with P[omega][(j,k)] = 1 iff omega is supported in [j, k-1].

    Columns express v_{j,k} in the partition basis of P_2(n-1).
    """
    labels = enum_P(2, n - 1)
    pairs = lkb_pairs(n)
    out = []
    for omega in labels:
        support = [idx + 1 for idx, x in enumerate(omega) if x]
        out.append([int(all(j <= s <= k - 1 for s in support)) for j, k in pairs])
    return out


def integer_inverse(p: Sequence[Sequence[int]]) -> list[list[int]]:
    """Exact inverse of a unimodular integer matrix (Gauss-Jordan over Q)."""
    n = len(p)
    a = [[Fraction(x) for x in row] + [Fraction(int(r == c)) for c in range(n)] for r, row in enumerate(p)]
    for c in range(n):
        piv = next(r for r in range(c, n) if a[r][c] != 0)
        a[c], a[piv] = a[piv], a[c]
        pv = a[c][c]
        a[c] = [x / pv for x in a[c]]
        for r in range(n):
            if r != c and a[r][c] != 0:
                f = a[r][c]
                a[r] = [x - f * y for x, y in zip(a[r], a[c])]
    inv = [[x for x in row[n:]] for row in a]
    if any(x.denominator != 1 for row in inv for x in row):
        raise ValueError("matrix is not unimodular")
    return [[int(x) for x in row] for row in inv]


def conjugate_by_integer(mat: RepMatrix, p: Sequence[Sequence[int]], labels=None) -> RepMatrix:
    """P^{-1} mat P for an integer basis change P."""
    ring = mat.ring
    pm = _int_matrix(ring, p, mat.row_labels, labels)
    pinv = _int_matrix(ring, integer_inverse(p), labels, mat.row_labels)
    return pinv @ mat @ pm


def _int_matrix(ring: Ring, p, row_labels=None, col_labels=None) -> RepMatrix:
    entries = {(r, c): ring.const(x) for r, row in enumerate(p) for c, x in enumerate(row) if x}
    rows, cols = len(p), len(p[0]) if p else 0
    return RepMatrix(ring, rows, cols, entries, row_labels, col_labels)


# -- comparator ---------------------------------------------------------------------------


@dataclass
class Verdict:
    ok: bool
    witness: dict | None = None
    counterexample: dict | None = None
    tried: list = field(default_factory=list)

    def to_json(self) -> dict:
        return {"ok": self.ok, "witness": self.witness, "counterexample": self.counterexample, "tried": self.tried}


def substitutions(ring: Ring) -> list[tuple[str, list[Elem]]]:
    """The convention set: inversions of each variable and, with two variables, the swap."""
    if ring.torsion2_rank:
        raise ValueError("substitution search only covers free variables")
    gens = ring.gens()
    names = ring.variable_names
    out = []
    perms = list(itertools.permutations(range(len(gens))))
    for perm in perms:
        for signs in itertools.product((1, -1), repeat=len(gens)):
            images = [gens[perm[k]] ** signs[k] for k in range(len(gens))]
            label = ", ".join(
                f"{names[k]}->{names[perm[k]]}" + ("" if signs[k] == 1 else "^-1") for k in range(len(gens))
            )
            out.append((label, images))
    return out


def monomial_ratio(a: Elem, b: Elem) -> Elem | None:
    """The unit u with a = u * b, if one exists."""
    if not a or not b:
        return None
    ta, tb = a.terms, b.terms
    if len(ta) != len(tb):
        return None
    ca, ea, ba = ta[0]
    cb, eb, bb = tb[0]
    if abs(ca) != abs(cb):
        return None
    u = a.ring.monomial(
        tuple(x - y for x, y in zip(ea, eb)), tuple(x ^ y for x, y in zip(ba, bb)), ca // cb
    )
    return u if u * b == a else None


def _diagonal(a_list: Sequence[RepMatrix], b_list: Sequence[RepMatrix]):
    """Find units D with A D = D B for every pair; returns (D, None) or (None, reason)."""
    n = a_list[0].rows
    if n == 0:
        return [], None
    ring = a_list[0].ring
    d: list[Elem | None] = [None] * n
    for start in range(n):
        if d[start] is not None:
            continue
        d[start] = ring.one()
        queue = deque([start])
        while queue:
            x = queue.popleft()
            for k, (a, b) in enumerate(zip(a_list, b_list)):
                # A_rx D_x = D_r B_rx  and  A_xc D_c = D_x B_xc
                for r in range(n):
                    if d[r] is None and a[r, x] and b[r, x]:
                        u = monomial_ratio(a[r, x] * d[x], b[r, x])
                        if u is None:
                            return None, {"matrix": k, "row": r, "col": x, "a": str(a[r, x]), "b": str(b[r, x])}
                        d[r] = u
                        queue.append(r)
                    if d[r] is None and a[x, r] and b[x, r]:
                        u = monomial_ratio(d[x] * b[x, r], a[x, r])
                        if u is None:
                            return None, {"matrix": k, "row": x, "col": r, "a": str(a[x, r]), "b": str(b[x, r])}
                        d[r] = u
                        queue.append(r)
    return d, None


def _first_mismatch(a_list, b_list, d) -> dict | None:
    for k, (a, b) in enumerate(zip(a_list, b_list)):
        for r in range(a.rows):
            for c in range(a.cols):
                if a[r, c] * d[c] != d[r] * b[r, c]:
                    return {"matrix": k, "row": r, "col": c, "a": str(a[r, c]), "b": str(b[r, c])}
    return None


def compare_reps(
    a_list: Sequence[RepMatrix],
    b_list: Sequence[RepMatrix],
    basis_change: Sequence[Sequence[int]] | None = None,
    identity_only: bool = False,
) -> Verdict:
    """Search substitutions x diagonal monomial rescalings for A^sub (conjugated by the
    optional integer ``basis_change`` P, as P^-1 A P) to equal B entrywise.

    The witness records the substitution label and the diagonal D with
    A' D = D B.  With ``identity_only`` no variable substitution is tried.
    """
    if len(a_list) != len(b_list):
        raise ValueError("different numbers of matrices")
    for a, b in zip(a_list, b_list):
        if (a.rows, a.cols) != (b.rows, b.cols):
            raise ValueError("matrix sizes differ")
    if not a_list:
        return Verdict(True, {"substitution": "identity", "diagonal": []})
    ring = a_list[0].ring
    verdict = Verdict(False)
    first_fail = None
    candidates = substitutions(ring)
    if identity_only:
        candidates = candidates[:1]
    for label, images in candidates:
        mats = [a.substitute(b_list[0].ring, images) for a in a_list]
        if basis_change is not None:
            mats = [conjugate_by_integer(m, basis_change, b_list[0].row_labels) for m in mats]
        d, reason = _diagonal(mats, b_list)
        if d is not None:
            reason = _first_mismatch(mats, b_list, d)
            if reason is None:
                verdict.ok = True
                verdict.witness = {
                    "substitution": label,
                    "basis_change": basis_change is not None,
                    "diagonal": [str(x) for x in d],
                }
                verdict.tried.append(label)
                return verdict
        verdict.tried.append(label)
        if first_fail is None:
            first_fail = dict(reason, substitution=label)
    verdict.counterexample = first_fail
    return verdict
