"""Group presentations, Smith normal form and abelian invariants."""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from importlib import resources
from typing import Sequence

IntMatrix = list[list[int]]
Relator = tuple[tuple[int, int], ...]  # (generator index, sign)


# -- Smith normal form ---------------------------------------------------------


def identity(n: int) -> IntMatrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def matmul(a: IntMatrix, b: IntMatrix) -> IntMatrix:
    if not a:
        return []
    inner = len(b)
    cols = len(b[0]) if b else 0
    return [[sum(a[i][k] * b[k][j] for k in range(inner)) for j in range(cols)] for i in range(len(a))]


def det(a: IntMatrix) -> int:
    """Exact determinant by fraction-free (Bareiss) elimination."""
    n = len(a)
    m = [row[:] for row in a]
    sign, prev = 1, 1
    for k in range(n - 1):
        if m[k][k] == 0:
            swap = next((r for r in range(k + 1, n) if m[r][k]), None)
            if swap is None:
                return 0
            m[k], m[swap] = m[swap], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return sign * m[n - 1][n - 1] if n else 1


def snf(a: Sequence[Sequence[int]]) -> tuple[IntMatrix, IntMatrix, IntMatrix]:
    """Smith normal form: returns (D, U, V) with U A V = D.

    U and V are unimodular and the diagonal of D is non-negative with each
    entry dividing the next.  Pivots are chosen of minimal absolute value.
    """
    d = [list(map(int, row)) for row in a]
    rows = len(d)
    cols = len(d[0]) if rows else 0
    u = identity(rows)
    v = identity(cols)

    def swap_rows(i, j):
        d[i], d[j] = d[j], d[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for row in d:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]

    def add_row(src, dst, c):  # row dst += c * row src
        d[dst] = [x + c * y for x, y in zip(d[dst], d[src])]
        u[dst] = [x + c * y for x, y in zip(u[dst], u[src])]

    def add_col(src, dst, c):
        for row in d:
            row[dst] += c * row[src]
        for row in v:
            row[dst] += c * row[src]

    for t in range(min(rows, cols)):
        while True:
            nonzero = [(abs(d[i][j]), i, j) for i in range(t, rows) for j in range(t, cols) if d[i][j]]
            if not nonzero:
                break
            _, pi, pj = min(nonzero)
            swap_rows(t, pi)
            swap_cols(t, pj)
            p = d[t][t]
            clean = True
            for i in range(t + 1, rows):
                if d[i][t]:
                    add_row(t, i, -(d[i][t] // p))
                    clean &= d[i][t] == 0
            for j in range(t + 1, cols):
                if d[t][j]:
                    add_col(t, j, -(d[t][j] // p))
                    clean &= d[t][j] == 0
            if not clean:
                continue
            bad = next(
                (i for i in range(t + 1, rows) for j in range(t + 1, cols) if d[i][j] % p),
                None,
            )
            if bad is None:
                break
            add_row(bad, t, 1)
        if d[t][t] < 0:
            d[t] = [-x for x in d[t]]
            u[t] = [-x for x in u[t]]
    return d, u, v


def snf_diagonal(a: Sequence[Sequence[int]]) -> list[int]:
    d, _, _ = snf(a)
    return [d[i][i] for i in range(min(len(d), len(d[0]) if d else 0))]


# -- abelian groups -------------------------------------------------------------


@dataclass(frozen=True)
class AbelianGroup:
    free_rank: int
    torsion: tuple[int, ...] = ()

    def __post_init__(self):
        tors = tuple(int(x) for x in self.torsion)
        object.__setattr__(self, "torsion", tors)
        if any(x < 2 for x in tors):
            raise ValueError("torsion coefficients must be >= 2")
        if any(b % a for a, b in zip(tors, tors[1:])):
            raise ValueError("torsion coefficients must form a divisibility chain")

    @classmethod
    def from_invariants(cls, free_rank: int, diag: Sequence[int]) -> AbelianGroup:
        return cls(free_rank, tuple(sorted(x for x in diag if x > 1)))

    def __str__(self) -> str:
        parts = []
        if self.free_rank:
            parts.append("Z" if self.free_rank == 1 else f"Z^{self.free_rank}")
        counts: dict[int, int] = {}
        for x in self.torsion:
            counts[x] = counts.get(x, 0) + 1
        for x, c in counts.items():
            parts.append(f"Z/{x}" if c == 1 else f"(Z/{x})^{c}")
        return " + ".join(parts) or "0"

    def to_json(self) -> dict:
        return {"free_rank": self.free_rank, "torsion": list(self.torsion)}


def cokernel(relations: Sequence[Sequence[int]], ngens: int) -> AbelianGroup:
    """Z^ngens modulo the row span of ``relations``."""
    if not relations:
        return AbelianGroup(ngens)
    diag = snf_diagonal(relations)
    nonzero = [x for x in diag if x]
    return AbelianGroup.from_invariants(ngens - len(nonzero), nonzero)


# -- presentations -----------------------------------------------------------------


@dataclass(frozen=True)
class Presentation:
    generators: tuple[str, ...]
    relators: tuple[Relator, ...] = field(default_factory=tuple)

    def __post_init__(self):
        object.__setattr__(self, "generators", tuple(self.generators))
        rels = tuple(tuple((int(g), int(s)) for g, s in r) for r in self.relators)
        object.__setattr__(self, "relators", rels)
        for r in rels:
            for g, s in r:
                if not 0 <= g < len(self.generators) or s not in (1, -1):
                    raise ValueError(f"relator letter {(g, s)} is not a declared generator")

    def exponent_matrix(self) -> IntMatrix:
        mat = []
        for r in self.relators:
            row = [0] * len(self.generators)
            for g, s in r:
                row[g] += s
            mat.append(row)
        return mat

    def tokens(self, relator: Relator) -> list[str]:
        return [self.generators[g] + ("" if s == 1 else "^-1") for g, s in relator]

    def to_json(self) -> dict:
        return {"generators": list(self.generators), "relators": [self.tokens(r) for r in self.relators]}

    @classmethod
    def from_json(cls, data) -> Presentation:
        gens = tuple(data["generators"])
        index = {g: i for i, g in enumerate(gens)}
        rels = []
        for r in data["relators"]:
            letters = []
            for tok in r:
                name, _, exp = tok.partition("^")
                if name not in index:
                    raise ValueError(f"unknown generator {name!r}")
                if exp not in ("", "1", "-1"):
                    raise ValueError(f"bad exponent in {tok!r}")
                letters.append((index[name], -1 if exp == "-1" else 1))
            rels.append(tuple(letters))
        return cls(gens, tuple(rels))


def abelianization(p: Presentation) -> AbelianGroup:
    return cokernel(p.exponent_matrix(), len(p.generators))


class _Builder:
    """Accumulates relators written as equalities of words of generator names."""

    def __init__(self, generators: Sequence[str]):
        self.generators = tuple(generators)
        self.index = {g: i for i, g in enumerate(self.generators)}
        self.relators: list[Relator] = []

    def word(self, *tokens: str) -> Relator:
        out = []
        for tok in tokens:
            inv = tok.endswith("^-1")
            name = tok[:-3] if inv else tok
            out.append((self.index[name], -1 if inv else 1))
        return tuple(out)

    @staticmethod
    def inv(w: Relator) -> Relator:
        return tuple((g, -s) for g, s in reversed(w))

    def eq(self, lhs: Sequence[str], rhs: Sequence[str]) -> None:
        self.relators.append(self.word(*lhs) + self.inv(self.word(*rhs)))

    def comm(self, u: Sequence[str], w: Sequence[str]) -> None:
        a, b = self.word(*u), self.word(*w)
        self.relators.append(a + b + self.inv(a) + self.inv(b))

    def build(self) -> Presentation:
        return Presentation(self.generators, tuple(self.relators))


def _inv(tok: str) -> str:
    return tok[:-3] if tok.endswith("^-1") else tok + "^-1"


def _braid_relations(b: _Builder, n: int, name: str = "s") -> None:
    for i in range(1, n - 1):
        b.eq([f"{name}{i}", f"{name}{i+1}", f"{name}{i}"], [f"{name}{i+1}", f"{name}{i}", f"{name}{i+1}"])
    for i in range(1, n):
        for j in range(i + 2, n):
            b.eq([f"{name}{i}", f"{name}{j}"], [f"{name}{j}", f"{name}{i}"])


def braid_presentation(n: int) -> Presentation:
    """Artin presentation of B_n."""
    b = _Builder([f"s{i}" for i in range(1, n)])
    _braid_relations(b, n)
    return b.build()


def bellingeri_presentation(kind: str, genus: int, punctures: int, strands: int) -> Presentation:
    """Presentation of the braid group on ``strands`` points of a surface with one boundary.

    ``kind`` is ``orientable`` (generators s_i, a_j, b_j, x_k) or
    ``nonorientable`` (generators s_i, c_j, x_k, at least two crosscaps).
    Genus 0 is accepted in the orientable case and gives the punctured disc.  The mixed relations are
    attached to the last Artin generator s_{n-1}; when n = 1 the relations
    involving it are absent.
    """
    n, s = strands, punctures
    if n < 1 or s < 0:
        raise ValueError("need strands >= 1 and punctures >= 0")
    if kind == "orientable":
        if genus < 0:
            raise ValueError("genus must be non-negative")
        surface = [f"a{j}" for j in range(1, genus + 1)] + [f"b{j}" for j in range(1, genus + 1)]
    elif kind == "nonorientable":
        if genus < 2:
            raise ValueError("the non-orientable presentation needs at least two crosscaps")
        surface = [f"c{j}" for j in range(1, genus + 1)]
    else:
        raise ValueError(f"unknown kind {kind!r}")
    xs = [f"x{j}" for j in range(1, s + 1)]
    b = _Builder([f"s{i}" for i in range(1, n)] + surface + xs)
    _braid_relations(b, n)
    last = f"s{n-1}"
    has_last = n >= 2

    def conj(c):  # s_{n-1}^-1 c s_{n-1}
        return [_inv(last), c, last]

    # (R1)
    for c in surface + xs:
        for i in range(1, n - 1):
            b.eq([c, f"s{i}"], [f"s{i}", c])
    if kind == "orientable" and has_last:
        for c in surface + xs:
            b.comm([c, last, c], [last])
    # (R2)
    if has_last:
        if kind == "orientable":
            for j in range(1, genus + 1):
                b.eq([f"a{j}", last, f"b{j}"], [last, f"b{j}", last, f"a{j}", last])
            for k in range(1, genus + 1):
                for l in range(k + 1, genus + 1):
                    b.comm(conj(f"a{k}"), [f"a{l}"])
                    b.comm(conj(f"b{k}"), [f"b{l}"])
                    b.comm(conj(f"a{k}"), [f"b{l}"])
                    b.comm(conj(f"b{k}"), [f"a{l}"])
        else:
            for j in range(1, genus + 1):
                b.eq([last, f"c{j}", last, f"c{j}", last], [f"c{j}", last, f"c{j}"])
            for k in range(1, genus + 1):
                for l in range(k + 1, genus + 1):
                    b.comm(conj(f"c{k}"), [f"c{l}"])
    # (R3)
    if has_last:
        for j in range(1, s + 1):
            for c in surface:
                b.comm(conj(f"x{j}"), [c])
        if kind == "nonorientable":
            for x in xs:
                b.comm([_inv(last), x, _inv(last)], [x])
        for k in range(1, s + 1):
            for l in range(k + 1, s + 1):
                b.comm(conj(f"x{k}"), [f"x{l}"])
    return b.build()


def disc_braid_presentation(m: int, n: int) -> Presentation:
    """B_m(D_n): the genus-zero orientable case with n punctures and m strands."""
    return bellingeri_presentation("orientable", 0, n, m)


def _loop_data() -> dict:
    with resources.files("homrep.data").joinpath("loop_braid_mixed.json").open() as fh:
        return json.load(fh)


def loop_braid_presentation(n: int, extended: bool = False) -> Presentation:
    """Presentation of the loop braid group LB_n (or its extended version).

    Generators s_i (one circle passes through the next), t_i (circles swap
    without passing through each other) and, when extended, r_j (a circle
    is flipped).  The mixed relators come from the shipped data file, as
    templates in the index variables i and j.
    """
    if n < 1:
        raise ValueError("need n >= 1")
    gens = [f"s{i}" for i in range(1, n)] + [f"t{i}" for i in range(1, n)]
    if extended:
        gens += [f"r{i}" for i in range(1, n + 1)]
    b = _Builder(gens)
    _braid_relations(b, n, "s")
    # symmetric group relations for t
    for i in range(1, n):
        b.eq([f"t{i}", f"t{i}"], [])
    _braid_relations(b, n, "t")
    data = _loop_data()
    families = data["mixed"] + (data["extended"] if extended else [])
    for fam in families:
        for i, j in _index_range(fam["range"], n):
            lhs = [_subst(tok, i, j) for tok in fam["lhs"]]
            rhs = [_subst(tok, i, j) for tok in fam["rhs"]]
            b.eq(lhs, rhs)
    return b.build()


def _index_range(rng: str, n: int):
    """Index pairs for a relator family; see the data file for the names."""
    if rng == "i<n-1":
        return [(i, 0) for i in range(1, n - 1)]
    if rng == "i<n":
        return [(i, 0) for i in range(1, n)]
    if rng == "i<n,|i-j|>1,j<n":
        return [(i, j) for i in range(1, n) for j in range(1, n) if abs(i - j) > 1]
    if rng == "i<=n,j<=n,i<j":
        return [(i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1)]
    if rng == "i<=n":
        return [(i, 0) for i in range(1, n + 1)]
    if rng == "i<n,j<=n,j!=i,j!=i+1":
        return [(i, j) for i in range(1, n) for j in range(1, n + 1) if j not in (i, i + 1)]
    raise ValueError(f"unknown index range {rng!r}")


_TEMPLATE = re.compile(r"^([a-z])\[([ij])([+-]\d+)?\](\^-1)?$")


def _subst(tok: str, i: int, j: int) -> str:
    """Instantiate a template token such as ``s[i+1]^-1``."""
    match = _TEMPLATE.match(tok)
    if not match:
        raise ValueError(f"bad template token {tok!r}")
    name, var, offset, inv = match.groups()
    idx = (i if var == "i" else j) + int(offset or 0)
    return f"{name}{idx}" + (inv or "")


# -- subgroup images ------------------------------------------------------------------


def subgroup_image(
    ambient: AbelianGroup,
    gens: Sequence[Sequence[int]],
    kill: Sequence[Sequence[int]] = (),
) -> AbelianGroup:
    """Isomorphism type of the subgroup of Z^a + (Z/2)^b spanned by ``gens``.

    Each generator lists a integer coordinates followed by b torsion bits.
    ``kill`` optionally lists integer combinations of the generators to be
    set to zero afterwards, so the result is then a quotient of the image.

    Relations among the generators are the kernel of Z^k -> Z^a + Z^b / 2Z^b,
    computed from one SNF of the stacked matrix [G ; diag(0..0, 2..2)].
    """
    a = ambient.free_rank
    if any(x != 2 for x in ambient.torsion):
        raise ValueError("ambient torsion must be 2-torsion")
    bdim = len(ambient.torsion)
    k = len(gens)
    for g in gens:
        if len(g) != a + bdim:
            raise ValueError("generator has the wrong number of coordinates")
    if k == 0:
        return AbelianGroup(0)
    # rows: generators then the torsion relations of the ambient group
    stacked = [list(g) for g in gens]
    for idx in range(bdim):
        row = [0] * (a + bdim)
        row[a + idx] = 2
        stacked.append(row)
    relations = _integer_kernel(stacked)
    # keep only the generator part of each kernel vector
    rels = [vec[:k] for vec in relations]
    rels.extend(list(map(int, r)) for r in kill)
    return cokernel(rels, k)


def _integer_kernel(rows: Sequence[Sequence[int]]) -> list[list[int]]:
    """A Z-basis of {c : sum_i c_i rows[i] = 0}, as a list of vectors."""
    d, u, _ = snf(rows)
    rank = sum(1 for i in range(min(len(d), len(d[0]) if d else 0)) if d[i][i])
    return [u[i] for i in range(rank, len(rows))]


# -- the loop braid quotient groups ----------------------------------------------------------

# Ambient groups are products of copies of the abelianizations Z<sigma> + Z/2<tau>
# of LB_n and (Z/2)^3 = <sigma, tau, rho> of LB_n^ext.  Coordinates list the
# free part first, then the bits.  The spanning elements are written as pairs
# (component on the first factor, component on the second).
_LOOP_IMAGES = {
    ("alpha", 1): (AbelianGroup(1, (2,)), [("st", [1, 1])], []),
    ("alpha", 2): (
        AbelianGroup(2, (2, 2)),
        [("(1,st)", [0, 1, 0, 1]), ("(st,st)", [1, 1, 1, 1]), ("(t,t)", [0, 0, 1, 1])],
        [],
    ),
    ("beta", 1): (AbelianGroup(0, (2,) * 4), [("(r,r)", [1, 0, 0, 1]), ("(1,st)", [0, 1, 1, 0])], []),
    ("beta", 2): (
        AbelianGroup(0, (2,) * 6),
        [
            ("(r,r)", [0, 0, 1, 0, 0, 1]),
            ("(1,st)", [0, 0, 0, 1, 1, 0]),
            ("(t,t)", [0, 1, 0, 0, 1, 0]),
            ("(st,st)", [1, 1, 0, 1, 1, 0]),
        ],
        [],
    ),
}


def loop_quotient_data(theorem: str, m: int):
    """Ambient group, named spanning elements and extra relations for one quotient.

    ``gamma`` is the ``alpha`` image with the first spanning element made to
    square to one.
    """
    if m < 1:
        raise ValueError("m must be at least 1")
    key_m = 1 if m == 1 else 2
    if theorem == "gamma":
        ambient, gens, _ = _LOOP_IMAGES["alpha", key_m]
        kill = [[2] + [0] * (len(gens) - 1)]
        return ambient, gens, kill
    if (theorem, key_m) not in _LOOP_IMAGES:
        raise ValueError(f"unknown quotient {theorem!r}")
    return _LOOP_IMAGES[theorem, key_m]


def loop_quotient(theorem: str, m: int) -> AbelianGroup:
    ambient, gens, kill = loop_quotient_data(theorem, m)
    return subgroup_image(ambient, [g for _, g in gens], kill)
