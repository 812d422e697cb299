"""Words in braid groups, surface braid groups B_m(D_n) and free groups.

Convention: a word ``l_1 l_2 ... l_k`` is the group element read from right
to left, so as a map it is ``l_1 o l_2 o ... o l_k``.  All actions are
left actions: ``act(b1 b2, w) == act(b1, act(b2, w))``.

Artin action of sigma_i on F_n (and on the puncture loops xi_j of B_m(D_n)):
    x_i     -> x_{i+1}
    x_{i+1} -> x_{i+1}^-1 x_i x_{i+1}
and every other generator is fixed.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Sequence

from .groupring import A2, Elem, lb_ring

Letter = tuple[int, int]  # (index, sign)


def _reduce_letters(letters: Iterable[tuple]) -> tuple:
    """Free reduction; letters are tuples whose last item is the sign."""
    out: list[tuple] = []
    for letter in letters:
        if out and out[-1][:-1] == letter[:-1] and out[-1][-1] == -letter[-1]:
            out.pop()
        else:
            out.append(letter)
    return tuple(out)


def _invert(letters: Sequence[tuple]) -> tuple:
    return tuple(l[:-1] + (-l[-1],) for l in reversed(letters))


@dataclass(frozen=True)
class BraidWord:
    strands: int
    letters: tuple[Letter, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "letters", tuple((int(i), int(s)) for i, s in self.letters))
        for i, s in self.letters:
            if not 1 <= i < self.strands or s not in (1, -1):
                raise ValueError(f"bad letter sigma_{i}^{s} for B_{self.strands}")

    def __mul__(self, other: BraidWord) -> BraidWord:
        if self.strands != other.strands:
            raise ValueError("strand count mismatch")
        return BraidWord(self.strands, self.letters + other.letters)

    def inverse(self) -> BraidWord:
        return BraidWord(self.strands, _invert(self.letters))

    def reduce(self) -> BraidWord:
        return BraidWord(self.strands, _reduce_letters(self.letters))

    def __str__(self) -> str:
        return " ".join(f"s{i}" + ("" if s == 1 else "^-1") for i, s in self.letters) or "e"


@dataclass(frozen=True)
class FreeGroupWord:
    rank: int
    letters: tuple[Letter, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "letters", tuple((int(i), int(s)) for i, s in self.letters))
        for i, s in self.letters:
            if not 1 <= i <= self.rank or s not in (1, -1):
                raise ValueError(f"bad letter x_{i}^{s} for F_{self.rank}")

    def __mul__(self, other: FreeGroupWord) -> FreeGroupWord:
        if self.rank != other.rank:
            raise ValueError("rank mismatch")
        return FreeGroupWord(self.rank, self.letters + other.letters)

    def inverse(self) -> FreeGroupWord:
        return FreeGroupWord(self.rank, _invert(self.letters))

    def reduce(self) -> FreeGroupWord:
        return FreeGroupWord(self.rank, _reduce_letters(self.letters))

    def __str__(self) -> str:
        return " ".join(f"x{i}" + ("" if s == 1 else "^-1") for i, s in self.letters) or "e"


SIGMA, XI = "S", "X"


@dataclass(frozen=True)
class SurfaceBraidWord:
    """Word in B_m(D_n): family ``S`` letters sigma_i (1 <= i < m), ``X`` letters xi_j (1 <= j <= n)."""

    m: int
    n: int
    letters: tuple[tuple[str, int, int], ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "letters", tuple((f, int(i), int(s)) for f, i, s in self.letters))
        for fam, i, s in self.letters:
            ok = (fam == SIGMA and 1 <= i < self.m) or (fam == XI and 1 <= i <= self.n)
            if not ok or s not in (1, -1):
                raise ValueError(f"bad letter {fam}{i}^{s} for B_{self.m}(D_{self.n})")

    def __mul__(self, other: SurfaceBraidWord) -> SurfaceBraidWord:
        if (self.m, self.n) != (other.m, other.n):
            raise ValueError("parameter mismatch")
        return SurfaceBraidWord(self.m, self.n, self.letters + other.letters)

    def inverse(self) -> SurfaceBraidWord:
        return SurfaceBraidWord(self.m, self.n, _invert(self.letters))

    def reduce(self) -> SurfaceBraidWord:
        return SurfaceBraidWord(self.m, self.n, _reduce_letters(self.letters))

    def __str__(self) -> str:
        tok = {SIGMA: "s", XI: "x"}
        return " ".join(f"{tok[f]}{i}" + ("" if s == 1 else "^-1") for f, i, s in self.letters) or "e"


def reduce(w):
    """Free reduction of any word type; idempotent."""
    return w.reduce()


# -- parsing ------------------------------------------------------------------

_TOKEN = re.compile(r"^([sx])(\d+)(?:\^(-?1))?$")


def parse_tokens(text: str) -> list[tuple[str, int, int]]:
    out = []
    for tok in text.split():
        if tok in ("e", "1"):
            continue
        match = _TOKEN.match(tok)
        if not match:
            raise ValueError(f"cannot parse token {tok!r}")
        fam, idx, exp = match.groups()
        out.append((fam, int(idx), int(exp or 1)))
    return out


def parse_braid(text: str, strands: int) -> BraidWord:
    letters = []
    for fam, i, s in parse_tokens(text):
        if fam != "s":
            raise ValueError("braid words only use s-tokens")
        letters.append((i, s))
    return BraidWord(strands, tuple(letters))


def parse_surface(text: str, m: int, n: int) -> SurfaceBraidWord:
    fam_map = {"s": SIGMA, "x": XI}
    return SurfaceBraidWord(m, n, tuple((fam_map[f], i, s) for f, i, s in parse_tokens(text)))


def parse_free(text: str, rank: int) -> FreeGroupWord:
    letters = []
    for fam, i, s in parse_tokens(text):
        if fam != "x":
            raise ValueError("free group words only use x-tokens")
        letters.append((i, s))
    return FreeGroupWord(rank, tuple(letters))


# -- actions --------------------------------------------------------------------


def _artin_image(i: int, sign: int, j: int) -> tuple[Letter, ...]:
    """Image of the generator x_j under sigma_i^sign, as a letter tuple."""
    if sign == 1:
        if j == i:
            return ((i + 1, 1),)
        if j == i + 1:
            return ((i + 1, -1), (i, 1), (i + 1, 1))
    else:
        if j == i + 1:
            return ((i, 1),)
        if j == i:
            return ((i, 1), (i + 1, 1), (i, -1))
    return ((j, 1),)


def _apply_generator(i: int, sign: int, letters: Sequence[Letter]) -> tuple[Letter, ...]:
    out: list[Letter] = []
    for j, s in letters:
        img = _artin_image(i, sign, j)
        out.extend(img if s == 1 else _invert(img))
    return _reduce_letters(out)


def artin_act(b: BraidWord, w: FreeGroupWord) -> FreeGroupWord:
    """Left action of B_n on F_n by the Artin automorphisms; result reduced."""
    if b.strands != w.rank:
        raise ValueError("braid and free group ranks differ")
    letters = w.letters
    for i, s in reversed(b.letters):
        letters = _apply_generator(i, s, letters)
    return FreeGroupWord(w.rank, _reduce_letters(letters))


def bn_act_on_surface(b: BraidWord, w: SurfaceBraidWord) -> SurfaceBraidWord:
    """Action of B_n on B_m(D_n): Artin rules on xi letters, sigma letters fixed."""
    if b.strands != w.n:
        raise ValueError("braid strand count differs from the puncture count")
    letters = w.letters
    for i, s in reversed(b.letters):
        out: list[tuple[str, int, int]] = []
        for fam, j, e in letters:
            if fam == SIGMA:
                out.append((fam, j, e))
                continue
            img = _artin_image(i, s, j)
            if e == -1:
                img = _invert(img)
            out.extend((XI, k, f) for k, f in img)
        letters = _reduce_letters(out)
    return SurfaceBraidWord(w.m, w.n, letters)


# -- homomorphisms to Z and to A_m ---------------------------------------------------


def hom_T(w: SurfaceBraidWord) -> int:
    """Total number of half-twists: sigma letters weigh 1, xi letters 0."""
    return sum(s for fam, _, s in w.letters if fam == SIGMA)


def hom_W(w: SurfaceBraidWord) -> int:
    """Half the winding count R - T: xi letters weigh 1, sigma letters 0."""
    return sum(s for fam, _, s in w.letters if fam == XI)


def phi(w: SurfaceBraidWord, m: int) -> Elem:
    """The local system B_m(D_n) -> A_m as a monomial of Z[A_m].

    m >= 2: t^T q^W.  m = 1: x^(sum of abelianized exponents).
    """
    if m != w.m:
        raise ValueError("m does not match the word")
    if m == 1:
        return lb_ring(1).monomial((sum(s for _, _, s in w.letters),))
    return A2.monomial((hom_W(w), hom_T(w)))


def shift(b: BraidWord, k: int) -> BraidWord:
    """id_k monoidal product b: every index moves up by k."""
    if k < 0:
        raise ValueError("k must be non-negative")
    return BraidWord(b.strands + k, tuple((i + k, s) for i, s in b.letters))


def generator(n: int, i: int, sign: int = 1) -> BraidWord:
    return BraidWord(n, ((i, sign),))
