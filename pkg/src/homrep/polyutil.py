"""Conversions between group-ring elements and sympy expressions."""

from __future__ import annotations

import sympy

from .groupring import Elem, Ring


def symbols(ring: Ring) -> tuple[sympy.Symbol, ...]:
    return tuple(sympy.Symbol(v) for v in ring.variable_names)


def to_sympy(a: Elem) -> sympy.Expr:
    syms = symbols(a.ring)
    r = a.ring.free_rank
    expr = sympy.Integer(0)
    for c, exps, bits in a.terms:
        term = sympy.Integer(c)
        for s, e in zip(syms[:r], exps):
            term *= s**e
        for s, b in zip(syms[r:], bits):
            term *= s**b
        expr += term
    return expr


def from_sympy(ring: Ring, expr) -> Elem:
    """Convert a Laurent polynomial expression back into ``ring``.

    Torsion exponents are reduced mod 2.  Raises ValueError if the
    expression is not a Laurent polynomial.
    """
    syms = symbols(ring)
    expr = sympy.expand(sympy.cancel(sympy.together(expr)))
    num, den = sympy.fraction(sympy.together(expr))
    den_poly = sympy.Poly(den, *syms) if syms else sympy.Poly(den)
    if len(den_poly.terms()) != 1:
        raise ValueError(f"not a Laurent polynomial: {expr}")
    (den_exps, den_c), = den_poly.terms()
    num_poly = sympy.Poly(sympy.expand(num), *syms) if syms else sympy.Poly(num)
    terms = []
    r = ring.free_rank
    for exps, c in num_poly.terms():
        q, rem = divmod(int(c), int(den_c))
        if rem:
            raise ValueError(f"non-integral coefficient in {expr}")
        shifted = [e - d for e, d in zip(exps, den_exps)]
        terms.append((q, shifted[:r], shifted[r:]))
    return Elem.from_terms(ring, terms)


def determinant(mat) -> Elem:
    if mat.rows != mat.cols:
        raise ValueError("determinant of a non-square matrix")
    if mat.rows == 0:
        return mat.ring.one()
    m = sympy.zeros(mat.rows, mat.cols)
    for (i, j), v in mat.entries.items():
        m[i, j] = to_sympy(v)
    return from_sympy(mat.ring, m.det(method="berkowitz"))
