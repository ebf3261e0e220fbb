#!/usr/bin/env python3
"""Brute-force Fox-calculus oracle for twisted Alexander polynomials.

Independent of the Rust code base. Fox derivatives are expanded with the
closed-form occurrence sum

    d(w)/dx = sum_{w = u x v} u  -  sum_{w = u x^-1 v} u x^-1

over the unreduced word, matrices are assembled in the row-vector layout
(block row = relator, block column = generator), and determinants are taken
symbolically with sympy. Cyclotomic entries use a symbol ``z`` that is reduced
modulo the cyclotomic polynomial at the end, so the printed coefficients are
in the power basis 1, z, ..., z^(phi(n)-1).

Usage:
    python3 scripts/fox_oracle.py          # human-readable table
    python3 scripts/fox_oracle.py --json   # machine-readable golden values
"""
import json
import sys

import sympy as sp

t, z = sp.symbols("t z")


def parse(word, gens):
    out = []
    for tok in word.split():
        if tok.endswith("^-1"):
            out.append((gens.index(tok[:-3]), -1))
        elif tok in gens:
            out.append((gens.index(tok), 1))
        elif tok.isupper() and tok.lower() in gens:
            out.append((gens.index(tok.lower()), -1))
        else:
            raise ValueError(f"bad token {tok!r}")
    return out


def fox(word, j):
    terms = []
    for pos, (g, e) in enumerate(word):
        if g != j:
            continue
        prefix = list(word[:pos])
        terms.append((1, prefix) if e == 1 else (-1, prefix + [(g, -1)]))
    return terms


def conj_transpose(mat, order):
    # unitary with entries in Q(z): inverse = conjugate transpose, conj(z) = z^(n-1)
    return mat.T.applyfunc(lambda e: sp.expand(e.subs(z, z ** (order - 1))))


def image(terms, mats, invs, eps, m):
    acc = sp.zeros(m, m)
    for c, w in terms:
        mat = sp.eye(m)
        for g, e in w:
            mat = mat * (mats[g] * t ** eps[g] if e == 1 else invs[g] * t ** (-eps[g]))
        acc += c * mat
    return acc.applyfunc(sp.expand)


def reduce_poly(expr, order):
    """Clear powers of t, reduce coefficients mod Phi_n(z); returns (shift, coeffs)."""
    expr = sp.expand(expr)
    if expr == 0:
        return 0, []
    phi = sp.cyclotomic_poly(order, z)
    lo = min(sp.Poly(term, t, 1 / t).monoms()[0][0] - sp.Poly(term, t, 1 / t).monoms()[0][1]
             for term in sp.Add.make_args(expr))
    poly = sp.Poly(sp.expand(expr * t ** (-lo)), t)
    deg = poly.degree()
    coeffs = []
    for k in range(deg + 1):
        c = sp.rem(sp.expand(poly.coeff_monomial(t ** k)), phi, z)
        cz = sp.Poly(c, z).all_coeffs()[::-1] if c != 0 else []
        width = sp.degree(phi, z)
        cz = [str(sp.Rational(v)) for v in cz] + ["0"] * (width - len(cz))
        coeffs.append(cz)
    return lo, coeffs


def twisted_alexander(gens, relators, mats=None, order=1, column=0):
    k = len(gens)
    rels = [parse(r, gens) for r in relators]
    if mats is None:
        mats = [sp.Matrix([[1]]) for _ in gens]
    invs = [conj_transpose(mat, order) for mat in mats]
    eps = [1] * k
    m = mats[0].shape[0]
    rows = [[image(fox(r, i), mats, invs, eps, m) for i in range(k) if i != column] for r in rels]
    num = sp.Matrix(sp.BlockMatrix(rows)).det(method="berkowitz") if rels else sp.Integer(1)
    den = (mats[column] * t ** eps[column] - sp.eye(m)).det(method="berkowitz")
    return reduce_poly(num, order), reduce_poly(den, order)


KNOTS = {
    "unknot": (["x"], []),
    "trefoil": (["x", "y"], ["x y x y^-1 x^-1 y^-1"]),
    "figure_eight": (["x", "y"], ["x y^-1 x^-1 y x y^-1 x y x^-1 y^-1"]),
    "5_1": (["x", "y"], ["x y x y x y^-1 x^-1 y^-1 x^-1 y^-1"]),
    "5_2": (["x", "y"], ["x y x y^-1 x^-1 y x y^-1 x^-1 y^-1 x y x^-1 y^-1"]),
}


def dihedral(order, c):
    """Reflections x -> [[0,1],[1,0]], y -> [[0,z^c],[z^-c,0]] in Q(zeta_order)."""
    return [sp.Matrix([[0, 1], [1, 0]]), sp.Matrix([[0, z ** c], [z ** (order - c), 0]])]


def twisted_dihedral(n):
    """Dihedral D_n tensored with a character sending meridians to a primitive 2n-th root."""
    order = 2 * n
    return order, [sp.Matrix([[0, z], [z, 0]]), sp.Matrix([[0, z ** 3], [z ** (order - 1), 0]])]


def character(order):
    return order, [sp.Matrix([[z]]), sp.Matrix([[z]])]


REPS = {
    ("trefoil", "s3"): (3, dihedral(3, 1)),
    ("trefoil", "s3_twisted"): twisted_dihedral(3),
    ("trefoil", "zeta3"): character(3),
    ("trefoil", "zeta4"): character(4),
    ("figure_eight", "d5"): (5, dihedral(5, 1)),
    ("figure_eight", "d5_twisted"): twisted_dihedral(5),
    ("figure_eight", "zeta3"): character(3),
    ("5_1", "d5"): (5, dihedral(5, 1)),
    ("5_1", "d5_twisted"): twisted_dihedral(5),
    ("5_1", "zeta3"): character(3),
    ("5_2", "d7"): (7, dihedral(7, 1)),
    ("5_2", "d7_twisted"): twisted_dihedral(7),
    ("5_2", "zeta4"): character(4),
}


def main():
    as_json = "--json" in sys.argv
    table = []
    for name, (gens, rels) in KNOTS.items():
        for j in range(len(gens)):
            num, den = twisted_alexander(gens, rels, column=j)
            table.append({"knot": name, "rep": "trivial", "order": 1, "column": j,
                          "num": num, "den": den})
    for (name, rep), (order, mats) in REPS.items():
        gens, rels = KNOTS[name]
        for j in range(len(gens)):
            num, den = twisted_alexander(gens, rels, mats=mats, order=order, column=j)
            table.append({"knot": name, "rep": rep, "order": order, "column": j,
                          "num": num, "den": den})
    if as_json:
        print(json.dumps(table, indent=1))
    else:
        for row in table:
            print(f"{row['knot']:>13} {row['rep']:>7} col {row['column']}: "
                  f"num t^{row['num'][0]} {row['num'][1]}  den t^{row['den'][0]} {row['den'][1]}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
