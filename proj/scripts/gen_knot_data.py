#!/usr/bin/env python3
"""Regenerate the bundled knot data from the KnotInfo database.

Writes data/knots_pd.txt, data/braids.txt, data/knot_invariants.csv and the
reference HOMFLY-PT and Kauffman values used by the unit tests
(tests/data/knotinfo_homfly.txt, tests/data/knotinfo_kauffman.txt).

Naming follows the convention where the unstarred knot carries the negative
signature ("positive knots have negative signature"); when KnotInfo's diagram
has positive signature the mirror diagram is stored instead. Knots with zero
signature keep KnotInfo's diagram.

    pip install database_knotinfo sympy
    python3 scripts/gen_knot_data.py
"""
import ast
import pathlib

import sympy
from database_knotinfo import link_list

ROOT = pathlib.Path(__file__).resolve().parent.parent
EXTRA = ["10_129", "10_132"]


def wanted(rec):
    try:
        c = int(rec["crossing_number"])
    except (TypeError, ValueError):
        return False
    return (3 <= c <= 8 and "_" in rec["name"]) or rec["name"] in EXTRA


def mirror_pd(pd):
    return [[i, l, k, j] for i, j, k, l in pd]


def homfly_terms(text, mirrored):
    """KnotInfo uses v^-1 P(L+) - v P(L-) = z P(L0); we use a = v^-1."""
    v, z, a = sympy.symbols("v z a")
    expr = sympy.sympify(text.replace("^", "**"))
    expr = sympy.expand(expr.subs(v, 1 / a))
    if mirrored:
        expr = sympy.expand(expr.subs(a, -1 / a))
    terms = []
    for term in sympy.Add.make_args(expr):
        coeff, rest = term.as_coeff_Mul()
        powers = rest.as_powers_dict()
        terms.append((int(powers.get(a, 0)), int(powers.get(z, 0)), int(coeff)))
    terms.sort(key=lambda t: (t[1], t[0]))
    return " ".join(f"{ea}:{ez}:{c}" for ea, ez, c in terms)


def kauffman_terms(text, mirrored):
    """Same convention as KnotInfo; the mirror sends a to a^-1."""
    z, a = sympy.symbols("z a")
    expr = sympy.expand(sympy.sympify(text.replace("^", "**")))
    if mirrored:
        expr = sympy.expand(expr.subs(a, 1 / a))
    terms = []
    for term in sympy.Add.make_args(expr):
        coeff, rest = term.as_coeff_Mul()
        powers = rest.as_powers_dict()
        terms.append((int(powers.get(a, 0)), int(powers.get(z, 0)), int(coeff)))
    terms.sort(key=lambda t: (t[1], t[0]))
    return " ".join(f"{ea}:{ez}:{c}" for ea, ez, c in terms)


def main():
    recs = [r for r in link_list() if wanted(r)]
    recs.sort(key=lambda r: (int(r["crossing_number"]), int(r["name"].split("_")[1])))
    pd_lines, braid_lines, homfly_lines, kauffman_lines = [], [], [], []
    inv_lines = ["name,crossing_number,chiral,det,signature,qa,alternating"]
    for r in recs:
        name = r["name"]
        sig = int(r["signature"])
        pd = ast.literal_eval(r["pd_notation"])
        braid = ast.literal_eval(r["braid_notation"])
        mirrored = sig > 0
        if mirrored:
            pd = mirror_pd(pd)
            braid = [-g for g in braid]
            sig = -sig
        sym = r["symmetry_type"]
        # 8_17 is negative amphicheiral: unoriented, it is its own mirror.
        chiral = not ("amphicheiral" in sym)
        pd_lines.append(f"{name}: " + "".join("(" + ",".join(map(str, x)) + ")" for x in pd))
        braid_lines.append(f"{name}: " + " ".join(map(str, braid)))
        inv_lines.append(",".join([
            name, r["crossing_number"], "1" if chiral else "0", r["determinant"], str(sig),
            "1" if r["quasi_alternating"] == "Y" else "0",
            "1" if r["alternating"] == "Y" else "0"]))
        homfly_lines.append(f"{name}: " + homfly_terms(r["homfly_polynomial"], mirrored))
        kauffman_lines.append(f"{name}: " + kauffman_terms(r["kauffman_polynomial"], mirrored))
    (ROOT / "data" / "knots_pd.txt").write_text("\n".join(pd_lines) + "\n")
    (ROOT / "data" / "braids.txt").write_text("\n".join(braid_lines) + "\n")
    (ROOT / "data" / "knot_invariants.csv").write_text("\n".join(inv_lines) + "\n")
    (ROOT / "tests" / "data" / "knotinfo_homfly.txt").write_text("\n".join(homfly_lines) + "\n")
    (ROOT / "tests" / "data" / "knotinfo_kauffman.txt").write_text("\n".join(kauffman_lines) + "\n")


if __name__ == "__main__":
    main()
