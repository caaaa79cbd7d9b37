#!/usr/bin/env python3
"""Assemble the fixture corpus from exact transcribed data.

Writes fixtures/65B.json, 63B.json, 35.json, weilres13.json.  Matrices,
curves, torsion vectors and published invariant triples are exact strings;
period matrices carry the printed six-decimal values.  The analytic blocks
of 65B and 63B are produced separately by compute_curve_periods.py (this
script preserves an existing block when re-run).
"""

from __future__ import annotations

import json
import sys
from fractions import Fraction
from pathlib import Path

from mpmath import mp, mpc, mpf

ROOT = Path(__file__).resolve().parent.parent
sys.path.insert(0, str(ROOT / "src"))

from polkit.exact_forms import (  # noqa: E402
    identity,
    inverse,
    mat,
    matadd,
    matmul,
    matscale,
    transpose,
)

OUT = ROOT / "fixtures"


def ms(m):
    return [[str(x) for x in row] for row in m]


def poly_mul(a, b):
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


def curve(*factors, scale=1):
    acc = [Fraction(scale)]
    for f in factors:
        acc = poly_mul(acc, [Fraction(c) for c in f])
    return [str(c) for c in acc]


def triple(i1, i2, i3):
    return {"i1": str(i1), "i2": str(i2), "i3": str(i3)}


def cpx(re, im):
    return [re, im]


def write(doc, name):
    path = OUT / name
    if path.exists():
        old = json.loads(path.read_text())
        if "analytic" in old and "analytic" not in doc:
            doc["analytic"] = old["analytic"]
    path.write_text(json.dumps(doc, indent=2) + "\n")
    print("wrote", path)


def fixture_65b():
    me = mat([[0, 2, -2, 0], [-2, 0, -2, 2], [2, 2, 0, 0], [0, -2, 0, 0]])
    mu = mat([[3, 2, -1, 1], [0, 0, 1, 0], [0, -1, 4, 0], [2, 1, 1, 1]])
    meu = matscale(Fraction(1, 2), matmul(me, mu))
    doc = {
        "schema": 1,
        "name": "65B",
        "description": "two-dimensional factor of J0(65): two principal classes, both Jacobians",
        "order": {"disc": 12, "conductor": 1},
        "homology_basis": ["g1", "g2", "g3", "g4"],
        "form": ms(me),
        "endomorphisms": {
            "u": {"element": {"a": "2", "b": "1"}, "matrix": ms(mu)},
        },
        "action_from": "u",
        "matrices": {
            "Eu": ms(meu),
            "S_paper": ms(mat([[1, 0, 0, 0], [0, 3, 1, 0], [0, 1, 0, -2], [0, 0, 0, 1]])),
        },
        "curves": {
            "C1": {"f": ["42", "-62", "-7", "28", "3", "-4", "-1"]},
            "C2": {"f": curve([1, 3, 1], [8, 44, 71, 37, 7], scale=-1)},
        },
        "analytic_source_curve": "C1",
        "expected": {
            "checks": [
                {"check": "validate", "name": "fixture-valid"},
                {"check": "form_type", "name": "type-E", "value": "(2,2)"},
                {"check": "pfaffian_abs", "name": "pf-E", "value": "4"},
                {
                    "check": "primitive_part",
                    "name": "primitive-E",
                    "multiplier": "2",
                    "type": "(1,1)",
                },
                {
                    "check": "twist",
                    "name": "twist-u",
                    "endo": "u",
                    "scale": "1/2",
                    "matrix": "Eu",
                    "type": "(1,1)",
                },
                {
                    "check": "symplectic_paper",
                    "name": "paper-basis-u",
                    "matrix": "S_paper",
                    "form": "Eu",
                    "divisors": [1, 1],
                },
                {"check": "symplectic_own", "name": "own-basis-u", "form": "Eu"},
                {
                    "check": "units",
                    "name": "fundamental-unit",
                    "unit": "2+√3",
                    "norm": 1,
                    "pi": 2,
                },
                {
                    "check": "principal_witness",
                    "name": "principalizable",
                    "exists": True,
                },
                {
                    "check": "classify",
                    "name": "classification",
                    "pi": 2,
                    "representatives": ["1", "2+√3"],
                    "verdicts": ["Jacobian", "Jacobian"],
                    "tau": 2,
                    "sigma": 0,
                    "digits": 30,
                    "threshold": "1e-10",
                },
                {
                    "check": "curve_invariants",
                    "name": "igusa-C1",
                    "curve": "C1",
                    **triple(
                        Fraction(-(2 ** 6) * 5 * 313 ** 5, 13 ** 3),
                        Fraction(139 * 313 ** 3 * 701, 5 * 13 ** 3),
                        Fraction(7 * 313 ** 2 * 59104229, 2 ** 3 * 5 ** 2 * 13 ** 3),
                    ),
                },
                {
                    "check": "curve_invariants",
                    "name": "igusa-C2",
                    "curve": "C2",
                    **triple(
                        Fraction(-(2 ** 3) * 3109 ** 5, 5 ** 3 * 13 ** 4),
                        Fraction(3109 ** 3 * 206639, 2 * 5 ** 3 * 13 ** 4),
                        Fraction(7 * 3109 ** 2 * 123916753, 2 ** 3 * 5 ** 3 * 13 ** 4),
                    ),
                },
                {
                    "check": "curves_distinct",
                    "name": "nonisomorphic",
                    "pair": ["C1", "C2"],
                },
            ]
        },
    }
    write(doc, "65B.json")


def fixture_63b():
    doc = {
        "schema": 1,
        "name": "63B",
        "description": "factor of J0(63): one Jacobian class, one split class (Weil restriction)",
        "order": {"disc": 12, "conductor": 1},
        "homology_basis": ["g1", "g2", "g3", "g4"],
        "form": ms(
            mat([[0, 0, 1, 0], [0, 0, 0, 1], [-1, 0, 0, 0], [0, -1, 0, 0]])
        ),
        "endomorphisms": {},
        "action_from": None,
        "matrices": {
            "S_paper": ms(mat([[1, 0, 0, -1], [0, 1, -1, 0], [0, 0, 1, 0], [0, 0, 0, 1]])),
        },
        "curves": {
            "C63B": {"f": ["81", "0", "0", "162", "0", "0", "-3"]},
        },
        "analytic_source_curve": "C63B",
        "period_sets": {
            "delta_u": {
                "digits": 6,
                "note": "printed periods of the unit-twist symplectic basis; diagonal",
                "matrix": [
                    [
                        cpx("6.584352", "8.916903"),
                        cpx("0", "0"),
                        cpx("-2.275825", "6.429374"),
                        cpx("0", "0"),
                    ],
                    [
                        cpx("0", "0"),
                        cpx("-15.444529", "11.404432"),
                        cpx("0", "0"),
                        cpx("-8.860177", "2.487529"),
                    ],
                ],
            }
        },
        "elliptic": {
            "lattice": [cpx("6.584352", "8.916903"), cpx("-2.275825", "6.429374")],
            "c4": {"num": ["45", "-108"], "den": "256", "surd": -3},
            "c6": {"num": ["1161", "1134"], "den": "4096", "surd": -3},
            "j": {"num": ["3271617", "-988929"], "den": "686", "surd": -3},
        },
        "expected": {
            "checks": [
                {"check": "validate", "name": "fixture-valid"},
                {
                    "check": "symplectic_paper",
                    "name": "paper-basis-change",
                    "matrix": "S_paper",
                    "form": "E",
                    "divisors": [1, 1],
                },
                {
                    "check": "siegel",
                    "name": "siegel-delta-u",
                    "period_set": "delta_u",
                    "tol": "1e-4",
                },
                {
                    "check": "split_verdict",
                    "name": "theta-split",
                    "period_set": "delta_u",
                    "digits": 20,
                    "threshold": "1e-10",
                    "value": "Split",
                },
                {
                    "check": "units",
                    "name": "fundamental-unit",
                    "unit": "2+√3",
                    "norm": 1,
                    "pi": 2,
                },
                {
                    "check": "classify",
                    "name": "classification",
                    "pi": 2,
                    "representatives": ["1", "2+√3"],
                    "verdicts": ["Jacobian", "Split"],
                    "tau": 1,
                    "sigma": 1,
                    "digits": 30,
                    "threshold": "1e-10",
                },
                {
                    "check": "elliptic_invariants",
                    "name": "split-factor-invariants",
                    "rel_tol_c": "1e-4",
                    "rel_tol_j": "1e-3",
                },
            ]
        },
    }
    write(doc, "63B.json")


def fixture_35():
    me = mat([[0, 1, -1, 0], [-1, 0, 0, 1], [1, 0, 0, 1], [0, -1, -1, 0]])
    mu = mat([[2, 1, 1, 1], [2, 2, 1, 2], [2, 0, 3, -2], [0, 1, -1, 3]])
    meu = matmul(me, mu)
    s_paper = mat([[1, 0, 0, 0], [0, 1, 1, 0], [0, 2, -1, -1], [0, 0, 2, 1]])
    # gamma' basis of the <4 D_inf> quotient, columns in gamma coordinates
    gp = transpose(
        mat(
            [
                ["0", "1/2", "0", "1/2"],
                ["0", "1/2", "0", "-1/2"],
                ["1", "0", "0", "0"],
                ["0", "0", "1", "0"],
            ]
        )
    )
    mel = matmul(matmul(transpose(gp), me), gp)
    mup = matmul(matmul(inverse(gp), mu), gp)
    mep = matmul(mel, matmul(mup, mup))
    # analytic block: delta basis of the principal form, printed periods
    rho = matadd(mu, matscale(-2, identity(4)))
    st = transpose(s_paper)
    rho_delta = matmul(matmul(inverse(st), rho), st)
    doc = {
        "schema": 1,
        "name": "35",
        "description": "factor of J0(35): nonprincipal canonical class, unique principal class; torsion quotients",
        "order": {"disc": 17, "conductor": 1},
        "homology_basis": ["g1", "g2", "g3", "g4"],
        "form": ms(me),
        "endomorphisms": {
            "u": {"element": {"a": "2", "b": "1"}, "matrix": ms(mu)},
            "v": {"element": {"a": "3", "b": "2"}, "matrix": ms(matadd(matscale(2, mu), matscale(-1, identity(4))))},
        },
        "action_from": "u",
        "matrices": {
            "Eu": ms(meu),
            "S_paper": ms(s_paper),
            "quot_basis": ms(gp),
            "E_quot": ms(mel),
            "E_quot_twist": ms(mep),
        },
        "torsion": {
            "Dinf": ["0", "1/8", "-1/4", "1/8"],
            "D5": ["0", "1/8", "1/4", "1/8"],
            "D7": ["0", "1/2", "0", "0"],
        },
        "curves": {
            "C35A": {"f": curve([1, 1], [3, 8], [1, 6, 14, 10], scale=-1)},
            "C35B": {"f": curve([0, 1], [5, 4], [8, 5], [70, 156, 110, 25], scale=-10)},
            "C35C": {"f": curve([16, 11], [8, 5], [5, 3], [490, 938, 598, 127], scale=-2)},
            "C35D": {
                "f": curve(
                    [13, 8], [3776, 4744, 1489], [8218, 15820, 10154, 2173], scale=-142
                )
            },
        },
        "period_sets": {
            "delta_principal": {
                "digits": 6,
                "note": "printed periods of the principal-class symplectic basis",
                "matrix": [
                    [
                        cpx("0", "3.429722"),
                        cpx("0", "1.265864"),
                        cpx("-4.737944", "0"),
                        cpx("3.044837", "1.898796"),
                    ],
                    [
                        cpx("0", "-0.224497"),
                        cpx("0", "1.714858"),
                        cpx("2.706904", "0"),
                        cpx("-2.368972", "2.572287"),
                    ],
                ],
            }
        },
        "analytic": {
            "basis_labels": ["d1", "d2", "d3", "d4"],
            "form": ms(matmul(matmul(s_paper, matscale(Fraction(1, 2), meu)), st)),
            "action": ms(rho_delta),
            "periods": [
                [
                    cpx("0", "3.429722"),
                    cpx("0", "1.265864"),
                    cpx("-4.737944", "0"),
                    cpx("3.044837", "1.898796"),
                ],
                [
                    cpx("0", "-0.224497"),
                    cpx("0", "1.714858"),
                    cpx("2.706904", "0"),
                    cpx("-2.368972", "2.572287"),
                ],
            ],
            "precision_digits": 6,
            "provenance": "printed periods on the published symplectic basis",
        },
        "expected": {
            "checks": [
                {"check": "validate", "name": "fixture-valid"},
                {"check": "form_type", "name": "type-E", "value": "(1,2)"},
                {
                    "check": "twist",
                    "name": "twist-u",
                    "endo": "u",
                    "scale": "1",
                    "matrix": "Eu",
                    "type": "(2,2)",
                },
                {
                    "check": "symplectic_paper",
                    "name": "paper-basis-u",
                    "matrix": "S_paper",
                    "form": "Eu",
                    "scale": "1/2",
                    "divisors": [1, 1],
                },
                {
                    "check": "symplectic_own",
                    "name": "own-basis-u",
                    "form": "Eu",
                    "scale": "1/2",
                },
                {
                    "check": "units",
                    "name": "fundamental-unit",
                    "unit": "4+√17",
                    "norm": -1,
                    "pi": 1,
                },
                {
                    "check": "norm_equation",
                    "name": "norm-2-endomorphisms",
                    "d": 2,
                    "contains": {"a": "2", "b": "1"},
                },
                {
                    "check": "principal_witness",
                    "name": "principalizable",
                    "exists": True,
                },
                {
                    "check": "trace_form",
                    "name": "trace-degree-one",
                    "det": "1",
                },
                {
                    "check": "torsion_action",
                    "name": "v-multiplies-by-3",
                    "endo": "v",
                    "multiplier": 3,
                    "points": ["Dinf", "D5", "D7"],
                },
                {
                    "check": "torsion_group",
                    "name": "cuspidal-group",
                    "generators": ["D5", "D7", "D5-Dinf"],
                    "order": 32,
                    "invariants": [2, 2, 8],
                },
                {
                    "check": "endo_on_torsion",
                    "name": "u-on-4Dinf",
                    "endo": "u",
                    "point": "4*Dinf",
                    "image": "0",
                },
                {
                    "check": "endo_on_torsion",
                    "name": "u-on-2Dinf",
                    "endo": "u",
                    "point": "2*Dinf",
                    "image": "4*Dinf",
                },
                {
                    "check": "endo_on_torsion",
                    "name": "u-on-D5+D7",
                    "endo": "u",
                    "point": "D5+D7",
                    "image": "-2*D5-2*D7",
                },
                {
                    "check": "quotient",
                    "name": "quotient-4Dinf",
                    "generators": ["4*Dinf"],
                    "order": 2,
                    "basis": "quot_basis",
                    "restricted": "E_quot",
                    "primitive_type": "(1,4)",
                },
                {
                    "check": "quotient_degree",
                    "name": "degree-relation-4Dinf",
                    "generators": ["4*Dinf"],
                    "order": 2,
                },
                {
                    "check": "quotient_degree",
                    "name": "degree-relation-2Dinf",
                    "generators": ["2*Dinf"],
                    "order": 4,
                },
                {
                    "check": "quotient_degree",
                    "name": "degree-relation-D5+D7",
                    "generators": ["D5+D7"],
                    "order": 8,
                },
                {
                    "check": "quotient_twist",
                    "name": "twisted-quotient-form",
                    "generators": ["4*Dinf"],
                    "basis": "quot_basis",
                    "endo": "u",
                    "power": 2,
                    "matrix": "E_quot_twist",
                    "pfaffian_abs": "4",
                    "type": "(2,2)",
                },
                {
                    "check": "siegel",
                    "name": "siegel-principal",
                    "period_set": "delta_principal",
                    "tol": "1e-4",
                },
                {
                    "check": "split_verdict",
                    "name": "theta-jacobian",
                    "period_set": "delta_principal",
                    "digits": 30,
                    "threshold": "1e-4",
                    "value": "Jacobian",
                },
                {
                    "check": "classify",
                    "name": "classification",
                    "pi": 1,
                    "representatives": ["1"],
                    "verdicts": ["Jacobian"],
                    "tau": 1,
                    "sigma": 0,
                    "digits": 30,
                    "threshold": "1e-4",
                },
                {
                    "check": "curve_invariants",
                    "name": "igusa-35A",
                    "curve": "C35A",
                    **triple(
                        Fraction(-(2 ** 23) * 29 ** 5, 5 ** 5 * 7 ** 5),
                        Fraction(2 ** 17 * 29 ** 3 * 37 * 83, 5 ** 5 * 7 ** 5),
                        Fraction(2 ** 8 * 29 ** 2 * 83 ** 2 * 1913, 5 ** 5 * 7 ** 5),
                    ),
                },
                {
                    "check": "curve_invariants",
                    "name": "igusa-35B",
                    "curve": "C35B",
                    **triple(
                        Fraction(-(2 ** 13) * 43 ** 5 * 359 ** 5, 5 ** 17 * 7 ** 5),
                        Fraction(-(2 ** 10) * 43 ** 3 * 359 ** 3 * 8933, 5 ** 13 * 7 ** 5),
                        Fraction(
                            -(2 ** 4) * 37 * 43 ** 2 * 359 ** 2 * 571 * 126949,
                            5 ** 13 * 7 ** 5,
                        ),
                    ),
                },
                {
                    "check": "curve_invariants",
                    "name": "igusa-35C",
                    "curve": "C35C",
                    **triple(
                        Fraction(2 ** 28 * 89 ** 5, 5 ** 3 * 7 ** 7),
                        Fraction(-(2 ** 19) * 11 * 23 * 89 ** 3 * 1489, 5 ** 3 * 7 ** 7),
                        Fraction(
                            -(2 ** 10) * 43 * 89 ** 2 * 2683 * 11239, 5 ** 3 * 7 ** 7
                        ),
                    ),
                },
                {
                    "check": "curve_invariants",
                    "name": "igusa-35D",
                    "curve": "C35D",
                    **triple(
                        Fraction(2 ** 13 * 109 ** 5 * 214063 ** 5, 5 ** 2 * 7 ** 5 * 71 ** 12),
                        Fraction(
                            2 ** 12 * 11 * 17 * 109 ** 3 * 5171 * 214063 ** 3,
                            5 ** 2 * 7 ** 5 * 71 ** 8,
                        ),
                        Fraction(
                            2 ** 4 * 3 ** 5 * 109 ** 2 * 33871 * 214063 ** 2 * 271175273,
                            5 ** 2 * 7 ** 5 * 71 ** 8,
                        ),
                    ),
                },
                {
                    "check": "curves_distinct",
                    "name": "A-B-distinct",
                    "pair": ["C35A", "C35B"],
                },
                {
                    "check": "curves_distinct",
                    "name": "A-C-distinct",
                    "pair": ["C35A", "C35C"],
                },
                {
                    "check": "curves_distinct",
                    "name": "A-D-distinct",
                    "pair": ["C35A", "C35D"],
                },
                {
                    "check": "curves_distinct",
                    "name": "B-C-distinct",
                    "pair": ["C35B", "C35C"],
                },
                {
                    "check": "curves_distinct",
                    "name": "B-D-distinct",
                    "pair": ["C35B", "C35D"],
                },
                {
                    "check": "curves_distinct",
                    "name": "C-D-distinct",
                    "pair": ["C35C", "C35D"],
                },
            ]
        },
    }
    write(doc, "35.json")


def fixture_weilres():
    mp.dps = 40
    lam = 4 + mp.sqrt(13)
    w1 = mpf("0.220377")
    w2 = mpc(0, mpf("0.428744"))
    v1 = -lam * w1
    v2 = -(lam / 3) * w2
    def fmt(z, d=24):
        return [mp.nstr(mp.re(z), d), mp.nstr(mp.im(z), d)]

    doc = {
        "schema": 1,
        "name": "weilres13",
        "description": "Weil restriction of a 3-isogenous Q-curve over Q(sqrt 13); split class plus Jacobian class",
        "order": {"disc": 12, "conductor": 1},
        "isogeny": {
            "lambda": {"d": 13, "a": "4", "b": "1"},
            "degree": 3,
            "lattice": [fmt(w1), fmt(w2)],
            "lattice_sigma": [fmt(v1), fmt(v2)],
        },
        "matrices": {
            "sqrt_action": ms(mat([[0, -3, 0, 0], [-1, 0, 0, 0], [0, 0, 0, -1], [0, 0, -3, 0]])),
            "unit_action": ms(mat([[2, -3, 0, 0], [-1, 2, 0, 0], [0, 0, 2, -1], [0, 0, -3, 2]])),
            "Eu": ms(mat([[0, 0, 2, -1], [0, 0, -3, 2], [-2, 3, 0, 0], [1, -2, 0, 0]])),
        },
        "curves": {
            "plus": {
                "f": [
                    "377",
                    "17238",
                    "278850",
                    "2170636",
                    "8746257",
                    "17307966",
                    "12909572",
                ]
            },
            "minus": {
                "f": [
                    "-377",
                    "-17238",
                    "-278850",
                    "-2170636",
                    "-8746257",
                    "-17307966",
                    "-12909572",
                ]
            },
        },
        "ffield": {
            "p": 23,
            "d": 13,
            "elliptic": {"a": ["-6903", "-1908"], "b": ["-310050", "-86004"]},
            "candidates": ["plus", "minus"],
        },
        "expected": {
            "checks": [
                {"check": "validate", "name": "fixture-valid"},
                {
                    "check": "weilres",
                    "name": "restriction-lattice",
                    "sqrt_action": "sqrt_action",
                    "unit_action": "unit_action",
                    "twist": "Eu",
                    "max_residual": "1e-6",
                },
                {
                    "check": "units",
                    "name": "fundamental-unit",
                    "unit": "2+√3",
                    "norm": 1,
                    "pi": 2,
                },
                {
                    "check": "weilres_classify",
                    "name": "classification",
                    "pi": 2,
                    "verdicts": ["Split", "Jacobian"],
                    "tau": 1,
                    "sigma": 1,
                    "digits": 30,
                    "threshold": "1e-4",
                },
                {
                    "check": "count_points",
                    "name": "counts-plus-23",
                    "curve": "plus",
                    "p": 23,
                    "n1": 18,
                    "n2": 604,
                },
                {
                    "check": "frobenius_square",
                    "name": "plus-is-square",
                    "curve": "plus",
                    "equals_square": True,
                },
                {
                    "check": "frobenius_square",
                    "name": "minus-not-square",
                    "curve": "minus",
                    "equals_square": False,
                },
                {
                    "check": "disambiguate",
                    "name": "sign-selection",
                    "selected": "plus",
                },
            ]
        },
    }
    write(doc, "weilres13.json")


def main():
    OUT.mkdir(exist_ok=True)
    fixture_65b()
    fixture_63b()
    fixture_35()
    fixture_weilres()


if __name__ == "__main__":
    main()
