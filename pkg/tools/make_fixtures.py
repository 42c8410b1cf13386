"""Regenerate the JSON fixtures under fixtures/.

Cyclic actions are given by one generator map; the powers are composed
symbolically with sympy and reduced mod p.  Extension-field coefficients are
only used for linear maps, so no symbolic field arithmetic is needed there.

    python tools/make_fixtures.py
"""

import json
from pathlib import Path

import sympy as sp

from fqreduce.fields import FqContext

ROOT = Path(__file__).resolve().parents[1] / "fixtures"


def dump(rel, obj):
    path = ROOT / rel
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps(obj, indent=1) + "\n")


def terms_of(expr, xs, p):
    poly = sp.Poly(sp.expand(expr), *xs)
    out = []
    for monom, coeff in sorted(poly.terms()):
        c = int(coeff) % p
        if c:
            out.append([c, list(monom)])
    return out


def cyclic_table(m):
    labels = [str(i) for i in range(m)]
    return {"elements": labels,
            "table": [[labels[(i + j) % m] for j in range(m)] for i in range(m)],
            "identity": "0"}


def cyclic_action(p, n, m, gen):
    """gen: function of sympy symbols returning the image tuple."""
    xs = sp.symbols(f"x0:{n}")
    power = list(xs)
    maps = {}
    for i in range(m):
        maps[str(i)] = [terms_of(c, xs, p) for c in power]
        image = gen(*xs)
        power = [sp.Poly(c.subs(dict(zip(xs, image)), simultaneous=True),
                         *xs, modulus=p).as_expr() for c in power]
    for a, b in zip(power, xs):
        assert sp.Poly(a - b, *xs, modulus=p).is_zero, "generator order != m"
    return {"p": p, "k": 1, "n": n, "group": cyclic_table(m), "maps": maps}


def linear_ext_cyclic(p, k, m, scalar):
    """Z/m acting on F_{p^k} by x -> scalar^i x (scalar given as code)."""
    ctx = FqContext(p, k)
    maps = {}
    c = 1
    for i in range(m):
        maps[str(i)] = [[[list(ctx.decode(c)), [1]]]]
        c = ctx.mul(c, scalar)
    assert c == 1
    return {"p": p, "k": k, "modulus": list(ctx.modulus), "n": 1,
            "group": cyclic_table(m), "maps": maps}


def linear_ext_cyclic_n(p, k, n, m, scalars):
    ctx = FqContext(p, k)
    maps = {}
    cs = [1] * n
    for i in range(m):
        maps[str(i)] = [[[list(ctx.decode(cs[j])), [int(j == jj) for jj in range(n)]]]
                        for j in range(n)]
        cs = [ctx.mul(c, s) for c, s in zip(cs, scalars)]
    assert cs == [1] * n
    return {"p": p, "k": k, "modulus": list(ctx.modulus), "n": n,
            "group": cyclic_table(m), "maps": maps}


def klein_signs(p, n, a_signs, b_signs):
    labels = ["e", "a", "b", "c"]
    mult = {("e", x): x for x in labels}
    mult.update({(x, "e"): x for x in labels})
    mult.update({(x, x): "e" for x in labels})
    mult.update({("a", "b"): "c", ("b", "a"): "c", ("a", "c"): "b",
                 ("c", "a"): "b", ("b", "c"): "a", ("c", "b"): "a"})
    table = [[mult[(g, h)] for h in labels] for g in labels]
    c_signs = [s * t for s, t in zip(a_signs, b_signs)]

    def diag(signs):
        return [[[s % p, [int(j == jj) for jj in range(n)]]] for j, s in enumerate(signs)]

    maps = {"e": diag([1] * n), "a": diag(a_signs), "b": diag(b_signs),
            "c": diag(c_signs)}
    return {"p": p, "k": 1, "n": n,
            "group": {"elements": labels, "table": table, "identity": "e"},
            "maps": maps}


def congruence_corpus():
    F9 = FqContext(3, 2)
    i4 = int(F9.exp[2])          # order 4 in F_9^*
    minus1 = int(F9.exp[4])
    corpus = {
        # Z/2
        "z2_neg_f5_n1": cyclic_action(5, 1, 2, lambda x: (-x,)),
        "z2_neg_f3_n2": cyclic_action(3, 2, 2, lambda x, y: (-x, -y)),
        "z2_swap_f3_n2": cyclic_action(3, 2, 2, lambda x, y: (y, x)),
        "z2_conj_f5_n2": cyclic_action(5, 2, 2, lambda x, y: (-x, -y + 2 * x**2)),
        "z2_cubic_f7_n2": cyclic_action(7, 2, 2, lambda x, y: (x, -y + x**3)),
        "z2_swap_f7_n3": cyclic_action(7, 3, 2, lambda x, y, z: (y, x, -z)),
        "z2_neg_f11_n1": cyclic_action(11, 1, 2, lambda x: (-x,)),
        "z2_neg_f9_n1": linear_ext_cyclic(3, 2, 2, minus1),
        "z2_neg_f9_n2": linear_ext_cyclic_n(3, 2, 2, 2, [minus1, 1]),
        # Klein four
        "v4_signs_f3_n2": klein_signs(3, 2, [-1, 1], [1, -1]),
        "v4_signs_f5_n3": klein_signs(5, 3, [-1, -1, 1], [1, -1, -1]),
        # Z/4
        "z4_mul2_f5_n1": cyclic_action(5, 1, 4, lambda x: (2 * x,)),
        "z4_rot_f3_n2": cyclic_action(3, 2, 4, lambda x, y: (-y, x)),
        "z4_i_f9_n1": linear_ext_cyclic(3, 2, 4, i4),
        "z4_rot_f7_n2": cyclic_action(7, 2, 4, lambda x, y: (-y, x)),
        # Z/3
        "z3_mul2_f7_n1": cyclic_action(7, 1, 3, lambda x: (2 * x,)),
        "z3_affine_f7_n1": cyclic_action(7, 1, 3, lambda x: (2 * x + 1,)),
        "z3_diag_f7_n2": cyclic_action(7, 2, 3, lambda x, y: (2 * x, 4 * y)),
        "z3_conj_f7_n2": cyclic_action(7, 2, 3, lambda x, y: (2 * x, 2 * y + 2 * x**2)),
        "z3_rot_f5_n2": cyclic_action(5, 2, 3, lambda x, y: (y, -x - y)),
        "z3_cyc_f5_n3": cyclic_action(5, 3, 3, lambda x, y, z: (z, x, y)),
        "z3_cyc_f11_n3": cyclic_action(11, 3, 3, lambda x, y, z: (z, x, y)),
        # Z/9
        "z9_twist_f7_n3": cyclic_action(7, 3, 9, lambda x, y, z: (2 * z, x, y)),
        # Z/5
        "z5_mul3_f11_n1": cyclic_action(11, 1, 5, lambda x: (3 * x,)),
        "z5_affine_f11_n1": cyclic_action(11, 1, 5, lambda x: (4 * x + 1,)),
        "z5_diag_f11_n2": cyclic_action(11, 2, 5, lambda x, y: (3 * x, 9 * y)),
        "z5_conj_f11_n2": cyclic_action(11, 2, 5, lambda x, y: (3 * x, 3 * y + x**2)),
    }
    for name, rec in corpus.items():
        dump(f"actions/congruence/{name}.json", rec)


def pairs():
    pairs = {
        "f5_n1_neg_vs_reflect": (
            cyclic_action(5, 1, 2, lambda x: (-x,)),
            cyclic_action(5, 1, 2, lambda x: (1 - x,))),
        "f5_n2_neg_vs_conj": (
            cyclic_action(5, 2, 2, lambda x, y: (-x, -y)),
            cyclic_action(5, 2, 2, lambda x, y: (-x, -y + 2 * x**2 + 1))),
        "f7_n1_mul_vs_affine": (
            cyclic_action(7, 1, 3, lambda x: (2 * x,)),
            cyclic_action(7, 1, 3, lambda x: (2 * x + 1,))),
        "f7_n2_diag_vs_diag": (
            cyclic_action(7, 2, 3, lambda x, y: (2 * x, 2 * y)),
            cyclic_action(7, 2, 3, lambda x, y: (2 * x, 4 * y))),
        "f7_n3_cyc_vs_scalar": (
            cyclic_action(7, 3, 3, lambda x, y, z: (z, x, y)),
            cyclic_action(7, 3, 3, lambda x, y, z: (2 * x, 2 * y, 2 * z))),
        "f11_n1_mul_vs_affine": (
            cyclic_action(11, 1, 5, lambda x: (3 * x,)),
            cyclic_action(11, 1, 5, lambda x: (4 * x + 1,))),
        "f5_n1_z4_mul_vs_affine": (
            cyclic_action(5, 1, 4, lambda x: (2 * x,)),
            cyclic_action(5, 1, 4, lambda x: (2 * x + 1,))),
        "f3_n2_swap_vs_neg": (
            cyclic_action(3, 2, 2, lambda x, y: (y, x)),
            cyclic_action(3, 2, 2, lambda x, y: (-x, -y))),
    }
    for name, (a, b) in pairs.items():
        dump(f"actions/pairs/{name}.json", {"first": a, "second": b})
    # Z/4 on F_5^2 by (2x, 4y): g^2 fixes the y-axis, g does not
    dump("actions/bad/not_free_z4_f5_n2.json", {
        "first": cyclic_action(5, 2, 4, lambda x, y: (2 * x, 4 * y)),
        "second": cyclic_action(5, 2, 4, lambda x, y: (2 * x, 2 * y))})


def bad_actions():
    # inverses and identity exist, associativity fails: (aa)b != a(ab)
    dump("actions/bad/nonassociative_table.json", {
        "p": 5, "k": 1, "n": 1,
        "group": {"elements": ["e", "a", "b"],
                  "table": [["e", "a", "b"], ["a", "a", "e"], ["b", "e", "a"]],
                  "identity": "e"},
        "maps": {"e": [[[1, [1]]]], "a": [[[1, [1]]]], "b": [[[1, [1]]]]}})
    wrong = cyclic_action(5, 1, 2, lambda x: (-x,))
    wrong["maps"] = {"0": [[[1, [1]]]], "1": [[[2, [1]]]]}
    dump("actions/bad/not_an_action.json", wrong)
    dump("actions/bad/missing_field.json", {"p": 5, "n": 1, "maps": {}})
    dump("actions/extra/z5_translate_f5_n1.json",
         cyclic_action(5, 1, 5, lambda x: (x + 1,)))
    dump("actions/extra/trivial_f3_n1.json", cyclic_action(3, 1, 2, lambda x: (x,)))
    dump("actions/extra/z6_mul3_f7_n1.json", cyclic_action(7, 1, 6, lambda x: (3 * x,)))


def injective_maps():
    maps = {
        "cube_f2_n1": {"p": 2, "k": 1, "n": 1, "map": [[[1, [3]]]]},
        "translate_f3_n1": {"p": 3, "k": 1, "n": 1, "map": [[[1, [1]], [1, [0]]]]},
        "triangular_f3_n2": {"p": 3, "k": 1, "n": 2,
                             "map": [[[1, [1, 0]]], [[1, [0, 1]], [1, [2, 0]]]]},
        "triangular_f5_n2": {"p": 5, "k": 1, "n": 2,
                             "map": [[[2, [1, 0]], [1, [0, 0]]],
                                     [[1, [0, 1]], [3, [3, 0]], [1, [1, 0]]]]},
        "triangular_f7_n2": {"p": 7, "k": 1, "n": 2,
                             "map": [[[3, [1, 0]]], [[6, [0, 1]], [1, [4, 0]]]]},
        "triangular_f9_n2": {"p": 3, "k": 2, "modulus": list(FqContext(3, 2).modulus),
                             "n": 2,
                             "map": [[[[0, 1], [1, 0]]],
                                     [[1, [0, 1]], [[1, 1], [2, 0]]]]},
        "triangular_f4_n2": {"p": 2, "k": 2, "modulus": list(FqContext(2, 2).modulus),
                             "n": 2,
                             "map": [[[1, [1, 0]], [[0, 1], [0, 0]]],
                                     [[1, [0, 1]], [1, [3, 0]]]]},
        "square_f5_n1": {"p": 5, "k": 1, "n": 1, "map": [[[1, [2]]]]},
    }
    for name, rec in maps.items():
        dump(f"maps/{name}.json", rec)


def systems():
    sysf = {
        "x2p1": {"n": 1, "polys": [[[1, [2]], [1, [0]]]]},
        "x2p1_x2px1": {"n": 1, "polys": [[[1, [2]], [1, [0]]],
                                         [[1, [2]], [1, [1]], [1, [0]]]]},
        "x_xm1": {"n": 1, "polys": [[[1, [1]]], [[1, [1]], [-1, [0]]]]},
        "x2m2": {"n": 1, "polys": [[[1, [2]], [-2, [0]]]]},
        "x2m2_two": {"n": 1, "polys": [[[1, [2]], [-2, [0]]], [[2, [0]]]]},
        "twox_m1_twox": {"n": 1, "polys": [[[2, [1]], [-1, [0]]], [[2, [1]]]]},
        "circle_line": {"n": 2, "polys": [[[1, [2, 0]], [1, [0, 2]], [-1, [0, 0]]],
                                          [[1, [1, 0]], [-1, [0, 1]]]]},
        "xy_m1_x": {"n": 2, "polys": [[[1, [1, 1]], [-1, [0, 0]]], [[1, [1, 0]]]]},
    }
    for name, rec in sysf.items():
        dump(f"systems/{name}.json", rec)


def factorizations():
    dump("factorizations/s5_order.json", {"factors": {"2": 3, "3": 1, "5": 1}})
    dump("factorizations/minkowski_4.json", {"factors": {"2": 7, "3": 2, "5": 1}})
    dump("factorizations/two_to_4.json", {"factors": {"2": 4}})
    dump("factorizations/gl2_bound.json", {"value": 24})
    dump("lie/g2.json", {"label": "G2", "N": 6, "degrees": [2, 6]})
    dump("lie/bad_g2.json", {"label": "G2bad", "N": 5, "degrees": [2, 6]})
    dump("lie/gl3.json", {"label": "GL(3)", "N": 3, "degrees": [1, 2, 3]})


def smith():
    # t acts on columns: t e_j = e_{j+1} inside a Jordan block
    R2 = [[0, 0], [1, 0]]
    F = [[0]]
    mods = {
        "free_n3": {"p": 3, "n": 3, "dim": 3,
                    "t_action": [[0, 0, 0], [1, 0, 0], [0, 1, 0]]},
        "constant_dim2": {"p": 2, "n": 2, "dim": 2, "t_action": [[0, 0], [0, 0]]},
        "r_plus_f_n2": {"p": 2, "n": 2, "dim": 3,
                        "t_action": [[0, 0, 0], [1, 0, 0], [0, 0, 0]]},
        "blocks31_n3": {"p": 3, "n": 3, "dim": 4,
                        "t_action": [[0, 0, 0, 0], [1, 0, 0, 0],
                                     [0, 1, 0, 0], [0, 0, 0, 0]]},
        "zero_n2": {"p": 2, "n": 2, "dim": 0, "t_action": []},
        "not_nilpotent": {"p": 2, "n": 2, "dim": 1, "t_action": [[1]]},
    }
    for name, rec in mods.items():
        dump(f"smith/modules/{name}.json", rec)

    def mod(t, p=2, n=2):
        return {"p": p, "n": n, "dim": len(t), "t_action": t}

    seqs = {
        "r_rf_f_n2": {"I": mod(R2), "A": mod([[0, 0, 0], [1, 0, 0], [0, 0, 0]]),
                      "B": mod(F), "inj": [[1, 0], [0, 1], [0, 0]],
                      "surj": [[0, 0, 1]]},
        "zero_f_f_n2": {"I": mod([]), "A": mod(F), "B": mod(F),
                        "inj": [[]], "surj": [[1]]},
        "f_r_f_n2": {"I": mod(F), "A": mod(R2), "B": mod(F),
                     "inj": [[0], [1]], "surj": [[1, 0]]},
        "constant_I_n2": {"I": mod(F), "A": mod([[0, 0], [0, 0]]), "B": mod(F),
                          "inj": [[1], [0]], "surj": [[0, 1]]},
        "not_exact_n2": {"I": mod(F), "A": mod(R2), "B": mod(F),
                         "inj": [[0], [1]], "surj": [[0, 1]]},
        "missing_surj": {"I": mod(F), "A": mod(R2), "B": mod(F), "inj": [[0], [1]]},
    }
    for name, rec in seqs.items():
        dump(f"smith/ses/{name}.json", rec)

    def cx(dims, terms, d):
        return {"p": 2, "n": 2, "dims": dims, "terms": terms, "d": d}

    complexes = {
        # I = 0, A = B = F in degree 0
        "identity_deg0": {"I": cx([0], [[]], []), "A": cx([1], [F], []),
                          "B": cx([1], [F], []), "inj": [[[]]], "surj": [[[1]]]},
    }
    for name, rec in complexes.items():
        dump(f"smith/complexes/{name}.json", rec)

    gcomplexes = {
        "tripod_z3": {"p": 3, "perm": [1, 2, 0, 3],
                      "simplices": [[0, 3], [1, 3], [2, 3]]},
        "cone_triangle_z3": {"p": 3, "perm": [1, 2, 0, 3],
                             "simplices": [[0, 1, 3], [1, 2, 3], [0, 2, 3]]},
        "cone_square_z2": {"p": 2, "perm": [2, 3, 0, 1, 4],
                           "simplices": [[0, 1, 4], [1, 2, 4], [2, 3, 4], [0, 3, 4]]},
        "cycle_free_z3": {"p": 3, "perm": [1, 2, 0],
                          "simplices": [[0, 1], [1, 2], [0, 2]]},
        "gset_z2_f1_r1": {"p": 2, "perm": [0, 2, 1], "simplices": []},
        "flipped_edge_z2": {"p": 2, "perm": [1, 0], "simplices": [[0, 1]]},
    }
    for name, rec in gcomplexes.items():
        dump(f"smith/gcomplexes/{name}.json", rec)


if __name__ == "__main__":
    congruence_corpus()
    pairs()
    bad_actions()
    injective_maps()
    systems()
    factorizations()
    smith()
