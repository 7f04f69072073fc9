"""Brute-force reference computations, built only on sympy.

Nothing here imports ``nullcone``.  The linear systems defining the
stabilizer algebras, ideal pieces and truncated certificates are assembled
directly from symbolic matrices, so these numbers can be frozen into the
test suite as independent expectations.

Run ``python tests/oracle.py`` to print every value.
"""

from itertools import combinations_with_replacement

import sympy as sp
from sympy.polys.domains import QQ
from sympy.polys.matrices import DomainMatrix


def monomials(xs, d):
    return [sp.Mul(*c) for c in combinations_with_replacement(xs, d)] if d > 0 else [sp.Integer(1)] if d == 0 else []


def monomials_upto(xs, d):
    out = []
    for k in range(d + 1):
        out.extend(monomials(xs, k))
    return out


def coeff_rows(exprs, xs, basis):
    """Coefficient matrix: one row per basis monomial, one column per expr."""
    polys = [sp.Poly(sp.expand(e), *xs) for e in exprs]
    index = {sp.Poly(m, *xs).monoms()[0]: i for i, m in enumerate(basis)}
    rows = [[0] * len(exprs) for _ in basis]
    for c, p in enumerate(polys):
        for mon, coeff in p.terms():
            rows[index[mon]][c] = coeff
    return rows


def rank(rows):
    if not rows or not rows[0]:
        return 0
    return DomainMatrix([[QQ.from_sympy(sp.sympify(v)) for v in r] for r in rows], (len(rows), len(rows[0])), QQ).rank()


def nullspace(rows, ncols):
    if not rows:
        return [[int(i == j) for j in range(ncols)] for i in range(ncols)]
    M = DomainMatrix([[QQ.from_sympy(sp.sympify(v)) for v in r] for r in rows], (len(rows), ncols), QQ)
    ns = M.nullspace().to_Matrix()
    return [list(ns.row(i)) for i in range(ns.rows)]


def deg(g, xs):
    return sp.Poly(g, *xs).total_degree()


def piece_dim(gens, xs, d):
    prods = [m * g for g in gens for m in monomials(xs, d - deg(g, xs))]
    if not prods:
        return 0
    return rank(coeff_rows(prods, xs, monomials(xs, d)))


def derivation(A, f, xs):
    n = len(xs)
    return sp.expand(sum(A[i, j] * xs[j] * sp.diff(f, xs[i]) for i in range(n) for j in range(n)))


def annihilator_dim(gens, xs):
    n = len(xs)
    a = sp.symbols(f"a0:{n * n}")
    A = sp.Matrix(n, n, a)
    eqs = []
    for g in gens:
        eqs.extend(sp.Poly(derivation(A, g, xs), *xs).coeffs())
    if not eqs:
        return n * n
    M = sp.Matrix([[sp.diff(e, v) for v in a] for e in eqs])
    return n * n - rank(M.tolist())


def ideal_stabilizer_dim(gens, xs):
    """dim {A : D_A g in I_deg(g) for all g}, unknowns A plus ideal coefficients."""
    n = len(xs)
    a = sp.symbols(f"a0:{n * n}")
    A = sp.Matrix(n, n, a)
    unknowns = list(a)
    eqs = []
    for idx, g in enumerate(gens):
        d = deg(g, xs)
        prods = [m * h for h in gens for m in monomials(xs, d - deg(h, xs))]
        cs = sp.symbols(f"c{idx}_0:{len(prods)}")
        unknowns.extend(cs)
        expr = derivation(A, g, xs) - sum(c * p for c, p in zip(cs, prods))
        eqs.extend(sp.Poly(sp.expand(expr), *xs).coeffs())
    M = [[sp.diff(e, v) for v in unknowns] for e in eqs]
    ns = nullspace(M, len(unknowns))
    return rank([row[: n * n] for row in ns]) if ns else 0


def affine_stabilizer(gens, consts, xs, headroom, linear_only=False, vanishing=False):
    """dim {(A, b) : (A x + b).grad(p_j) has a certificate in (p - c) at headroom}.

    ``vanishing`` instead asks every component (A x + b)_i to lie in the ideal.
    Returns (dimension, rank of translation parts).
    """
    n = len(xs)
    a = sp.symbols(f"a0:{n * n}")
    b = sp.symbols(f"b0:{n}") if not linear_only else (0,) * n
    A = sp.Matrix(n, n, a)
    unknowns = list(a) + ([] if linear_only else list(b))
    shifted = [g - c for g, c in zip(gens, consts)]
    eqs = []
    targets = ([sum(A[i, j] * xs[j] for j in range(n)) + b[i] for i in range(n)] if vanishing else
               [derivation(A, g, xs) + sum(b[i] * sp.diff(g, xs[i]) for i in range(n)) for g in gens])
    for idx, field in enumerate(targets):
        top = (1 if vanishing else deg(gens[idx], xs)) + headroom
        expr = sp.expand(field)
        for k, h in enumerate(shifted):
            mons = monomials_upto(xs, top)
            cs = sp.symbols(f"c{idx}_{k}_0:{len(mons)}")
            unknowns.extend(cs)
            expr -= sp.expand(sum(c * m for c, m in zip(cs, mons)) * h)
        eqs.extend(sp.Poly(sp.expand(expr), *xs).coeffs())
    M = [[sp.diff(e, v) for v in unknowns] for e in eqs]
    ns = nullspace(M, len(unknowns))
    if not ns:
        return 0, 0
    k = n * n if linear_only else n * n + n
    return rank([row[:k] for row in ns]), rank([row[n * n:k] for row in ns]) if not linear_only else 0


def truncated_member(f, gens, consts, xs, headroom):
    top = deg(f, xs) + headroom
    expr = sp.expand(f)
    unknowns = []
    for k, (g, c) in enumerate(zip(gens, consts)):
        mons = monomials_upto(xs, top)
        cs = sp.symbols(f"t{k}_0:{len(mons)}")
        unknowns.extend(cs)
        expr -= sp.expand(sum(ci * m for ci, m in zip(cs, mons)) * (g - c))
    eqs = sp.Poly(expr, *xs).coeffs()
    if not unknowns:
        return sp.expand(expr) == 0
    sol = sp.linsolve(eqs, unknowns)
    return sol != sp.S.EmptySet


def leading_dim(gens, consts, xs, d, headroom):
    """dim of degree-d leading forms of (p - c) combinations of degree <= d + headroom."""
    top = d + headroom
    prods = [m * (g - c) for g, c in zip(gens, consts) for m in monomials_upto(xs, top)]
    basis = monomials_upto(xs, top + max(deg(g, xs) for g in gens))
    rows = coeff_rows(prods, xs, basis)  # rows: monomials, cols: products
    high = [i for i, m in enumerate(basis) if deg(m, xs) > d]
    exact = [i for i, m in enumerate(basis) if deg(m, xs) == d]
    # combinations killing every monomial of degree > d
    ns = nullspace([rows[i] for i in high], len(prods)) if high else [
        [int(i == j) for j in range(len(prods))] for i in range(len(prods))]
    tops = [[sum(rows[i][c] * v[c] for c in range(len(prods))) for i in exact] for v in ns]
    return rank(tops) if tops else 0


def hilbert_expected(degrees, n, d):
    t = sp.symbols("t")
    series = sp.series(sp.Mul(*[(1 - t**e) for e in degrees]) / (1 - t) ** n, t, 0, d + 1).removeO()
    return int(series.coeff(t, d))


def main():
    x, y, z = sp.symbols("x y z")
    print("Z/4 pieces d=1..4:", [piece_dim([x**2, x*y**2, y**4], [x, y], d) for d in range(1, 5)])
    print("Z/4 g0, h0:", annihilator_dim([x**2, x*y**2, y**4], [x, y]),
          ideal_stabilizer_dim([x**2, x*y**2, y**4], [x, y]))
    cs = [x*y, x**2*z]
    print("C* pieces d=1..4:", [piece_dim(cs, [x, y, z], d) for d in range(1, 5)])
    print("C* g0, h0:", annihilator_dim(cs, [x, y, z]), ideal_stabilizer_dim(cs, [x, y, z]))
    print("C* Hilbert d=0..4 expected/actual:",
          [(hilbert_expected([2, 3], 3, d), len(monomials([x, y, z], d)) - piece_dim(cs, [x, y, z], d))
           for d in range(5)])
    for h in range(6):
        print(f"  z in (xy-1, x^2z) headroom {h}:", truncated_member(z, cs, [1, 0], [x, y, z], h),
              " leading dim d=1:", leading_dim(cs, [1, 0], [x, y, z], 1, h))
    print("  y^2 z in I_F headroom 4:", truncated_member(y**2*z, cs, [1, 0], [x, y, z], 4))

    # contractions on W = C^2
    xs = sp.symbols("x1 x2")
    def contraction(p, q):
        X = [sp.symbols(f"u{a}_1:3") for a in range(p)]
        Y = [sp.symbols(f"v{b}_1:3") for b in range(q)]
        gens = [sum(xa[i] * yb[i] for i in range(2)) for xa in X for yb in Y]
        return gens, [v for c in X + Y for v in c]
    for p, q in [(1, 1), (1, 2), (2, 2)]:
        gens, vs = contraction(p, q)
        print(f"contraction p={p} q={q}: g0, h0 =", annihilator_dim(gens, vs), ideal_stabilizer_dim(gens, vs))

    # adjoint sl2, sl3, gl2
    h, e, f = sp.symbols("h e f")
    X = sp.Matrix([[h, e], [f, -h]])
    q2 = sp.expand((X * X).trace())
    print("sl2 trX^2:", q2, " g0, h0 =", annihilator_dim([q2], [h, e, f]), ideal_stabilizer_dim([q2], [h, e, f]))
    print("sl2 pieces d=0..6:", [piece_dim([q2], [h, e, f], d) for d in range(7)])
    for hd in (0, 2):
        print(f"sl2 leading dims (q-1) headroom {hd} d=0..6:",
              [leading_dim([h**2 + e*f], [1], [h, e, f], d, hd) for d in range(7)])
    for hd in (0, 2, 4):
        print(f"sl2 affine (q-1) headroom {hd}:", affine_stabilizer([h**2 + e*f], [1], [h, e, f], hd),
              "vanishing:", affine_stabilizer([h**2 + e*f], [1], [h, e, f], hd, vanishing=True))
    print("sl2 affine (q) headroom 4:", affine_stabilizer([h**2 + e*f], [0], [h, e, f], 4))
    s = sp.symbols("s11 s12 s13 s21 s22 s23 s31 s32")
    X3 = sp.Matrix([[s[0], s[1], s[2]], [s[3], s[4], s[5]], [s[6], s[7], -s[0] - s[4]]])
    g3 = [sp.expand((X3**2).trace()), sp.expand((X3**3).trace())]
    print("sl3 g0, h0 =", annihilator_dim(g3, list(s)), ideal_stabilizer_dim(g3, list(s)))
    gl = sp.symbols("g11 g12 g21 g22")
    Xg = sp.Matrix(2, 2, gl)
    gg = [sp.expand(Xg.trace()), sp.expand((Xg**2).trace())]
    print("gl2 gens:", gg, " g0,h0 =", annihilator_dim(gg, list(gl)), ideal_stabilizer_dim(gg, list(gl)))
    for hd in (2, 4):
        print(f"gl2 affine (tr-3, trX^2-5) headroom {hd}:", affine_stabilizer(gg, [3, 5], list(gl), hd),
              "linear only:", affine_stabilizer(gg, [3, 5], list(gl), hd, linear_only=True),
              "vanishing:", affine_stabilizer(gg, [3, 5], list(gl), hd, vanishing=True))
    print("gl2 affine null cone headroom 2:", affine_stabilizer(gg, [0, 0], list(gl), 2),
          "vanishing:", affine_stabilizer(gg, [0, 0], list(gl), 2, vanishing=True))
    J = sp.Matrix([[sp.diff(g, v) for v in gl] for g in gg]).subs({gl[0]: 1, gl[1]: 0, gl[2]: 0, gl[3]: 2})
    print("gl2 jacobian rank at diag(1,2):", J.rank())

    # S^2 C^2 + C^2
    s11, s12, s22, v1, v2 = sp.symbols("s11 s12 s22 v1 v2")
    S = sp.Matrix([[s11, s12], [s12, s22]])
    v = sp.Matrix([v1, v2])
    p = sp.expand(S.det())
    qq = sp.expand((v.T * S.adjugate() * v)[0])
    print("S2+C2:", p, "|", qq, " g0, h0 =", annihilator_dim([p, qq], [s11, s12, s22, v1, v2]),
          ideal_stabilizer_dim([p, qq], [s11, s12, s22, v1, v2]))

    # Pfaffian on wedge^2 C^4 + C^4
    w = sp.symbols("w12 w13 w14 w23 w24 w34")
    u = sp.symbols("u1:5")
    Wm = sp.zeros(4, 4)
    for (i, j), var in zip([(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)], w):
        Wm[i, j], Wm[j, i] = var, -var
    pf = w[0] * w[5] - w[1] * w[4] + w[2] * w[3]
    print("Pf^2 - det:", sp.expand(pf**2 - Wm.det()))
    print("Pfaffian g0, h0 =", annihilator_dim([pf], list(w) + list(u)), ideal_stabilizer_dim([pf], list(w) + list(u)))


if __name__ == "__main__":
    main()
