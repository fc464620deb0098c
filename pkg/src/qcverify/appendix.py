"""Genus-0 reduction lemmas used to assemble G0(E^k, a, b, s).

All residuals involve genus-0 data only.  In every lemma ``(x, y, z)`` runs
over orderings of the basis triple; the lemmas stated for a single fixed
ordering and a fixed inner index ``i`` are checked on every ordered triple
with the identity ordering, which covers all orderings.
"""

from __future__ import annotations

from gmpy2 import mpq

from .registry import Ops, register, rng

R = mpq


def _setup(o: Ops, alpha, beta, sigma):
    abc = (o.g(alpha), o.g(beta), o.g(sigma))
    return abc, o.P(*abc)


@register("appendix_A1", "appendix", ("k", "alpha", "beta", "sigma"), symmetric=True,
          description="<<E^k a b s Delta>>_0 as 3-point functions")
def appendix_A1(o: Ops, k, alpha, beta, sigma):
    E, G, P, C0, D, S, b1 = o.E, o.G, o.P, o.C0, o.D, o.sum, o.b1
    abc, sym = _setup(o, alpha, beta, sigma)

    def per(fn):
        return o.perm(abc, fn)

    def ij_lower(i_hi, fn):
        """sum_{i=1}^{i_hi} sum_{j=1}^{i-1} fn(i, j)"""
        return S(fn(i, j) for i in rng(1, i_hi) for j in rng(1, i - 1))

    def ij_upper(fn):
        """sum_{i=1}^{k-1} sum_{j=1}^{k-i} fn(i, j)"""
        return S(fn(i, j) for i in rng(1, k - 1) for j in rng(1, k - i))

    t = [
        per(lambda x, y, z: S(C0(P(G(E(k - i)), D), x, y, P(E(i - 1), z)) for i in rng(1, k - 1))).scale(R(-1, 6)),
        per(lambda x, y, z: S(C0(G(P(D, E(k - i))), x, y, P(E(i - 1), z)) for i in rng(1, k))).scale(R(1, 6)),
        per(lambda x, y, z: C0(D, x, y, P(E(k - 1), z))).scale(-b1 / 3),
        per(lambda x, y, z: S(C0(P(D, E(k - i)), x, y, P(E(i - 1), z)) for i in rng(1, k))).scale(R(-1, 3)),
        per(lambda x, y, z: S(C0(G(E(k - i)), D, x, P(E(i - 1), y, z)) for i in rng(1, k - 1))).scale(R(-1, 6)),
        per(lambda x, y, z: S(C0(P(D, E(i - 1)), x, y, G(P(E(k - i), z))) for i in rng(1, k - 1))).scale(R(1, 2)),
        per(lambda x, y, z: C0(P(D, E(k - 1)), x, y, G(z))).scale(R(1, 3)),
        per(lambda x, y, z: C0(D, x, P(E(k - 1), y), G(z))).scale(R(1, 6)),
        per(lambda x, y, z: S(C0(P(D, E(i - 1)), x, y, P(G(E(k - i)), z)) for i in rng(1, k - 1))).scale(R(-1, 6)),
        per(lambda x, y, z: ij_lower(k, lambda i, j: C0(
            P(G(E(k - i)), D, E(j - 1)), G(P(E(i - j - 1), x, y)), z))).scale(R(1, 6)),
        per(lambda x, y, z: S(C0(P(D, E(k - i - 1)), G(P(E(i - 1), x, y)), z)
                              for i in rng(1, k - 1))).scale(b1 / 6),
        per(lambda x, y, z: ij_lower(k, lambda i, j: C0(
            E(k - i), G(P(E(j - 1), x, y)), G(P(D, E(i - j - 1), z))))).scale(R(1, 2)),
        per(lambda x, y, z: S(C0(P(D, E(i - 1)), G(P(E(k - i - 1), x, y)), G(z))
                              for i in rng(1, k - 1))).scale(R(-1, 6)),
        per(lambda x, y, z: ij_lower(k, lambda i, j: C0(
            P(G(P(D, E(k - i))), E(j - 1)), G(P(E(i - j - 1), x, y)), z))).scale(R(-1, 3)),
        ij_upper(lambda i, j: C0(P(G(E(k - i - j)), E(i + j - 2)), D, sym)).scale(-2),
        per(lambda x, y, z: ij_upper(lambda i, j: C0(
            P(D, E(k - j - 1)), G(P(E(j - 1), x, y)), z))).scale(-(b1 + 2) / 6),
        per(lambda x, y, z: ij_upper(lambda i, j: C0(
            P(D, E(k - j - 1)), G(P(E(j - 1), x)), P(y, z)))).scale((b1 + 4) / 6),
        per(lambda x, y, z: ij_lower(k, lambda i, j: C0(
            P(G(E(k - i)), D, E(j - 1)), G(P(E(i - j - 1), x)), P(y, z)))).scale(R(-1, 6)),
        per(lambda x, y, z: S(C0(P(D, E(i - 1)), G(P(E(k - i - 1), x)), P(y, z))
                              for i in rng(1, k - 1))).scale(-b1 / 6),
        -per(lambda x, y, z: ij_lower(k, lambda i, j: C0(
            P(E(k - i), x), G(P(D, E(j - 1), y)), G(P(E(i - j - 1), z))))),
        per(lambda x, y, z: S(C0(P(E(i - 1), x), G(P(D, E(k - i - 1), y)), G(z))
                              for i in rng(1, k - 1))).scale(R(1, 6)),
        per(lambda x, y, z: ij_lower(k, lambda i, j: C0(
            P(G(P(D, E(k - i))), E(j - 1)), G(P(E(i - j - 1), x)), P(y, z)))).scale(R(2, 3)),
        per(lambda x, y, z: S(C0(P(G(P(D, E(i - 1))), E(k - i - 1)), P(x, y), G(z))
                              for i in rng(1, k - 1))).scale(R(-1, 6)),
        per(lambda x, y, z: S(C0(P(D, E(k - i - 1), x), G(P(E(i - 1), y)), G(z))
                              for i in rng(1, k - 1))).scale(R(1, 6)),
        per(lambda x, y, z: ij_upper(lambda i, j: C0(
            E(k - i - j), G(P(D, E(i + j - 2), x)), P(y, z)))).scale(-b1 / 6),
        per(lambda x, y, z: ij_lower(k, lambda i, j: C0(
            P(G(E(k - i)), E(j - 1)), G(P(D, E(i - j - 1), x)), P(y, z)))).scale(R(1, 3)),
        per(lambda x, y, z: S(C0(E(k - i - 1), G(P(D, E(i - 1), x)), P(y, z))
                              for i in rng(1, k - 1))).scale(-b1 / 6),
        -ij_lower(k - 1, lambda i, j: C0(P(G(P(D, E(i - j - 1))), G(E(k - i))), E(j - 1), sym)),
        per(lambda x, y, z: ij_upper(lambda i, j: C0(
            E(k - i - j), G(P(D, x, y, E(i + j - 2))), z))).scale(b1 / 6),
    ]
    return C0(E(k), *abc, D) - S(t)


@register("appendix_A2", "appendix", ("k", "alpha", "beta", "sigma"), symmetric=True,
          description="symmetrised <<E^k x y g^mu>><<g_mu z g_rho g^rho>>")
def appendix_A2(o: Ops, k, alpha, beta, sigma):
    E, G, P, C0, D, S = o.E, o.G, o.P, o.C0, o.D, o.sum
    abc, sym = _setup(o, alpha, beta, sigma)

    def per(fn):
        return o.perm(abc, fn)

    def trace(u, w):
        return o.mu(lambda gm, gu: C0(u, gm, gu, w))

    lhs = per(lambda x, y, z: o.mu(lambda gm, gu: C0(E(k), x, y, gu) * o.mu(
        lambda gr, gru: C0(gm, z, gr, gru)))).scale(R(1, 2))
    t = [
        per(lambda x, y, z: S(trace(P(G(E(k - i)), x, y), P(E(i - 1), z)) for i in rng(1, k))).scale(R(-1, 2)),
        per(lambda x, y, z: S(trace(G(P(E(k - i), x, y)), P(E(i - 1), z)) for i in rng(1, k))).scale(R(-1, 2)),
        per(lambda x, y, z: S(trace(P(G(P(E(k - i), x)), y), P(E(i - 1), z)) for i in rng(1, k))),
        per(lambda x, y, z: S(C0(P(G(E(k - i)), D, E(j - 1)), G(P(E(i - j - 1), x)), P(y, z))
                              for i in rng(1, k) for j in rng(1, i - 1))).scale(R(-1, 2)),
        per(lambda x, y, z: S(C0(P(G(E(k - i)), E(j - 1)), G(P(D, E(i - j - 1), x)), P(y, z))
                              for i in rng(1, k) for j in rng(1, i - 1))).scale(R(-1, 2)),
        S(C0(P(G(E(k - i)), E(i - 2)), D, sym).scale(i - 1) for i in rng(1, k)).scale(3),
        per(lambda x, y, z: S(C0(P(D, E(j - 1)), G(P(E(i - 1), x, y)), G(P(E(k - i - j), z)))
                              for i in rng(1, k) for j in rng(1, k - i))).scale(R(-1, 2)),
        per(lambda x, y, z: S(C0(E(k - i - j), G(P(E(i - 1), x, y)), G(P(D, E(j - 1), z)))
                              for i in rng(1, k) for j in rng(1, k - i))).scale(R(-1, 2)),
        per(lambda x, y, z: S(C0(P(D, E(k - i - 1)), G(P(E(i - 1), x, y)), z).scale(k - i)
                              for i in rng(1, k))).scale(R(1, 2)),
        per(lambda x, y, z: S(C0(P(D, E(j - 1), x), G(P(E(k - i), y)), G(P(E(i - j - 1), z)))
                              for i in rng(1, k) for j in rng(1, i - 1))),
        per(lambda x, y, z: S(C0(P(E(i - j - 1), x), G(P(E(k - i), y)), G(P(D, E(j - 1), z)))
                              for i in rng(1, k) for j in rng(1, i - 1))),
        -per(lambda x, y, z: S(C0(P(D, E(i - 2)), G(P(E(k - i), x)), P(y, z))
                               for i in rng(1, k) for j in rng(1, i - 1))),
    ]
    return lhs - S(t)


@register("appendix_A3", "appendix", ("k", "alpha", "beta", "sigma"), symmetric=True,
          description="symmetrised <<E^k x g^mu g^rho>><<g_mu g_rho y z>>")
def appendix_A3(o: Ops, k, alpha, beta, sigma):
    E, G, P, C0, S = o.E, o.G, o.P, o.C0, o.sum
    abc, sym = _setup(o, alpha, beta, sigma)
    a, b, s = abc

    def per(fn):
        return o.perm(abc, fn)

    def ij(fn):
        return S(fn(i, j) for i in rng(1, k) for j in rng(1, k - i))

    lhs = per(lambda x, y, z: o.mu(lambda gm, gu: o.mu(
        lambda gr, gru: C0(E(k), x, gu, gru) * C0(gm, gr, y, z))))
    t = [
        -per(lambda x, y, z: S(o.mu(lambda gm, gu: C0(P(G(E(k - i)), x, gu), y, z, P(E(i - 1), gm)))
                               for i in rng(1, k))),
        -per(lambda x, y, z: S(o.mu(lambda gm, gu: C0(G(P(E(i - 1), x, gu)), y, z, P(E(k - i), gm)))
                               for i in rng(1, k))),
        per(lambda x, y, z: S(o.mu(lambda gm, gu: C0(P(G(P(E(k - i), x)), gu), y, z, P(E(i - 1), gm)))
                              for i in rng(1, k))),
        per(lambda x, y, z: S(o.mu(lambda gm, gu: C0(P(G(P(E(i - 1), gu)), x), y, z, P(E(k - i), gm)))
                              for i in rng(1, k))),
        ij(lambda i, j: o.mu(lambda gm, gu: C0(G(P(E(i + j - 2), a, b, s, gu)), G(gm), E(k - i - j)))).scale(-6),
        per(lambda x, y, z: ij(lambda i, j: o.mu(
            lambda gm, gu: C0(P(G(P(E(k - j - 1), x, y, gu)), G(gm)), E(j - 1), z)))).scale(3),
        per(lambda x, y, z: ij(lambda i, j: o.mu(
            lambda gm, gu: C0(P(G(P(E(k - j - 1), x, gu)), G(gm)), E(j - 1), P(y, z))))).scale(-2),
        -per(lambda x, y, z: ij(lambda i, j: o.mu(
            lambda gm, gu: C0(P(G(P(E(i + j - 2), x, gu)), G(gm)), E(k - i - j), P(y, z))))),
        ij(lambda i, j: o.mu(lambda gm, gu: C0(P(G(P(E(k - j - 1), gu)), G(gm)), E(j - 1), sym))).scale(6),
    ]
    return lhs - S(t)


@register("appendix_A4", "appendix", ("k", "alpha", "beta", "sigma"), symmetric=True,
          description="<<E^k g_rho g^rho g^mu>><<g_mu a b s>> as 3-point functions")
def appendix_A4(o: Ops, k, alpha, beta, sigma):
    E, G, P, C0, D, S = o.E, o.G, o.P, o.C0, o.D, o.sum
    abc, _ = _setup(o, alpha, beta, sigma)
    lhs = o.mu(lambda gr, gru: o.mu(lambda gm, gu: C0(E(k), gr, gru, gu) * C0(gm, *abc)))
    rhs = (-S(C0(P(G(E(k - i)), D, E(i - 1)), *abc) for i in rng(1, k))
           - S(C0(P(G(P(D, E(i - 1))), E(k - i)), *abc) for i in rng(1, k))
           + S(C0(P(D, E(k - 1)), *abc) for i in rng(1, k)))
    return lhs - rhs


def _fixed_i(k, i, alpha, beta, sigma):
    return i <= k


@register("appendix_A5", "appendix", ("k", "i", "alpha", "beta", "sigma"), constraint=_fixed_i,
          description="<<{G(E^{k-i}) o Delta} x y {E^{i-1} o z}>>_0 reduced")
def appendix_A5(o: Ops, k, i, alpha, beta, sigma):
    E, G, P, C0, D, S = o.E, o.G, o.P, o.C0, o.D, o.sum
    (x, y, z), sym = _setup(o, alpha, beta, sigma)
    ge = G(E(k - i))
    lhs = C0(P(ge, D), x, y, P(E(i - 1), z))
    js = rng(1, i - 1)
    rhs = [C0(P(ge, D, E(i - 1)), x, y, z),
           -S(C0(P(ge, E(i - j - 1)), D, G(P(E(j - 1), x, y, z))) for j in js),
           S(C0(P(ge, D, E(j - 1)), G(P(E(i - j - 1), y, z)), x) for j in js),
           S(C0(P(ge, D, E(i - j - 1)), G(P(E(j - 1), x, z)), y) for j in js),
           -S(C0(P(ge, D, E(j - 1)), G(P(E(i - j - 1), z)), P(x, y)) for j in js)]
    return lhs - S(rhs)


@register("appendix_A6", "appendix", ("k", "i", "alpha", "beta", "sigma"), constraint=_fixed_i,
          description="<<G(Delta o E^{k-i}) x y {E^{i-1} o z}>>_0 reduced")
def appendix_A6(o: Ops, k, i, alpha, beta, sigma):
    E, G, P, C0, D, S = o.E, o.G, o.P, o.C0, o.D, o.sum
    (x, y, z), _ = _setup(o, alpha, beta, sigma)
    gd = G(P(D, E(k - i)))
    lhs = C0(gd, x, y, P(E(i - 1), z))
    js = rng(1, i - 1)
    rhs = [C0(P(gd, E(i - 1)), x, y, z),
           -S(C0(gd, E(i - j - 1), G(P(E(j - 1), x, y, z))) for j in js),
           S(C0(P(gd, E(j - 1)), G(P(E(i - j - 1), y, z)), x) for j in js),
           S(C0(P(gd, E(i - j - 1)), G(P(E(j - 1), x, z)), y) for j in js),
           -S(C0(P(gd, E(j - 1)), G(P(E(i - j - 1), z)), P(x, y)) for j in js)]
    return lhs - S(rhs)


@register("appendix_A7", "appendix", ("k", "i", "alpha", "beta", "sigma"), constraint=_fixed_i,
          description="<<{Delta o E^{k-i}} x y {E^{i-1} o z}>>_0 reduced")
def appendix_A7(o: Ops, k, i, alpha, beta, sigma):
    E, G, P, C0, D, S = o.E, o.G, o.P, o.C0, o.D, o.sum
    (x, y, z), _ = _setup(o, alpha, beta, sigma)
    lhs = C0(P(D, E(k - i)), x, y, P(E(i - 1), z))
    js = rng(1, i - 1)
    rhs = [C0(P(D, E(k - 1)), x, y, z),
           -S(C0(D, E(k - j - 1), G(P(E(j - 1), x, y, z))) for j in js),
           S(C0(P(D, E(k - i + j - 1)), G(P(E(i - j - 1), y, z)), x) for j in js),
           S(C0(P(D, E(k - j - 1)), G(P(E(j - 1), x, z)), y) for j in js),
           -S(C0(P(D, E(k - i + j - 1)), G(P(E(i - j - 1), z)), P(x, y)) for j in js)]
    return lhs - S(rhs)


@register("appendix_A8", "appendix", ("k", "i", "alpha", "beta", "sigma"), constraint=_fixed_i,
          description="<<G(E^{k-i}) Delta x {E^{i-1} o y o z}>>_0 reduced")
def appendix_A8(o: Ops, k, i, alpha, beta, sigma):
    E, G, P, C0, D, S = o.E, o.G, o.P, o.C0, o.D, o.sum
    (x, y, z), sym = _setup(o, alpha, beta, sigma)
    ge = G(E(k - i))
    lhs = C0(ge, D, x, P(E(i - 1), y, z))
    js = rng(1, i - 1)
    rhs = [C0(P(D, E(i - 1)), P(y, z), x, ge),
           S(C0(P(G(P(D, E(i - j - 1))), ge), E(j - 1), sym) for j in js),
           S(C0(P(ge, E(i - j - 1)), D, G(P(E(j - 1), x, y, z))) for j in js),
           -S(C0(P(ge, D, E(j - 1)), G(P(E(i - j - 1), y, z)), x) for j in js),
           -S(C0(P(ge, E(i - j - 1)), G(P(D, E(j - 1), x)), P(y, z)) for j in js)]
    return lhs - S(rhs)


@register("appendix_A9", "appendix", ("k", "alpha", "beta", "sigma"),
          constraint=lambda k, alpha, beta, sigma: k >= 1,
          description="<<{E^{k-1} o y} Delta x G(z)>>_0 reduced")
def appendix_A9(o: Ops, k, alpha, beta, sigma):
    E, G, P, C0, D, S = o.E, o.G, o.P, o.C0, o.D, o.sum
    (x, y, z), _ = _setup(o, alpha, beta, sigma)
    gz = G(z)
    lhs = C0(P(E(k - 1), y), D, x, gz)
    ii = rng(1, k - 1)
    rhs = [C0(P(D, E(k - 1)), x, y, gz),
           S(C0(P(G(P(D, E(k - i - 1))), E(i - 1)), P(x, y), gz) for i in ii),
           S(C0(P(D, E(k - i - 1)), G(P(E(i - 1), x, y)), gz) for i in ii),
           -S(C0(P(D, E(i - 1)), G(P(E(k - i - 1), y)), P(x, gz)) for i in ii),
           -S(C0(E(k - i - 1), G(P(D, E(i - 1), x)), P(y, gz)) for i in ii)]
    return lhs - S(rhs)


@register("appendix_A10", "appendix", ("k", "alpha", "beta", "sigma"), symmetric=True,
          description="three symmetrised 4-point sums with gamma^mu reduced")
def appendix_A10(o: Ops, k, alpha, beta, sigma):
    E, G, P, C0, D, S = o.E, o.G, o.P, o.C0, o.D, o.sum
    abc, _ = _setup(o, alpha, beta, sigma)

    def per(fn):
        return o.perm(abc, fn)

    ii = rng(1, k)

    def ij(fn):
        return S(fn(i, j) for i in ii for j in rng(1, i - 1))

    lhs = (-per(lambda x, y, z: S(o.mu(lambda gm, gu: C0(P(G(P(E(k - i), x)), E(i - 1), gu), y, z, gm))
                                   for i in ii))
           + per(lambda x, y, z: S(o.mu(lambda gm, gu: C0(P(G(E(k - i)), E(i - 1), gu), P(x, y), z, gm))
                                   for i in ii)).scale(R(-1, 6))
           + per(lambda x, y, z: S(o.mu(lambda gm, gu: C0(P(G(E(k - i)), E(i - 1), x, gu), y, z, gm))
                                   for i in ii)).scale(R(1, 3)))
    t = [
        -per(lambda x, y, z: S(o.mu(lambda gm, gu: C0(P(G(P(E(k - i), x)), y), gm, gu, P(E(i - 1), z)))
                               for i in ii)),
        -per(lambda x, y, z: S(C0(P(D, E(i - 1)), G(P(E(k - i), x)), y, z) for i in ii)),
        per(lambda x, y, z: S(o.mu(lambda gm, gu: C0(G(P(E(k - i), x)), y, P(z, gu), P(E(i - 1), gm)))
                              for i in ii)),
        per(lambda x, y, z: S(C0(P(D, E(i - 1)), P(x, y), z, G(E(k - i))) for i in ii)).scale(R(-1, 6)),
        per(lambda x, y, z: S(o.mu(lambda gm, gu: C0(G(E(k - i)), P(x, y, gu), z, P(E(i - 1), gm)))
                              for i in ii)).scale(R(1, 3)),
        per(lambda x, y, z: S(C0(P(D, E(i - 1)), x, y, P(G(E(k - i)), z)) for i in ii)).scale(R(1, 6)),
        per(lambda x, y, z: S(o.mu(lambda gm, gu: C0(G(E(k - i)), P(x, y), P(z, gu), P(E(i - 1), gm)))
                              for i in ii)).scale(R(-1, 6)),
        -per(lambda x, y, z: ij(lambda i, j: C0(
            P(G(P(D, E(i - j - 1))), E(j - 1)), G(P(E(k - i), x)), P(y, z)))),
        -per(lambda x, y, z: ij(lambda i, j: C0(
            P(D, E(i - j - 1), x), G(P(E(k - i), y)), G(P(E(j - 1), z))))),
        per(lambda x, y, z: ij(lambda i, j: C0(P(D, E(i - 2)), G(P(E(k - i), x)), P(y, z)))),
    ]
    return lhs - S(t)


@register("appendix_A11", "appendix", ("k", "alpha", "beta", "sigma"), symmetric=True,
          description="<<{G(E^{k-i}) o E^{i-1}} g_mu g^mu {a o b o s}>>_0 reduced")
def appendix_A11(o: Ops, k, alpha, beta, sigma):
    E, G, P, C0, D, S = o.E, o.G, o.P, o.C0, o.D, o.sum
    abc, sym = _setup(o, alpha, beta, sigma)

    def per(fn):
        return o.perm(abc, fn)

    ii = rng(1, k)
    lhs = S(o.mu(lambda gm, gu: C0(P(G(E(k - i)), E(i - 1)), gm, gu, sym)) for i in ii).scale(-2)
    t = [
        S(C0(P(G(P(D, E(i - j - 1))), G(E(k - i))), E(j - 1), sym) for i in ii for j in rng(1, i - 1)).scale(2),
        S(C0(G(E(k - i)), E(i - j - 1), G(P(D, E(j - 1), *abc))) for i in ii for j in rng(1, i - 1)).scale(-2),
        per(lambda x, y, z: S(o.mu(lambda gm, gu: C0(G(E(k - i)), x, P(y, z, gu), P(E(i - 1), gm)))
                              for i in ii)).scale(R(-1, 3)),
        per(lambda x, y, z: S(o.mu(lambda gm, gu: C0(G(E(k - i)), P(x, y), P(z, gu), P(E(i - 1), gm)))
                              for i in ii)).scale(R(-1, 3)),
        per(lambda x, y, z: S(C0(G(E(k - i)), P(D, E(i - 1)), P(x, y), z) for i in ii)).scale(R(1, 3)),
    ]
    return lhs - S(t)


@register("appendix_A12", "appendix", ("k", "alpha", "beta", "sigma"), symmetric=True,
          description="<<G(E^{k-i} o x) y {z o g^mu} {E^{i-1} o g_mu}>>_0 reduced")
def appendix_A12(o: Ops, k, alpha, beta, sigma):
    E, G, P, C0, D, S = o.E, o.G, o.P, o.C0, o.D, o.sum
    abc, _ = _setup(o, alpha, beta, sigma)

    def per(fn):
        return o.perm(abc, fn)

    ii = rng(1, k)

    def ij(fn):
        return S(fn(i, j) for i in ii for j in rng(1, i - 1))

    lhs = per(lambda x, y, z: S(o.mu(lambda gm, gu: C0(G(P(E(k - i), x)), y, P(z, gu), P(E(i - 1), gm)))
                                for i in ii))
    t = [
        per(lambda x, y, z: S(C0(P(D, E(i - 1)), G(P(E(k - i), x)), y, z) for i in ii)),
        per(lambda x, y, z: S(o.mu(lambda gm, gu: C0(G(P(E(k - i), x)), gm, gu, P(E(i - 1), y, z)))
                              for i in ii)),
        per(lambda x, y, z: ij(lambda i, j: C0(
            P(G(P(D, E(i - j - 1))), E(j - 1)), G(P(E(k - i), x)), P(y, z)))),
        per(lambda x, y, z: ij(lambda i, j: C0(
            P(D, E(i - j - 1)), G(P(E(k - i), x)), G(P(E(j - 1), y, z))))),
        -per(lambda x, y, z: ij(lambda i, j: C0(P(D, E(i - 2)), G(P(E(k - i), x)), P(y, z)))),
    ]
    return lhs - S(t).scale(R(1, 2))


@register("appendix_A13", "appendix", ("k", "alpha", "beta", "sigma"), symmetric=True,
          constraint=lambda k, alpha, beta, sigma: k >= 1,
          description="<<{G(E^{k-1} o g^mu) o x} y z g_mu>>_0 reduced")
def appendix_A13(o: Ops, k, alpha, beta, sigma):
    E, G, P, C0, D, S = o.E, o.G, o.P, o.C0, o.D, o.sum
    abc, sym = _setup(o, alpha, beta, sigma)

    def per(fn):
        return o.perm(abc, fn)

    jj = rng(1, k - 1)
    lhs = -per(lambda x, y, z: o.mu(lambda gm, gu: C0(P(G(P(E(k - 1), gu)), x), y, z, gm)))
    t = [
        per(lambda x, y, z: o.mu(lambda gm, gu: C0(P(E(k - 1), x), gm, gu, P(y, z)))).scale(R(-1, 2)),
        per(lambda x, y, z: S(C0(E(k - j - 1), G(P(D, E(j - 1), x)), P(y, z)) for j in jj)).scale(R(1, 2)),
        S(C0(G(P(D, E(k - j - 1))), E(j - 1), sym) for j in jj).scale(-3),
        per(lambda x, y, z: S(C0(P(D, E(k - j - 1)), G(P(E(j - 1), x)), P(y, z)) for j in jj)).scale(R(-1, 2)),
        -per(lambda x, y, z: S(o.mu(lambda gm, gu: C0(P(G(P(E(k - j - 1), x, gu)), G(gm)), E(j - 1), P(y, z)))
                               for j in jj)),
        S(o.mu(lambda gm, gu: C0(P(G(P(E(k - j - 1), gu)), G(gm)), E(j - 1), sym)) for j in jj).scale(6),
        per(lambda x, y, z: S(C0(P(D, E(k - j - 1)), G(P(E(j - 1), x, y)), z) for j in jj)).scale(R(1, 2)),
        C0(P(D, E(k - 1)), *abc).scale(-3),
        per(lambda x, y, z: o.mu(lambda gm, gu: C0(G(P(E(k - 1), x, gu)), y, z, gm))),
    ]
    return lhs - S(t)


# The two remaining reductions of the same family.

@register("appendix_mu_trace", "appendix", ("k", "i", "alpha", "beta", "sigma"), constraint=_fixed_i,
          description="<<{G(E^{k-i}) o x o y} g_mu g^mu {E^{i-1} o z}>>_0 reduced")
def appendix_mu_trace(o: Ops, k, i, alpha, beta, sigma):
    E, G, P, C0, D, S = o.E, o.G, o.P, o.C0, o.D, o.sum
    (x, y, z), sym = _setup(o, alpha, beta, sigma)
    ge = G(E(k - i))
    lhs = o.mu(lambda gm, gu: C0(P(ge, x, y), gm, gu, P(E(i - 1), z)))
    js = rng(1, i - 1)
    rhs = [o.mu(lambda gm, gu: C0(P(E(i - 1), x, y, z), gm, gu, ge)),
           o.mu(lambda gm, gu: C0(P(ge, gu), P(x, y), z, P(E(i - 1), gm))),
           -o.mu(lambda gm, gu: C0(ge, P(x, y), P(E(i - 1), gm), P(z, gu))),
           S(C0(P(ge, E(i - j - 1)), D, G(P(E(j - 1), x, y, z))) for j in js),
           -S(C0(P(ge, D, E(j - 1)), G(P(E(i - j - 1), z)), P(x, y)) for j in js)]
    return lhs - S(rhs)


@register("appendix_delta_sum", "appendix", ("k", "alpha", "beta", "sigma"), symmetric=True,
          description="sum_i <<{G(E^{k-i}) o E^{i-1} o Delta} a b s>>_0 reduced")
def appendix_delta_sum(o: Ops, k, alpha, beta, sigma):
    E, G, P, C0, D, S = o.E, o.G, o.P, o.C0, o.D, o.sum
    abc, sym = _setup(o, alpha, beta, sigma)

    def per(fn):
        return o.perm(abc, fn)

    ii = rng(1, k)
    lhs = S(C0(P(G(E(k - i)), E(i - 1), D), *abc) for i in ii)
    t = [
        -S(o.mu(lambda gm, gu: C0(P(E(i - 1), *abc), gm, gu, G(E(k - i)))) for i in rng(1, k - 1)),
        per(lambda x, y, z: S(o.mu(lambda gm, gu: C0(P(G(E(k - i)), E(i - 1), x, gu), y, z, gm))
                              for i in ii)).scale(R(1, 3)),
        S(o.mu(lambda gm, gu: C0(P(G(E(k - i)), E(i - 1)), gm, gu, sym)) for i in ii),
        -S(C0(G(E(k - i)), E(i - j - 1), G(P(D, E(j - 1), *abc))) for i in ii for j in rng(1, i - 1)),
        per(lambda x, y, z: S(o.mu(lambda gm, gu: C0(P(G(E(k - i)), gu), P(x, y), z, P(E(i - 1), gm)))
                              for i in ii)).scale(R(-1, 6)),
        -S(C0(P(G(E(k - i)), E(i - j - 1)), D, G(P(E(j - 1), *abc))) for i in ii for j in rng(1, i - 1)),
        S(C0(P(G(E(k - i)), E(i - 2)), D, sym).scale(i - 1) for i in ii),
    ]
    return lhs - S(t)
