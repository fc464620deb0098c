"""Residual evaluators for the universal equations built on the genus-one relation.

Each evaluator returns LHS - RHS.  Sums over the symmetric group are literal
loops over orderings of the basis fields; repeated Greek indices are explicit
loops over the basis.  ``x, y, z`` always denote a permuted triple (or pair)
of the basis fields ``gamma_alpha, gamma_beta, gamma_sigma``.
"""

from __future__ import annotations

from itertools import permutations

from gmpy2 import mpq

from .calculus import VectorField
from .getzler import g0, g1, getzler, semisimplicity_matrix
from .phi import dphi_explicit, gap_string_residual, phi, phi_alt, virasoro_type_phi_residual
from .registry import Ops, register, rng
from .series import TruncatedSeries

H = mpq(1, 2)


def _slot(o: Ops, name: str) -> VectorField:
    if name.startswith("g"):
        return o.g(int(name[1:]) - 1)
    return o.E(int(name[1:]))


# -- core --------------------------------------------------------------------

@register("getzler_full", "core", ("slots",), needs_f1=True,
          description="G0 + G1 on a multiset of basis fields and Euler powers")
def getzler_full(o: Ops, slots):
    return getzler(o.c, *(_slot(o, s) for s in slots))


@register("g0_unit", "core", ("alpha", "beta", "sigma"), symmetric=True,
          description="G0 vanishes when one argument is the unit")
def g0_unit(o: Ops, alpha, beta, sigma):
    return g0(o.c, o.g(0), o.g(alpha), o.g(beta), o.g(sigma))


@register("g1_unit", "core", ("alpha", "beta", "sigma"), symmetric=True, needs_f1=True,
          description="G1 vanishes when one argument is the unit")
def g1_unit(o: Ops, alpha, beta, sigma):
    return g1(o.c, o.g(0), o.g(alpha), o.g(beta), o.g(sigma))


@register("wdvv3", "core", ("k", "alpha", "beta", "mu"),
          description="4-point function of a quantum power (v = E) reduced to 4-point functions with E")
def wdvv3(o: Ops, k, alpha, beta, mu):
    E, P, C0 = o.E, o.P, o.C0
    a, b, m = o.g(alpha), o.g(beta), o.g(mu)
    lhs = C0(E(k), a, b, m)
    rhs = o.sum(-C0(E(k - i), P(a, b, E(i - 1)), E(1), m) for i in rng(1, k - 1))
    rhs += o.sum(C0(P(E(k - i), a), P(b, E(i - 1)), E(1), m) for i in rng(1, k))
    return lhs - rhs


@register("wdvv4", "core", ("k", "alpha", "beta", "mu", "sigma"),
          description="5-point function of a quantum power (v = E) reduced by the second WDVV derivative")
def wdvv4(o: Ops, k, alpha, beta, mu, sigma):
    E, P, C0 = o.E, o.P, o.C0
    a, b, m, s = o.g(alpha), o.g(beta), o.g(mu), o.g(sigma)
    e = E(1)
    terms = []
    for i in rng(1, k - 1):
        w, bw = E(k - i), P(b, E(i - 1))
        terms.append(-o.mu(lambda gr, gu: C0(w, s, e, gu) * C0(gr, a, bw, m)))
        terms.append(-C0(w, P(a, b, E(i - 1)), e, m, s))
        terms.append(-o.mu(lambda gr, gu: C0(w, m, e, gu) * C0(gr, a, bw, s)))
        terms.append(o.mu(lambda gr, gu: C0(w, a, s, gu) * C0(gr, bw, e, m)))
        terms.append(o.mu(lambda gr, gu: C0(w, a, m, gu) * C0(gr, bw, e, s)))
    for i in rng(1, k):
        terms.append(C0(P(E(k - i), a), P(b, E(i - 1)), e, m, s))
    return C0(E(k), a, b, m, s) - o.sum(terms)


def _corr(o: Ops, g: int):
    return o.C0 if g == 0 else o.C1


@register("observation_1", "core", ("g", "k", "alpha", "beta", "sigma"),
          description="moving gamma^mu and products across two insertions")
def observation_1(o: Ops, g, k, alpha, beta, sigma):
    C, P = _corr(o, g), o.P
    v1, v2, v3, v4 = o.E(k), o.g(alpha), o.g(beta), o.g(sigma)
    t1 = o.mu(lambda gm, gu: C(P(v1, gu), P(v2, v3, gm), v4))
    t2 = o.mu(lambda gm, gu: C(P(v1, gm), P(v2, v3, gu), v4))
    t3 = o.mu(lambda gm, gu: C(P(v1, v2, gu), P(v3, gm), v4))
    return [t1 - t2, t2 - t3]


@register("observation_2", "core", ("g", "k", "alpha", "beta", "sigma"),
          description="the same moves with the grading operator on one insertion")
def observation_2(o: Ops, g, k, alpha, beta, sigma):
    C, P, G = _corr(o, g), o.P, o.G
    v1, v2, v3, v4, v5 = o.E(k), o.g(alpha), o.g(beta), o.g(sigma), o.E(1)
    u1 = o.mu(lambda gm, gu: C(G(P(v1, v2, gu)), P(v3, v4, gm), v5))
    u2 = o.mu(lambda gm, gu: C(G(P(v1, v2, gm)), P(v3, v4, gu), v5))
    u3 = o.mu(lambda gm, gu: C(G(P(v1, v2, v3, gu)), P(v4, gm), v5))
    u4 = o.mu(lambda gm, gu: C(G(P(v1, gu)), P(v2, v3, v4, gm), v5))
    return [u1 - u2, u2 - u3, u3 - u4]


@register("phi_formulas", "core", ("k",), description="the two formulas for Phi_k agree")
def phi_formulas(o: Ops, k):
    return phi(o.c, k).value - phi_alt(o.c, k).value


@register("gap_unit", "core", ("k",), needs_f1=True,
          description="gamma_1 (<<E^k>>_1 - Phi_k) = k (<<E^{k-1}>>_1 - Phi_{k-1})")
def gap_unit(o: Ops, k):
    return gap_string_residual(o.c, k)


@register("euler_derivative", "core", ("alpha",),
          description="nabla_v E = -G(v) + (b_1 + 1) v")
def euler_derivative(o: Ops, alpha):
    v = o.g(alpha)
    return o.c.nabla(v, o.E(1)) + o.G(v) - v.scale(o.b1 + 1)


@register("euler_power_derivative", "core", ("k", "alpha"),
          description="nabla_v E^k in terms of G and quantum products")
def euler_power_derivative(o: Ops, k, alpha):
    E, G, P = o.E, o.G, o.P
    v = o.g(alpha)
    rhs = [P(G(E(i - 1)), v, E(k - i)) for i in rng(1, k)]
    rhs += [-P(G(P(v, E(k - i))), E(i - 1)) for i in rng(1, k)]
    rhs.append(P(v, E(k - 1)).scale(k))
    return o.c.nabla(v, E(k)) - o.vsum(rhs)


@register("four_point_euler", "core", ("alpha", "beta"), symmetric=True,
          description="sum_a <<E v1 v2 gamma^a>>_0 gamma_a via G")
def four_point_euler(o: Ops, alpha, beta):
    G, P = o.G, o.P
    v1, v2 = o.g(alpha), o.g(beta)
    lhs = o.c.field([o.C0(o.E(1), v1, v2, o.u(a)) for a in range(o.N)])
    rhs = P(G(v1), v2) + P(v1, G(v2)) - G(P(v1, v2)) - P(v1, v2).scale(o.b1)
    return lhs - rhs


@register("product_derivative", "core", ("k", "alpha", "beta"),
          description="Leibniz rule for the quantum product with a 4-point correction")
def product_derivative(o: Ops, k, alpha, beta):
    nab, P = o.c.nabla, o.P
    u, v, w = o.g(alpha), o.E(k), o.g(beta)
    corr = o.c.field([o.C0(u, v, w, o.u(a)) for a in range(o.N)])
    return nab(u, P(v, w)) - P(nab(u, v), w) - P(v, nab(u, w)) - corr


@register("euler_bracket", "core", ("k", "m"), description="[E^k, E^m] = (m - k) E^{m+k-1}")
def euler_bracket(o: Ops, k, m):
    return o.c.bracket(o.E(k), o.E(m)) - o.E(m + k - 1).scale(m - k)


@register("derivative_rule", "core", ("g", "k", "alpha", "beta"),
          description="W<<V1 V2>>_g = <<W V1 V2>>_g + covariant-derivative terms")
def derivative_rule(o: Ops, g, k, alpha, beta):
    return o.c.derivative_rule_residual(g, o.g(alpha), [o.E(k), o.g(beta)])


# -- derivations: reduction lemmas --------------------------------------------

@register("lemma_4point_3point", "derivations", ("m", "alpha", "beta", "mu"),
          description="4-point function with E^m as 3-point functions")
def lemma_4point_3point(o: Ops, m, alpha, beta, mu):
    E, G, P, C0 = o.E, o.G, o.P, o.C0
    a, b, gm = o.g(alpha), o.g(beta), o.g(mu)
    rhs = []
    for i in rng(1, m):
        rhs.append(-C0(G(E(m - i)), P(E(i - 1), a, b), gm))
        rhs.append(-C0(G(P(E(i - 1), a, b)), E(m - i), gm))
        rhs.append(C0(G(P(E(m - i), a)), P(E(i - 1), b), gm))
        rhs.append(C0(G(P(E(i - 1), b)), P(E(m - i), a), gm))
    return C0(E(m), a, b, gm) - o.sum(rhs)


@register("eq_4point_3point1", "derivations", ("m", "alpha", "beta"),
          description="vector form of the 4-point reduction")
def eq_4point_3point1(o: Ops, m, alpha, beta):
    E, G, P = o.E, o.G, o.P
    a, b = o.g(alpha), o.g(beta)
    lhs = o.c.field([o.C0(E(m), a, b, o.u(mu)) for mu in range(o.N)])
    rhs = []
    for i in rng(1, m):
        rhs.append(-P(G(E(m - i)), E(i - 1), a, b))
        rhs.append(-P(G(P(E(i - 1), a, b)), E(m - i)))
        rhs.append(P(G(P(E(m - i), a)), E(i - 1), b))
        rhs.append(P(G(P(E(i - 1), b)), E(m - i), a))
    return lhs - o.vsum(rhs)


@register("simplication_1", "derivations", ("k", "alpha", "beta", "sigma"),
          description="moving G off a product inside a 3-point function")
def simplication_1(o: Ops, k, alpha, beta, sigma):
    G, P, C0 = o.G, o.P, o.C0
    v1, v2, v3, v4 = o.E(k), o.g(alpha), o.g(beta), o.g(sigma)
    return C0(G(P(v1, v2)), v3, v4) - C0(v1, v2, P(v3, v4)) + C0(v1, v2, G(P(v3, v4)))


@register("simplication_2", "derivations", ("k", "alpha"),
          description="sum_mu G(v o gamma^mu) o gamma_mu = Delta o v / 2 (both index placements)")
def simplication_2(o: Ops, k, alpha):
    G, P = o.G, o.P
    v = P(o.E(k), o.g(alpha))
    half = P(o.D, v).scale(H)
    first = o.vmu(lambda gm, gu: P(G(P(v, gu)), gm))
    second = o.vmu(lambda gm, gu: P(G(P(v, gm)), gu))
    return [first - half, second - half]


@register("simplication_3", "derivations", ("k", "alpha", "beta", "sigma"),
          description="trading G(...o gamma^mu) G(gamma_mu) between insertions")
def simplication_3(o: Ops, k, alpha, beta, sigma):
    G, P, C0 = o.G, o.P, o.C0
    v1, v2, v3, v4 = o.E(k), o.g(alpha), o.g(beta), o.g(sigma)
    lhs = o.mu(lambda gm, gu: C0(G(P(v1, v2, v3, gu)), G(gm), v4))
    rhs = o.mu(lambda gm, gu: C0(P(G(P(v4, gu)), G(gm), v1), v2, v3))
    return lhs - rhs


@register("simplication_4", "derivations", ("k", "alpha", "beta", "sigma"),
          description="merging two graded factors around gamma^mu, gamma_mu")
def simplication_4(o: Ops, k, alpha, beta, sigma):
    G, P, C0 = o.G, o.P, o.C0
    v1, v2, v3, v4 = o.E(k), o.g(alpha), o.g(beta), o.g(sigma)
    lhs = o.mu(lambda gm, gu: C0(P(G(P(v1, gu)), G(P(v2, gm))), v3, v4))
    rhs = o.mu(lambda gm, gu: C0(P(G(P(v1, v2, gu)), G(gm)), v3, v4))
    return lhs - rhs


@register("explicit_dphi", "derivations", ("k", "alpha"),
          description="closed form for gamma_alpha Phi_k against direct differentiation")
def explicit_dphi(o: Ops, k, alpha):
    return dphi_explicit(o.c, alpha, k) - o.d(o.g(alpha), o.phi(k))


@register("virasoro_phi", "derivations", ("k", "m"),
          description="E^k Phi_m - E^m Phi_k = (m - k) Phi_{k+m-1}")
def virasoro_phi(o: Ops, k, m):
    return virasoro_type_phi_residual(o.c, k, m)


# -- derivations: one Euler power ---------------------------------------------

def _g1_1e(o: Ops, k, a, b, s) -> list[TruncatedSeries]:
    """Terms of the closed form of G1(E^k, a, b, s); the first is the derivative term."""
    E, G, P, C1 = o.E, o.G, o.P, o.C1
    abc = (a, b, s)
    t = [o.d(P(a, b, s), C1(E(k))).scale(-24),
         C1(P(E(k - 1), a, b, s)).scale(24 * k),
         o.perm(abc, lambda x, y, z: C1(P(E(k), x), P(y, z))).scale(12),
         o.perm(abc, lambda x, y, z: C1(P(E(k), x, y), z)).scale(-12),
         o.perm(abc, lambda x, y, z: o.sum(C1(P(G(P(E(i - 1), x)), E(k - i), y, z)) for i in rng(1, k))).scale(12),
         o.perm(abc, lambda x, y, z: o.sum(C1(P(G(P(E(i - 1), x, y)), E(k - i), z)) for i in rng(1, k))).scale(-12)]
    return t


def _g0_1e(o: Ops, k, a, b, s) -> list[TruncatedSeries]:
    """Terms of the closed form of G0(E^k, a, b, s); the first is the Phi term."""
    E, G, P, C0, D = o.E, o.G, o.P, o.C0, o.D
    abc = (a, b, s)
    pabc = P(a, b, s)
    t = [o.d(pabc, o.phi(k)).scale(24),
         C0(P(D, E(k - 1)), a, b, s).scale(-4 * k)]
    t.append(o.perm(abc, lambda x, y, z: o.sum(
        o.mu(lambda gm, gu: C0(G(P(E(k - i), x)), gm, gu, P(E(i - 1), y, z))) for i in rng(1, k))).scale(H))
    t.append(o.perm(abc, lambda x, y, z: o.sum(
        o.mu(lambda gm, gu: C0(G(P(E(k - i), x, y)), gm, gu, P(E(i - 1), z))) for i in rng(1, k))).scale(-H))
    t.append(o.perm(abc, lambda x, y, z: o.mu(
        lambda gm, gu: C0(G(P(E(k - 1), x, gu)), y, z, gm))).scale(2 * k))
    t.append(o.perm(abc, lambda x, y, z: o.mu(
        lambda gm, gu: C0(P(E(k - 1), x), gm, gu, P(y, z)))).scale(-H * k))
    t.append(o.perm(abc, lambda x, y, z: o.sum(
        o.mu(lambda gm, gu: C0(P(G(P(E(k - i - 1), x, gu)), G(gm)), E(i - 1), P(y, z))).scale(k - 3 * i)
        for i in rng(1, k - 1))).scale(2))
    t.append(o.perm(abc, lambda x, y, z: o.sum(
        C0(P(D, E(i - 1)), G(P(E(k - i - 1), x, y)), z).scale(i) for i in rng(1, k - 1))).scale(-H))
    t.append(o.perm(abc, lambda x, y, z: o.sum(
        C0(P(D, E(i - 1)), G(P(E(k - i - 1), x)), P(y, z)).scale(k - i) for i in rng(1, k - 1))).scale(-H))
    t.append(o.sum(C0(G(P(D, E(k - i - 1))), E(i - 1), pabc) for i in rng(1, k - 1)).scale(-4 * k))
    t.append(C0(D, E(k - 2), pabc).scale(5 * k * (k - 1)))
    return t


def _basis3(o: Ops, alpha, beta, sigma):
    return o.g(alpha), o.g(beta), o.g(sigma)


@register("g1_1E", "derivations", ("k", "alpha", "beta", "sigma"), needs_f1=True, symmetric=True,
          description="closed form of G1(E^k, gamma_alpha, gamma_beta, gamma_sigma)")
def g1_1E(o: Ops, k, alpha, beta, sigma):
    a, b, s = _basis3(o, alpha, beta, sigma)
    return g1(o.c, o.E(k), a, b, s) - o.sum(_g1_1e(o, k, a, b, s))


@register("equi1_alt", "derivations", ("k", "alpha", "beta", "sigma"), needs_f1=True, symmetric=True,
          description="alternative closed form of G1(E^k, gamma_alpha, gamma_beta, gamma_sigma)")
def equi1_alt(o: Ops, k, alpha, beta, sigma):
    E, P, C0, C1 = o.E, o.P, o.C0, o.C1
    a, b, s = _basis3(o, alpha, beta, sigma)
    abc = (a, b, s)
    rhs = [o.d(P(a, b, s), C1(E(k))).scale(-24),
           C1(P(E(k - 1), a, b, s)).scale(24 * k),
           o.perm(abc, lambda x, y, z: o.d(P(x, y), C1(P(E(k), z)))).scale(12),
           o.perm(abc, lambda x, y, z: o.d(x, C1(P(E(k), y, z)))).scale(-12),
           o.mu(lambda gm, gu: C0(a, b, s, gu) * C1(P(gm, E(k)))).scale(72)]
    return g1(o.c, E(k), a, b, s) - o.sum(rhs)


@register("g0_1E", "derivations", ("k", "alpha", "beta", "sigma"), symmetric=True,
          description="closed form of G0(E^k, gamma_alpha, gamma_beta, gamma_sigma)")
def g0_1E(o: Ops, k, alpha, beta, sigma):
    a, b, s = _basis3(o, alpha, beta, sigma)
    return g0(o.c, o.E(k), a, b, s) - o.sum(_g0_1e(o, k, a, b, s))


@register("getzler_1E", "derivations", ("k", "alpha", "beta", "sigma"), needs_f1=True, symmetric=True,
          description="24 {a o b o s}(<<E^k>>_1 - Phi_k) in closed form")
def getzler_1E(o: Ops, k, alpha, beta, sigma):
    a, b, s = _basis3(o, alpha, beta, sigma)
    lhs = o.d(o.P(a, b, s), o.gap(k)).scale(24)
    return lhs - o.sum(_g1_1e(o, k, a, b, s)[1:] + _g0_1e(o, k, a, b, s)[1:])


# -- derivations: two Euler powers --------------------------------------------

def _g1_2e(o: Ops, k1, k2, a, b) -> list[TruncatedSeries]:
    """Closed form of G1(E^k1, E^k2, a, b); the first two terms carry derivatives of <<E^j>>_1."""
    E, G, P, C1 = o.E, o.G, o.P, o.C1
    K, ks = k1 + k2, (k1, k2)

    def one_point(x, y, i):
        return C1(P(G(P(E(i - 1), x)), E(K - i), y))

    return [
        o.d(P(a, b), C1(E(K))).scale(24),
        o.sum(o.d(P(E(K - km), a, b), C1(E(km))) for km in ks).scale(-24),
        o.sum(C1(P(E(h1), a), P(E(h2), b)) for h1, h2 in permutations(ks)).scale(24),
        o.perm((a, b), lambda x, y: C1(P(E(K), x), y)).scale(-24),
        o.perm((a, b), lambda x, y: o.sum(one_point(x, y, i) for km in ks for i in rng(1, km))).scale(24),
        o.perm((a, b), lambda x, y: o.sum(one_point(x, y, i) for i in rng(1, K))).scale(-24),
    ]


def _g0_2e(o: Ops, k1, k2, a, b) -> list[TruncatedSeries]:
    """Closed form of G0(E^k1, E^k2, a, b); the first two terms carry derivatives of Phi."""
    E, G, P, C0, D = o.E, o.G, o.P, o.C0, o.D
    K, ks = k1 + k2, (k1, k2)

    def four_point(x, y, i):
        return o.mu(lambda gm, gu: C0(G(P(E(i - 1), x)), gu, gm, P(E(K - i), y)))

    return [
        o.d(P(a, b), o.phi(K)).scale(-24),
        o.sum(o.d(P(E(K - km), a, b), o.phi(km)) for km in ks).scale(24),
        -o.perm((a, b), lambda x, y: o.sum(four_point(x, y, i) for i in rng(1, K))),
        o.perm((a, b), lambda x, y: o.sum(four_point(x, y, i) for km in ks for i in rng(1, km))),
        -o.perm((a, b), lambda x, y: o.sum(
            C0(P(D, E(i + j - 2)), G(P(E(K - i - j), x)), y) for i in rng(1, k1) for j in rng(1, k2))),
        o.perm((a, b), lambda x, y: o.sum(
            o.mu(lambda gm, gu: C0(P(G(P(E(i + j - 2), x, gu)), G(gm)), E(K - i - j), y))
            for i in rng(1, k1) for j in rng(1, k2))).scale(6),
        C0(D, E(K - 2), P(a, b)).scale(-2 * k1 * k2),
    ]


@register("g1_2E", "derivations", ("k1", "k2", "alpha", "beta"), needs_f1=True,
          description="closed form of G1(E^k1, E^k2, gamma_alpha, gamma_beta)")
def g1_2E(o: Ops, k1, k2, alpha, beta):
    a, b = o.g(alpha), o.g(beta)
    return g1(o.c, o.E(k1), o.E(k2), a, b) - o.sum(_g1_2e(o, k1, k2, a, b))


@register("g1_2E_alt", "derivations", ("k1", "k2", "alpha", "beta"), needs_f1=True,
          description="alternative closed form of G1(E^k1, E^k2, gamma_alpha, gamma_beta)")
def g1_2E_alt(o: Ops, k1, k2, alpha, beta):
    E, G, P, C1 = o.E, o.G, o.P, o.C1
    a, b = o.g(alpha), o.g(beta)
    K, ks = k1 + k2, (k1, k2)
    rhs = _g1_2e(o, k1, k2, a, b)[:2]
    rhs.append(o.perm((a, b), lambda x, y: o.sum(
        o.d(P(E(h1), x), C1(P(E(h2), y))) for h1, h2 in permutations(ks))).scale(12))
    rhs.append(o.perm((a, b), lambda x, y: o.d(x, C1(P(E(K), y)))).scale(-24))
    rhs.append(o.perm((a, b), lambda x, y: o.sum(
        C1(P(G(P(E(i - 1), x)), E(K - i), y)) for km in ks for i in rng(1, km))).scale(12))
    rhs.append(o.sum(C1(P(G(P(E(i - 1), a, b)), E(K - i))) for km in ks for i in rng(1, km)).scale(-24))
    rhs.append(C1(P(E(K - 1), a, b)).scale(24 * K))
    return g1(o.c, E(k1), E(k2), a, b) - o.sum(rhs)


@register("g0_2E", "derivations", ("k1", "k2", "alpha", "beta"),
          description="closed form of G0(E^k1, E^k2, gamma_alpha, gamma_beta)")
def g0_2E(o: Ops, k1, k2, alpha, beta):
    a, b = o.g(alpha), o.g(beta)
    return g0(o.c, o.E(k1), o.E(k2), a, b) - o.sum(_g0_2e(o, k1, k2, a, b))


@register("getzler_2E", "derivations", ("k1", "k2", "alpha", "beta"), needs_f1=True,
          description="gap functions contracted with gamma_alpha o gamma_beta")
def getzler_2E(o: Ops, k1, k2, alpha, beta):
    E, P = o.E, o.P
    a, b = o.g(alpha), o.g(beta)
    K = k1 + k2
    lhs = o.d(P(a, b), o.gap(K)).scale(24)
    lhs -= o.sum(o.d(P(E(K - km), a, b), o.gap(km)) for km in (k1, k2)).scale(24)
    rest = _g1_2e(o, k1, k2, a, b)[2:] + _g0_2e(o, k1, k2, a, b)[2:]
    return lhs + o.sum(rest)


# -- derivations: three and four Euler powers ---------------------------------

def _three(o: Ops, k1, k2, k3, alpha, fn):
    """-d(a, f(K)) + sum_i d(E^ki o a, f(K - ki)) - sum_i d(E^{K-ki} o a, f(ki))."""
    E, P = o.E, o.P
    a = o.g(alpha)
    K = k1 + k2 + k3
    out = [-o.d(a, fn(K))]
    out += [o.d(P(E(ki), a), fn(K - ki)) for ki in (k1, k2, k3)]
    out += [-o.d(P(E(K - ki), a), fn(ki)) for ki in (k1, k2, k3)]
    return o.sum(out)


@register("g1_3E", "derivations", ("k1", "k2", "k3", "alpha"), needs_f1=True,
          description="closed form of G1(E^k1, E^k2, E^k3, gamma_alpha)")
def g1_3E(o: Ops, k1, k2, k3, alpha):
    lhs = g1(o.c, o.E(k1), o.E(k2), o.E(k3), o.g(alpha))
    return lhs - _three(o, k1, k2, k3, alpha, lambda j: o.C1(o.E(j))).scale(24)


@register("g0_3E", "derivations", ("k1", "k2", "k3", "alpha"),
          description="closed form of G0(E^k1, E^k2, E^k3, gamma_alpha)")
def g0_3E(o: Ops, k1, k2, k3, alpha):
    lhs = g0(o.c, o.E(k1), o.E(k2), o.E(k3), o.g(alpha))
    return lhs + _three(o, k1, k2, k3, alpha, o.phi).scale(24)


@register("getzler_3E", "derivations", ("k1", "k2", "k3", "alpha"), needs_f1=True,
          description="gamma_alpha of the gap at k1 + k2 + k3 in terms of lower gaps")
def getzler_3E(o: Ops, k1, k2, k3, alpha):
    return -_three(o, k1, k2, k3, alpha, o.gap)


def _four(o: Ops, ks, fn, coeffs):
    """c0 K f(K-1) + c1 sum_i E^ki f(K-ki) + c2 sum_{S4} E^{k_g1+k_g2} f(k_g3+k_g4)."""
    E = o.E
    K = sum(ks)
    out = [fn(K - 1).scale(coeffs[0] * K) if K >= 1 else o.c.space.zero()]
    out += [o.d(E(ki), fn(K - ki)).scale(coeffs[1]) for ki in ks]
    out += [o.d(E(p[0] + p[1]), fn(p[2] + p[3])).scale(coeffs[2]) for p in permutations(ks)]
    return o.sum(out)


@register("g1_4E", "derivations", ("k1", "k2", "k3", "k4"), needs_f1=True,
          description="closed form of G1 on four Euler powers")
def g1_4E(o: Ops, k1, k2, k3, k4):
    ks = (k1, k2, k3, k4)
    lhs = g1(o.c, *(o.E(k) for k in ks))
    return lhs - _four(o, ks, lambda j: o.C1(o.E(j)), (36, -24, 3))


@register("g0_4E", "derivations", ("k1", "k2", "k3", "k4"),
          description="closed form of G0 on four Euler powers")
def g0_4E(o: Ops, k1, k2, k3, k4):
    ks = (k1, k2, k3, k4)
    lhs = g0(o.c, *(o.E(k) for k in ks))
    return lhs - _four(o, ks, o.phi, (-36, 24, -3))


@register("getzler_4E", "derivations", ("k1", "k2", "k3", "k4"), needs_f1=True,
          description="gap relation from four Euler powers")
def getzler_4E(o: Ops, k1, k2, k3, k4):
    return _four(o, (k1, k2, k3, k4), o.gap, (12, -8, 1))


# -- applications ---------------------------------------------------------------

@register("mainresult1", "applications", ("k", "alpha"), needs_f1=True,
          description="every gap derivative is a multiple of the k = 2 gap")
def mainresult1(o: Ops, k, alpha):
    a = o.g(alpha)
    rhs = o.d(o.P(o.E(k - 2), a), o.gap(2)).scale(mpq(k * (k - 1), 2))
    return o.d(a, o.gap(k)) - rhs


@register("mainresult2", "applications", ("k", "m", "alpha"), needs_f1=True,
          constraint=lambda k, m, alpha: k + m > 0,
          description="antisymmetric relation between gaps at k, m and m + k")
def mainresult2(o: Ops, k, m, alpha):
    E, P = o.E, o.P
    a = o.g(alpha)
    lhs = o.d(a, o.gap(m + k)).scale(mpq(m - k, m + k))
    return lhs - o.d(P(E(k), a), o.gap(m)) + o.d(P(E(m), a), o.gap(k))


@register("mainresult3", "applications", ("k", "m", "alpha"), needs_f1=True,
          constraint=lambda k, m, alpha: m > 0 and m + k >= 2,
          description="normalised gap derivative along E^k o gamma_alpha")
def mainresult3(o: Ops, k, m, alpha):
    a = o.g(alpha)
    lhs = o.d(o.P(o.E(k), a), o.gap(m)).scale(mpq(1, m))
    return lhs - o.d(a, o.gap(m + k)).scale(mpq(m - 1, (m + k) * (m + k - 1)))


@register("mainresult5", "applications", ("k1", "k2", "alpha"), needs_f1=True,
          description="gap derivatives along Delta o E^j o gamma_alpha")
def mainresult5(o: Ops, k1, k2, alpha):
    E, P, D = o.E, o.P, o.D
    a = o.g(alpha)
    return (o.d(P(D, a), o.gap(k1 + k2)) - o.d(P(D, E(k1), a), o.gap(k2))
            - o.d(P(D, E(k2), a), o.gap(k1)))


@register("mainresult6", "applications", ("k", "alpha"), needs_f1=True,
          description="(Delta o gamma_alpha)(<<E^k>>_1 - Phi_k) = 0")
def mainresult6(o: Ops, k, alpha):
    return o.d(o.P(o.D, o.g(alpha)), o.gap(k))


def _delta_block(o: Ops, k, mu) -> TruncatedSeries:
    """The genus-0 combination equal to 24 <<Delta^2 o E^{k-1} o gamma_mu>>_1."""
    E, G, P, C0, D = o.E, o.G, o.P, o.C0, o.D
    gmu = o.g(mu)
    de = P(D, E(k - 1))
    t = [o.mu(lambda ga, gau: C0(de, ga, gau, P(D, gmu))).scale(5),
         o.mu(lambda ga, gau: C0(de, ga, P(gau, gmu), D)).scale(2),
         o.mu(lambda ga, gau: o.mu(lambda gb, gbu: C0(de, G(P(gau, gbu, gmu)), ga, gb))).scale(-6),
         o.mu(lambda ga, gau: o.mu(lambda gb, gbu: C0(P(de, gmu), G(P(gau, gbu)), ga, gb))).scale(-6),
         o.sum(o.mu(lambda ga, gau: C0(P(G(P(D, E(i - 1), gau)), G(ga)), E(k - i - 1), P(D, gmu)))
               for i in rng(1, k - 1)).scale(-6),
         o.sum(C0(G(P(D, E(i - 1))), E(k - i - 1), P(D, D, gmu)) for i in rng(1, k - 1)).scale(4),
         o.sum(C0(G(P(D, E(i - 1), gmu)), E(k - i - 1), P(D, D)) for i in rng(1, k - 1)).scale(-3),
         C0(P(D, D, D), E(k - 2), gmu).scale(k - 1)]
    return o.sum(t)


@register("mainresult7", "applications", ("k", "mu"), needs_f1=True,
          constraint=lambda k, mu: k >= 1,
          description="24 <<Delta^2 o E^{k-1} o gamma_mu>>_1 from genus-0 data")
def mainresult7(o: Ops, k, mu):
    lhs = o.C1(o.P(o.D, o.D, o.E(k - 1), o.g(mu))).scale(24)
    return lhs - _delta_block(o, k, mu)


@register("delta2_corollary", "applications", (), needs_f1=True,
          description="<<Delta^2>>_1 from genus-0 4-point functions")
def delta2_corollary(o: Ops):
    G, P, C0, D = o.G, o.P, o.C0, o.D
    lhs = o.C1(P(D, D))
    t1 = o.mu(lambda gm, gu: C0(D, gm, gu, D)).scale(mpq(7, 24))
    t2 = o.mu(lambda ga, gau: o.mu(lambda gb, gbu: C0(D, G(P(gau, gbu)), ga, gb))).scale(-H)
    return lhs - t1 - t2


def _fields_1e1(o: Ops, mu):
    """(gamma_alpha, gamma^alpha o gamma^beta o gamma_mu, gamma_beta) for all alpha, beta."""
    for a in range(o.N):
        for b in range(o.N):
            yield o.g(a), o.P(o.u(a), o.u(b), o.g(mu)), o.g(b)


@register("g1_1E1", "applications", ("k", "mu"), needs_f1=True,
          description="G1(E^k, gamma_a, gamma^a o gamma^b o gamma_mu, gamma_b) summed over a, b")
def g1_1E1(o: Ops, k, mu):
    E, P, D = o.E, o.P, o.D
    lhs = o.sum(g1(o.c, E(k), *f) for f in _fields_1e1(o, mu))
    rhs = o.d(P(D, D, o.g(mu)), o.C1(E(k))).scale(-24) + o.C1(P(D, D, E(k - 1), o.g(mu))).scale(24 * k)
    return lhs - rhs


@register("g0_1E1", "applications", ("k", "mu"),
          description="G0(E^k, gamma_a, gamma^a o gamma^b o gamma_mu, gamma_b) summed over a, b")
def g0_1E1(o: Ops, k, mu):
    E, P, D = o.E, o.P, o.D
    lhs = o.sum(g0(o.c, E(k), *f) for f in _fields_1e1(o, mu))
    rhs = o.d(P(D, D, o.g(mu)), o.phi(k)).scale(24)
    if k >= 1:
        rhs -= _delta_block(o, k, mu).scale(k)
    return lhs - rhs


@register("semisimplicity_symmetric", "applications", (),
          description="the matrix A at t = 0, q = 1 is symmetric")
def semisimplicity_symmetric(o: Ops):
    A = semisimplicity_matrix(o.c).matrix
    n = len(A)
    return [o.c.const(A[i][j] - A[j][i]) for i in range(n) for j in range(i + 1, n)] or o.c.space.zero()
