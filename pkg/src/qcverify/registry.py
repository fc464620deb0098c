"""Identity registry and the shorthand used to transcribe identities.

Every checked identity is an :class:`Identity`: a name, a suite, a list of
named parameters and an evaluator returning the residual (LHS - RHS).  The
evaluator receives an :class:`Ops` bound to a calculus plus the parameter
values as keyword arguments.  Basis parameters are 0-based internally and
reported 1-based.

Parameter kinds are inferred from the name:

* ``g`` ranges over the genera {0, 1};
* names starting with ``k`` or ``m`` are degrees in ``0..k_max``;
* ``i`` is a fixed summation index in ``1..k_max`` (evaluators constrain it);
* ``alpha``, ``beta``, ``sigma``, ``mu``, ``nu``, ``rho`` are basis indices;
* ``slots`` is a multiset of four fields drawn from the basis and
  ``E^1..E^k_max`` (used by the full genus-one relation).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations_with_replacement, permutations, product
from typing import Any, Callable, Iterable, Iterator, Sequence, Union

from gmpy2 import mpq

from .calculus import Calculus, VectorField
from .phi import genus1_gap, phi_value
from .series import TruncatedSeries

__all__ = [
    "Identity",
    "Ops",
    "REGISTRY",
    "SUITES",
    "BASIS_PARAMS",
    "register",
    "get_identity",
    "identities_in",
    "parameter_tuples",
    "rng",
]

Residual = Union[TruncatedSeries, VectorField, Sequence[Union[TruncatedSeries, VectorField]]]

SUITES = ("axioms", "core", "derivations", "applications", "appendix")
BASIS_PARAMS = frozenset({"alpha", "beta", "sigma", "mu", "nu", "rho"})


def rng(lo: int, hi: int) -> range:
    """Inclusive integer range ``lo..hi`` (empty when hi < lo)."""
    return range(lo, hi + 1)


@dataclass(frozen=True)
class Identity:
    name: str
    suite: str
    params: tuple[str, ...]
    evaluate: Callable[..., Residual] = field(repr=False)
    description: str = ""
    needs_f1: bool = False
    constraint: Callable[..., bool] | None = field(default=None, repr=False)
    symmetric: bool = False  # basis parameters may be sorted under the sampled policy

    def accepts(self, values: dict[str, Any]) -> bool:
        return self.constraint is None or bool(self.constraint(**values))

    def uses_f1(self, values: dict[str, Any]) -> bool:
        """Whether this instance reads F1 (genus-parametrised identities only at g = 1)."""
        return self.needs_f1 or values.get("g") == 1


REGISTRY: dict[str, Identity] = {}


def register(name: str, suite: str, params: Sequence[str] = (), *, description: str = "",
             needs_f1: bool = False, constraint: Callable[..., bool] | None = None,
             symmetric: bool = False):
    """Decorator adding an evaluator to the registry."""
    if suite not in SUITES:
        raise ValueError(f"unknown suite {suite!r}")

    def deco(fn):
        if name in REGISTRY:
            raise ValueError(f"identity {name!r} registered twice")
        REGISTRY[name] = Identity(name, suite, tuple(params), fn, description or (fn.__doc__ or "").strip(),
                                  needs_f1, constraint, symmetric)
        return fn

    return deco


def get_identity(name: str) -> Identity:
    try:
        return REGISTRY[name]
    except KeyError:
        raise KeyError(f"unknown identity {name!r}") from None


def identities_in(suite: str) -> list[Identity]:
    if suite == "all":
        return list(REGISTRY.values())
    if suite not in SUITES:
        raise KeyError(f"unknown suite {suite!r}")
    return [i for i in REGISTRY.values() if i.suite == suite]


def _slot_names(N: int, k_max: int) -> list[str]:
    return [f"g{a + 1}" for a in range(N)] + [f"E{k}" for k in rng(1, k_max)]


def parameter_tuples(ident: Identity, N: int, k_max: int, policy: str = "all") -> Iterator[tuple]:
    """Enumerate the parameter tuples of ``ident`` (basis indices 0-based)."""
    if policy not in ("all", "sampled"):
        raise ValueError(f"unknown tuple policy {policy!r}")
    if ident.params == ("slots",):
        for combo in combinations_with_replacement(_slot_names(N, k_max), 4):
            yield (combo,)
        return
    ranges = []
    for p in ident.params:
        if p == "g":
            ranges.append(range(2))
        elif p in BASIS_PARAMS:
            ranges.append(range(N))
        elif p == "i":
            ranges.append(rng(1, k_max))
        elif p[0] in "km":
            ranges.append(rng(0, k_max))
        else:
            raise ValueError(f"cannot infer the range of parameter {p!r}")
    basis_pos = [i for i, p in enumerate(ident.params) if p in BASIS_PARAMS]
    for values in product(*ranges):
        if policy == "sampled" and ident.symmetric:
            bs = [values[i] for i in basis_pos]
            if bs != sorted(bs):
                continue
        if ident.accepts(dict(zip(ident.params, values))):
            yield values


def display_params(ident: Identity, values: Sequence) -> tuple:
    """Parameters as reported: basis indices 1-based."""
    out = []
    for p, v in zip(ident.params, values):
        if p == "slots":
            out.append("(" + ",".join(v) + ")")
        else:
            out.append(v + 1 if p in BASIS_PARAMS else v)
    return tuple(out)


class Ops:
    """Terse operator shorthand bound to one calculus.

    ``C0``/``C1`` are correlation functions, ``P`` the (left-folded) quantum
    product, ``d(v, f)`` the derivative of a function ``f`` along ``v``.
    """

    def __init__(self, c: Calculus):
        self.c = c
        self.N = c.N
        self.b1 = c.b1

    # fields
    def g(self, a: int) -> VectorField:
        return self.c.basis(a)

    def u(self, a: int) -> VectorField:
        return self.c.dual(a)

    def E(self, k: int) -> VectorField:
        return self.c.E(k)

    @property
    def D(self) -> VectorField:
        return self.c.delta()

    def G(self, v: VectorField) -> VectorField:
        return self.c.G(v)

    def P(self, *fields: VectorField) -> VectorField:
        return self.c.prod(*fields)

    # functions
    def C0(self, *fields: VectorField) -> TruncatedSeries:
        return self.c.corr0(*fields)

    def C1(self, *fields: VectorField) -> TruncatedSeries:
        return self.c.corr1(*fields)

    def d(self, v: VectorField, f: TruncatedSeries) -> TruncatedSeries:
        return self.c.directional(v, f)

    def phi(self, k: int) -> TruncatedSeries:
        return phi_value(self.c, k)

    def gap(self, k: int) -> TruncatedSeries:
        return genus1_gap(self.c, k)

    # sums
    def sum(self, terms: Iterable[TruncatedSeries]) -> TruncatedSeries:
        return self.c.total(list(terms))

    def vsum(self, fields: Iterable[VectorField]) -> VectorField:
        return self.c.field_sum(fields)

    def mu(self, fn: Callable[[VectorField, VectorField], TruncatedSeries]) -> TruncatedSeries:
        """sum_mu fn(gamma_mu, gamma^mu)."""
        return self.sum(fn(gm, gu) for gm, gu in self.c.pairs())

    def vmu(self, fn: Callable[[VectorField, VectorField], VectorField]) -> VectorField:
        return self.vsum(fn(gm, gu) for gm, gu in self.c.pairs())

    def perm(self, fields: Sequence, fn: Callable[..., TruncatedSeries]) -> TruncatedSeries:
        """Literal sum over all orderings of ``fields``."""
        return self.sum(fn(*p) for p in permutations(fields))

    def vperm(self, fields: Sequence, fn: Callable[..., VectorField]) -> VectorField:
        return self.vsum(fn(*p) for p in permutations(fields))

    @staticmethod
    def q(n: int, d: int = 1) -> mpq:
        return mpq(n, d)
