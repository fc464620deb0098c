"""Exact truncated multivariate power series over the rationals.

A series lives in a :class:`SeriesSpace`, which fixes the number of
phase-space variables ``t^1..t^N``, the number of Novikov variables
``q_1..q_r``, the truncation orders and the Novikov charge of every
``t``-variable.  Coefficients are ``gmpy2.mpq`` rationals.

Every series carries ``valid_t``: the total ``t``-degree up to which its
coefficients agree with the untruncated result.  Sums and products take the
minimum of their inputs, each ``t``-derivative lowers it by one.

A Novikov monomial ``q^d`` stands for ``q^d exp(<d, t_div>)``, so
differentiating along a charged variable multiplies by the pairing of its
charge with ``d`` in addition to the ordinary partial derivative.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Iterator, NamedTuple, Sequence, Union

from gmpy2 import mpq

__all__ = [
    "Rational",
    "rational",
    "format_rational",
    "Monomial",
    "ShapeError",
    "SeriesSpace",
    "TruncatedSeries",
    "series_sum",
]

Rational = type(mpq(0))
Scalar = Union[int, Fraction, "Rational"]

# Exponents are packed into one integer, 8 bits per field:
# field 0 is the total t-degree, field 1 the total q-degree, then the
# individual t exponents followed by the individual q exponents.  Products
# are then plain integer additions; bounds below keep every field < 256.
_BITS = 8
_MASK = (1 << _BITS) - 1
MAX_ORDER = 120

_ZERO = mpq(0)
_ONE = mpq(1)


def rational(value: Scalar | str) -> Rational:
    """Coerce ints, Fractions, mpq or strings like ``"-3/4"`` to ``mpq``."""
    if isinstance(value, Rational):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, int):
        return mpq(value)
    if isinstance(value, Fraction):
        return mpq(value.numerator, value.denominator)
    if isinstance(value, str):
        text = value.strip()
        try:
            return mpq(text)
        except ValueError as exc:
            raise ValueError(f"not a rational: {value!r}") from exc
    raise TypeError(f"cannot convert {type(value).__name__} to a rational")


def format_rational(value: Rational) -> str:
    """``"p/q"`` or ``"n"``, the textual form used in model files."""
    return str(value)


class Monomial(NamedTuple):
    t: tuple[int, ...]
    q: tuple[int, ...]

    @property
    def t_degree(self) -> int:
        return sum(self.t)

    @property
    def q_degree(self) -> int:
        return sum(self.q)

    def __str__(self) -> str:
        parts = []
        for i, e in enumerate(self.q):
            name = "q" if len(self.q) == 1 else f"q{i + 1}"
            if e:
                parts.append(name if e == 1 else f"{name}^{e}")
        for i, e in enumerate(self.t):
            if e:
                parts.append(f"t{i + 1}" if e == 1 else f"t{i + 1}^{e}")
        return "*".join(parts) if parts else "1"


class ShapeError(ValueError):
    """Raised when series from incompatible spaces are combined."""


class SeriesSpace:
    """Variable counts, truncation orders and Novikov charges."""

    __slots__ = (
        "n_t", "n_q", "trunc_t", "trunc_q", "charges",
        "_t_shift", "_q_shift", "_sig",
    )

    def __init__(
        self,
        n_t: int,
        n_q: int,
        trunc_t: int,
        trunc_q: int,
        charges: Sequence[Sequence[int]] | None = None,
    ):
        if n_t < 1 or n_q < 0:
            raise ShapeError("need at least one t-variable and n_q >= 0")
        if not 0 <= trunc_t <= MAX_ORDER or not 0 <= trunc_q <= MAX_ORDER:
            raise ShapeError(f"truncation orders must lie in [0, {MAX_ORDER}]")
        if charges is None:
            charges = [[0] * n_q for _ in range(n_t)]
        ch = tuple(tuple(int(c) for c in row) for row in charges)
        if len(ch) != n_t or any(len(row) != n_q for row in ch):
            raise ShapeError("charge matrix must be n_t x n_q")
        self.n_t = n_t
        self.n_q = n_q
        self.trunc_t = trunc_t
        self.trunc_q = trunc_q
        self.charges = ch
        self._t_shift = tuple(_BITS * (2 + i) for i in range(n_t))
        self._q_shift = tuple(_BITS * (2 + n_t + j) for j in range(n_q))
        self._sig = (n_t, n_q, trunc_t, trunc_q, ch)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, SeriesSpace) and self._sig == other._sig

    def __hash__(self) -> int:
        return hash(self._sig)

    def __repr__(self) -> str:
        return (f"SeriesSpace(n_t={self.n_t}, n_q={self.n_q}, "
                f"trunc_t={self.trunc_t}, trunc_q={self.trunc_q})")

    def with_truncation(self, trunc_t: int | None = None,
                        trunc_q: int | None = None) -> SeriesSpace:
        return SeriesSpace(
            self.n_t, self.n_q,
            self.trunc_t if trunc_t is None else trunc_t,
            self.trunc_q if trunc_q is None else trunc_q,
            self.charges,
        )

    # -- packing -----------------------------------------------------------
    def pack(self, t_exp: Sequence[int], q_exp: Sequence[int] = ()) -> int:
        if len(t_exp) != self.n_t or len(q_exp) != self.n_q:
            raise ShapeError("exponent vector length does not match the space")
        if any(e < 0 for e in t_exp) or any(e < 0 for e in q_exp):
            raise ValueError("exponents must be non-negative")
        td, qd = sum(t_exp), sum(q_exp)
        key = td | (qd << _BITS)
        for sh, e in zip(self._t_shift, t_exp):
            key |= e << sh
        for sh, e in zip(self._q_shift, q_exp):
            key |= e << sh
        return key

    def unpack(self, key: int) -> Monomial:
        return Monomial(
            tuple((key >> sh) & _MASK for sh in self._t_shift),
            tuple((key >> sh) & _MASK for sh in self._q_shift),
        )

    def fits(self, t_exp: Sequence[int], q_exp: Sequence[int] = ()) -> bool:
        return sum(t_exp) <= self.trunc_t and sum(q_exp) <= self.trunc_q

    # -- constructors ------------------------------------------------------
    def zero(self) -> TruncatedSeries:
        return TruncatedSeries._raw(self, {}, self.trunc_t)

    def constant(self, c: Scalar | str) -> TruncatedSeries:
        c = rational(c)
        return TruncatedSeries._raw(self, {0: c} if c else {}, self.trunc_t)

    def one(self) -> TruncatedSeries:
        return self.constant(1)

    def monomial(self, t_exp: Sequence[int], q_exp: Sequence[int] | None = None,
                 coeff: Scalar | str = 1) -> TruncatedSeries:
        q_exp = tuple(q_exp) if q_exp is not None else (0,) * self.n_q
        c = rational(coeff)
        if not c or not self.fits(t_exp, q_exp):
            return self.zero()
        return TruncatedSeries._raw(self, {self.pack(t_exp, q_exp): c}, self.trunc_t)

    def variable(self, alpha: int) -> TruncatedSeries:
        """The coordinate function ``t^(alpha+1)`` (0-based index)."""
        e = [0] * self.n_t
        e[alpha] = 1
        return self.monomial(e)

    def from_terms(
        self,
        terms: Iterable[tuple[Sequence[int], Sequence[int], Scalar | str]],
        valid_t: int | None = None,
    ) -> TruncatedSeries:
        """Build a series from ``(t_exp, q_exp, coeff)`` triples.

        Terms outside the truncation are dropped; repeated monomials add up.
        """
        acc: dict[int, Rational] = {}
        for t_exp, q_exp, c in terms:
            c = rational(c)
            if not c or not self.fits(t_exp, q_exp):
                continue
            k = self.pack(t_exp, q_exp)
            acc[k] = acc.get(k, _ZERO) + c
        valid = self.trunc_t if valid_t is None else min(valid_t, self.trunc_t)
        return TruncatedSeries._raw(self, {k: v for k, v in acc.items() if v}, valid)


class TruncatedSeries:
    """Immutable sparse truncated series; see the module docstring."""

    __slots__ = ("space", "terms", "valid_t", "_groups", "_hash")

    def __init__(self, space: SeriesSpace, terms: dict[int, Rational] | None = None,
                 valid_t: int | None = None):
        terms = {k: rational(v) for k, v in (terms or {}).items()}
        td, tq = space.trunc_t, space.trunc_q
        clean = {}
        for k, v in terms.items():
            if not v:
                continue
            if (k & _MASK) > td or ((k >> _BITS) & _MASK) > tq:
                raise ShapeError("term outside the truncation")
            clean[k] = v
        valid = td if valid_t is None else valid_t
        if valid > td:
            raise ShapeError("valid_t cannot exceed trunc_t")
        self._init(space, clean, valid)

    def _init(self, space: SeriesSpace, terms: dict[int, Rational], valid_t: int) -> None:
        self.space = space
        self.terms = terms
        self.valid_t = valid_t
        self._groups = None
        self._hash = None

    @classmethod
    def _raw(cls, space: SeriesSpace, terms: dict[int, Rational], valid_t: int) -> TruncatedSeries:
        obj = cls.__new__(cls)
        obj._init(space, terms, valid_t)
        return obj

    # -- basic protocol ----------------------------------------------------
    @property
    def trunc_t(self) -> int:
        return self.space.trunc_t

    @property
    def trunc_q(self) -> int:
        return self.space.trunc_q

    def __len__(self) -> int:
        return len(self.terms)

    def __bool__(self) -> bool:
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def is_one(self) -> bool:
        return len(self.terms) == 1 and self.terms.get(0) == _ONE

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((frozenset(self.terms.items()), self.valid_t))
        return self._hash

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return (self.space == other.space and self.valid_t == other.valid_t
                and self.terms == other.terms)

    def same_terms(self, other: TruncatedSeries) -> bool:
        """Coefficient equality, ignoring ``valid_t``."""
        return self.space == other.space and self.terms == other.terms

    def items(self) -> list[tuple[Monomial, Rational]]:
        """Terms sorted by (t-degree, q-degree, exponents)."""
        unpack = self.space.unpack
        out = [(unpack(k), v) for k, v in self.terms.items()]
        out.sort(key=lambda mv: (mv[0].t_degree, mv[0].q_degree, mv[0].t, mv[0].q))
        return out

    def __iter__(self) -> Iterator[tuple[Monomial, Rational]]:
        return iter(self.items())

    def coefficient(self, t_exp: Sequence[int], q_exp: Sequence[int] | None = None) -> Rational:
        q_exp = tuple(q_exp) if q_exp is not None else (0,) * self.space.n_q
        if not self.space.fits(t_exp, q_exp):
            return _ZERO
        return self.terms.get(self.space.pack(t_exp, q_exp), _ZERO)

    def constant_term(self) -> Rational:
        return self.terms.get(0, _ZERO)

    def with_valid(self, valid_t: int) -> TruncatedSeries:
        return TruncatedSeries._raw(self.space, self.terms, min(valid_t, self.space.trunc_t))

    def restricted(self, max_t_degree: int) -> TruncatedSeries:
        """Drop every term above ``max_t_degree`` (window of a check)."""
        return TruncatedSeries._raw(
            self.space,
            {k: v for k, v in self.terms.items() if (k & _MASK) <= max_t_degree},
            self.valid_t,
        )

    def first_nonzero(self, max_t_degree: int | None = None) -> tuple[Monomial, Rational] | None:
        """Lowest nonzero term (in ``items`` order) inside the window."""
        bound = self.valid_t if max_t_degree is None else max_t_degree
        items = self.items()
        if items and items[0][0].t_degree <= bound:
            return items[0]
        return None

    def vanishes_through(self, max_t_degree: int | None = None) -> bool:
        bound = self.valid_t if max_t_degree is None else max_t_degree
        return all((k & _MASK) > bound for k in self.terms)

    def to_space(self, space: SeriesSpace) -> TruncatedSeries:
        """Re-truncate into a space with the same variables."""
        if (space.n_t, space.n_q, space.charges) != (self.space.n_t, self.space.n_q, self.space.charges):
            raise ShapeError("target space has different variables")
        td, tq = space.trunc_t, space.trunc_q
        terms = {k: v for k, v in self.terms.items()
                 if (k & _MASK) <= td and ((k >> _BITS) & _MASK) <= tq}
        if td <= self.space.trunc_t:
            valid = min(self.valid_t, td)
        else:
            # raising the order cannot make unknown coefficients exact
            valid = self.valid_t
        return TruncatedSeries._raw(space, terms, valid)

    def at_origin(self) -> Rational:
        """Value at t = 0 with every Novikov variable set to 1."""
        total = _ZERO
        for k, v in self.terms.items():
            if (k & _MASK) == 0:
                total += v
        return total

    # -- arithmetic --------------------------------------------------------
    def _check(self, other: TruncatedSeries) -> None:
        if other.space is not self.space and other.space != self.space:
            raise ShapeError(f"incompatible series spaces: {self.space!r} vs {other.space!r}")

    def __neg__(self) -> TruncatedSeries:
        return TruncatedSeries._raw(self.space, {k: -v for k, v in self.terms.items()}, self.valid_t)

    def __add__(self, other: TruncatedSeries | Scalar) -> TruncatedSeries:
        if not isinstance(other, TruncatedSeries):
            other = self.space.constant(other)
        self._check(other)
        if len(self.terms) < len(other.terms):
            small, big = self.terms, other.terms
        else:
            small, big = other.terms, self.terms
        out = dict(big)
        for k, v in small.items():
            s = out.get(k)
            if s is None:
                out[k] = v
            else:
                s = s + v
                if s:
                    out[k] = s
                else:
                    del out[k]
        return TruncatedSeries._raw(self.space, out, min(self.valid_t, other.valid_t))

    __radd__ = __add__

    def __sub__(self, other: TruncatedSeries | Scalar) -> TruncatedSeries:
        if not isinstance(other, TruncatedSeries):
            other = self.space.constant(other)
        return self + (-other)

    def __rsub__(self, other: Scalar) -> TruncatedSeries:
        return (-self) + other

    def scale(self, c: Scalar) -> TruncatedSeries:
        c = rational(c)
        if not c:
            return TruncatedSeries._raw(self.space, {}, self.valid_t)
        if c == _ONE:
            return self
        return TruncatedSeries._raw(self.space, {k: v * c for k, v in self.terms.items()}, self.valid_t)

    def _by_degree(self) -> list[list[tuple[int, Rational]]]:
        if self._groups is None:
            groups: list[list[tuple[int, Rational]]] = [[] for _ in range(self.space.trunc_t + 1)]
            for k, v in self.terms.items():
                groups[k & _MASK].append((k, v))
            while groups and not groups[-1]:
                groups.pop()
            self._groups = groups
        return self._groups

    def __mul__(self, other: TruncatedSeries | Scalar) -> TruncatedSeries:
        if not isinstance(other, TruncatedSeries):
            return self.scale(other)
        self._check(other)
        valid = min(self.valid_t, other.valid_t)
        space = self.space
        if not self.terms or not other.terms:
            return TruncatedSeries._raw(space, {}, valid)
        if self.is_one():
            return other if other.valid_t <= valid else other.with_valid(valid)
        if other.is_one():
            return self if self.valid_t <= valid else self.with_valid(valid)
        a, b = (self, other) if len(self.terms) <= len(other.terms) else (other, self)
        groups = b._by_degree()
        td, tq = space.trunc_t, space.trunc_q
        out: dict[int, Rational] = {}
        get = out.get
        for ka, ca in a.terms.items():
            lim = td - (ka & _MASK)
            if lim < 0:
                continue
            for grp in groups[: lim + 1]:
                for kb, cb in grp:
                    k = ka + kb
                    if ((k >> _BITS) & _MASK) > tq:
                        continue
                    s = get(k)
                    out[k] = ca * cb if s is None else s + ca * cb
        return TruncatedSeries._raw(space, {k: v for k, v in out.items() if v}, valid)

    def __rmul__(self, other: Scalar) -> TruncatedSeries:
        return self.scale(other)

    def __pow__(self, n: int) -> TruncatedSeries:
        if n < 0:
            raise ValueError("negative powers are not supported")
        out = self.space.one()
        for _ in range(n):
            out = out * self
        return out

    def deriv(self, alpha: int) -> TruncatedSeries:
        """Partial derivative along ``t^(alpha+1)`` (0-based index)."""
        space = self.space
        if not 0 <= alpha < space.n_t:
            raise IndexError(f"variable index {alpha} out of range")
        sh = space._t_shift[alpha]
        step = (1 << sh) + 1
        charge = space.charges[alpha]
        charged = [(s, c) for s, c in zip(space._q_shift, charge) if c]
        out: dict[int, Rational] = {}
        get = out.get
        for k, v in self.terms.items():
            e = (k >> sh) & _MASK
            if e:
                nk = k - step
                s = get(nk)
                out[nk] = v * e if s is None else s + v * e
            if charged:
                w = 0
                for qs, c in charged:
                    w += c * ((k >> qs) & _MASK)
                if w:
                    s = get(k)
                    out[k] = v * w if s is None else s + v * w
        return TruncatedSeries._raw(space, {k: v for k, v in out.items() if v}, self.valid_t - 1)

    # -- display -----------------------------------------------------------
    def to_str(self, max_terms: int | None = None) -> str:
        items = self.items()
        if not items:
            return "0"
        shown = items if max_terms is None else items[:max_terms]
        parts = []
        for mono, c in shown:
            m = str(mono)
            if m == "1":
                parts.append(str(c))
            elif c == 1:
                parts.append(m)
            elif c == -1:
                parts.append("-" + m)
            else:
                parts.append(f"{c}*{m}")
        text = " + ".join(parts).replace("+ -", "- ")
        if max_terms is not None and len(items) > max_terms:
            text += f" + ... ({len(items) - max_terms} more)"
        return text

    def __repr__(self) -> str:
        return f"TruncatedSeries({self.to_str(8)}; valid_t={self.valid_t})"


def series_sum(space: SeriesSpace, parts: Iterable[TruncatedSeries]) -> TruncatedSeries:
    """Sum many series with a single accumulator; ``valid_t`` is the minimum."""
    out: dict[int, Rational] = {}
    get = out.get
    valid = space.trunc_t
    for p in parts:
        if p.space is not space and p.space != space:
            raise ShapeError("incompatible series spaces in sum")
        if p.valid_t < valid:
            valid = p.valid_t
        for k, v in p.terms.items():
            s = get(k)
            out[k] = v if s is None else s + v
    return TruncatedSeries._raw(space, {k: v for k, v in out.items() if v}, valid)
