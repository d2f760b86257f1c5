"""Weight polynomials over symbolic indeterminates with ordinal coefficients.

Indeterminates stand for unknown facts about variable instantiations:

* ``WInd(key)``    -- weight (minus one, without leading lambdas) of the
  instantiation of an applied variable; ``key`` is a normalized spine,
* ``KInd(key, i)`` -- copy multiplicity of the i-th pending argument,
* ``HInd(name)``   -- eta expansions a type variable's instantiation causes.

Keys are compared syntactically.  Polynomials are kept in standard form: a
map from monomials (multisets of indeterminates, stored as sorted tuples) to
nonzero signed ordinal coefficients.
"""

from __future__ import annotations

from typing import Dict, Mapping, Optional, Tuple, Union

from .cmp import Cmp, E, G, GE, L, LE, U
from .ordinal import Ord, ZERO, ONE, ord_add, ord_mul
from . import term as tm


class PolyError(Exception):
    pass


# ---------------------------------------------------------------------------
# Indeterminates
# ---------------------------------------------------------------------------

class Indet:
    __slots__ = ("_hash",)

    def __hash__(self):
        return self._hash


class WInd(Indet):
    __slots__ = ("key",)

    def __init__(self, key: tm.Preterm):
        self.key = key
        self._hash = hash(("w", key))

    __hash__ = Indet.__hash__

    def __eq__(self, other):
        return isinstance(other, WInd) and other.key == self.key

    def __repr__(self):
        return "w[%r]" % (self.key,)


class KInd(Indet):
    __slots__ = ("key", "i")

    def __init__(self, key: tm.Preterm, i: int):
        self.key = key
        self.i = i
        self._hash = hash(("k", key, i))

    __hash__ = Indet.__hash__

    def __eq__(self, other):
        return isinstance(other, KInd) and other.i == self.i and other.key == self.key

    def __repr__(self):
        return "k[%r,%d]" % (self.key, self.i)


class HInd(Indet):
    __slots__ = ("name",)

    def __init__(self, name: str):
        self.name = name
        self._hash = hash(("h", name))

    __hash__ = Indet.__hash__

    def __eq__(self, other):
        return isinstance(other, HInd) and other.name == self.name

    def __repr__(self):
        return "h[%s]" % self.name


# Structural sort keys give a deterministic, total monomial order.

def _ty_skey(ty: tm.Type):
    if isinstance(ty, tm.TyVar):
        return (0, ty.name)
    return (1, ty.name, tuple(_ty_skey(a) for a in ty.args))


def _tm_skey(t: tm.Preterm):
    if isinstance(t, tm.Var):
        return (0, t.name, _ty_skey(t.ty), tuple(_tm_skey(a) for a in t.args))
    if isinstance(t, tm.Db):
        return (1, t.index, _ty_skey(t.ty), tuple(_tm_skey(a) for a in t.args))
    if isinstance(t, tm.Sym):
        return (2, t.name, tuple(_ty_skey(a) for a in t.ty_args),
                tuple(_tm_skey(p) for p in t.params),
                tuple(_tm_skey(a) for a in t.args))
    assert isinstance(t, tm.Lam)
    return (3, _ty_skey(t.arg_ty), _tm_skey(t.body))


def indet_skey(x: Indet):
    if isinstance(x, WInd):
        return (0, _tm_skey(x.key))
    if isinstance(x, KInd):
        return (1, _tm_skey(x.key), x.i)
    assert isinstance(x, HInd)
    return (2, x.name)


Monomial = Tuple[Indet, ...]


def monomial(*indets: Indet) -> Monomial:
    return tuple(sorted(indets, key=indet_skey))


def _mono_mul(a: Monomial, b: Monomial) -> Monomial:
    return tuple(sorted(a + b, key=indet_skey))


# ---------------------------------------------------------------------------
# Polynomials
# ---------------------------------------------------------------------------

class Poly:
    """Immutable standard-form polynomial: monomial tuple -> nonzero Ord."""

    __slots__ = ("_coeffs", "_hash", "_items")

    def __init__(self, coeffs: Optional[Mapping[Monomial, Ord]] = None):
        cleaned = {m: c for m, c in (coeffs or {}).items() if not c.is_zero()}
        self._coeffs = cleaned
        self._items = tuple(sorted(cleaned.items(),
                                   key=lambda mc: tuple(indet_skey(x) for x in mc[0])))
        self._hash = hash(self._items)

    def __hash__(self):
        return self._hash

    def __eq__(self, other):
        return isinstance(other, Poly) and other._items == self._items

    def items(self) -> Tuple[Tuple[Monomial, Ord], ...]:
        return self._items

    def coeff(self, m: Monomial) -> Ord:
        return self._coeffs.get(m, ZERO)

    @property
    def constant(self) -> Ord:
        """The constant monomial's coefficient; 0 when absent."""
        return self._coeffs.get((), ZERO)

    def is_zero(self) -> bool:
        return not self._coeffs

    def is_constant(self) -> bool:
        return not self._coeffs or (len(self._coeffs) == 1 and () in self._coeffs)

    def indets(self) -> set:
        out: set = set()
        for m, _ in self._items:
            out.update(m)
        return out

    # -- ring operations ----------------------------------------------------

    def __add__(self, other: "Poly") -> "Poly":
        if other.is_zero():
            return self
        if self.is_zero():
            return other
        acc = dict(self._coeffs)
        for m, c in other._coeffs.items():
            acc[m] = ord_add(acc.get(m, ZERO), c)
        return Poly(acc)

    def __neg__(self) -> "Poly":
        return Poly({m: -c for m, c in self._coeffs.items()})

    def __sub__(self, other: "Poly") -> "Poly":
        return self + (-other)

    def __mul__(self, other: "Poly") -> "Poly":
        acc: Dict[Monomial, Ord] = {}
        for ma, ca in self._coeffs.items():
            for mb, cb in other._coeffs.items():
                m = _mono_mul(ma, mb)
                acc[m] = ord_add(acc.get(m, ZERO), ord_mul(ca, cb))
        return Poly(acc)

    def scale(self, c: Ord) -> "Poly":
        if c.is_zero():
            return Poly()
        return Poly({m: ord_mul(c, k) for m, k in self._coeffs.items()})

    # -- analysis -----------------------------------------------------------

    def surely_nonneg(self) -> bool:
        """Sound, incomplete: True only if every coefficient is >= 0, which
        forces a nonnegative value under every assignment."""
        return all(c.is_nonneg() for c in self._coeffs.values())

    def __repr__(self):
        if not self._items:
            return "0"
        parts = []
        for m, c in self._items:
            if not m:
                parts.append(str(c))
            elif c == ONE:
                parts.append("*".join(map(repr, m)))
            else:
                parts.append("(%s)*%s" % (c, "*".join(map(repr, m))))
        return " + ".join(parts)


def const_poly(c: Union[Ord, int]) -> Poly:
    if isinstance(c, int):
        from .ordinal import from_int
        c = from_int(c)
    if c.is_zero():
        return Poly()
    return Poly({(): c})


def indet_poly(x: Indet) -> Poly:
    return Poly({(x,): ONE})


ZERO_POLY = Poly()
ONE_POLY = const_poly(1)


# ---------------------------------------------------------------------------
# Weight-difference analysis
# ---------------------------------------------------------------------------

def analyze_weight_diff(w: Poly) -> Cmp:
    """Classify the sign of ``w`` across all assignments, refined by the sign
    of the constant monomial when one direction is certain."""
    nonneg = w.surely_nonneg()
    nonpos = (-w).surely_nonneg()
    if nonneg and nonpos:
        return E
    if nonneg:
        return G if w.constant.is_positive() else GE
    if nonpos:
        return L if (-w.constant).is_positive() else LE
    return U


# ---------------------------------------------------------------------------
# Assignments and substitutions
# ---------------------------------------------------------------------------

def eval_poly(w: Poly, assignment: Mapping[Indet, Ord]) -> Ord:
    """Value under a total assignment; raises naming any missing indeterminate."""
    total = ZERO
    for m, c in w.items():
        acc = c
        for x in m:
            if x not in assignment:
                raise PolyError("assignment is missing %r" % (x,))
            acc = ord_mul(acc, assignment[x])
        total = ord_add(total, acc)
    return total


def subst_poly(w: Poly, mapping: Mapping[Indet, Union[Indet, Ord, Poly]]) -> Poly:
    """Replace indeterminates by indeterminates, ordinal values or whole
    polynomials, then renormalize."""
    out = ZERO_POLY
    for m, c in w.items():
        acc = const_poly(c)
        for x in m:
            img = mapping.get(x, x)
            if isinstance(img, Indet):
                acc = acc * indet_poly(img)
            elif isinstance(img, Ord):
                acc = acc.scale(img)
            else:
                acc = acc * img
        out = out + acc
    return out


# ---------------------------------------------------------------------------
# Counter-assisted accumulator (optional optimization layer)
# ---------------------------------------------------------------------------

class PolyBuilder:
    """Single-owner accumulator that maintains counts of negative and of
    positive monomial coefficients, so both nonnegativity checks used by
    analyze_weight_diff are O(1) instead of a scan.  Validated in tests
    against recomputation from scratch."""

    __slots__ = ("_coeffs", "_neg", "_pos")

    def __init__(self, start: Optional[Poly] = None):
        self._coeffs: Dict[Monomial, Ord] = {}
        self._neg = 0
        self._pos = 0
        if start is not None:
            for m, c in start.items():
                self.add_monomial(m, c)

    def add_monomial(self, m: Monomial, c: Ord) -> None:
        old = self._coeffs.get(m, ZERO)
        if not old.is_zero():
            self._count(old, -1)
        new = ord_add(old, c)
        if new.is_zero():
            self._coeffs.pop(m, None)
        else:
            self._coeffs[m] = new
            self._count(new, 1)

    def add(self, w: Poly, scale: Ord = ONE) -> None:
        for m, c in w.items():
            self.add_monomial(m, ord_mul(scale, c))

    def _count(self, c: Ord, delta: int) -> None:
        if c.is_positive():
            self._pos += delta
        else:
            self._neg += delta

    def surely_nonneg(self) -> bool:
        return self._neg == 0

    def surely_nonpos(self) -> bool:
        return self._pos == 0

    def analyze(self) -> Cmp:
        nonneg = self._neg == 0
        nonpos = self._pos == 0
        if nonneg and nonpos:
            return E
        const = self._coeffs.get((), ZERO)
        if nonneg:
            return G if const.is_positive() else GE
        if nonpos:
            return L if (-const).is_positive() else LE
        return U

    def snapshot(self) -> Poly:
        return Poly(dict(self._coeffs))
