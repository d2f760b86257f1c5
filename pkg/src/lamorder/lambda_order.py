"""Lambda-term KBO and LPO comparisons.

Both orders are implemented at full polymorphic generality; on monomorphic or
ground inputs they restrict to the simpler relations.  Each order comes in a
naive variant, which recomputes subterm weights (KBO) or repeats argument
checks (LPO), and an optimized variant that shares those computations.  The
two variants must agree on every input; the test suite compares them
pointwise.

Comparison results are six-valued (see cmp.Cmp).  KBO first compares symbolic
weight polynomials, falling back to a shape comparison to break ties.  LPO
performs a lexicographic descent that maintains the subterm property, with a
distinguished "watershed" symbol splitting the signature: symbols above it
dominate lambdas and De Bruijn indices, symbols below are dominated by them.
"""

from __future__ import annotations

from typing import Callable, Dict, List, Optional, Sequence, Tuple, Union

from .cmp import (Cmp, E, G, GE, L, LE, U, cw_ext, flip, lex_ext,
                  merge_with_ge, merge_with_le, smooth)
from .fo_order import FoApp, FoParams, FoTerm, FoVar, fo_kbo_compare, fo_lpo_compare
from .ordinal import Ord, ONE, ZERO, ord_add, ord_compare
from .poly import (HInd, Indet, KInd, Poly, WInd, ZERO_POLY, analyze_weight_diff,
                   const_poly, indet_poly)
from . import term as tm
from .term import (Db, Lam, Preterm, Signature, Sym, TyVar, Type, Var,
                   arrow_count, is_steady, steady_split, type_of)

KBO = "kbo"
LPO = "lpo"


class OrderError(Exception):
    """Invalid order parameters."""


class LeakTypeMismatch(Exception):
    """Leaking De Bruijn indices with the same index but different types were
    compared in strict mode."""


# Instrumentation: number of weight-polynomial constructions (one per spine
# node visited).  Single-threaded use only; reset via reset_weight_calls().
_weight_calls = 0


def reset_weight_calls() -> None:
    global _weight_calls
    _weight_calls = 0


def weight_calls() -> int:
    return _weight_calls


# ---------------------------------------------------------------------------
# Parameters
# ---------------------------------------------------------------------------

class OrderParams:
    """Everything a comparison needs: the signature, weights, coefficients,
    precedences, the type order parameters and (for LPO) the watershed."""

    def __init__(self, sig: Signature, kind: str = KBO,
                 weights: Optional[Dict[str, Ord]] = None,
                 w_lam: Ord = ONE, w_db: Ord = ONE,
                 coeffs: Optional[Dict[Tuple[str, int], Ord]] = None,
                 prec: Optional[Sequence[str]] = None,
                 ty_weights: Optional[Dict[str, Ord]] = None,
                 ty_prec: Optional[Sequence[str]] = None,
                 watershed: Optional[str] = None,
                 algo: str = "optimized",
                 strict_leaks: bool = False,
                 ordinal_weights: bool = False,
                 default_weight: Ord = ONE):
        if kind not in (KBO, LPO):
            raise OrderError("unknown order kind %r" % kind)
        self.sig = sig
        self.kind = kind
        self.weights = dict(weights or {})
        self.w_lam = w_lam
        self.w_db = w_db
        self.coeffs = dict(coeffs or {})
        self.ty_weights = dict(ty_weights or {})
        self.watershed = watershed
        self.algo = algo
        self.strict_leaks = strict_leaks
        self.ordinal_weights = ordinal_weights
        self.default_weight = default_weight
        prec = list(prec) if prec is not None else sorted(sig.symbols)
        self.prec_ranks = {name: i for i, name in enumerate(prec)}
        ty_prec = list(ty_prec) if ty_prec is not None else sorted(sig.type_constructors)
        self.ty_prec_ranks = {name: i for i, name in enumerate(ty_prec)}
        self._ty_fo = FoParams(
            weight=lambda key: self.ty_weights.get(key, self.default_weight),
            coeff=lambda key, i: ONE,
            prec=lambda a, b: self.ty_prec_ranks[a] - self.ty_prec_ranks[b])
        self.validate()

    # -- providers ----------------------------------------------------------

    def w(self, name: str) -> Ord:
        return self.weights.get(name, self.default_weight)

    def k(self, name: str, i: int) -> Ord:
        return self.coeffs.get((name, i), ONE)

    def unit_coeffs(self, name: str) -> bool:
        return all(c == ONE for (f, _), c in self.coeffs.items() if f == name)

    def sym_rank(self, name: str) -> int:
        try:
            return self.prec_ranks[name]
        except KeyError:
            raise OrderError("symbol %s has no precedence rank" % name) from None

    def sym_cmp(self, g: str, f: str) -> Cmp:
        d = self.sym_rank(g) - self.sym_rank(f)
        return G if d > 0 else (L if d < 0 else E)

    def above_watershed(self, name: str) -> bool:
        if self.watershed is None:
            raise OrderError("LPO comparison requires a watershed symbol")
        return self.sym_rank(name) > self.sym_rank(self.watershed)

    def compare_types(self, ty1: Type, ty2: Type) -> Cmp:
        a, b = _type_to_fo(ty1), _type_to_fo(ty2)
        if self.kind == KBO:
            return fo_kbo_compare(a, b, self._ty_fo)
        return fo_lpo_compare(a, b, self._ty_fo)

    def compare_type_lists(self, tys1: Sequence[Type], tys2: Sequence[Type]) -> Cmp:
        return lex_ext(self.compare_types, tys1, tys2)

    # -- validation ---------------------------------------------------------

    def validate(self) -> None:
        for name, weight in self.weights.items():
            if not weight.is_positive():
                raise OrderError("symbol weight must be positive: w(%s) = %s" % (name, weight))
        if not self.w_lam.is_positive() or not self.w_db.is_positive():
            raise OrderError("lambda and index weights must be positive")
        if not self.ordinal_weights:
            # infinite weights are opt-in; the common configuration is finite
            finite = (list(self.weights.values()) + list(self.coeffs.values())
                      + list(self.ty_weights.values()) + [self.w_lam, self.w_db])
            for v in finite:
                if not v.is_natural():
                    raise OrderError("weight %s is transfinite; enable "
                                     "ordinal weights to use it" % v)
        missing = set(self.sig.symbols) - set(self.prec_ranks)
        if missing:
            raise OrderError("precedence does not rank symbols %s" % sorted(missing))
        missing_ty = set(self.sig.type_constructors) - set(self.ty_prec_ranks)
        if missing_ty:
            raise OrderError("type precedence does not rank %s" % sorted(missing_ty))
        if self.kind == LPO:
            if self.watershed is None:
                raise OrderError("a watershed symbol is required in LPO mode")
            if self.watershed not in self.prec_ranks:
                raise OrderError("watershed %s is not a ranked symbol" % self.watershed)
        if "diff" in self.sig.symbols:
            if self.kind == KBO:
                if ord_compare(self.w("diff"), self.w_db) > 0:
                    raise OrderError("w(diff) <= w_db is required")
                if not self.unit_coeffs("diff"):
                    raise OrderError("k(diff, i) = 1 is required")
            else:
                if self.sym_rank("diff") > self.sym_rank(self.watershed):
                    raise OrderError("diff must not exceed the watershed")
        for (name, i), c in self.coeffs.items():
            if not c.is_positive():
                raise OrderError("argument coefficient must be positive: k(%s,%d)" % (name, i))
            decl = self.sig.symbols.get(name)
            if decl is not None and i > arrow_count(decl.body) and c != ONE:
                # Extra spine positions only appear via type-variable
                # instantiation and must keep unit coefficients.
                raise OrderError("k(%s, %d) = 1 is required beyond the declared "
                                 "argument positions" % (name, i))
        for special in ("top", "bot"):
            if special in self.sig.symbols:
                others = [f for f in self.sig.symbols if f not in ("top", "bot")]
                if any(self.sym_rank(special) > self.sym_rank(f) for f in others):
                    raise OrderError("%s must precede every other symbol" % special)
                if self.kind == KBO and self.w(special) != ONE:
                    raise OrderError("w(%s) = 1 is required" % special)
        if "top" in self.sig.symbols and "bot" in self.sig.symbols:
            if self.sym_rank("top") > self.sym_rank("bot"):
                raise OrderError("top must precede bot")
        if self.kind == LPO and "bot" in self.sig.symbols and self.watershed is not None:
            if self.sym_rank("bot") > self.sym_rank(self.watershed):
                raise OrderError("bot must not exceed the watershed")


def _type_to_fo(ty: Type) -> FoTerm:
    if isinstance(ty, TyVar):
        return FoVar(ty.name)
    return FoApp(ty.name, tuple(_type_to_fo(a) for a in ty.args))


# ---------------------------------------------------------------------------
# Normalized indeterminate keys
# ---------------------------------------------------------------------------

WEIGHT_LIT_PREFIX = "!wt:"


def _weight_literal(weight: Ord, ty: Type, args: Tuple[Preterm, ...]) -> Preterm:
    return Sym(WEIGHT_LIT_PREFIX + str(weight), (ty,), (), args)


def norm_key(t: Preterm, p: OrderParams) -> Preterm:
    """Collapse heads that always weigh the same: a symbol spine with all-unit
    coefficients becomes a weight literal tagged with the head's type, and a
    De Bruijn head becomes the index-weight literal.  The result is only ever
    used as a syntactic key."""
    if isinstance(t, Var):
        return Var(t.name, t.ty, tuple(norm_key(a, p) for a in t.args))
    if isinstance(t, Db):
        return _weight_literal(p.w_db, t.ty, tuple(norm_key(a, p) for a in t.args))
    if isinstance(t, Sym):
        args = tuple(norm_key(a, p) for a in t.args)
        if p.unit_coeffs(t.name):
            head_ty = tm.head_type(t, p.sig)
            return _weight_literal(p.w(t.name), head_ty, args)
        return Sym(t.name, t.ty_args, t.params, args)
    assert isinstance(t, Lam)
    return Lam(t.arg_ty, norm_key(t.body, p))


def var_key(name: str, ty: Type, prefix: Tuple[Preterm, ...], p: OrderParams) -> Preterm:
    return Var(name, ty, tuple(norm_key(a, p) for a in prefix))


# ---------------------------------------------------------------------------
# Weight polynomials
# ---------------------------------------------------------------------------

def eta_poly(ty: Type, p: OrderParams,
             reps: Optional[Dict[Indet, Tuple]] = None) -> Poly:
    """Weight slack for possible eta-expansion: each expansion inserts one
    lambda and one index."""
    if isinstance(ty, TyVar):
        if reps is not None:
            reps.setdefault(HInd(ty.name), ("h", ty.name, ()))
        return Poly({(HInd(ty.name),): ord_add(p.w_lam, p.w_db)})
    return ZERO_POLY


def weight_poly(t: Preterm, p: OrderParams,
                reps: Optional[Dict[Indet, Tuple]] = None) -> Poly:
    """Symbolic weight of a preterm.

    reps, when given, collects a representative concrete origin for every
    W/K indeterminate: key -> (var name, var type, prefix argument tuple).
    Distinct origins with the same key always evaluate alike, which is the
    point of the key normalization.
    """
    global _weight_calls
    _weight_calls += 1
    if isinstance(t, Lam):
        return const_poly(p.w_lam) + weight_poly(t.body, p, reps)
    if isinstance(t, Sym):
        acc = const_poly(p.w(t.name))
        for i, a in enumerate(t.args):
            acc = acc + weight_poly(a, p, reps).scale(p.k(t.name, i + 1))
        return acc + eta_poly(type_of(t, p.sig), p, reps)
    if isinstance(t, Db):
        acc = const_poly(p.w_db)
        for a in t.args:
            acc = acc + weight_poly(a, p, reps)
        return acc + eta_poly(type_of(t, p.sig), p, reps)
    assert isinstance(t, Var)
    prefix, suffix = steady_split(t.args, p.sig)
    key = var_key(t.name, t.ty, prefix, p)
    if reps is not None:
        reps.setdefault(WInd(key), (t.name, t.ty, prefix))
    acc = const_poly(ONE) + indet_poly(WInd(key))
    wdb = const_poly(p.w_db)
    for i, a in enumerate(suffix):
        kind = KInd(key, i + 1)
        if reps is not None:
            reps.setdefault(kind, (t.name, t.ty, prefix))
        acc = acc + indet_poly(kind) * (weight_poly(a, p, reps) - wdb)
    return acc + eta_poly(type_of(t, p.sig), p, reps)


def collect_indet_reps(t: Preterm, p: OrderParams) -> Dict[Indet, Tuple]:
    reps: Dict[Indet, Tuple] = {}
    weight_poly(t, p, reps)
    return reps


# ---------------------------------------------------------------------------
# Shared shape helpers
# ---------------------------------------------------------------------------

def type_relaxed_ge(big_ty: Type, small_ty: Type) -> bool:
    """The guard that blocks verdicts which eta-expansion of the smaller side
    could invalidate: fine unless the smaller type is a type variable that
    differs from the bigger type."""
    return not isinstance(small_ty, TyVar) or big_ty == small_ty


class _Base:
    __slots__ = ("p", "sig")

    def __init__(self, p: OrderParams):
        self.p = p
        self.sig = p.sig

    def consider_poly(self, t: Preterm, s: Preterm, cmp: Cmp) -> Cmp:
        if cmp in (G, GE):
            return cmp if type_relaxed_ge(type_of(t, self.sig), type_of(s, self.sig)) else U
        if cmp in (L, LE):
            return cmp if type_relaxed_ge(type_of(s, self.sig), type_of(t, self.sig)) else U
        return cmp

    def same_var(self, t: Var, s: Var) -> bool:
        return t.name == s.name and t.ty == s.ty

    def steady_args(self, t: Var) -> bool:
        return all(is_steady(a, self.sig) for a in t.args)

    def leak_mismatch(self, t: Db, s: Db, dt: int, ds: int) -> bool:
        """Equal indices with unequal annotated types, at least one leaking."""
        if t.ty == s.ty:
            return False
        if t.index < dt and s.index < ds:
            return False
        if self.p.strict_leaks:
            raise LeakTypeMismatch(
                "leaking index #%d carries type %r on one side and %r on the other"
                % (t.index, t.ty, s.ty))
        return True


# ---------------------------------------------------------------------------
# KBO, naive
# ---------------------------------------------------------------------------

class _KboNaive(_Base):

    def compare(self, t: Preterm, s: Preterm, depth: int = 0) -> Cmp:
        diff = weight_poly(t, self.p) - weight_poly(s, self.p)
        c = analyze_weight_diff(diff)
        if c is G or c is L or c is U:
            return c
        shapes = self.shapes(t, s, depth)
        if c is GE:
            return merge_with_ge(shapes)
        if c is LE:
            return merge_with_le(shapes)
        return shapes

    def shapes(self, t: Preterm, s: Preterm, depth: int) -> Cmp:
        if isinstance(t, Var) and isinstance(s, Var) and self.same_var(t, s):
            if self.steady_args(t):
                return cw_ext(lambda a, b: self.compare(a, b, depth), t.args, s.args)
            return U
        if isinstance(t, Var) or isinstance(s, Var):
            return U
        if isinstance(t, Lam):
            if isinstance(s, Lam):
                c = self.p.compare_types(t.arg_ty, s.arg_ty)
                if c is E:
                    return self.shapes(t.body, s.body, depth + 1)
                return c
            return self.consider_poly(t, s, G)
        if isinstance(t, Db):
            if isinstance(s, Lam):
                return self.consider_poly(t, s, L)
            if isinstance(s, Db):
                if t.index > s.index:
                    return self.consider_poly(t, s, G)
                if t.index < s.index:
                    return self.consider_poly(t, s, L)
                if self.leak_mismatch(t, s, depth, depth):
                    return U
                return lex_ext(lambda a, b: self.compare(a, b, depth), t.args, s.args)
            return self.consider_poly(t, s, G)
        assert isinstance(t, Sym)
        if isinstance(s, Sym):
            c = self.p.sym_cmp(t.name, s.name)
            if c is E:
                c = self.p.compare_type_lists(t.ty_args, s.ty_args)
                if c is E:
                    return lex_ext(lambda a, b: self.compare(a, b, depth),
                                   t.params + t.args, s.params + s.args)
                return self.consider_poly(t, s, c)
            return self.consider_poly(t, s, c)
        return self.consider_poly(t, s, L)


# ---------------------------------------------------------------------------
# KBO, optimized (weights and shapes in one interleaved pass)
# ---------------------------------------------------------------------------

class _KboOpt(_Base):

    def compare(self, t: Preterm, s: Preterm) -> Cmp:
        _, c = self.process(t, s, 0)
        return c

    def direct_diff(self, t: Preterm, s: Preterm) -> Poly:
        return weight_poly(t, self.p) - weight_poly(s, self.p)

    def consider_weight(self, w: Poly, cmp: Cmp) -> Tuple[Poly, Cmp]:
        c = analyze_weight_diff(w)
        if c is G or c is L or c is U:
            return w, c
        if c is GE:
            return w, merge_with_ge(cmp)
        if c is LE:
            return w, merge_with_le(cmp)
        return w, cmp

    def lex_data(self, ts: Sequence[Preterm], ss: Sequence[Preterm],
                 depth: int, smoothed: bool) -> Tuple[List[Poly], Cmp]:
        """Lexicographic scan that also returns the per-position weight
        differences seen before it stopped."""
        diffs: List[Poly] = []
        merges: List[Callable[[Cmp], Cmp]] = []
        verdict = E
        for a, b in zip(ts, ss):
            w, c = self.process(a, b, depth)
            diffs.append(w)
            if smoothed:
                c = smooth(c)
            if c is G or c is L or c is U:
                verdict = c
                break
            if c is GE:
                merges.append(merge_with_ge)
            elif c is LE:
                merges.append(merge_with_le)
        for m in reversed(merges):
            verdict = m(verdict)
        return diffs, verdict

    def process_args(self, t_all: Sequence[Preterm], s_all: Sequence[Preterm],
                     scales: Sequence[Union[Ord, Poly]], depth: int,
                     smoothed: bool = False) -> Tuple[Poly, Cmp]:
        """Compare argument lists positionally while reconstructing the exact
        weight difference of the parent spines: each position's difference is
        scaled by that position's coefficient (zero for parameters), and the
        positions the scan never reached are filled in directly."""
        diffs, cmp = self.lex_data(t_all, s_all, depth, smoothed)
        total = ZERO_POLY
        for i in range(len(t_all)):
            scale = scales[i]
            if isinstance(scale, Ord) and scale.is_zero():
                continue
            d = diffs[i] if i < len(diffs) else self.direct_diff(t_all[i], s_all[i])
            total = total + (d.scale(scale) if isinstance(scale, Ord) else scale * d)
        return self.consider_weight(total, cmp)

    def process(self, t: Preterm, s: Preterm, depth: int) -> Tuple[Poly, Cmp]:
        if isinstance(t, Var) and isinstance(s, Var) and self.same_var(t, s):
            if self.steady_args(t):
                prefix, _ = steady_split(t.args, self.sig)
                key = var_key(t.name, t.ty, prefix, self.p)
                scales = [indet_poly(KInd(key, i + 1)) for i in range(len(t.args))]
                return self.process_args(t.args, s.args, scales, depth, smoothed=True)
            return self.consider_weight(self.direct_diff(t, s), U)
        if isinstance(t, Var) or isinstance(s, Var):
            return self.consider_weight(self.direct_diff(t, s), U)
        if isinstance(t, Lam):
            if isinstance(s, Lam):
                c = self.p.compare_types(t.arg_ty, s.arg_ty)
                if c is E:
                    return self.process(t.body, s.body, depth + 1)
                return self.consider_weight(self.direct_diff(t.body, s.body), c)
            return self.consider_weight(self.direct_diff(t, s),
                                        self.consider_poly(t, s, G))
        if isinstance(t, Db):
            if isinstance(s, Lam):
                return self.consider_weight(self.direct_diff(t, s),
                                            self.consider_poly(t, s, L))
            if isinstance(s, Db):
                if t.index > s.index:
                    return self.consider_weight(self.direct_diff(t, s),
                                                self.consider_poly(t, s, G))
                if t.index < s.index:
                    return self.consider_weight(self.direct_diff(t, s),
                                                self.consider_poly(t, s, L))
                if self.leak_mismatch(t, s, depth, depth):
                    return self.consider_weight(self.direct_diff(t, s), U)
                return self.process_args(t.args, s.args, [ONE] * len(t.args), depth)
            return self.consider_weight(self.direct_diff(t, s),
                                        self.consider_poly(t, s, G))
        assert isinstance(t, Sym)
        if isinstance(s, Sym):
            c = self.p.sym_cmp(t.name, s.name)
            if c is E:
                c = self.p.compare_type_lists(t.ty_args, s.ty_args)
                if c is E:
                    np = len(t.params)
                    scales: List[Union[Ord, Poly]] = [ZERO] * np
                    scales += [self.p.k(t.name, i + 1) for i in range(len(t.args))]
                    return self.process_args(t.params + t.args, s.params + s.args,
                                             scales, depth)
                return self.consider_weight(self.direct_diff(t, s),
                                            self.consider_poly(t, s, c))
            return self.consider_weight(self.direct_diff(t, s),
                                        self.consider_poly(t, s, c))
        return self.consider_weight(self.direct_diff(t, s),
                                    self.consider_poly(t, s, L))


# ---------------------------------------------------------------------------
# LPO, naive
# ---------------------------------------------------------------------------

class _LpoNaive(_Base):

    def consider_below_ws(self, winner: str, t: Preterm, s: Preterm, cmp: Cmp) -> Cmp:
        if self.p.above_watershed(winner):
            return cmp
        return self.consider_poly(t, s, cmp)

    def check_subs(self, ts: Sequence[Preterm], dts: int, s: Preterm, ds: int) -> bool:
        return any(self.compare(a, s, dts, ds) in (G, GE, E) for a in ts)

    def check_args(self, t: Preterm, dt: int, ss: Sequence[Preterm], dss: int) -> bool:
        return all(self.compare(t, b, dt, dss) is G for b in ss)

    def compare_args(self, t: Preterm, tp: Sequence[Preterm], ta: Sequence[Preterm], dt: int,
                     s: Preterm, sp: Sequence[Preterm], sa: Sequence[Preterm], ds: int) -> Cmp:
        c = lex_ext(lambda a, b: self.compare(a, b, dt, ds),
                    tuple(tp) + tuple(ta), tuple(sp) + tuple(sa))
        if c is G or c is GE:
            return c if self.check_args(t, dt, sa, ds) else U
        if c is L or c is LE:
            return c if self.check_args(s, ds, ta, dt) else U
        return c

    def compare(self, t: Preterm, s: Preterm, dt: int = 0, ds: int = 0) -> Cmp:
        p = self.p
        if isinstance(t, Var):
            if isinstance(s, Var):
                if self.same_var(t, s) and self.steady_args(t):
                    return cw_ext(lambda a, b: self.compare(a, b, dt, ds), t.args, s.args)
                return U
            if isinstance(s, Lam):
                return L if self.check_subs([s.body], ds + 1, t, dt) else U
            return L if self.check_subs(s.args, ds, t, dt) else U

        if isinstance(t, Sym):
            if self.check_subs(t.args, dt, s, ds):
                return G
            if isinstance(s, Var):
                return U
            if isinstance(s, Sym):
                if self.check_subs(s.args, ds, t, dt):
                    return L
                c = p.sym_cmp(t.name, s.name)
                if c is G:
                    if self.check_args(t, dt, s.args, ds):
                        return self.consider_below_ws(t.name, t, s, G)
                    return U
                if c is L:
                    if self.check_args(s, ds, t.args, dt):
                        return self.consider_below_ws(s.name, t, s, L)
                    return U
                c = p.compare_type_lists(t.ty_args, s.ty_args)
                if c is G:
                    if self.check_args(t, dt, s.args, ds):
                        return self.consider_below_ws(t.name, t, s, G)
                    return U
                if c is L:
                    if self.check_args(s, ds, t.args, dt):
                        return self.consider_below_ws(s.name, t, s, L)
                    return U
                if c is U:
                    return U
                return self.compare_args(t, t.params, t.args, dt, s, s.params, s.args, ds)
            if isinstance(s, Db):
                if self.check_subs(s.args, ds, t, dt):
                    return L
                if p.above_watershed(t.name):
                    return G if self.check_args(t, dt, s.args, ds) else U
                if self.check_args(s, ds, t.args, dt):
                    return self.consider_poly(t, s, L)
                return U
            assert isinstance(s, Lam)
            if self.check_subs([s.body], ds + 1, t, dt):
                return L
            if p.above_watershed(t.name):
                return G if self.check_args(t, dt, [s.body], ds + 1) else U
            if self.check_args(s, ds, t.args, dt):
                return self.consider_poly(t, s, L)
            return U

        if isinstance(t, Db):
            if self.check_subs(t.args, dt, s, ds):
                return G
            if isinstance(s, Var):
                return U
            if isinstance(s, Sym):
                if self.check_subs(s.args, ds, t, dt):
                    return L
                if p.above_watershed(s.name):
                    return L if self.check_args(s, ds, t.args, dt) else U
                if self.check_args(t, dt, s.args, ds):
                    return self.consider_poly(t, s, G)
                return U
            if isinstance(s, Db):
                if self.check_subs(s.args, ds, t, dt):
                    return L
                if t.index > s.index:
                    if self.check_args(t, dt, s.args, ds):
                        return self.consider_poly(t, s, G)
                    return U
                if t.index == s.index:
                    if self.leak_mismatch(t, s, dt, ds):
                        return U
                    return self.compare_args(t, (), t.args, dt, s, (), s.args, ds)
                if self.check_args(s, ds, t.args, dt):
                    return self.consider_poly(t, s, L)
                return U
            assert isinstance(s, Lam)
            if self.check_subs([s.body], ds + 1, t, dt):
                return L
            if self.check_args(t, dt, [s.body], ds + 1):
                return G
            return U

        assert isinstance(t, Lam)
        if self.check_subs([t.body], dt + 1, s, ds):
            return G
        if isinstance(s, Var):
            return U
        if isinstance(s, Sym):
            if self.check_subs(s.args, ds, t, dt):
                return L
            if p.above_watershed(s.name):
                return L if self.check_args(s, ds, [t.body], dt + 1) else U
            if self.check_args(t, dt, s.args, ds):
                return self.consider_poly(t, s, G)
            return U
        if isinstance(s, Db):
            if self.check_subs(s.args, ds, t, dt):
                return L
            if self.check_args(s, ds, [t.body], dt + 1):
                return L
            return U
        assert isinstance(s, Lam)
        if self.check_subs([s.body], ds + 1, t, dt):
            return L
        c = p.compare_types(t.arg_ty, s.arg_ty)
        if c is G:
            return G if self.check_args(t, dt, [s.body], ds + 1) else U
        if c is E:
            return self.compare(t.body, s.body, dt + 1, ds + 1)
        if c is L:
            return L if self.check_args(s, ds, [t.body], dt + 1) else U
        return U


# ---------------------------------------------------------------------------
# LPO, optimized (postponed checks, no repeated argument scans)
# ---------------------------------------------------------------------------

class _LpoOpt(_Base):
    """Restructured descent: the expensive two-sided argument checks of the
    naive algorithm are fused into single scans (compare_rest), and the
    subterm checks the naive algorithm performs up front run only when a scan
    ends without a strict verdict (finish).  On ground terms, where every
    recursive verdict is G, E or L, the fallbacks never trigger; that is
    where the exponential/polynomial gap lives.

    In every branch, a G or L produced by compare_rest's scan of the losing
    side is backed by the scan itself (the losing side's arguments are all
    dominated), so it takes the watershed/type guard of the precedence or
    type rule that fired; a verdict coming out of a subterm observation is
    never guarded."""

    def compare(self, t: Preterm, s: Preterm, dt: int = 0, ds: int = 0) -> Cmp:
        p = self.p
        if isinstance(t, Var):
            if isinstance(s, Var):
                if self.same_var(t, s) and self.steady_args(t):
                    return cw_ext(lambda a, b: self.compare(a, b, dt, ds), t.args, s.args)
                return U
            return self.finish(t, s, dt, ds, U)

        if isinstance(t, Sym):
            if isinstance(s, Var):
                return self.finish(t, s, dt, ds, U)
            if isinstance(s, Sym):
                c = p.sym_cmp(t.name, s.name)
                if c is not E:
                    out = self.prec_battle(t, s, dt, ds, c, t.name if c is G else s.name)
                else:
                    c = p.compare_type_lists(t.ty_args, s.ty_args)
                    if c is U:
                        out = U
                    elif c is not E:
                        out = self.prec_battle(t, s, dt, ds, c, t.name)
                    else:
                        out = self.compare_params_then_args(t, s, dt, ds)
                return self.finish(t, s, dt, ds, out)
            if isinstance(s, Db):
                if p.above_watershed(t.name):
                    out = self.win_by_rest(t, dt, s.args, ds, G, guard=None)
                else:
                    out = self.win_by_rest(s, ds, t.args, dt, L, guard=(t, s))
                return self.finish(t, s, dt, ds, out)
            assert isinstance(s, Lam)
            if p.above_watershed(t.name):
                out = self.win_by_rest(t, dt, [s.body], ds + 1, G, guard=None)
            else:
                out = self.win_by_rest(s, ds, t.args, dt, L, guard=(t, s))
            return self.finish(t, s, dt, ds, out)

        if isinstance(t, Db):
            if isinstance(s, Var):
                return self.finish(t, s, dt, ds, U)
            if isinstance(s, Sym):
                if p.above_watershed(s.name):
                    out = self.win_by_rest(s, ds, t.args, dt, L, guard=None)
                else:
                    out = self.win_by_rest(t, dt, s.args, ds, G, guard=(t, s))
                return self.finish(t, s, dt, ds, out)
            if isinstance(s, Db):
                if t.index > s.index:
                    out = self.win_by_rest(t, dt, s.args, ds, G, guard=(t, s))
                elif t.index < s.index:
                    out = self.win_by_rest(s, ds, t.args, dt, L, guard=(t, s))
                elif self.leak_mismatch(t, s, dt, ds):
                    out = U
                else:
                    out = self.compare_regular_args(t, dt, t.args, s, ds, s.args)
                return self.finish(t, s, dt, ds, out)
            assert isinstance(s, Lam)
            out = self.win_by_rest(t, dt, [s.body], ds + 1, G, guard=None)
            return self.finish(t, s, dt, ds, out)

        assert isinstance(t, Lam)
        if isinstance(s, Var):
            return self.finish(t, s, dt, ds, U)
        if isinstance(s, Sym):
            if p.above_watershed(s.name):
                out = self.win_by_rest(s, ds, [t.body], dt + 1, L, guard=None)
            else:
                out = self.win_by_rest(t, dt, s.args, ds, G, guard=(t, s))
            return self.finish(t, s, dt, ds, out)
        if isinstance(s, Db):
            out = self.win_by_rest(s, ds, [t.body], dt + 1, L, guard=None)
            return self.finish(t, s, dt, ds, out)
        assert isinstance(s, Lam)
        c = p.compare_types(t.arg_ty, s.arg_ty)
        if c is G:
            out = self.win_by_rest(t, dt, [s.body], ds + 1, G, guard=None)
        elif c is E:
            out = self.compare(t.body, s.body, dt + 1, ds + 1)
        elif c is L:
            out = self.win_by_rest(s, ds, [t.body], dt + 1, L, guard=None)
        else:
            out = U
        return self.finish(t, s, dt, ds, out)

    # -- helpers ------------------------------------------------------------

    def subterms(self, t: Preterm) -> Tuple[Sequence[Preterm], int]:
        if isinstance(t, Lam):
            return [t.body], 1
        if isinstance(t, Var):
            return (), 0
        return t.args, 0

    def check_subs(self, ts: Sequence[Preterm], dts: int, s: Preterm, ds: int) -> bool:
        return any(self.compare(a, s, dts, ds) in (G, GE, E) for a in ts)

    def finish(self, t: Preterm, s: Preterm, dt: int, ds: int, cmp: Cmp) -> Cmp:
        """Run the subterm rules the naive algorithm front-loads.  Inconclusive
        and nonstrict verdicts can still be beaten by a subterm win; strict
        verdicts cannot, since the relations they claim are orders."""
        if cmp is G or cmp is E or cmp is L:
            return cmp
        tsubs, dplus = self.subterms(t)
        if cmp is not LE and self.check_subs(tsubs, dt + dplus, s, ds):
            return G
        if cmp is GE:
            return cmp
        ssubs, dplus = self.subterms(s)
        if self.check_subs(ssubs, ds + dplus, t, dt):
            return L
        return cmp

    def win_by_rest(self, winner: Preterm, dw: int, loser_args: Sequence[Preterm],
                    dl: int, verdict: Cmp, guard) -> Cmp:
        """``winner`` claims ``verdict`` provided it strictly beats every one
        of the loser's arguments; when the scan instead finds an argument
        dominating the winner, the loser wins outright by its subterm rule.
        ``guard``, when (t, s), applies the type guard to the claimed verdict."""
        r = self.compare_rest(winner, dw, loser_args, dl)
        if r is G:
            if guard is not None:
                return self.consider_poly(guard[0], guard[1], verdict)
            return verdict
        if r is L:
            return flip(verdict)
        return U

    def compare_rest(self, t: Preterm, dt: int, ss: Sequence[Preterm], ds: int) -> Cmp:
        """Scan of the other side's arguments: G when t strictly beats all of
        them, L when one of them dominates t, U otherwise."""
        for i, b in enumerate(ss):
            c = self.compare(t, b, dt, ds)
            if c is G:
                continue
            if c is E or c is LE or c is L:
                return L
            # GE or U: this position can no longer decide either way
            return L if self.check_subs(ss[i + 1:], ds, t, dt) else U
        return G

    def prec_battle(self, t: Sym, s: Sym, dt: int, ds: int, c: Cmp, winner: str) -> Cmp:
        """Precedence- or type-argument-decided symbol/symbol comparison."""
        if c is G:
            r = self.compare_rest(t, dt, s.args, ds)
            if r is G:
                if self.p.above_watershed(winner):
                    return G
                return self.consider_poly(t, s, G)
            return r
        r = self.compare_rest(s, ds, t.args, dt)
        if r is G:
            if self.p.above_watershed(winner):
                return L
            return self.consider_poly(t, s, L)
        if r is L:
            return G
        return U

    def compare_regular_args(self, t: Preterm, dt: int, ts: Sequence[Preterm],
                             s: Preterm, ds: int, ss: Sequence[Preterm]) -> Cmp:
        merges: List[Callable[[Cmp], Cmp]] = []
        verdict = E
        for i in range(len(ts)):
            c = self.compare(ts[i], ss[i], dt, ds)
            if c is E:
                continue
            if c is G:
                verdict = self.compare_rest(t, dt, ss[i + 1:], ds)
                break
            if c is L:
                verdict = flip(self.compare_rest(s, ds, ts[i + 1:], dt))
                break
            if c is U:
                verdict = U
                break
            merges.append(merge_with_ge if c is GE else merge_with_le)
        for m in reversed(merges):
            verdict = m(verdict)
        return verdict

    def compare_params_then_args(self, t: Sym, s: Sym, dt: int, ds: int) -> Cmp:
        merges: List[Callable[[Cmp], Cmp]] = []
        verdict = None
        for i in range(len(t.params)):
            c = self.compare(t.params[i], s.params[i], dt, ds)
            if c is E:
                continue
            if c is G:
                verdict = self.compare_rest(t, dt, s.args, ds)
                break
            if c is L:
                verdict = flip(self.compare_rest(s, ds, t.args, dt))
                break
            if c is U:
                verdict = U
                break
            merges.append(merge_with_ge if c is GE else merge_with_le)
        if verdict is None:
            verdict = self.compare_regular_args(t, dt, t.args, s, ds, s.args)
        for m in reversed(merges):
            verdict = m(verdict)
        return verdict


# ---------------------------------------------------------------------------
# Entry points
# ---------------------------------------------------------------------------

def compare_kbo_naive(t: Preterm, s: Preterm, p: OrderParams) -> Cmp:
    if t == s:
        return E
    return _KboNaive(p).compare(t, s)


def compare_kbo_opt(t: Preterm, s: Preterm, p: OrderParams) -> Cmp:
    if t == s:
        return E
    return _KboOpt(p).compare(t, s)


def compare_lpo_naive(t: Preterm, s: Preterm, p: OrderParams) -> Cmp:
    if t == s:
        return E
    return _LpoNaive(p).compare(t, s)


def compare_lpo_opt(t: Preterm, s: Preterm, p: OrderParams) -> Cmp:
    if t == s:
        return E
    return _LpoOpt(p).compare(t, s)


def compare(t: Preterm, s: Preterm, p: OrderParams, algo: Optional[str] = None) -> Cmp:
    algo = algo or p.algo
    if p.kind == KBO:
        fn = compare_kbo_naive if algo == "naive" else compare_kbo_opt
    else:
        fn = compare_lpo_naive if algo == "naive" else compare_lpo_opt
    return fn(t, s, p)
