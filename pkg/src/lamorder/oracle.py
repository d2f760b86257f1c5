"""Ground-level differential oracle.

Ground preterms are encoded into untyped first-order terms over a virtual
signature whose symbols are keys: one per (symbol, type arguments,
parameters) combination, one per (index, argument count) pair, and one per
lambda binder type.  Comparing encodings with the plain first-order KBO/LPO
under a derived precedence reproduces the lambda-term orders exactly, which
makes an independent test oracle.

This module also builds the indeterminate assignments and substitutions the
weight lemmas are stated with, and a small-term exhaustive enumerator.
"""

from __future__ import annotations

import itertools
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .cmp import Cmp, E, G, L
from .fo_order import FoApp, FoParams, FoTerm, fo_kbo_compare, fo_kbo_weight, fo_lpo_compare
from .lambda_order import (KBO, LPO, OrderParams, var_key, weight_poly)
from .ordinal import Ord, ONE, ZERO, from_int, ord_add, ord_mul
from .poly import HInd, Indet, KInd, Poly, PolyError, WInd, const_poly, indet_poly
from . import term as tm
from .term import (Db, Lam, Preterm, Signature, Substitution, Sym, TyVar, Type,
                   Var, eta_expansion_count, is_ground, is_steady,
                   split_arrows, strip_lams, subst_type)


class OracleError(Exception):
    pass


# ---------------------------------------------------------------------------
# Encoding
# ---------------------------------------------------------------------------

class FoSymKey:
    __slots__ = ("_hash",)

    def __hash__(self):
        return self._hash


class FKey(FoSymKey):
    __slots__ = ("name", "ty_args", "params")

    def __init__(self, name: str, ty_args: Tuple[Type, ...], params: Tuple[Preterm, ...]):
        self.name = name
        self.ty_args = ty_args
        self.params = params
        self._hash = hash(("fkey", name, ty_args, params))

    __hash__ = FoSymKey.__hash__

    def __eq__(self, other):
        return (isinstance(other, FKey) and other.name == self.name
                and other.ty_args == self.ty_args and other.params == self.params)

    def __repr__(self):
        return "F:%s" % self.name


class DbKey(FoSymKey):
    __slots__ = ("index", "argc")

    def __init__(self, index: int, argc: int):
        self.index = index
        self.argc = argc
        self._hash = hash(("dbkey", index, argc))

    __hash__ = FoSymKey.__hash__

    def __eq__(self, other):
        return (isinstance(other, DbKey) and other.index == self.index
                and other.argc == self.argc)

    def __repr__(self):
        return "DB:%d/%d" % (self.index, self.argc)


class LamKey(FoSymKey):
    __slots__ = ("ty",)

    def __init__(self, ty: Type):
        self.ty = ty
        self._hash = hash(("lamkey", ty))

    __hash__ = FoSymKey.__hash__

    def __eq__(self, other):
        return isinstance(other, LamKey) and other.ty == self.ty

    def __repr__(self):
        return "LAM:%r" % (self.ty,)


def encode_ground(t: Preterm) -> FoTerm:
    if isinstance(t, Sym):
        return FoApp(FKey(t.name, t.ty_args, t.params),
                     tuple(encode_ground(a) for a in t.args))
    if isinstance(t, Db):
        return FoApp(DbKey(t.index, len(t.args)),
                     tuple(encode_ground(a) for a in t.args))
    if isinstance(t, Lam):
        return FoApp(LamKey(t.arg_ty), (encode_ground(t.body),))
    raise OracleError("cannot encode nonground preterm %r" % (t,))


# ---------------------------------------------------------------------------
# Derived precedences and first-order parameters
# ---------------------------------------------------------------------------

def _cmp_sign(c: Cmp) -> int:
    if c is G:
        return 1
    if c is L:
        return -1
    if c is E:
        return 0
    raise OracleError("type comparison of ground types must be total, got %s" % c)


def make_fo_params(p: OrderParams) -> FoParams:
    """First-order weights, coefficients and precedence derived from the
    lambda-order parameters; the precedence ties the knot through the
    first-order comparison itself for parameter tiebreaks."""

    def weight(key) -> Ord:
        if isinstance(key, FKey):
            return p.w(key.name)
        if isinstance(key, DbKey):
            return p.w_db
        return p.w_lam

    def coeff(key, i: int) -> Ord:
        if isinstance(key, FKey):
            return p.k(key.name, i)
        return ONE

    kbo_mode = p.kind == KBO

    def tier(key) -> int:
        if kbo_mode:
            if isinstance(key, FKey):
                return 0
            if isinstance(key, DbKey):
                return 1
            return 2
        # LPO: symbols at or below the watershed, lambdas, indices, the rest
        if isinstance(key, FKey):
            return 3 if p.above_watershed(key.name) else 0
        if isinstance(key, LamKey):
            return 1
        return 2

    def prec(a, b) -> int:
        if a == b:
            return 0
        ta, tb = tier(a), tier(b)
        if ta != tb:
            return ta - tb
        if isinstance(a, FKey):
            d = p.sym_rank(a.name) - p.sym_rank(b.name)
            if d:
                return d
            for ua, ub in zip(a.ty_args, b.ty_args):
                if ua == ub:
                    continue
                return _cmp_sign(p.compare_types(ua, ub))
            for va, vb in zip(a.params, b.params):
                if va == vb:
                    continue
                c = compare_fn(encode_ground(va), encode_ground(vb), fop)
                if c is E:
                    raise OracleError("distinct parameters encode equal: %r, %r" % (va, vb))
                return _cmp_sign(c)
            return 0
        if isinstance(a, DbKey):
            if a.index != b.index:
                return a.index - b.index
            return a.argc - b.argc
        return _cmp_sign(p.compare_types(a.ty, b.ty))

    compare_fn = fo_kbo_compare if kbo_mode else fo_lpo_compare
    fop = FoParams(weight=weight, coeff=coeff, prec=prec)
    return fop


def prec_kb(a: FoSymKey, b: FoSymKey, p: OrderParams) -> int:
    """Sign of the derived KBO-mode precedence between two encoding keys."""
    if p.kind != KBO:
        raise OracleError("prec_kb needs KBO-mode parameters")
    return make_fo_params(p).prec(a, b)


def prec_lp(a: FoSymKey, b: FoSymKey, p: OrderParams) -> int:
    """Sign of the derived LPO-mode precedence between two encoding keys."""
    if p.kind != LPO:
        raise OracleError("prec_lp needs LPO-mode parameters")
    return make_fo_params(p).prec(a, b)


def oracle_compare(t: Preterm, s: Preterm, p: OrderParams) -> Cmp:
    """Total comparison of ground preterms via the first-order encoding."""
    if not is_ground(t) or not is_ground(s):
        raise OracleError("oracle comparison requires ground preterms")
    fop = make_fo_params(p)
    a, b = encode_ground(t), encode_ground(s)
    if p.kind == KBO:
        return fo_kbo_compare(a, b, fop)
    return fo_lpo_compare(a, b, fop)


def oracle_weight(t: Preterm, p: OrderParams) -> Ord:
    return fo_kbo_weight(encode_ground(t), make_fo_params(p))


# ---------------------------------------------------------------------------
# Assignments induced by substitutions
# ---------------------------------------------------------------------------

def _check_nonfunctional_range(theta: Substitution, sig: Signature) -> None:
    def bad(t: Preterm) -> bool:
        if isinstance(t, Var):
            if tm.is_arrow(t.ty) or isinstance(t.ty, TyVar) or t.args:
                return True
            return False
        if isinstance(t, Lam):
            return bad(t.body)
        if isinstance(t, tm.App):
            return bad(t.fn) or bad(t.arg)
        if isinstance(t, Sym):
            return any(bad(x) for x in t.params + t.args)
        return any(bad(x) for x in t.args)

    for image in theta.term_map.values():
        if bad(image):
            raise OracleError("substitution maps to a term with functional variables: %r"
                              % (image,))


def _count_leading_lams(t: Preterm) -> int:
    n = 0
    while isinstance(t, Lam):
        n += 1
        t = t.body
    return n


def _copy_count(v: Preterm, i: int, p: OrderParams) -> Ord:
    """Number of De Bruijn indices in ``v`` referring to its i-th expected
    argument, each weighted by the product of the argument coefficients above
    it.  Occurrences inside parameters do not count, matching the weight
    function."""
    m = _count_leading_lams(v)
    if i > m:
        return ZERO
    total = [ZERO]

    def walk(u: Preterm, depth: int, coeff: Ord) -> None:
        if isinstance(u, Lam):
            walk(u.body, depth + 1, coeff)
            return
        if isinstance(u, Db):
            if u.index == m - i + depth:
                total[0] = ord_add(total[0], coeff)
            for a in u.args:
                walk(a, depth, coeff)
            return
        if isinstance(u, Sym):
            for j, a in enumerate(u.args):
                walk(a, depth, ord_mul(coeff, p.k(u.name, j + 1)))
            return
        for a in u.args:
            walk(a, depth, coeff)

    walk(strip_lams(v), 0, ONE)
    return total[0]


def assignment_from_grounding(theta: Substitution, reps: Dict[Indet, Tuple],
                              p: OrderParams) -> Dict[Indet, Poly]:
    """Values of the weight indeterminates induced by a substitution whose
    range contains only nonfunctional variables.  The result maps each
    indeterminate to a polynomial, which is constant when theta grounds."""
    _check_nonfunctional_range(theta, p.sig)
    out: Dict[Indet, Poly] = {}
    for ind, rep in reps.items():
        if isinstance(ind, HInd):
            raise OracleError("grounding assignment applied to polymorphic weight")
        name, ty, prefix = rep
        image = tm.apply_subst(Var(name, ty, tuple(prefix)), theta, p.sig)
        if isinstance(ind, WInd):
            out[ind] = weight_poly(strip_lams(image), p) - const_poly(1)
        else:
            out[ind] = const_poly(_copy_count(image, ind.i, p))
    return out


def poly_subst_from_monomorphizing(theta: Substitution, reps: Dict[Indet, Tuple],
                                   p: OrderParams) -> Dict[Indet, Poly]:
    """Indeterminate substitution induced by a type-only substitution onto
    ground types.

    Instantiation can turn prefix arguments steady (they move into the
    indexed sum) and can eta-expand the spine head (the expansion indices
    land as arguments with weight contribution zero), so the images of the
    W indeterminates are polynomials, not mere renamings, and K indices
    shift accordingly.  Instantiations of a head type variable whose argument
    types are themselves functional are rejected: no indeterminate
    substitution expresses them."""
    if theta.term_map:
        raise OracleError("monomorphizing substitution must not map term variables")
    for alpha, image_ty in theta.ty_map.items():
        if not tm.type_is_ground(image_ty):
            raise OracleError("monomorphizing substitution must map to ground types")

    out: Dict[Indet, Poly] = {}
    for ind, rep in reps.items():
        if isinstance(ind, HInd):
            image_ty = theta.ty_map.get(ind.name)
            if image_ty is None:
                raise OracleError("substitution does not cover type variable %s" % ind.name)
            out[ind] = const_poly(eta_expansion_count(image_ty))
            continue
        name, ty, prefix = rep
        ty2 = subst_type(ty, theta.ty_map)
        if not tm.type_is_ground(ty2):
            raise OracleError("substitution does not cover the type of variable %s" % name)
        arg_tys_all, tail = split_arrows(ty)
        pending = len(arg_tys_all) - len(prefix)  # suffix slots of this spine
        tail2 = subst_type(tail, theta.ty_map)
        exp_tys, _ = split_arrows(tail2)
        c = len(exp_tys)
        # the arguments eta-expansion appends behind the pending slots
        e_args = [tm.eta_long_index(c - 1 - j, exp_tys[j], p.sig) for j in range(c)]
        prefix2 = tuple(tm.apply_subst(a, theta, p.sig) for a in prefix)
        wdb = const_poly(p.w_db)
        wlam = const_poly(p.w_lam)
        eta_count = eta_expansion_count(tail2)

        if pending and not all(is_steady(e, p.sig) for e in e_args):
            # the pending steady arguments would migrate into the key itself,
            # which no per-indeterminate image can express
            raise PolyError(
                "head instantiation %r introduces functional arguments ahead of "
                "pending ones; the weight image is not expressible as a "
                "substitution" % (tail2,))

        if pending:
            cut = len(prefix2)
            while cut > 0 and is_steady(prefix2[cut - 1], p.sig):
                cut -= 1
            new_prefix, moved = prefix2[:cut], prefix2[cut:]
            key2 = var_key(name, ty2, new_prefix, p)
            if isinstance(ind, KInd):
                out[ind] = indet_poly(KInd(key2, len(moved) + ind.i))
                continue
            acc = indet_poly(WInd(key2))
            for j, a in enumerate(moved):
                acc = acc + indet_poly(KInd(key2, j + 1)) * (weight_poly(a, p) - wdb)
            base = len(moved) + pending
            for j, e in enumerate(e_args):
                acc = acc + indet_poly(KInd(key2, base + j + 1)) * (weight_poly(e, p) - wdb)
        else:
            if isinstance(ind, KInd):
                raise OracleError("argument indeterminate on a spine without "
                                  "pending arguments: %r" % (ind,))
            everything = prefix2 + tuple(e_args)
            cut = len(everything)
            while cut > 0 and is_steady(everything[cut - 1], p.sig):
                cut -= 1
            new_prefix, moved = everything[:cut], everything[cut:]
            key2 = var_key(name, ty2, new_prefix, p)
            acc = indet_poly(WInd(key2))
            for j, a in enumerate(moved):
                acc = acc + indet_poly(KInd(key2, j + 1)) * (weight_poly(a, p) - wdb)
        if c:
            acc = acc + wlam.scale(from_int(c))
        if eta_count:
            acc = acc - (wlam + wdb).scale(from_int(eta_count))
        out[ind] = acc
    return out


# ---------------------------------------------------------------------------
# Exhaustive enumeration of small ground terms
# ---------------------------------------------------------------------------

def default_type_pool(sig: Signature) -> List[Type]:
    pool = [tm.TyCon(name) for name, ar in sig.type_constructors.items()
            if ar == 0 and name != tm.ARROW]
    seen = set(pool)
    for decl in sig.symbols.values():
        if decl.ty_vars:
            continue
        for ty in (decl.body,) + decl.param_types:
            for sub in _subtypes(ty):
                if sub not in seen:
                    seen.add(sub)
                    pool.append(sub)
    return pool


def _subtypes(ty: Type) -> Iterable[Type]:
    yield ty
    if isinstance(ty, tm.TyCon):
        for a in ty.args:
            yield from _subtypes(a)


def enum_ground_terms(sig: Signature, ty: Type, max_size: int,
                      ty_pool: Optional[Sequence[Type]] = None) -> List[Preterm]:
    """All eta-long ground preterms of the given ground type with size at most
    max_size.  Complete for monomorphic signatures; polymorphic symbols are
    instantiated from the type pool only."""
    if not tm.type_is_ground(ty):
        raise OracleError("enumeration target type must be ground")
    pool = list(ty_pool) if ty_pool is not None else default_type_pool(sig)
    memo: Dict[Tuple, Tuple[Preterm, ...]] = {}

    def heads(binders: Tuple[Type, ...], target: Type):
        for i, bty in enumerate(binders):
            arg_tys, base = split_arrows(bty)
            if base == target:
                yield ("db", i, bty, (), arg_tys)
        for name, decl in sig.symbols.items():
            for inst in itertools.product(pool, repeat=decl.ty_arity):
                param_tys, body = decl.instantiate(inst)
                arg_tys, base = split_arrows(body)
                if base == target:
                    yield ("sym", name, tuple(inst), param_tys, arg_tys)

    def enum(binders: Tuple[Type, ...], target: Type, budget: int) -> Tuple[Preterm, ...]:
        if budget <= 0:
            return ()
        key = (binders, target, budget)
        got = memo.get(key)
        if got is not None:
            return got
        out: List[Preterm] = []
        if tm.is_arrow(target):
            a, b = target.args
            for body in enum((a,) + binders, b, budget - 1):
                out.append(Lam(a, body))
        else:
            for head in heads(binders, target):
                kind, ident, ty_or_inst, param_tys, arg_tys = head
                # parameters are index-closed, so they enumerate in an empty
                # binder context
                for params, psize in arg_tuples((), param_tys, budget - 1):
                    for args, asize in arg_tuples(binders, arg_tys,
                                                  budget - 1 - psize):
                        if kind == "db":
                            out.append(Db(ident, ty_or_inst, args))
                        else:
                            out.append(Sym(ident, ty_or_inst, params, args))
        result = tuple(out)
        memo[key] = result
        return result

    def arg_tuples(binders: Tuple[Type, ...], tys: Sequence[Type], budget: int):
        if not tys:
            yield (), 0
            return
        if budget < len(tys):
            return
        rest_min = len(tys) - 1
        for first in enum(binders, tys[0], budget - rest_min):
            fsize = tm.size(first)
            for rest, rsize in arg_tuples(binders, tys[1:], budget - fsize):
                yield (first,) + rest, fsize + rsize

    return list(enum((), ty, max_size))
