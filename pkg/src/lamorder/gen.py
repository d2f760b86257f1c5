"""Seeded random generation of signatures, well-typed eta-long terms,
substitutions and rewrite contexts for the property suites.

Everything is driven by a single random.Random instance per call, so a fixed
(seed, config) pair reproduces the same objects.
"""

from __future__ import annotations

import random
from typing import Dict, List, Optional, Sequence, Tuple

from .lambda_order import KBO, LPO, OrderParams
from .ordinal import ONE, Ord, OMEGA, from_int, ord_add
from . import term as tm
from .term import (Db, Lam, Preterm, Signature, Substitution, Sym, TyCon, TyVar,
                   Type, TypeDecl, Var, accessible_positions, arrow, arrows,
                   is_arrow, split_arrows, subst_type)


class GenError(Exception):
    pass


class GenConfig:
    def __init__(self, seed: int = 0, max_size: int = 14, max_arity: int = 3,
                 ty_var_count: int = 2, term_var_count: int = 4,
                 ordinal_weights: bool = False, polymorphic: bool = False,
                 n_symbols: int = 6):
        self.seed = seed
        self.max_size = max_size
        self.max_arity = max_arity
        self.ty_var_count = ty_var_count
        self.term_var_count = term_var_count
        self.ordinal_weights = ordinal_weights
        self.polymorphic = polymorphic
        self.n_symbols = n_symbols


# ---------------------------------------------------------------------------
# Signatures with constraint-satisfying parameters
# ---------------------------------------------------------------------------

def _random_base(rng: random.Random, bases: Sequence[Type]) -> Type:
    return rng.choice(list(bases))


def _random_type(rng: random.Random, bases: Sequence[Type], depth: int = 2) -> Type:
    if depth <= 0 or rng.random() < 0.55:
        return _random_base(rng, bases)
    return arrow(_random_type(rng, bases, depth - 1), _random_type(rng, bases, depth - 1))


def gen_signature(cfg: GenConfig) -> Tuple[Signature, OrderParams, OrderParams]:
    """A signature plus matching KBO and LPO parameter sets.  Always includes
    top, bot and diff with their required weights and precedence slots, and a
    watershed at or above diff."""
    rng = random.Random(cfg.seed)
    sig = Signature()
    sig.add_type("iota", 0)
    sig.add_type("kappa", 0)
    bases = [TyCon("iota"), TyCon("kappa")]

    sig.add_symbol("top", TypeDecl((), (), bases[0]))
    sig.add_symbol("bot", TypeDecl((), (), bases[0]))
    # the extensionality Skolem: both parameters are functions A -> B and the
    # result is the point of type A at which they differ
    dv = arrow(TyVar("A"), TyVar("B"))
    sig.add_symbol("diff", TypeDecl(("A", "B"), (dv, dv), TyVar("A")))

    names = []
    # every base type gets a constant so that enumeration and generation
    # never dead-end
    for i, b in enumerate(bases):
        name = "c%d" % i
        sig.add_symbol(name, TypeDecl((), (), b))
        names.append(name)
    for i in range(cfg.n_symbols):
        name = "f%d" % i
        n_args = rng.randint(0, cfg.max_arity)
        arg_tys = [_random_type(rng, bases, 1) for _ in range(n_args)]
        body = arrows(arg_tys, _random_base(rng, bases))
        sig.add_symbol(name, TypeDecl((), (), body))
        names.append(name)
    if cfg.polymorphic:
        sig.add_symbol("pany", TypeDecl(("P",), (), TyVar("P")))
        sig.add_symbol("pfun", TypeDecl(("P",), (), arrow(TyVar("P"), bases[1])))
        names += ["pany", "pfun"]
    # one symbol with a parameter, so parameter handling is exercised
    sig.add_symbol("sk", TypeDecl((), (bases[0],), arrow(bases[0], bases[0])))
    names.append("sk")

    def rand_weight() -> Ord:
        if cfg.ordinal_weights and rng.random() < 0.25:
            return ord_add(OMEGA, from_int(rng.randint(0, 2)))
        return from_int(rng.randint(1, 3))

    weights = {"top": ONE, "bot": ONE, "diff": ONE}
    w_db = from_int(rng.randint(1, 2))
    w_lam = from_int(rng.randint(1, 2))
    for name in names:
        weights[name] = rand_weight()
    coeffs: Dict[Tuple[str, int], Ord] = {}
    for name in names:
        decl = sig.symbols[name]
        for i in range(1, tm.arrow_count(decl.body) + 1):
            if rng.random() < 0.25:
                coeffs[(name, i)] = from_int(rng.randint(2, 3))

    rest = names[:]
    rng.shuffle(rest)
    prec = ["top", "bot", "diff"] + rest
    ws_index = rng.randint(2, len(prec) - 1)  # diff's slot or later
    watershed = prec[ws_index]

    ty_prec = list(sig.type_constructors)
    rng.shuffle(ty_prec)
    ty_weights = {name: from_int(rng.randint(1, 2)) for name in sig.type_constructors}

    common = dict(weights=weights, w_lam=w_lam, w_db=w_db, coeffs=coeffs,
                  prec=prec, ty_weights=ty_weights, ty_prec=ty_prec,
                  watershed=watershed, ordinal_weights=cfg.ordinal_weights)
    return sig, OrderParams(sig, KBO, **common), OrderParams(sig, LPO, **common)


# ---------------------------------------------------------------------------
# Terms
# ---------------------------------------------------------------------------

def min_size(ty: Type) -> int:
    """Smallest possible eta-long term of this type, assuming every base type
    has a nullary inhabitant (gen_signature guarantees it)."""
    n = 1
    while is_arrow(ty):
        n += 1
        ty = ty.args[1]
    return n


class TermGen:
    """Budget-driven generation of eta-long, well-typed preterms.  The budget
    is a hard size bound: children receive shares that sum below it."""

    def __init__(self, rng: random.Random, sig: Signature,
                 var_types: Optional[Dict[str, Type]] = None,
                 ty_pool: Optional[Sequence[Type]] = None,
                 poly_ty_vars: Sequence[str] = ()):
        self.rng = rng
        self.sig = sig
        self.var_types = dict(var_types or {})
        if ty_pool is None:
            ty_pool = [TyCon(n) for n, a in sig.type_constructors.items()
                       if a == 0 and n != tm.ARROW]
        self.ty_pool = list(ty_pool) + [TyVar(v) for v in poly_ty_vars]

    def gen(self, ty: Type, budget: int, ground: bool,
            binders: Tuple[Type, ...] = ()) -> Preterm:
        return self._gen(ty, max(budget, min_size(ty)), ground, binders)

    def _gen(self, ty: Type, budget: int, ground: bool,
             binders: Tuple[Type, ...]) -> Preterm:
        if is_arrow(ty):
            a, b = ty.args
            return Lam(a, self._gen(b, budget - 1, ground, (a,) + binders))
        candidates = self._heads(ty, ground, binders, budget)
        if not candidates:
            raise GenError("no head inhabits %r within budget %d" % (ty, budget))
        kind, ident, head_ty, param_tys, arg_tys = self.rng.choice(candidates)
        mins = [min_size(x) for x in param_tys] + [min_size(x) for x in arg_tys]
        spare = budget - 1 - sum(mins)
        shares = []
        for m in mins:
            bonus = self.rng.randint(0, spare) if spare > 0 else 0
            spare -= bonus
            shares.append(m + bonus)
        np = len(param_tys)
        # parameters must be closed with respect to indices
        params = tuple(self._gen(pt, shares[i], ground, ())
                       for i, pt in enumerate(param_tys))
        args = tuple(self._gen(at, shares[np + i], ground, binders)
                     for i, at in enumerate(arg_tys))
        if kind == "db":
            return Db(ident, head_ty, args)
        if kind == "var":
            return Var(ident, head_ty, args)
        return Sym(ident, head_ty, params, args)

    def _heads(self, ty: Type, ground: bool, binders: Tuple[Type, ...], budget: int):
        out = []

        def fits(param_tys, arg_tys) -> bool:
            return (1 + sum(min_size(x) for x in param_tys)
                    + sum(min_size(x) for x in arg_tys)) <= budget

        for i, bty in enumerate(binders):
            arg_tys, base = split_arrows(bty)
            if base == ty and fits((), arg_tys):
                out.append(("db", i, bty, (), arg_tys))
        if not ground:
            for name, vty in self.var_types.items():
                arg_tys, base = split_arrows(vty)
                if base == ty and fits((), arg_tys):
                    out.append(("var", name, vty, (), arg_tys))
        for name, decl in self.sig.symbols.items():
            inst = self._match_decl(decl, ty)
            if inst is None:
                continue
            param_tys, body = decl.instantiate(inst)
            arg_tys, _ = split_arrows(body)
            if fits(param_tys, arg_tys):
                out.append(("sym", name, tuple(inst), param_tys, arg_tys))
        return out

    def _match_decl(self, decl: TypeDecl, ty: Type) -> Optional[Tuple[Type, ...]]:
        """A type-argument tuple making the declaration's result equal ty, or
        None.  Unconstrained type variables are filled from the pool."""
        _, base = split_arrows(decl.body)
        mapping: Dict[str, Type] = {}
        if isinstance(base, TyVar):
            mapping[base.name] = ty
        elif not self._match_type(base, ty, mapping):
            return None
        inst = []
        for v in decl.ty_vars:
            if v in mapping:
                inst.append(mapping[v])
            elif self.ty_pool:
                inst.append(self.rng.choice(self.ty_pool))
            else:
                return None
        # argument types may still mention variables we just filled; the
        # instantiation is checked by construction elsewhere
        return tuple(inst)

    @staticmethod
    def _match_type(pattern: Type, target: Type, mapping: Dict[str, Type]) -> bool:
        if isinstance(pattern, TyVar):
            if pattern.name in mapping:
                return mapping[pattern.name] == target
            mapping[pattern.name] = target
            return True
        if not isinstance(target, TyCon) or target.name != pattern.name:
            return False
        if len(pattern.args) != len(target.args):
            return False
        return all(TermGen._match_type(a, b, mapping)
                   for a, b in zip(pattern.args, target.args))


def gen_var_types(rng: random.Random, cfg: GenConfig, sig: Signature,
                  polymorphic: bool = False) -> Dict[str, Type]:
    bases = [TyCon(n) for n, a in sig.type_constructors.items()
             if a == 0 and n != tm.ARROW]
    out: Dict[str, Type] = {}
    for i in range(cfg.term_var_count):
        if polymorphic and i % 3 == 2:
            out["x%d" % i] = TyVar("a%d" % (i % cfg.ty_var_count))
        elif i % 2 == 1:
            out["x%d" % i] = arrow(_random_base(rng, bases), _random_base(rng, bases))
        else:
            out["x%d" % i] = _random_base(rng, bases)
    return out


def gen_term(cfg: GenConfig, sig: Signature, ty: Type, ground: bool,
             rng: Optional[random.Random] = None,
             var_types: Optional[Dict[str, Type]] = None) -> Preterm:
    rng = rng or random.Random(cfg.seed)
    g = TermGen(rng, sig, var_types=var_types)
    return g.gen(ty, cfg.max_size, ground)


# ---------------------------------------------------------------------------
# Substitutions
# ---------------------------------------------------------------------------

def gen_ground_type(rng: random.Random, sig: Signature, depth: int = 1,
                    flat: bool = False) -> Type:
    bases = [TyCon(n) for n, a in sig.type_constructors.items()
             if a == 0 and n != tm.ARROW]
    if depth <= 0 or rng.random() < 0.5:
        return rng.choice(bases)
    if flat:
        n = rng.randint(1, 2)
        return arrows([rng.choice(bases) for _ in range(n)], rng.choice(bases))
    return arrow(gen_ground_type(rng, sig, depth - 1, flat),
                 gen_ground_type(rng, sig, depth - 1, flat))


def gen_monomorphizing_subst(rng: random.Random, sig: Signature,
                             ty_vars: Sequence[str], flat: bool = False) -> Substitution:
    return Substitution(ty_map={a: gen_ground_type(rng, sig, flat=flat)
                                for a in ty_vars})


def gen_grounding_subst(rng: random.Random, sig: Signature,
                        var_types: Dict[str, Type],
                        ty_vars: Sequence[str] = (),
                        budget: int = 6) -> Substitution:
    ty_map = {a: gen_ground_type(rng, sig) for a in ty_vars}
    g = TermGen(rng, sig)
    term_map = {}
    for name, vty in var_types.items():
        ground_ty = subst_type(vty, ty_map)
        term_map[(name, ground_ty)] = g.gen(ground_ty, budget, ground=True)
    return Substitution(ty_map=ty_map, term_map=term_map)


def free_var_types(t: Preterm) -> Dict[str, Type]:
    out: Dict[str, Type] = {}

    def walk(u: Preterm) -> None:
        if isinstance(u, Var):
            out[u.name] = u.ty
            for a in u.args:
                walk(a)
        elif isinstance(u, Lam):
            walk(u.body)
        elif isinstance(u, Sym):
            for x in u.params + u.args:
                walk(x)
        else:
            for a in u.args:
                walk(a)

    walk(t)
    return out


def free_ty_vars(t: Preterm) -> List[str]:
    acc: set = set()

    def add_ty(ty: Type) -> None:
        tm.type_vars(ty, acc)

    def walk(u: Preterm) -> None:
        if isinstance(u, Lam):
            add_ty(u.arg_ty)
            walk(u.body)
        elif isinstance(u, Sym):
            for a in u.ty_args:
                add_ty(a)
            for x in u.params + u.args:
                walk(x)
        else:
            add_ty(u.ty)
            for a in u.args:
                walk(a)

    walk(t)
    return sorted(acc)


# ---------------------------------------------------------------------------
# Rewrite contexts
# ---------------------------------------------------------------------------

def gen_context(rng: random.Random, t: Preterm):
    """A uniformly chosen accessible position of a ground term, with depth."""
    return rng.choice(accessible_positions(t))
