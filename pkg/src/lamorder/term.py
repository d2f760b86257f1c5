"""Typed higher-order terms in locally nameless, eta-long beta-normal spine form.

A preterm is one of four mutually exclusive shapes:

* ``Var(name, ty, args)``   -- a fully applied free variable,
* ``Sym(name, ty_args, params, args)`` -- a fully applied symbol; ``params``
  are its mandatory parenthesized arguments, which are *not* subterms,
* ``Db(index, ty, args)``   -- a fully applied De Bruijn index (``ty`` is the
  type of the index itself, i.e. of the variable the binder introduced),
* ``Lam(arg_ty, body)``     -- a lambda abstraction.

"Fully applied" means the spine as a whole has non-arrow type, so terms of
function type are always lambdas.  ``App`` exists only as raw input syntax;
``normalize`` is the sole entry point that establishes the invariant.
De Bruijn indices may "leak" (point beyond all binders); substitution ignores
them.
"""

from __future__ import annotations

from typing import Dict, List, Optional, Sequence, Tuple

ARROW = "->"


class TermError(Exception):
    """Ill-formed or ill-typed term input."""


# ---------------------------------------------------------------------------
# Types
# ---------------------------------------------------------------------------

class Type:
    __slots__ = ("_hash",)

    def __hash__(self) -> int:
        return self._hash


class TyVar(Type):
    __slots__ = ("name",)

    def __init__(self, name: str):
        self.name = name
        self._hash = hash(("tyvar", name))

    __hash__ = Type.__hash__

    def __eq__(self, other):
        return isinstance(other, TyVar) and other.name == self.name

    def __repr__(self):
        return "'" + self.name


class TyCon(Type):
    __slots__ = ("name", "args")

    def __init__(self, name: str, args: Tuple[Type, ...] = ()):
        self.name = name
        self.args = args
        self._hash = hash(("tycon", name, args))

    __hash__ = Type.__hash__

    def __eq__(self, other):
        return (isinstance(other, TyCon) and other._hash == self._hash
                and other.name == self.name and other.args == self.args)

    def __repr__(self):
        if not self.args:
            return self.name
        return "(%s %s)" % (self.name, " ".join(map(repr, self.args)))


def arrow(a: Type, b: Type) -> Type:
    return TyCon(ARROW, (a, b))


def arrows(arg_tys: Sequence[Type], result: Type) -> Type:
    for a in reversed(arg_tys):
        result = arrow(a, result)
    return result


def is_arrow(ty: Type) -> bool:
    return isinstance(ty, TyCon) and ty.name == ARROW


def split_arrows(ty: Type) -> Tuple[List[Type], Type]:
    """All leading arrow argument types, and the remaining tail."""
    args: List[Type] = []
    while is_arrow(ty):
        args.append(ty.args[0])
        ty = ty.args[1]
    return args, ty


def arrow_count(ty: Type) -> int:
    n = 0
    while is_arrow(ty):
        n += 1
        ty = ty.args[1]
    return n


def type_is_ground(ty: Type) -> bool:
    if isinstance(ty, TyVar):
        return False
    return all(type_is_ground(a) for a in ty.args)


def type_vars(ty: Type, acc: Optional[set] = None) -> set:
    if acc is None:
        acc = set()
    if isinstance(ty, TyVar):
        acc.add(ty.name)
    else:
        for a in ty.args:
            type_vars(a, acc)
    return acc


def subst_type(ty: Type, mapping: Dict[str, Type]) -> Type:
    if isinstance(ty, TyVar):
        return mapping.get(ty.name, ty)
    if not ty.args:
        return ty
    return TyCon(ty.name, tuple(subst_type(a, mapping) for a in ty.args))


# ---------------------------------------------------------------------------
# Signatures
# ---------------------------------------------------------------------------

class TypeDecl:
    """Symbol typing: forall ty_vars, param_types => body."""

    __slots__ = ("ty_vars", "param_types", "body")

    def __init__(self, ty_vars: Sequence[str], param_types: Sequence[Type], body: Type):
        self.ty_vars = tuple(ty_vars)
        self.param_types = tuple(param_types)
        declared = set(self.ty_vars)
        used = set()
        for pt in self.param_types:
            type_vars(pt, used)
        type_vars(body, used)
        if not used <= declared:
            raise TermError("type variables %s not declared" % sorted(used - declared))
        self.body = body

    @property
    def ty_arity(self) -> int:
        return len(self.ty_vars)

    @property
    def n_params(self) -> int:
        return len(self.param_types)

    def instantiate(self, ty_args: Sequence[Type]) -> Tuple[Tuple[Type, ...], Type]:
        if len(ty_args) != len(self.ty_vars):
            raise TermError("expected %d type arguments, got %d"
                            % (len(self.ty_vars), len(ty_args)))
        m = dict(zip(self.ty_vars, ty_args))
        return (tuple(subst_type(p, m) for p in self.param_types),
                subst_type(self.body, m))


class Signature:
    def __init__(self):
        self.type_constructors: Dict[str, int] = {ARROW: 2}
        self.symbols: Dict[str, TypeDecl] = {}

    def add_type(self, name: str, arity: int) -> None:
        if name in self.type_constructors and self.type_constructors[name] != arity:
            raise TermError("type constructor %s redeclared" % name)
        self.type_constructors[name] = arity

    def add_symbol(self, name: str, decl: TypeDecl) -> None:
        if name in self.type_constructors:
            raise TermError("symbol name %s clashes with a type constructor" % name)
        self.symbols[name] = decl

    def decl(self, name: str) -> TypeDecl:
        try:
            return self.symbols[name]
        except KeyError:
            raise TermError("unknown symbol %s" % name) from None


# ---------------------------------------------------------------------------
# Preterms
# ---------------------------------------------------------------------------

class Preterm:
    __slots__ = ("_hash",)

    def __hash__(self) -> int:
        return self._hash


class Var(Preterm):
    __slots__ = ("name", "ty", "args")

    def __init__(self, name: str, ty: Type, args: Tuple[Preterm, ...] = ()):
        self.name = name
        self.ty = ty
        self.args = args
        self._hash = hash(("var", name, ty, args))

    __hash__ = Preterm.__hash__

    def __eq__(self, other):
        return (isinstance(other, Var) and other._hash == self._hash
                and other.name == self.name and other.ty == self.ty
                and other.args == self.args)

    def __repr__(self):
        return _spine_repr(self.name, self.args)


class Sym(Preterm):
    __slots__ = ("name", "ty_args", "params", "args")

    def __init__(self, name: str, ty_args: Tuple[Type, ...] = (),
                 params: Tuple[Preterm, ...] = (), args: Tuple[Preterm, ...] = ()):
        self.name = name
        self.ty_args = ty_args
        self.params = params
        self.args = args
        self._hash = hash(("sym", name, ty_args, params, args))

    __hash__ = Preterm.__hash__

    def __eq__(self, other):
        return (isinstance(other, Sym) and other._hash == self._hash
                and other.name == self.name and other.ty_args == self.ty_args
                and other.params == self.params and other.args == self.args)

    def __repr__(self):
        head = self.name
        if self.ty_args:
            head += "<%s>" % ",".join(map(repr, self.ty_args))
        if self.params:
            head += "(%s)" % ",".join(map(repr, self.params))
        return _spine_repr(head, self.args)


class Db(Preterm):
    __slots__ = ("index", "ty", "args")

    def __init__(self, index: int, ty: Type, args: Tuple[Preterm, ...] = ()):
        self.index = index
        self.ty = ty
        self.args = args
        self._hash = hash(("db", index, ty, args))

    __hash__ = Preterm.__hash__

    def __eq__(self, other):
        return (isinstance(other, Db) and other._hash == self._hash
                and other.index == self.index and other.ty == self.ty
                and other.args == self.args)

    def __repr__(self):
        return _spine_repr("#%d" % self.index, self.args)


class Lam(Preterm):
    __slots__ = ("arg_ty", "body")

    def __init__(self, arg_ty: Type, body: Preterm):
        self.arg_ty = arg_ty
        self.body = body
        self._hash = hash(("lam", arg_ty, body))

    __hash__ = Preterm.__hash__

    def __eq__(self, other):
        return (isinstance(other, Lam) and other._hash == self._hash
                and other.arg_ty == self.arg_ty and other.body == self.body)

    def __repr__(self):
        return "(\\%r. %r)" % (self.arg_ty, self.body)


class App(Preterm):
    """Raw application node; only legal as input to normalize()."""

    __slots__ = ("fn", "arg")

    def __init__(self, fn: Preterm, arg: Preterm):
        self.fn = fn
        self.arg = arg
        self._hash = hash(("app", fn, arg))

    __hash__ = Preterm.__hash__

    def __eq__(self, other):
        return (isinstance(other, App) and other.fn == self.fn
                and other.arg == self.arg)

    def __repr__(self):
        return "(%r %r)" % (self.fn, self.arg)


def _spine_repr(head: str, args: Tuple[Preterm, ...]) -> str:
    if not args:
        return head
    return "(%s %s)" % (head, " ".join(map(repr, args)))


def app(fn: Preterm, *args: Preterm) -> Preterm:
    for a in args:
        fn = App(fn, a)
    return fn


# ---------------------------------------------------------------------------
# Typing
# ---------------------------------------------------------------------------

def head_type(t: Preterm, sig: Signature) -> Type:
    """Type of the head of a spine before consuming its arguments."""
    if isinstance(t, Var) or isinstance(t, Db):
        return t.ty
    if isinstance(t, Sym):
        decl = sig.decl(t.name)
        param_tys, body = decl.instantiate(t.ty_args)
        if len(t.params) != len(param_tys):
            raise TermError("symbol %s expects %d parameters, got %d"
                            % (t.name, len(param_tys), len(t.params)))
        return body
    raise TermError("not a spine head: %r" % t)


def type_of(t: Preterm, sig: Signature) -> Type:
    """The unique type of a preterm.  Raises TermError on ill-typed spines."""
    if isinstance(t, Lam):
        return arrow(t.arg_ty, type_of(t.body, sig))
    if isinstance(t, App):
        fn_ty = type_of(t.fn, sig)
        if not is_arrow(fn_ty):
            raise TermError("application of non-function of type %r" % fn_ty)
        return fn_ty.args[1]
    ty = head_type(t, sig)
    for i, _ in enumerate(t.args):
        if not is_arrow(ty):
            raise TermError("type mismatch at argument %d of %r" % (i + 1, t))
        ty = ty.args[1]
    return ty


def check_types(t: Preterm, sig: Signature, binders: Tuple[Type, ...] = ()) -> Type:
    """Full well-formedness check: spine arg types match, bound index types
    agree with their binders, parameters match the declaration."""
    if isinstance(t, Lam):
        return arrow(t.arg_ty, check_types(t.body, sig, (t.arg_ty,) + binders))
    if isinstance(t, App):
        raise TermError("raw application in a normalized term: %r" % t)
    if isinstance(t, Db) and t.index < len(binders):
        if binders[t.index] != t.ty:
            raise TermError("bound index #%d annotated %r but binder has %r"
                            % (t.index, t.ty, binders[t.index]))
    ty = head_type(t, sig)
    if isinstance(t, Sym):
        decl = sig.decl(t.name)
        param_tys, _ = decl.instantiate(t.ty_args)
        for p, want in zip(t.params, param_tys):
            got = check_types(p, sig, binders)
            if got != want:
                raise TermError("parameter of %s has type %r, expected %r"
                                % (t.name, got, want))
    for i, a in enumerate(t.args):
        if not is_arrow(ty):
            raise TermError("type mismatch at argument %d of %r" % (i + 1, t))
        got = check_types(a, sig, binders)
        if got != ty.args[0]:
            raise TermError("argument %d of %r has type %r, expected %r"
                            % (i + 1, t, got, ty.args[0]))
        ty = ty.args[1]
    if is_arrow(ty):
        raise TermError("under-applied spine (type %r): %r" % (ty, t))
    return ty


# ---------------------------------------------------------------------------
# Shifting and substitution on indices
# ---------------------------------------------------------------------------

def shift(t: Preterm, n: int, cutoff: int = 0) -> Preterm:
    """Add ``n`` to every De Bruijn index >= cutoff (counting binders)."""
    if n == 0:
        return t
    if isinstance(t, Var):
        return Var(t.name, t.ty, tuple(shift(a, n, cutoff) for a in t.args))
    if isinstance(t, Sym):
        # Parameters contain no leaking indices by construction, but shifting
        # them is harmless and keeps raw inputs usable.
        return Sym(t.name, t.ty_args,
                   tuple(shift(p, n, cutoff) for p in t.params),
                   tuple(shift(a, n, cutoff) for a in t.args))
    if isinstance(t, Db):
        idx = t.index + n if t.index >= cutoff else t.index
        if idx < 0:
            raise TermError("shift would make index #%d negative" % t.index)
        return Db(idx, t.ty, tuple(shift(a, n, cutoff) for a in t.args))
    if isinstance(t, Lam):
        return Lam(t.arg_ty, shift(t.body, n, cutoff + 1))
    if isinstance(t, App):
        return App(shift(t.fn, n, cutoff), shift(t.arg, n, cutoff))
    raise TermError("bad preterm: %r" % t)


def db_subst(t: Preterm, j: int, s: Preterm) -> Preterm:
    """Replace index ``j`` by ``s`` (shifted past crossed binders) and
    decrement every index above ``j``."""
    if isinstance(t, Db):
        args = tuple(db_subst(a, j, s) for a in t.args)
        if t.index == j:
            res = shift(s, j, 0)
            for a in args:
                res = App(res, a)
            return res
        if t.index > j:
            return Db(t.index - 1, t.ty, args)
        return Db(t.index, t.ty, args)
    if isinstance(t, Var):
        return Var(t.name, t.ty, tuple(db_subst(a, j, s) for a in t.args))
    if isinstance(t, Sym):
        return Sym(t.name, t.ty_args,
                   tuple(db_subst(p, j, s) for p in t.params),
                   tuple(db_subst(a, j, s) for a in t.args))
    if isinstance(t, Lam):
        return Lam(t.arg_ty, db_subst(t.body, j + 1, s))
    if isinstance(t, App):
        return App(db_subst(t.fn, j, s), db_subst(t.arg, j, s))
    raise TermError("bad preterm: %r" % t)


# ---------------------------------------------------------------------------
# Normalization: beta-reduce, then eta-expand to the long form
# ---------------------------------------------------------------------------

def _flatten(t: Preterm) -> Tuple[Preterm, List[Preterm]]:
    args: List[Preterm] = []
    while isinstance(t, App):
        args.append(t.arg)
        t = t.fn
    args.reverse()
    return t, args


def normalize(t: Preterm, sig: Signature) -> Preterm:
    """Eta-long beta-normal form.  Idempotent; the only constructor of valid
    order inputs from raw (possibly redex-containing, under-applied) terms."""
    head, extra = _flatten(t)

    if isinstance(head, Lam):
        if extra:
            reduced = db_subst(head.body, 0, extra[0])
            return normalize(app(reduced, *extra[1:]), sig)
        return Lam(head.arg_ty, normalize(head.body, sig))

    if isinstance(head, Var):
        node: Preterm = Var(head.name, head.ty,
                            tuple(normalize(a, sig) for a in list(head.args) + extra))
    elif isinstance(head, Db):
        node = Db(head.index, head.ty,
                  tuple(normalize(a, sig) for a in list(head.args) + extra))
    elif isinstance(head, Sym):
        node = Sym(head.name, head.ty_args,
                   tuple(normalize(p, sig) for p in head.params),
                   tuple(normalize(a, sig) for a in list(head.args) + extra))
    else:
        raise TermError("bad preterm head: %r" % head)

    ty = type_of(node, sig)
    if is_arrow(ty):
        # Under-applied spine: wrap one lambda and recurse; the fresh index is
        # itself eta-expanded by the recursive call.
        lifted = shift(node, 1, 0)
        return Lam(ty.args[0], normalize(App(lifted, Db(0, ty.args[0])), sig))
    return node


def eta_long_index(index: int, ty: Type, sig: Signature) -> Preterm:
    """Eta-long form of a bare De Bruijn index of the given type."""
    return normalize(Db(index, ty), sig)


# ---------------------------------------------------------------------------
# Substitutions
# ---------------------------------------------------------------------------

class Substitution:
    """Finite mapping of type variables to types and term variables to terms.

    Term images must be closed with respect to De Bruijn indices and already
    typed in the codomain world (after the type mapping).
    """

    __slots__ = ("ty_map", "term_map")

    def __init__(self, ty_map: Optional[Dict[str, Type]] = None,
                 term_map: Optional[Dict[Tuple[str, Type], Preterm]] = None):
        self.ty_map = dict(ty_map or {})
        # keyed by (name, type-after-ty_map): variable identity includes type
        self.term_map = dict(term_map or {})

    def is_empty(self) -> bool:
        return not self.ty_map and not self.term_map

    def lookup_var(self, name: str, ty_after: Type) -> Optional[Preterm]:
        return self.term_map.get((name, ty_after))


def _subst_raw(t: Preterm, sub: Substitution) -> Preterm:
    if isinstance(t, Var):
        ty = subst_type(t.ty, sub.ty_map)
        image = sub.lookup_var(t.name, ty)
        head: Preterm = image if image is not None else Var(t.name, ty)
        return app(head, *(_subst_raw(a, sub) for a in t.args))
    if isinstance(t, Sym):
        return Sym(t.name, tuple(subst_type(a, sub.ty_map) for a in t.ty_args),
                   tuple(_subst_raw(p, sub) for p in t.params),
                   tuple(_subst_raw(a, sub) for a in t.args))
    if isinstance(t, Db):
        return Db(t.index, subst_type(t.ty, sub.ty_map),
                  tuple(_subst_raw(a, sub) for a in t.args))
    if isinstance(t, Lam):
        return Lam(subst_type(t.arg_ty, sub.ty_map), _subst_raw(t.body, sub))
    if isinstance(t, App):
        return App(_subst_raw(t.fn, sub), _subst_raw(t.arg, sub))
    raise TermError("bad preterm: %r" % t)


def apply_subst(t: Preterm, sub: Substitution, sig: Signature) -> Preterm:
    """Capture-avoiding instantiation followed by renormalization."""
    if sub.is_empty():
        return t
    return normalize(_subst_raw(t, sub), sig)


def truncating_apply(t: Preterm, sub: Substitution, sig: Signature) -> Preterm:
    """Like apply_subst, but the outermost lambdas introduced by eta-expansion
    at the head are omitted (introduced indices are kept, so the result may
    have leaking indices).  Only sensible for type-only substitutions."""
    if sub.term_map:
        raise TermError("truncating application expects a type-only substitution")
    full = apply_subst(t, sub, sig)
    if isinstance(t, Lam):
        return full
    introduced = arrow_count(subst_type(type_of(t, sig), sub.ty_map))
    out = full
    for _ in range(introduced):
        if not isinstance(out, Lam):
            raise TermError("expected %d introduced lambdas on %r" % (introduced, full))
        out = out.body
    return out


def strip_lams(t: Preterm) -> Preterm:
    while isinstance(t, Lam):
        t = t.body
    return t


# ---------------------------------------------------------------------------
# Structural predicates and helpers
# ---------------------------------------------------------------------------

def is_steady(t: Preterm, sig: Signature) -> bool:
    """True iff the type is a constructor other than the arrow: such arguments
    behave first-orderly under substitution."""
    ty = type_of(t, sig)
    return isinstance(ty, TyCon) and ty.name != ARROW


def steady_split(args: Sequence[Preterm], sig: Signature) -> Tuple[Tuple[Preterm, ...], Tuple[Preterm, ...]]:
    """(prefix, suffix): suffix is the longest all-steady tail."""
    cut = len(args)
    while cut > 0 and is_steady(args[cut - 1], sig):
        cut -= 1
    return tuple(args[:cut]), tuple(args[cut:])


def is_closed(t: Preterm) -> bool:
    if isinstance(t, Var):
        return False
    if isinstance(t, Lam):
        return is_closed(t.body)
    if isinstance(t, Sym):
        return all(is_closed(p) for p in t.params) and all(is_closed(a) for a in t.args)
    return all(is_closed(a) for a in t.args)


def is_monomorphic(t: Preterm) -> bool:
    if isinstance(t, Lam):
        return type_is_ground(t.arg_ty) and is_monomorphic(t.body)
    if isinstance(t, Sym):
        return (all(type_is_ground(a) for a in t.ty_args)
                and all(is_monomorphic(p) for p in t.params)
                and all(is_monomorphic(a) for a in t.args))
    return type_is_ground(t.ty) and all(is_monomorphic(a) for a in t.args)


def is_ground(t: Preterm) -> bool:
    return is_closed(t) and is_monomorphic(t)


def refers_to_outer_binders(t: Preterm, k: int, depth: int = 0) -> bool:
    """True iff some index of t points into the first k binders enclosing it.
    Subterms for which this is false are exactly the images of shift(., k)."""
    if isinstance(t, Db):
        if depth <= t.index < depth + k:
            return True
        return any(refers_to_outer_binders(a, k, depth) for a in t.args)
    if isinstance(t, Lam):
        return refers_to_outer_binders(t.body, k, depth + 1)
    if isinstance(t, Sym):
        return any(refers_to_outer_binders(x, k, depth) for x in t.params + t.args)
    return any(refers_to_outer_binders(a, k, depth) for a in t.args)


def size(t: Preterm) -> int:
    """Head and each parameter or argument occurrence count 1; lambdas count 1."""
    if isinstance(t, Lam):
        return 1 + size(t.body)
    if isinstance(t, Sym):
        return 1 + sum(size(p) for p in t.params) + sum(size(a) for a in t.args)
    if isinstance(t, App):
        return size(t.fn) + size(t.arg)
    return 1 + sum(size(a) for a in t.args)


# ---------------------------------------------------------------------------
# Accessible positions (through arguments and lambda bodies, not parameters)
# ---------------------------------------------------------------------------
#
# These are the positions the superposition machinery may rewrite under: a
# term is accessible in itself, in any spine argument of a symbol or index
# head, and under a lambda.  Each position carries the number of lambdas in
# scope above it.

Position = Tuple[Tuple[str, int], ...]


def accessible_positions(t: Preterm) -> List[Tuple[Position, int]]:
    out: List[Tuple[Position, int]] = []

    def walk(u: Preterm, path: Position, depth: int) -> None:
        out.append((path, depth))
        if isinstance(u, Lam):
            walk(u.body, path + (("body", 0),), depth + 1)
        elif isinstance(u, (Sym, Db)):
            for i, a in enumerate(u.args):
                walk(a, path + (("arg", i),), depth)
        # Var spines do not occur in ground terms; parameters are skipped.

    walk(t, (), 0)
    return out


def subterm_at(t: Preterm, path: Position) -> Preterm:
    for step, i in path:
        if step == "body":
            t = t.body  # type: ignore[union-attr]
        else:
            t = t.args[i]  # type: ignore[union-attr]
    return t


def replace_at(t: Preterm, path: Position, s: Preterm) -> Preterm:
    """Plug ``s`` into the hole at ``path``, shifting its leaking indices by
    the hole depth first."""
    depth = sum(1 for step, _ in path if step == "body")
    return _replace(t, path, shift(s, depth, 0))


def _replace(t: Preterm, path: Position, s: Preterm) -> Preterm:
    if not path:
        return s
    (step, i), rest = path[0], path[1:]
    if step == "body":
        assert isinstance(t, Lam)
        return Lam(t.arg_ty, _replace(t.body, rest, s))
    if isinstance(t, Sym):
        args = list(t.args)
        args[i] = _replace(args[i], rest, s)
        return Sym(t.name, t.ty_args, t.params, tuple(args))
    assert isinstance(t, Db)
    args = list(t.args)
    args[i] = _replace(args[i], rest, s)
    return Db(t.index, t.ty, tuple(args))


# ---------------------------------------------------------------------------
# Eta-expansion counting
# ---------------------------------------------------------------------------

def eta_expansion_count(ty: Type) -> int:
    """Number of lambdas introduced when a head of this ground type is brought
    into eta-long form: one per expected argument, plus the expansions of each
    appended index."""
    if isinstance(ty, TyVar):
        raise TermError("eta expansion count needs a ground type")
    if not is_arrow(ty):
        return 0
    args, _ = split_arrows(ty)
    return len(args) + sum(eta_expansion_count(a) for a in args)


# ---------------------------------------------------------------------------
# Quantifier preprocessing
# ---------------------------------------------------------------------------

def preprocess_quantifiers(t: Preterm, sig: Signature,
                           forall: str = "forall", exists: str = "exists",
                           eq: str = "eq", neq: str = "neq",
                           top: str = "top", bot: str = "bot") -> Preterm:
    """Rewrite ``forall (\\x. t)`` into ``(\\x. t) = (\\x. top)`` and
    ``exists (\\x. t)`` into ``(\\x. t) /= (\\x. bot)``, bottom-up."""

    def truth_lam(arg_ty: Type, const: str) -> Preterm:
        return Lam(arg_ty, normalize(Sym(const), sig))

    def walk(u: Preterm) -> Preterm:
        if isinstance(u, Lam):
            return Lam(u.arg_ty, walk(u.body))
        if isinstance(u, Var):
            return Var(u.name, u.ty, tuple(walk(a) for a in u.args))
        if isinstance(u, Db):
            return Db(u.index, u.ty, tuple(walk(a) for a in u.args))
        assert isinstance(u, Sym)
        params = tuple(walk(p) for p in u.params)
        args = tuple(walk(a) for a in u.args)
        if u.name in (forall, exists) and len(args) == 1 and isinstance(args[0], Lam):
            lam = args[0]
            pred_ty = arrow(lam.arg_ty, type_of(lam.body, sig))
            if u.name == forall:
                return Sym(eq, (pred_ty,), (), (lam, truth_lam(lam.arg_ty, top)))
            return Sym(neq, (pred_ty,), (), (lam, truth_lam(lam.arg_ty, bot)))
        return Sym(u.name, u.ty_args, params, args)

    return walk(t)
