"""Term representation: normalization, substitution, structural helpers."""

import random

import pytest

from lamorder.gen import GenConfig, TermGen, free_var_types, gen_grounding_subst, gen_signature
from lamorder.term import (ARROW, App, Db, Lam, Preterm, Signature, Substitution,
                           Sym, TermError, TyCon, TyVar, TypeDecl, Var,
                           accessible_positions, app, apply_subst, arrow, arrows,
                           check_types, eta_expansion_count, is_ground,
                           is_monomorphic, is_steady, normalize,
                           preprocess_quantifiers, refers_to_outer_binders,
                           replace_at, shift, size, strip_lams, subterm_at,
                           truncating_apply, type_of)

K = TyCon("k")
O = TyCon("o")


@pytest.fixture
def sig():
    s = Signature()
    s.add_type("k", 0)
    s.add_type("o", 0)
    s.add_symbol("a", TypeDecl((), (), K))
    s.add_symbol("b", TypeDecl((), (), K))
    s.add_symbol("f", TypeDecl((), (), arrow(K, K)))
    s.add_symbol("g", TypeDecl((), (), arrow(K, arrow(K, K))))
    s.add_symbol("c", TypeDecl(("A",), (), TyVar("A")))
    s.add_symbol("sk", TypeDecl((), (K,), arrow(K, K)))
    return s


def test_type_of_basics(sig):
    assert type_of(Sym("a"), sig) == K
    assert type_of(Lam(K, Db(0, K)), sig) == arrow(K, K)
    assert type_of(Var("z", TyVar("alpha")), sig) == TyVar("alpha")
    t = normalize(app(Sym("f"), Sym("a")), sig)
    assert type_of(t, sig) == K


def test_type_mismatch_detected(sig):
    bad = Sym("f", (), (), (Sym("a"), Sym("b")))
    with pytest.raises(TermError):
        type_of(bad, sig)
    with pytest.raises(TermError):
        check_types(Sym("f", (), (), (Lam(K, Db(0, K)),)), sig)


def test_normalize_eta_expands_bare_symbol(sig):
    assert normalize(Sym("f"), sig) == Lam(K, Sym("f", (), (), (Db(0, K),)))


def test_normalize_beta_reduces(sig):
    t = normalize(app(Lam(K, Db(0, K)), Sym("a")), sig)
    assert t == Sym("a")


def test_normalize_idempotent_on_example(sig):
    t = Lam(K, Sym("f", (), (), (Db(0, K),)))
    assert normalize(t, sig) == t


def test_normalize_equal_modulo_beta_eta(sig):
    # f, \x. f x and (\y. y) f all normalize identically
    n1 = normalize(Sym("f"), sig)
    n2 = normalize(Lam(K, app(Sym("f"), Db(0, K))), sig)
    n3 = normalize(app(Lam(arrow(K, K), Db(0, arrow(K, K))), Sym("f")), sig)
    assert n1 == n2 == n3


def test_shift_examples(sig):
    t = Sym("f", (), (), (Db(3, K),))
    assert shift(t, 1, 0) == Sym("f", (), (), (Db(4, K),))
    u = Lam(K, Sym("g", (), (), (Db(0, K), Db(1, K))))
    assert shift(u, 1, 0) == Lam(K, Sym("g", (), (), (Db(0, K), Db(2, K))))
    assert shift(Sym("a"), 5, 0) == Sym("a")
    assert shift(t, 0, 0) is t


def test_apply_subst_type_instantiation(sig):
    z = Var("z", TyVar("alpha"))
    out = apply_subst(z, Substitution(ty_map={"alpha": arrow(K, K)}), sig)
    assert out == Lam(K, Var("z", arrow(K, K), (Db(0, K),)))


def test_apply_subst_collapses_ignored_argument(sig):
    y = Var("y", arrow(K, K))
    t = normalize(app(y, Sym("a")), sig)
    theta = Substitution(term_map={("y", arrow(K, K)): Lam(K, Sym("b"))})
    assert apply_subst(t, theta, sig) == Sym("b")


def test_apply_subst_empty_is_identity(sig):
    t = normalize(app(Sym("g"), Sym("a"), Sym("b")), sig)
    assert apply_subst(t, Substitution(), sig) is t


def test_truncating_apply(sig):
    c = normalize(Sym("c", (TyVar("alpha"),)), sig)
    two = Substitution(ty_map={"alpha": arrow(K, arrow(K, K))})
    assert truncating_apply(c, two, sig) == \
        Sym("c", (arrow(K, arrow(K, K)),), (), (Db(1, K), Db(0, K)))
    base = Substitution(ty_map={"alpha": K})
    assert truncating_apply(c, base, sig) == Sym("c", (K,))
    nested = Substitution(ty_map={"alpha": arrow(arrow(K, K), K)})
    got = truncating_apply(c, nested, sig)
    assert got == Sym("c", (arrow(arrow(K, K), K),), (),
                      (Lam(K, Db(1, arrow(K, K), (Db(0, K),))),))


def test_strip_lams(sig):
    t = Lam(K, Lam(K, Sym("f", (), (), (Db(0, K),))))
    assert strip_lams(t) == Sym("f", (), (), (Db(0, K),))
    assert strip_lams(Sym("a")) == Sym("a")
    assert strip_lams(Lam(K, Db(0, K))) == Db(0, K)


def test_is_steady(sig):
    assert is_steady(Sym("a"), sig)
    assert not is_steady(Lam(K, Sym("a")), sig)
    assert not is_steady(Var("x", TyVar("alpha")), sig)


def test_accessible_positions_and_depths(sig):
    fa = normalize(app(Sym("f"), Sym("a")), sig)
    assert [(p, d) for p, d in accessible_positions(fa)] == \
        [((), 0), ((("arg", 0),), 0)]
    t = Lam(K, Sym("g", (), (), (Db(0, K), Sym("a"))))
    pos = accessible_positions(t)
    assert ((), 0) in pos
    assert ((("body", 0),), 1) in pos
    assert ((("body", 0), ("arg", 0)), 1) in pos
    assert ((("body", 0), ("arg", 1)), 1) in pos


def test_parameters_are_not_positions(sig):
    t = normalize(Sym("sk", (), (Sym("a"),), (Sym("b"),)), sig)
    paths = [p for p, _ in accessible_positions(t)]
    for path in paths:
        sub = subterm_at(t, path)
        assert sub != Sym("a") or path == ()  # the parameter itself is unreachable


def test_replace_shifts_leaking_indices(sig):
    ctx = Lam(K, Sym("f", (), (), (Sym("a"),)))
    path = (("body", 0), ("arg", 0))
    s = Sym("f", (), (), (Db(0, K),))  # leaks
    out = replace_at(ctx, path, s)
    assert out == Lam(K, Sym("f", (), (), (Sym("f", (), (), (Db(1, K),)),)))
    closed = replace_at(ctx, path, Sym("b"))
    assert closed == Lam(K, Sym("f", (), (), (Sym("b"),)))


def test_extraction_round_trip_random(sig):
    rng = random.Random(11)
    g = TermGen(rng, sig)
    for _ in range(300):
        ty = rng.choice([K, arrow(K, K)])
        t = g.gen(ty, 9, ground=True)
        for path, depth in accessible_positions(t):
            sub = subterm_at(t, path)
            if refers_to_outer_binders(sub, depth):
                continue
            lowered = shift(sub, -depth, 0) if depth else sub
            assert replace_at(t, path, lowered) == t


def test_size_equations(sig):
    assert size(Sym("a")) == 1
    assert size(Var("x", K)) == 1
    assert size(Db(0, K)) == 1
    assert size(Lam(K, Db(0, K))) == 2
    fa = normalize(app(Sym("f"), Sym("a")), sig)
    assert size(fa) == size(Sym("f", (), (), ())) + size(Sym("a"))
    withparam = Sym("sk", (), (Sym("a"),), (Sym("b"),))
    assert size(withparam) == 1 + 1 + 1


def test_eta_expansion_count():
    assert eta_expansion_count(arrow(arrow(K, K), K)) == 2
    assert eta_expansion_count(K) == 0
    assert eta_expansion_count(arrow(K, arrow(K, K))) == 2
    with pytest.raises(TermError):
        eta_expansion_count(TyVar("alpha"))


def test_groundness_predicates(sig):
    assert is_ground(Sym("a"))
    assert not is_ground(Var("x", K))
    assert not is_ground(Sym("c", (TyVar("alpha"),)))
    assert is_monomorphic(Sym("c", (K,)))


def test_normalize_idempotent_randomized(sig):
    rng = random.Random(5)
    g = TermGen(rng, sig, var_types={"x": K, "h": arrow(K, K)})
    for _ in range(10000):
        ty = rng.choice([K, arrow(K, K), arrow(arrow(K, K), K)])
        t = g.gen(ty, 7, ground=False)
        assert normalize(t, sig) == t
        assert type_of(t, sig) == ty
    check_types(t, sig)


def test_truncating_strips_exactly_the_introduced_lambdas():
    from lamorder.gen import GenConfig, gen_monomorphizing_subst, gen_signature
    from lamorder.term import Substitution, arrow_count, subst_type
    cfg = GenConfig(seed=99, polymorphic=True)
    sig2, _, _ = gen_signature(cfg)
    rng = random.Random(99)
    alpha = TyVar("a0")
    g = TermGen(rng, sig2, var_types={"x": alpha, "h": arrow(TyCon("iota"), alpha)},
                poly_ty_vars=["a0"])
    for _ in range(1000):
        t = g.gen(alpha, 6, ground=False)
        theta = gen_monomorphizing_subst(rng, sig2, ["a0"])
        full = apply_subst(t, theta, sig2)
        introduced = arrow_count(subst_type(alpha, theta.ty_map))
        peeled = full
        for _ in range(introduced):
            assert isinstance(peeled, Lam)
            peeled = peeled.body
        assert truncating_apply(t, theta, sig2) == peeled


def test_subst_composition_randomized():
    cfg = GenConfig(seed=23)
    sig2, _, _ = gen_signature(cfg)
    rng = random.Random(23)
    g = TermGen(rng, sig2, var_types={"x": TyCon("iota"),
                                      "h": arrow(TyCon("iota"), TyCon("kappa"))})
    for _ in range(200):
        t = g.gen(rng.choice([TyCon("iota"), TyCon("kappa")]), 9, ground=False)
        fv = free_var_types(t)
        theta = gen_grounding_subst(rng, sig2, fv)
        names = sorted(fv)
        first = {(n, fv[n]): theta.term_map[(n, fv[n])] for n in names[:1]}
        rest = {(n, fv[n]): theta.term_map[(n, fv[n])] for n in names[1:]}
        one = apply_subst(t, theta, sig2)
        two = apply_subst(apply_subst(t, Substitution(term_map=first), sig2),
                          Substitution(term_map=rest), sig2)
        assert one == two


def test_quantifier_preprocessing():
    s = Signature()
    s.add_type("i", 0)
    s.add_type("o", 0)
    i, o = TyCon("i"), TyCon("o")
    s.add_symbol("top", TypeDecl((), (), o))
    s.add_symbol("bot", TypeDecl((), (), o))
    s.add_symbol("p", TypeDecl((), (), arrow(i, o)))
    s.add_symbol("forall", TypeDecl(("A",), (), arrow(arrow(TyVar("A"), o), o)))
    s.add_symbol("exists", TypeDecl(("A",), (), arrow(arrow(TyVar("A"), o), o)))
    s.add_symbol("eq", TypeDecl(("A",), (), arrows([TyVar("A"), TyVar("A")], o)))
    s.add_symbol("neq", TypeDecl(("A",), (), arrows([TyVar("A"), TyVar("A")], o)))

    body = Lam(i, Sym("p", (), (), (Db(0, i),)))
    t = normalize(Sym("forall", (i,), (), (body,)), s)
    got = preprocess_quantifiers(t, s)
    want = Sym("eq", (arrow(i, o),), (), (body, Lam(i, Sym("top"))))
    assert got == want

    t2 = normalize(Sym("exists", (i,), (), (body,)), s)
    got2 = preprocess_quantifiers(t2, s)
    want2 = Sym("neq", (arrow(i, o),), (), (body, Lam(i, Sym("bot"))))
    assert got2 == want2

    plain = normalize(Sym("p", (), (), (Var("z", i),)), s)
    assert preprocess_quantifiers(plain, s) == plain
