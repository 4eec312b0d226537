import pytest

from promc.base import (classify_map, compose, identity, set_map, set_obj,
                        chain_map, zero_complex)
from promc.errors import PreconditionError, VerificationFailure
from promc.indexing import chain_poset, from_covers, point_poset
from promc.prohom import constant_embed
from promc.proobj import (compose_pro, constant_over, identity_pro, level_map,
                          pro_object, to_general)
from promc.strict import (ACYCLIC_FIB, FIB, MODE_L1, MODE_L2, detect_special,
                          factor_strict, lift_strict, matching_map)
from promc.suites import Rng, gen_level_map, gen_pro_object

from helpers import disk1, disk_to_sphere, sphere0


def detect_example_pair():
    """Chain 0<1 with bijective M_1 f and bijective f_0 (the worked
    special acyclic fibration)."""
    I = chain_poset(2)
    X = pro_object(I, {"1": set_obj(["a", "b"]), "0": set_obj(["x"])},
                   {("1", "0"): set_map(set_obj(["a", "b"]), set_obj(["x"]),
                                        {"a": "x", "b": "x"})})
    Y = pro_object(I, {"1": set_obj(["u", "v"]), "0": set_obj(["y"])},
                   {("1", "0"): set_map(set_obj(["u", "v"]), set_obj(["y"]),
                                        {"u": "y", "v": "y"})})
    f = level_map(X, Y, {
        "1": set_map(X.value("1"), Y.value("1"), {"a": "u", "b": "v"}),
        "0": set_map(X.value("0"), Y.value("0"), {"x": "y"}),
    })
    return X, Y, f


# ------------------------------------------------------------- matching

def test_matching_minimal_is_component():
    X, Y, f = detect_example_pair()
    m = matching_map(f, "0")
    assert m.map == f.level_component("0")
    assert m.cone is None


def test_matching_worked_pullback():
    X, Y, f = detect_example_pair()
    m = matching_map(f, "1")
    assert sorted(m.map.target.elements) == ["(x,u)", "(x,v)"]
    assert m.map.mapping == {"a": "(x,u)", "b": "(x,v)"}
    assert classify_map(m.map).is_we


def test_matching_identity_is_iso():
    rng = Rng(5)
    X = gen_pro_object(rng, chain_poset(3), "set-bij")
    f = identity_pro(X)
    for t in X.index.elements:
        cls = classify_map(matching_map(f, t).map)
        assert cls.is_we  # M_t(id) is an isomorphism


# -------------------------------------------------------- detect_special

def test_detect_special_identity():
    rng = Rng(6)
    X = gen_pro_object(rng, chain_poset(2), "chain-f2")
    res = detect_special(identity_pro(X), ACYCLIC_FIB)
    assert res.ok


def test_detect_special_worked_example():
    _, _, f = detect_example_pair()
    assert detect_special(f, ACYCLIC_FIB).ok


def test_detect_special_disk_failing_level():
    # level map over chain 0<1 with M_1 f = D1 -> S0: a special fibration
    # but not a special acyclic fibration, failing at level 1
    I = chain_poset(2)
    D, S = disk1(), sphere0()
    X = pro_object(I, {"1": D, "0": S},
                   {("1", "0"): disk_to_sphere()})
    Y = constant_over(I, S)
    f = level_map(X, Y, {"1": disk_to_sphere(), "0": identity(S)})
    m = matching_map(f, "1")
    cls = classify_map(m.map)
    assert cls.is_fib and not cls.is_we
    assert detect_special(f, FIB).ok
    res = detect_special(f, ACYCLIC_FIB)
    assert not res.ok and res.failing == "1"


# -------------------------------------------------------- factor_strict

def test_factor_constant_is_base_factorization():
    S = sphere0()
    cS = constant_embed(zero_complex())
    cT = constant_embed(S)
    f = level_map(cS, cT, {"pt": chain_map(zero_complex(), S, {})})
    fs = factor_strict(f, MODE_L1)
    from promc.base import COF_ACF, factor_map
    base = factor_map(f.level_component("pt"), COF_ACF)
    assert fs.middle.value("pt") == base.middle
    assert fs.left.level_component("pt") == base.left
    assert fs.right.level_component("pt") == base.right


def test_factor_worked_collapse_L1():
    from helpers import collapse_triple
    X, Y, f = collapse_triple()
    fs = factor_strict(f, MODE_L1)
    assert fs.special.ok
    for s, cls in fs.special.verdicts.items():
        assert cls.is_we and cls.is_fib


def test_factor_modes_on_random_level_maps():
    rng = Rng(77)
    for k in range(6):
        for inst in ("set-bij", "chain-f2"):
            f = gen_level_map(rng, chain_poset(3), inst,
                              max_size=3, max_deg=1, max_dim=2)
            for mode in (MODE_L1, MODE_L2):
                fs = factor_strict(f, mode)
                fs.replay_composite()
                assert fs.special.ok


def test_factor_requires_level():
    rng = Rng(9)
    f = gen_level_map(rng, chain_poset(2), "set-bij")
    with pytest.raises(PreconditionError):
        factor_strict(to_general(f), MODE_L1)


def test_factor_omega_truncated():
    two = set_obj(["p", "q"])
    one = set_obj(["z"])
    from promc.proobj import omega_pro_object
    X = omega_pro_object(lambda n: two, lambda n: identity(two), depth=6)
    Y = omega_pro_object(lambda n: one, lambda n: identity(one), depth=6)
    f = level_map(X, Y, lambda n: set_map(two, one, {"p": "z", "q": "z"}),
                  check=False, depth=6)
    fs = factor_strict(f, MODE_L1, depth=6)
    assert fs.special.ok
    assert fs.special.depth == 6


# ----------------------------------------------------------- lift_strict

def test_lift_identity_left():
    X, Y, f = detect_example_pair()
    sp = detect_special(f, ACYCLIC_FIB)
    res = lift_strict(identity_pro(X), f, identity_pro(X), f,
                      mode=MODE_L1, special=sp)
    assert compose_pro(res.lift, identity_pro(X)).equals(identity_pro(X))
    assert compose_pro(f, res.lift).equals(f)


def test_lift_worked_inclusion():
    # i: c({a}) -> c({a,b}) against the worked special acyclic fibration
    X, Y, f = detect_example_pair()
    I = X.index
    A = constant_over(I, set_obj(["a"]))
    B = constant_over(I, set_obj(["a", "b"]))
    i = level_map(A, B, {s: set_map(A.value(s), B.value(s), {"a": "a"})
                         for s in I.elements})
    top = level_map(A, X, {
        "1": set_map(A.value("1"), X.value("1"), {"a": "a"}),
        "0": set_map(A.value("0"), X.value("0"), {"a": "x"}),
    })
    bottom = level_map(B, Y, {
        "1": set_map(B.value("1"), Y.value("1"), {"a": "u", "b": "v"}),
        "0": set_map(B.value("0"), Y.value("0"), {"a": "y", "b": "y"}),
    })
    res = lift_strict(i, f, top, bottom, mode=MODE_L1)
    assert compose_pro(res.lift, i).equals(top)
    assert compose_pro(f, res.lift).equals(bottom)


def test_lift_chain_constant_disk():
    D, S = disk1(), sphere0()
    P = point_poset()
    cz = constant_over(P, zero_complex())
    cD = constant_over(P, D)
    cS = constant_over(P, S)
    i = level_map(cz, cD, {"pt": chain_map(zero_complex(), D, {})})
    p = level_map(cD, cS, {"pt": disk_to_sphere()})
    top = level_map(cz, cD, {"pt": chain_map(zero_complex(), D, {})})
    bottom = level_map(cD, cS, {"pt": disk_to_sphere()})
    res = lift_strict(i, p, top, bottom, mode=MODE_L2)
    assert res.lift.realize("pt") == identity(D)


def test_lift_from_factorizations_random():
    rng = Rng(123)
    for k in range(4):
        for inst in ("set-bij", "chain-f2"):
            poset = chain_poset(2) if k % 2 else from_covers(
                ["0", "a", "b", "m"],
                [("0", "a"), ("0", "b"), ("a", "m"), ("b", "m")])
            q = gen_level_map(rng, poset, inst, max_size=3, max_deg=1, max_dim=2)
            fsq = factor_strict(q, MODE_L1)
            j = fsq.left            # levelwise cofibration
            p = fsq.right           # special acyclic fibration
            res = lift_strict(j, p, j, p, mode=MODE_L1, special=fsq.special)
            assert compose_pro(res.lift, j).equals(j)
            assert compose_pro(p, res.lift).equals(p)


def test_lift_rejects_noncommuting():
    X, Y, f = detect_example_pair()
    I = X.index
    A = constant_over(I, set_obj(["a"]))
    B = constant_over(I, set_obj(["a", "b"]))
    i = level_map(A, B, {s: set_map(A.value(s), B.value(s), {"a": "a"})
                         for s in I.elements})
    top = level_map(A, X, {
        "1": set_map(A.value("1"), X.value("1"), {"a": "a"}),
        "0": set_map(A.value("0"), X.value("0"), {"a": "x"}),
    })
    bad_bottom = level_map(B, Y, {
        "1": set_map(B.value("1"), Y.value("1"), {"a": "v", "b": "v"}),
        "0": set_map(B.value("0"), Y.value("0"), {"a": "y", "b": "y"}),
    })
    with pytest.raises(PreconditionError):
        lift_strict(i, f, top, bad_bottom, mode=MODE_L1)
