import numpy as np
import pytest

from promc import gf2
from promc.base import (ACOF_FIB, COF_ACF, chain_map, chain_obj, classify_map,
                        compose, factor_map, identity, set_map, set_obj,
                        solve_lift, zero_complex)
from promc.errors import MalformedError, PreconditionError

from helpers import (disk1, disk_to_sphere, random_chain_map, random_complex,
                     random_set_map, random_set_obj, sphere0, we_by_cone)


# ----------------------------------------------------------- construction

def test_setbij_duplicate_names_rejected():
    with pytest.raises(MalformedError):
        set_obj(["a", "a"])


def test_chain_dd_zero_enforced():
    with pytest.raises(MalformedError):
        chain_obj(0, 2, [1, 1, 1], {0: [[1]], 1: [[1]]})


def test_chain_shape_mismatch_rejected():
    with pytest.raises(MalformedError):
        chain_obj(0, 1, [2, 1], {0: [[1]]})


def test_chain_map_must_commute():
    D, S = disk1(), sphere0()
    with pytest.raises(MalformedError):
        # degree-1 component nonzero forces failure against the boundary
        chain_map(D, D, {0: [[1]], 1: [[0]]})


def test_set_map_totality():
    A, B = set_obj(["a", "b"]), set_obj(["x"])
    with pytest.raises(MalformedError):
        set_map(A, B, {"a": "x"})
    with pytest.raises(MalformedError):
        set_map(A, B, {"a": "x", "b": "zzz"})


# -------------------------------------------------------------- classify

def test_classify_setbij_collapse():
    A, B = set_obj(["a", "b"]), set_obj(["x"])
    f = set_map(A, B, {"a": "x", "b": "x"})
    c = classify_map(f)
    assert (c.is_we, c.is_cof, c.is_fib) == (False, True, True)


def test_classify_identity_chain():
    for obj in (disk1(), sphere0(), zero_complex()):
        c = classify_map(identity(obj))
        assert (c.is_we, c.is_cof, c.is_fib) == (True, True, True)


def test_classify_disk_to_sphere():
    c = classify_map(disk_to_sphere())
    assert (c.is_we, c.is_cof, c.is_fib) == (False, False, True)


@pytest.mark.parametrize("seed", range(40))
def test_classify_we_matches_cone_oracle(seed):
    rng = np.random.default_rng(seed)
    X = random_complex(rng)
    Y = random_complex(rng)
    f = random_chain_map(rng, X, Y)
    assert classify_map(f).is_we == we_by_cone(f)


def test_two_of_three_on_random_composables():
    rng = np.random.default_rng(7)
    for _ in range(60):
        X, Y, Z = (random_complex(rng) for _ in range(3))
        f = random_chain_map(rng, X, Y)
        g = random_chain_map(rng, Y, Z)
        wf, wg = classify_map(f).is_we, classify_map(g).is_we
        wgf = classify_map(compose(g, f)).is_we
        if wf and wg:
            assert wgf
        if wf and wgf:
            assert wg
        if wg and wgf:
            assert wf
    for _ in range(60):
        X, Y, Z = (random_set_obj(rng) for _ in range(3))
        f = random_set_map(rng, X, Y)
        g = random_set_map(rng, Y, Z)
        wf, wg = classify_map(f).is_we, classify_map(g).is_we
        wgf = classify_map(compose(g, f)).is_we
        if wf and wg:
            assert wgf
        if wf and wgf:
            assert wg
        if wg and wgf:
            assert wf


# ---------------------------------------------------------------- factor

def test_factor_setbij_modes():
    A, B = set_obj(["a", "b"]), set_obj(["x"])
    f = set_map(A, B, {"a": "x", "b": "x"})
    fp = factor_map(f, COF_ACF)
    assert fp.left == f and fp.right == identity(B)
    assert classify_map(fp.right).is_we
    fp2 = factor_map(f, ACOF_FIB)
    assert fp2.left == identity(A) and fp2.right == f


def test_factor_identity_sphere_both_we():
    f = identity(sphere0())
    for mode in (COF_ACF, ACOF_FIB):
        fp = factor_map(f, mode)
        assert fp.composite() == f
        assert classify_map(fp.left).is_we
        assert classify_map(fp.right).is_we


def test_factor_zero_to_sphere_cylinder():
    f = chain_map(zero_complex(), sphere0(), {})
    fp = factor_map(f, COF_ACF)
    assert fp.composite() == f
    cr = classify_map(fp.right)
    assert cr.is_fib and cr.is_we  # surjective quasi-iso by the rank oracle
    assert we_by_cone(fp.right)
    assert classify_map(fp.left).is_cof


@pytest.mark.parametrize("seed", range(30))
def test_factor_random_chain_postconditions(seed):
    rng = np.random.default_rng(100 + seed)
    X, Y = random_complex(rng), random_complex(rng)
    f = random_chain_map(rng, X, Y)
    fp = factor_map(f, COF_ACF)
    assert fp.composite() == f
    assert classify_map(fp.left).is_cof
    cr = classify_map(fp.right)
    assert cr.is_fib and cr.is_we
    fp = factor_map(f, ACOF_FIB)
    assert fp.composite() == f
    cl = classify_map(fp.left)
    assert cl.is_cof and cl.is_we
    assert classify_map(fp.right).is_fib


@pytest.mark.parametrize("seed", range(20))
def test_factor_random_setbij_postconditions(seed):
    rng = np.random.default_rng(200 + seed)
    X, Y = random_set_obj(rng, 3), random_set_obj(rng, 3)
    f = random_set_map(rng, X, Y)
    for mode in (COF_ACF, ACOF_FIB):
        fp = factor_map(f, mode)
        assert fp.composite() == f
        cl, cr = classify_map(fp.left), classify_map(fp.right)
        assert cl.is_cof and cr.is_fib
        if mode == COF_ACF:
            assert cr.is_we
        else:
            assert cl.is_we


# ------------------------------------------------------------------ lift

def test_lift_identity_i():
    D = disk1()
    p = disk_to_sphere()
    top = identity(D)
    h = solve_lift(identity(D), p, top, p)
    assert h == top


def test_lift_setbij_unique():
    A = set_obj(["a"])
    B = set_obj(["a", "b"])
    U = set_obj(["u", "v"])
    i = set_map(A, B, {"a": "a"})
    p = identity(U)
    top = set_map(A, U, {"a": "u"})
    bottom = set_map(B, U, {"a": "u", "b": "v"})
    h = solve_lift(i, p, top, bottom)
    assert h == bottom  # frozen: exhaustive search over all 4 maps B -> U
    candidates = [m for m in all_set_maps(B, U)
                  if compose(m, i) == top and compose(p, m) == bottom]
    assert candidates == [h]


def all_set_maps(X, Y):
    import itertools
    out = []
    for images in itertools.product(Y.elements, repeat=len(X.elements)):
        out.append(set_map(X, Y, dict(zip(X.elements, images))))
    return out


def test_lift_chain_disk_example():
    D, S = disk1(), sphere0()
    i = chain_map(zero_complex(), D, {})
    p = disk_to_sphere()
    top = chain_map(zero_complex(), D, {})
    h = solve_lift(i, p, top, p)
    assert h == identity(D)  # frozen: the linear system has this unique solution


def test_lift_noncommuting_square_rejected():
    A, B = set_obj(["a"]), set_obj(["a", "b"])
    i = set_map(A, B, {"a": "a"})
    U = set_obj(["u", "v"])
    p = identity(U)
    with pytest.raises(PreconditionError):
        solve_lift(i, p, set_map(A, U, {"a": "u"}),
                   set_map(B, U, {"a": "v", "b": "v"}))


@pytest.mark.parametrize("seed", range(25))
def test_lift_random_squares_compose(seed):
    # square with left = cof part and right = acyclic-fib part of one
    # factorization; a lift exists (the identity is one) and whatever the
    # solver returns must satisfy both triangles
    rng = np.random.default_rng(300 + seed)
    X, Y = random_complex(rng), random_complex(rng)
    w = random_chain_map(rng, X, Y)
    fp = factor_map(w, COF_ACF)
    i, q = fp.left, fp.right
    h = solve_lift(i, q, i, q)
    assert h is not None
    assert compose(h, i) == i
    assert compose(q, h) == q


@pytest.mark.parametrize("seed", range(25))
def test_lift_random_acof_vs_fib(seed):
    rng = np.random.default_rng(400 + seed)
    X, Y = random_complex(rng), random_complex(rng)
    w = random_chain_map(rng, X, Y)
    fp = factor_map(w, ACOF_FIB)
    j, p = fp.left, fp.right
    h = solve_lift(j, p, j, p)
    assert h is not None
    assert compose(h, j) == j
    assert compose(p, h) == p
