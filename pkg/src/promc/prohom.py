"""
Pro-hom sets, levelization, pro-isomorphism certificates, levelwise
limits, and the constant/limit adjoint pair.

Finite-regime hom sets collapse to base homs at the maxima (the maximum
is initial in the index category); the ω regime evaluates the inverse
system of hom sets to a truncation depth and reports stabilization.

Iso certificates carry either an honest inverse pro-map (composites
checked against the identity in pro-hom) or an index-raising witness
family {h_ts : Y_t -> X_s, t > s} whose two triangle identities are the
pro-hom composite-equals-identity checks at refinement index t.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from . import gf2
from .base import (CHAIN_F2, SET_BIJ, BaseMap, BaseObject, compose, identity)
from .baselim import Cone, Diagram, finite_colimit, finite_limit
from .errors import (DepthExhaustedError, MalformedError, PreconditionError,
                     UnsupportedRegimeError, VerificationFailure)
from .indexing import FINITE, OMEGA, IndexPoset, chain_poset, point_poset
from .proobj import (LEVEL, ProMap, ProObject, compose_pro, constant_over,
                     general_map, identity_pro, level_map, omega_pro_object)

ENUMERATION_CAP = 12  # max GF(2) dimension of a hom space to enumerate


def enumerate_base_maps(X, Y):
    """All base maps X -> Y.  SetBij enumerates functions; ChainF2
    enumerates the chain-map solution space when its dimension is at most
    ENUMERATION_CAP and raises otherwise."""
    if X.instance == SET_BIJ:
        out = []
        for images in itertools.product(Y.elements, repeat=len(X.elements)):
            out.append(BaseMap(X, Y, mapping=dict(zip(X.elements, images)),
                               check=False))
        return out
    N, offs, degs = _chain_hom_space(X, Y)
    k = N.shape[1]
    if k > ENUMERATION_CAP:
        raise PreconditionError(
            f"chain hom space has dimension {k} > {ENUMERATION_CAP}; "
            "enumeration refused")
    out = []
    for bits in itertools.product((0, 1), repeat=k):
        vec = gf2.matmul(N, np.array(bits, dtype=np.uint8).reshape(-1, 1)).ravel() \
            if k else np.zeros(N.shape[0], dtype=np.uint8)
        out.append(_chain_map_from_vector(X, Y, vec, offs, degs))
    return out


def _chain_hom_space(X, Y):
    """Null space of the naturality system; columns = basis of Hom(X, Y)."""
    degs = sorted(set(X.degrees) | set(Y.degrees))
    offs, total = {}, 0
    for n in degs:
        offs[n] = total
        total += Y.dim(n) * X.dim(n)
    rows = []
    for n in degs:
        if not Y.dim(n + 1) * X.dim(n):
            continue
        dY, dX = Y.d(n), X.d(n)
        for r in range(Y.dim(n + 1)):
            for c in range(X.dim(n)):
                row = np.zeros(total, dtype=np.uint8)
                for k in range(Y.dim(n)):
                    if dY[r, k]:
                        row[offs[n] + k * X.dim(n) + c] ^= 1
                for k in range(X.dim(n + 1)):
                    if dX[k, c]:
                        row[offs[n + 1] + r * X.dim(n + 1) + k] ^= 1
                rows.append(row)
    A = np.array(rows, dtype=np.uint8) if rows else gf2.zeros(0, total)
    return gf2.null_space(A), offs, degs


def _chain_map_from_vector(X, Y, vec, offs, degs):
    mats = {}
    for n in degs:
        if Y.dim(n) and X.dim(n):
            mats[n] = vec[offs[n]:offs[n] + Y.dim(n) * X.dim(n)].reshape(
                Y.dim(n), X.dim(n))
    return BaseMap(X, Y, mats=mats, check=False)


def spread_from_max(X, Y, phi):
    """The GENERAL pro-map X -> Y whose realization at the maxima is phi."""
    M = X.index.max_element()
    N = Y.index.max_element()
    if phi.source != X.value(M) or phi.target != Y.value(N):
        raise PreconditionError("spread needs a map between the top values")
    comps = {s: (M, compose(Y.struct(N, s), phi)) for s in Y.index.elements}
    return general_map(X, Y, comps, check=False)


@dataclass
class HomSet:
    """Representatives of pro-hom classes, one GENERAL map per class."""
    maps: list
    depth: int | None = None
    stabilized_at: int | None = None

    def __len__(self):
        return len(self.maps)


def hom_pro(X, Y, depth=None):
    """The pro-hom set.  Finite regime: exact, via collapse at the maxima.
    ω regime: depth-d evaluation with a stabilization marker."""
    if X.instance != Y.instance:
        raise MalformedError("hom between different instances")
    if X.index.regime == FINITE and Y.index.regime == FINITE:
        reps = [spread_from_max(X, Y, phi)
                for phi in enumerate_base_maps(X.max_value(), Y.max_value())]
        return HomSet(maps=reps)
    if X.index.regime != OMEGA or Y.index.regime != OMEGA:
        raise UnsupportedRegimeError("mixed finite/ω hom; reindex first")
    d = depth if depth is not None else max(X.index.depth, Y.index.depth)
    return _omega_hom(X, Y, d)


def _dedup(maps):
    out = []
    for m in maps:
        if not any(m == o for o in out):
            out.append(m)
    return out


def _omega_hom(X, Y, d):
    """Depth-d evaluation of the hom inverse system, with a conservative
    Mittag-Leffler stabilization marker.

    Truncated germ classes at target s are maps X_{d-1} -> Y_s; the
    system is declared stable when their postcomposition images were
    already stable one tower step earlier, the maps induced between the
    stable images are bijections, and the X side can no longer identify
    germs (precomposition with the top step is injective)."""
    top = d - 1
    germs_top = enumerate_base_maps(X.value(top), Y.value(top))
    stable = {s: _dedup([compose(Y.struct(top, s), g) for g in germs_top])
              for s in range(d)}
    pinned = d - 2  # coordinates below this are settled by two tower steps
    stabilized = d >= 3
    if stabilized:
        for s in range(pinned):
            prev = _dedup([compose(Y.struct(d - 2, s), g)
                           for g in enumerate_base_maps(X.value(top),
                                                        Y.value(d - 2))])
            if not _same_maps(prev, stable[s]):
                stabilized = False
                break
    if stabilized:
        for s in range(pinned - 1):
            down = [compose(Y.struct(s + 1, s), g) for g in stable[s + 1]]
            if len(_dedup(down)) != len(stable[s + 1]) or \
                    len(stable[s + 1]) != len(stable[s]):
                stabilized = False
                break
    if stabilized:
        for s in range(pinned):
            seen = []
            for phi in enumerate_base_maps(X.value(d - 2), Y.value(s)):
                pre = compose(phi, X.struct(top, d - 2))
                if any(pre == o for o in seen):
                    stabilized = False
                    break
                seen.append(pre)
            if not stabilized:
                break
    if not stabilized:
        reps = []
        for g in germs_top:
            comps = {n: (top, compose(Y.struct(top, n), g)) for n in range(d)}
            reps.append(general_map(X, Y, lambda n, _c=comps: _c[n],
                                    check=False, depth=d))
        return HomSet(maps=reps, depth=d, stabilized_at=None)
    # threads through the stable system, one per stable germ at level 0
    reps = []
    for psi0 in stable[0]:
        thread = {0: psi0}
        for s in range(1, d):
            lifts = [g for g in stable[s]
                     if compose(Y.struct(s, 0), g) == psi0]
            thread[s] = lifts[0]  # unique below the pinned range
        comps = {n: (top, thread[n]) for n in range(d)}
        reps.append(general_map(X, Y, lambda n, _c=comps: _c[n],
                                check=False, depth=d))
    stab_at = pinned
    for k in range(1, pinned + 1):
        if all(_same_maps(_dedup([compose(Y.struct(k, s), g)
                                  for g in enumerate_base_maps(X.value(top),
                                                               Y.value(k))]),
                          stable[s]) for s in range(min(k, pinned))):
            stab_at = k
            break
    return HomSet(maps=reps, depth=d, stabilized_at=stab_at)


def _same_maps(a, b):
    return len(a) == len(b) and all(any(x == y for y in b) for x in a)


# ------------------------------------------------------------------ iso


@dataclass
class HFamily:
    """Index-raising inverse witnesses h_ts: Y_t -> X_s for t > s."""
    pairs: dict

    def get(self, t, s):
        return self.pairs.get((t, s))


@dataclass
class IsoCertificate:
    """Machine-checkable pro-isomorphism witness for *forward*.

    Exactly one of *backward* (honest inverse pro-map) or *hfamily*
    (index-raising triangles) is usually present; replay verifies by
    composition and structure-map precomposition only.
    """
    forward: ProMap
    backward: ProMap | None = None
    hfamily: HFamily | None = None
    depth: int | None = None

    def replay(self):
        f = self.forward
        X, Y = f.source, f.target
        checked = False
        if self.backward is not None:
            g = self.backward
            if g.source is not Y and g.source != Y:
                raise VerificationFailure("backward source mismatch")
            if g.target is not X and g.target != X:
                raise VerificationFailure("backward target mismatch")
            gf_ = compose_pro(g, f)
            if not gf_.equals(identity_pro(X), depth=self.depth):
                raise VerificationFailure("backward ∘ forward is not the identity",
                                          witness="backward∘forward")
            fg = compose_pro(f, g)
            if not fg.equals(identity_pro(Y), depth=self.depth):
                raise VerificationFailure("forward ∘ backward is not the identity",
                                          witness="forward∘backward")
            checked = True
        if self.hfamily is not None:
            if f.kind != LEVEL:
                raise VerificationFailure("h-family witnesses need a LEVEL map")
            idx = f.source.index
            if idx.regime != FINITE:
                raise VerificationFailure("h-family replay is finite-regime only")
            for t in idx.elements:
                for s in idx.elements:
                    if not idx.lt(s, t):
                        continue
                    h = self.hfamily.get(t, s)
                    if h is None:
                        raise VerificationFailure(f"missing witness for {t}>{s}",
                                                  witness=(t, s))
                    if compose(h, f.level_component(t)) != X.struct(t, s):
                        raise VerificationFailure(
                            f"left triangle fails at {t}>{s}", witness=(t, s))
                    if compose(f.level_component(s), h) != Y.struct(t, s):
                        raise VerificationFailure(
                            f"right triangle fails at {t}>{s}", witness=(t, s))
            checked = True
        if not checked:
            raise VerificationFailure("certificate has no witness data")


def _invert_base(phi):
    """Inverse of an invertible base map, or None."""
    if phi.instance == SET_BIJ:
        if len(set(phi.mapping.values())) != len(phi.source.elements) \
                or len(phi.source.elements) != len(phi.target.elements):
            return None
        return BaseMap(phi.target, phi.source,
                       mapping={v: k for k, v in phi.mapping.items()}, check=False)
    degs = set(phi.source.degrees) | set(phi.target.degrees)
    mats = {}
    for n in degs:
        if phi.source.dim(n) != phi.target.dim(n):
            return None
        inv = gf2.inverse(phi.mat(n))
        if inv is None and phi.source.dim(n) > 0:
            return None
        if inv is not None:
            mats[n] = inv
    return BaseMap(phi.target, phi.source, mats=mats, check=False)


def is_pro_iso(f, candidate_inverse=None, depth=None):
    """An IsoCertificate for f, or None when no witness was found.

    Order of attack: verify a supplied candidate (pro-map or HFamily);
    otherwise try the honest realized-at-maxima inverse; otherwise, for
    SetBij LEVEL maps, search h-families pair by pair (exhaustive).
    None is "no certificate", not a proof of non-isomorphism, except
    that the SetBij searches are exhaustive over their regimes.
    """
    X, Y = f.source, f.target
    if candidate_inverse is not None:
        if isinstance(candidate_inverse, HFamily):
            cert = IsoCertificate(forward=f, hfamily=candidate_inverse, depth=depth)
        else:
            cert = IsoCertificate(forward=f, backward=candidate_inverse, depth=depth)
        cert.replay()
        return cert
    if X.index.regime == FINITE and Y.index.regime == FINITE:
        N = Y.index.max_element()
        phi = f.realize(N)
        psi = _invert_base(phi)
        if psi is not None:
            backward = spread_from_max(Y, X, psi)
            cert = IsoCertificate(forward=f, backward=backward)
            cert.replay()
            return cert
        if f.kind == LEVEL and f.source.instance == SET_BIJ:
            fam = _search_hfamily(f)
            if fam is not None:
                cert = IsoCertificate(forward=f, hfamily=fam)
                cert.replay()
                return cert
        return None
    # ω regime: honest check to depth against a realized inverse germ
    if f.kind == LEVEL:
        d = depth if depth is not None else X.index.depth
        psi = _invert_base(f.level_component(d - 1))
        if psi is not None:
            backward = general_map(Y, X, lambda n, _d=d - 1:
                                   (_d, compose(X.struct(_d, n), psi)),
                                   check=False)
            cert = IsoCertificate(forward=f, backward=backward, depth=d)
            try:
                cert.replay()
                return cert
            except VerificationFailure:
                return None
    return None


def _search_hfamily(f):
    idx = f.source.index
    X, Y = f.source, f.target
    pairs = {}
    for t in idx.elements:
        for s in idx.elements:
            if not idx.lt(s, t):
                continue
            found = None
            for h in enumerate_base_maps(Y.value(t), X.value(s)):
                if compose(h, f.level_component(t)) == X.struct(t, s) and \
                        compose(f.level_component(s), h) == Y.struct(t, s):
                    found = h
                    break
            if found is None:
                return None
            pairs[(t, s)] = found
    return HFamily(pairs)


# ------------------------------------------------------------- levelize


@dataclass
class Levelization:
    map: ProMap
    source_cert: IsoCertificate
    target_cert: IsoCertificate
    cofinality: object = None
    original: ProMap = None


def levelize(f, depth=None):
    """Re-present a pro-map as a LEVEL map.

    Finite regime: over the two-element chain via the values at the
    maxima, with iso certificates for the replaced endpoints.  ω regime:
    diagonal reindexing along a monotone level function, refined until
    the components commute on the nose (depth-exhausted error if that
    never happens within the truncation).
    """
    if f.kind == LEVEL:
        ident_src = IsoCertificate(forward=identity_pro(f.source),
                                   backward=identity_pro(f.source), depth=depth)
        ident_tgt = IsoCertificate(forward=identity_pro(f.target),
                                   backward=identity_pro(f.target), depth=depth)
        return Levelization(map=f, source_cert=ident_src,
                            target_cert=ident_tgt, original=f)
    X, Y = f.source, f.target
    if X.index.regime == FINITE and Y.index.regime == FINITE:
        return _levelize_finite(f)
    if X.index.regime == OMEGA and Y.index.regime == OMEGA:
        return _levelize_omega(f, depth)
    raise UnsupportedRegimeError("mixed finite/ω levelization; reindex first")


def _levelize_finite(f):
    X, Y = f.source, f.target
    M, N = X.index.max_element(), Y.index.max_element()
    chain = chain_poset(2)
    Xt = constant_over(chain, X.value(M))
    Yt = constant_over(chain, Y.value(N))
    phi = f.realize(N)
    lev = level_map(Xt, Yt, {"0": phi, "1": phi}, check=False)
    fwd_src = general_map(X, Xt, {i: (M, identity(X.value(M)))
                                  for i in chain.elements}, check=False)
    back_src = general_map(Xt, X, {s: ("1", X.struct(M, s))
                                   for s in X.index.elements}, check=False)
    cert_src = IsoCertificate(forward=fwd_src, backward=back_src)
    cert_src.replay()
    fwd_tgt = general_map(Y, Yt, {i: (N, identity(Y.value(N)))
                                  for i in chain.elements}, check=False)
    back_tgt = general_map(Yt, Y, {s: ("1", Y.struct(N, s))
                                   for s in Y.index.elements}, check=False)
    cert_tgt = IsoCertificate(forward=fwd_tgt, backward=back_tgt)
    cert_tgt.replay()
    return Levelization(map=lev, source_cert=cert_src,
                        target_cert=cert_tgt, original=f)


def _levelize_omega(f, depth=None):
    from .indexing import CofinalMap, is_cofinal, omega as omega_idx
    X, Y = f.source, f.target
    d = depth if depth is not None else X.index.depth
    T = {}
    prev = -1
    for n in range(d):
        t_n, g_n = f.component(n)
        lo = max(prev, int(t_n), n)
        chosen = None
        for u in range(lo, d):
            cand = compose(g_n, X.struct(u, t_n))
            if n == 0:
                chosen = u
                break
            # need naturality on the nose against level n-1
            lhs = compose(Y.struct(n, n - 1), cand)
            t_p, g_p = f.component(n - 1)
            rhs = compose(compose(g_p, X.struct(T[n - 1], t_p)),
                          X.struct(u, T[n - 1]))
            if lhs == rhs:
                chosen = u
                break
        if chosen is None:
            raise DepthExhaustedError(
                f"no commuting refinement for level {n} within depth {d}")
        T[n] = chosen
        prev = chosen
    Xt = omega_pro_object(lambda n: X.value(T[min(n, d - 1)]),
                          lambda n: X.struct(T[min(n + 1, d - 1)], T[min(n, d - 1)]),
                          depth=d)
    def comp(n):
        t_n, g_n = f.component(min(n, d - 1))
        return compose(g_n, X.struct(T[min(n, d - 1)], t_n))
    lev = level_map(Xt, Y, comp, check=False, depth=d)
    F = CofinalMap(omega_idx(d), omega_idx(d), lambda n: T[min(n, d - 1)])
    rep = is_cofinal(F, depth=d)
    fwd = general_map(X, Xt, lambda n: (T[min(n, d - 1)],
                                        identity(X.value(T[min(n, d - 1)]))),
                      check=False, depth=d)
    back = general_map(Xt, X, lambda s: (s, X.struct(T[min(s, d - 1)], s))
                       if T[min(s, d - 1)] >= s else (s, identity(X.value(s))),
                       check=False, depth=d)
    cert_src = IsoCertificate(forward=fwd, backward=back, depth=d)
    ident = identity_pro(Y)
    cert_tgt = IsoCertificate(forward=ident, backward=ident, depth=d)
    return Levelization(map=lev, source_cert=cert_src,
                        target_cert=cert_tgt, cofinality=rep, original=f)


# --------------------------------------------- levelwise limits/colimits


@dataclass
class ProDiagram:
    """A finite loop-free diagram of pro-objects with LEVEL maps over one
    shared index."""
    index: IndexPoset
    nodes: dict
    edges: list

    def __post_init__(self):
        for v, obj in self.nodes.items():
            if obj.index != self.index:
                raise PreconditionError(
                    f"node {v} not over the shared index; levelize first")
        for src, tgt, m in self.edges:
            if m.kind != LEVEL or m.source.index != self.index:
                raise PreconditionError(
                    f"edge {src}->{tgt} is not LEVEL over the shared index; "
                    "levelize first")
            if m.source is not self.nodes[src] and m.source != self.nodes[src]:
                raise MalformedError(f"edge {src}->{tgt} source mismatch")
            if m.target is not self.nodes[tgt] and m.target != self.nodes[tgt]:
                raise MalformedError(f"edge {src}->{tgt} target mismatch")

    def level_diagram(self, s):
        return Diagram({v: obj.value(s) for v, obj in self.nodes.items()},
                       [(a, b, m.level_component(s)) for a, b, m in self.edges])


@dataclass
class LevelwiseCone:
    apex: ProObject
    legs: dict
    level_cones: dict


def _induced_structs(pd, cones, colimit=False):
    idx = pd.index
    structs = {}
    for t in idx.elements:
        for s in idx.elements:
            if not idx.leq(s, t):
                continue
            if colimit:
                legs = {v: compose(cones[s].legs[v], pd.nodes[v].struct(t, s))
                        for v in pd.nodes}
                structs[(t, s)] = cones[t].mediate(
                    Cone(cones[t].diagram, cones[s].apex, legs))
            else:
                legs = {v: compose(pd.nodes[v].struct(t, s), cones[t].legs[v])
                        for v in pd.nodes}
                structs[(t, s)] = cones[s].mediate(
                    Cone(cones[s].diagram, cones[t].apex, legs))
    return structs


def pro_limit_levelwise(pd):
    """Levelwise limit of a shared-index LEVEL diagram, with projections."""
    if pd.index.regime == FINITE:
        cones = {s: finite_limit(pd.level_diagram(s)) for s in pd.index.elements}
        structs = _induced_structs(pd, cones)
        apex = ProObject(pd.index, values={s: cones[s].apex for s in pd.index.elements},
                         structs=structs)
        legs = {v: level_map(apex, pd.nodes[v],
                             {s: cones[s].legs[v] for s in pd.index.elements})
                for v in pd.nodes}
        return LevelwiseCone(apex=apex, legs=legs, level_cones=cones)
    cones = {}

    def cone_at(n):
        if n not in cones:
            cones[n] = finite_limit(pd.level_diagram(n))
        return cones[n]

    def step(n):
        upper, lower = cone_at(n + 1), cone_at(n)
        legs = {v: compose(pd.nodes[v].struct(n + 1, n), upper.legs[v])
                for v in pd.nodes}
        return lower.mediate(Cone(lower.diagram, upper.apex, legs))

    apex = omega_pro_object(lambda n: cone_at(n).apex, step, depth=pd.index.depth)
    legs = {v: level_map(apex, pd.nodes[v], lambda n, _v=v: cone_at(n).legs[_v],
                         check=False)
            for v in pd.nodes}
    return LevelwiseCone(apex=apex, legs=legs, level_cones=cones)


def pro_colimit_levelwise(pd):
    """Levelwise colimit; injections as LEVEL maps."""
    if pd.index.regime != FINITE:
        raise UnsupportedRegimeError("ω levelwise colimits not supported")
    cones = {s: finite_colimit(pd.level_diagram(s)) for s in pd.index.elements}
    structs = _induced_structs(pd, cones, colimit=True)
    apex = ProObject(pd.index, values={s: cones[s].apex for s in pd.index.elements},
                     structs=structs)
    legs = {v: level_map(pd.nodes[v], apex,
                         {s: cones[s].legs[v] for s in pd.index.elements})
            for v in pd.nodes}
    return LevelwiseCone(apex=apex, legs=legs, level_cones=cones)


# ------------------------------------------------- constants and limits


def constant_embed(obj):
    """The one-point-index pro-object on a base object."""
    return constant_over(point_poset(), obj)


@dataclass
class LimResult:
    value: BaseObject
    stabilized_at: int | None = None
    depth: int | None = None


def lim_functor(Y, depth=None):
    """The limit of a pro-object as a base object.

    Finite regime: the value at the maximum.  ω regime: the stable image
    in level 0 (exact once the image tower stabilizes and its induced
    maps are isomorphisms; otherwise the result is depth-qualified)."""
    if Y.index.regime == FINITE:
        return LimResult(value=Y.max_value())
    d = depth if depth is not None else Y.index.depth
    stable = _stable_images(Y, d)
    stab_at = _image_stabilization(Y, d, stable)
    return LimResult(value=stable[0][0], stabilized_at=stab_at, depth=d)


def _image_of(m):
    """(image object, corestriction, inclusion) of a base map."""
    if m.instance == SET_BIJ:
        names = tuple(sorted(set(m.mapping.values())))
        img = BaseObject(SET_BIJ, elements=names)
        incl = BaseMap(img, m.target, mapping={x: x for x in names}, check=False)
        core = BaseMap(m.source, img, mapping=dict(m.mapping), check=False)
        return img, core, incl
    dims, bases = {}, {}
    for n in set(m.source.degrees) | set(m.target.degrees):
        bases[n] = gf2.image_basis(m.mat(n))
        dims[n] = bases[n].shape[1]
    degs = sorted(bases)
    lo, hi = degs[0], degs[-1]
    diff = {}
    for n in range(lo, hi):
        rhs = gf2.matmul(m.target.d(n), bases[n])
        sol = gf2.solve(bases[n + 1], rhs)
        if sol is None:
            raise AssertionError("boundary does not preserve an image")
        diff[n] = sol
    img = BaseObject(CHAIN_F2, lo=lo, hi=hi, dims=dims, diff=diff)
    incl = BaseMap(img, m.target, mats=bases, check=False)
    core_mats = {}
    for n in degs:
        sol = gf2.solve(bases[n], m.mat(n))
        core_mats[n] = sol
    core = BaseMap(m.source, img, mats=core_mats, check=False)
    return img, core, incl


def _stable_images(Y, d):
    out = {}
    for n in range(d - 1):
        out[n] = _image_of(Y.struct(d - 1, n))
    out[d - 1] = (Y.value(d - 1), identity(Y.value(d - 1)),
                  identity(Y.value(d - 1)))
    return out


def _image_stabilization(Y, d, stable):
    # one fewer tower step must give the same images, and the induced
    # maps between stable images must be isomorphisms
    for n in range(d - 2):
        if _image_of(Y.struct(d - 2, n))[0] != stable[n][0]:
            return None
    for n in range(d - 2):
        if _invert_base(_restrict(Y, n, stable)) is None:
            return None
    # earliest depth whose images already equal the stable ones
    for k in range(1, d):
        if all(_image_of(Y.struct(k, n))[0] == stable[n][0] for n in range(k)):
            return k
    return d - 1


def _restrict(Y, n, stable):
    img_up, _, incl_up = stable[n + 1]
    img_dn, core_dn, _ = stable[n]
    medium = compose(Y.struct(n + 1, n), incl_up)
    if medium.instance == SET_BIJ:
        return BaseMap(img_up, img_dn, mapping=dict(medium.mapping), check=False)
    mats = {}
    for k in set(img_up.degrees) | set(img_dn.degrees):
        sol = gf2.solve(stable[n][2].mat(k), medium.mat(k))
        if sol is None:
            raise AssertionError("structure map leaves the stable image")
        mats[k] = sol
    return BaseMap(img_up, img_dn, mats=mats, check=False)
