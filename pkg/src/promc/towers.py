"""
Cocell towers: presenting a special (acyclic) fibration as an iterated
base change of constant class maps, the tower limit with its certificate
back to the source, and the constant/limit adjunction check.

In the finite regime every stage is a constant pro-object (the seed is
the limit of the target, i.e. its value at the maximum), each successor
stage is the pullback of the previous one along the constant image of a
relative matching map, and the iterated pullback recovers the limit of
the source on the nose.  ω-towers are supported for constant stages
given directly.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .base import BaseMap, BaseObject, classify_map, compose, identity
from .baselim import Cone, Diagram, finite_limit
from .errors import (PreconditionError, UnsupportedRegimeError,
                     VerificationFailure)
from .indexing import FINITE, OMEGA, linear_extension
from .prohom import (IsoCertificate, constant_embed, enumerate_base_maps,
                     hom_pro, lim_functor, spread_from_max)
from .proobj import (LEVEL, ProObject, compose_pro, general_map,
                     identity_pro, level_map, omega_pro_object)
from .strict import FIB, detect_special, matching_map


@dataclass
class TowerStage:
    """One successor step: the pullback of the previous stage along the
    constant image of a relative matching map."""
    level: object
    attach: BaseMap        # the base class map (a relative matching map)
    attach_class: object
    cone_map: BaseMap      # previous stage -> target of attach
    bonding: BaseMap       # new stage -> previous stage
    new_leg: BaseMap       # new stage -> source of attach
    square: object         # the pullback cone, for replay
    new_stage_value: BaseObject = None


@dataclass
class Tower:
    """A λ-tower (λ ≤ ω) whose successor maps are base changes of
    constant class maps."""
    class_tag: str
    base_value: BaseObject          # stage 0 value (the limit of the target)
    stages: list = field(default_factory=list)
    length: object = 0              # int or "omega"
    source_map: object = None       # the presented map, when built from one
    final_legs: dict = None         # top stage -> X_s, set by the builder
    final_mu: BaseMap = None        # top stage -> stage 0

    def stage_value(self, k):
        if k == 0:
            return self.base_value
        return self.stages[k - 1].new_stage_value

    def stage_object(self, k):
        return constant_embed(self.stage_value(k))

    def replay_base_changes(self):
        """Re-check every bonding square: it commutes, the stage embeds in
        the honest pullback, and the attach map has its declared class."""
        for k, st in enumerate(self.stages):
            cls = classify_map(st.attach)
            ok = cls.is_fib if self.class_tag == FIB else (cls.is_fib and cls.is_we)
            if not ok:
                raise VerificationFailure(
                    f"attach map at stage {k} is not in class {self.class_tag}",
                    witness=st.level)
            lhs = compose(st.cone_map, st.bonding)
            rhs = compose(st.attach, st.new_leg)
            if lhs != rhs:
                raise VerificationFailure(
                    f"bonding square does not commute at stage {k}",
                    witness=st.level)
            dia = Diagram({"a": st.bonding.target, "b": st.attach.source,
                           "c": st.attach.target},
                          [("a", "c", st.cone_map), ("b", "c", st.attach)])
            lim = finite_limit(dia)
            med = lim.mediate(Cone(dia, st.bonding.source,
                                   {"a": st.bonding, "b": st.new_leg,
                                    "c": lhs}))
            inv = _mutually_inverse(med, lim, st)
            if not inv:
                raise VerificationFailure(
                    f"stage {k} is not the pullback along the attach map",
                    witness=st.level)


def _mutually_inverse(med, lim, st):
    """The mediating map stage -> recomputed pullback must be an iso
    (it already commutes with the recorded projections by construction)."""
    cls = classify_map(med)
    if med.instance == "set-bij":
        return cls.is_we
    return cls.is_cof and cls.is_fib


def build_cocell_tower(f, special=None, class_tag=None):
    """Present a special (acyclic) fibration as a cocell tower.

    Needs a detect_special certificate on every matching map (supplied
    or recomputed here).  Stages follow the linear extension; stage 0 is
    the value of the target at the maximum."""
    if f.kind != LEVEL:
        raise PreconditionError("build_cocell_tower needs a LEVEL presentation")
    idx = f.source.index
    if idx.regime != FINITE:
        raise UnsupportedRegimeError(
            "ω cocell towers are only stored with constant stages given "
            "directly; build from finite presentations")
    if special is None:
        if class_tag is None:
            raise PreconditionError("pass a certificate or a class tag")
        special = detect_special(f, class_tag)
    special.require()
    X, Y = f.source, f.target
    M = idx.max_element()
    tower = Tower(class_tag=special.mode, base_value=Y.value(M),
                  source_map=f)
    cur = Y.value(M)
    mu = identity(cur)
    lam = {}
    for s in linear_extension(idx):
        m = matching_map(f, s)
        if m.cone is None:
            psi = compose(Y.struct(M, s), mu)
            dia = Diagram({"a": cur, "b": m.map.source, "c": m.map.target},
                          [("a", "c", psi), ("b", "c", m.map)])
            lim = finite_limit(dia)
        else:
            legs = {f"Y.top:{s}": compose(Y.struct(M, s), mu)}
            for t in idx.predecessors(s):
                legs[f"X:{t}"] = lam[t]
                legs[f"Y:{t}"] = compose(f.level_component(t), lam[t])
            psi = m.cone.mediate(Cone(m.cone.diagram, cur, legs))
            dia = Diagram({"a": cur, "b": m.map.source, "c": m.map.target},
                          [("a", "c", psi), ("b", "c", m.map)])
            lim = finite_limit(dia)
        stage = TowerStage(level=s, attach=m.map,
                           attach_class=classify_map(m.map),
                           cone_map=psi, bonding=lim.legs["a"],
                           new_leg=lim.legs["b"], square=lim,
                           new_stage_value=lim.apex)
        tower.stages.append(stage)
        for t in list(lam):
            lam[t] = compose(lam[t], lim.legs["a"])
        lam[s] = lim.legs["b"]
        mu = compose(mu, lim.legs["a"])
        cur = lim.apex
    tower.length = len(tower.stages)
    tower.final_legs = lam
    tower.final_mu = mu
    return tower


def omega_constant_tower(value_fn, bonding_fn, attach_fn=None, class_tag=FIB,
                         depth=None):
    """An ω-tower of constant stages given directly."""
    t = Tower(class_tag=class_tag, base_value=value_fn(0), length=OMEGA)
    t.value_fn = value_fn
    t.bonding_fn = bonding_fn
    t.attach_fn = attach_fn
    t.depth = depth
    return t


@dataclass
class TowerLimit:
    apex: ProObject
    projection: object          # pro-map apex -> the tower's base
    iso_cert: IsoCertificate | None
    depth: int | None = None


def tower_limit(tower, expect_source=None):
    """The limit of a tower with its certificates.

    Finite: the iterated pullback apex as a constant pro-object, the
    projection to stage 0, and (for towers built from a presentation)
    an IsoCertificate to the source plus the pro-hom equality of the
    projection with the presented map.  ω over constants: the pro-object
    n ↦ stage value n with the bondings."""
    if tower.length == OMEGA:
        apex = omega_pro_object(tower.value_fn, tower.bonding_fn,
                                depth=tower.depth or 16)
        return TowerLimit(apex=apex, projection=None, iso_cert=None,
                          depth=tower.depth)
    if tower.length == 0:
        apex = constant_embed(tower.base_value)
        return TowerLimit(apex=apex, projection=identity_pro(apex),
                          iso_cert=None)
    top = tower.stages[-1].new_stage_value
    apex = constant_embed(top)
    proj_val = tower.final_mu
    base = constant_embed(tower.base_value)
    projection = level_map(apex, base, {"pt": proj_val}, check=False)
    iso_cert = None
    if tower.source_map is not None:
        f = tower.source_map
        X, Y = f.source, f.target
        idx = X.index
        M = idx.max_element()
        nu = f.realize(M)
        for st in tower.stages:
            legs = {"a": nu, "b": X.struct(M, st.level),
                    "c": compose(st.cone_map, nu)}
            nu = st.square.mediate(Cone(st.square.diagram, X.value(M), legs))
        forward = general_map(X, apex, {"pt": (M, nu)}, check=False)
        backward = general_map(apex, X,
                               {s: ("pt", tower.final_legs[s])
                                for s in idx.elements}, check=False)
        iso_cert = IsoCertificate(forward=forward, backward=backward)
        iso_cert.replay()
        # the projection equals f in pro-hom, through the certificates
        lhs = compose_pro(projection, forward)
        rhs = _map_into_constant_target(f)
        if not lhs.equals(rhs):
            raise VerificationFailure(
                "tower projection differs from the presented map in pro-hom")
    return TowerLimit(apex=apex, projection=projection, iso_cert=iso_cert)


def _map_into_constant_target(f):
    """f composed with the collapse Y ≅ c(Y_M), as a GENERAL pro-map."""
    X, Y = f.source, f.target
    M = Y.index.max_element()
    return general_map(X, constant_embed(Y.value(M)),
                       {"pt": (X.index.max_element(), f.realize(M))},
                       check=False)


# ------------------------------------------------------------- adjunction


@dataclass
class AdjunctionWitness:
    left_size: int
    right_size: int
    pairs: list                # (pro-map rep, base map) mutually inverse
    depth: int | None = None
    stabilized_at: int | None = None

    def verified(self):
        return self.left_size == self.right_size == len(self.pairs)


def adjunction_check(X, Y, depth=None, naturality_probes=()):
    """Explicit mutually inverse assignments between hom_pro(cX, Y) and
    Hom(X, lim Y), with optional naturality spot-checks along base maps
    into X."""
    if Y.index.regime == FINITE:
        cX = constant_embed(X)
        hs = hom_pro(cX, Y)
        N = Y.index.max_element()
        limv = lim_functor(Y).value
        rights = enumerate_base_maps(X, limv)
        pairs = []
        for rep in hs.maps:
            phi = rep.realize(N)
            if not any(phi == r for r in rights):
                raise VerificationFailure("hom class realizes outside Hom(X, lim Y)")
            back = spread_from_max(cX, Y, phi)
            if not back.equals(rep):
                raise VerificationFailure("round trip lost a hom class")
            pairs.append((rep, phi))
        if len({_key(phi) for _, phi in pairs}) != len(pairs):
            raise VerificationFailure("realization not injective")
        if len(pairs) != len(rights):
            raise VerificationFailure("realization not surjective")
        for a in naturality_probes:
            # a: X' -> X; the two routes Hom(X, lim Y) -> Hom(X', lim Y) agree
            for rep, phi in pairs:
                via_base = compose(phi, a)
                via_pro = compose_pro(rep, level_map(
                    constant_embed(a.source), cX, {"pt": a}, check=False))
                if via_pro.realize(N) != via_base:
                    raise VerificationFailure("naturality square fails")
        return AdjunctionWitness(left_size=len(hs.maps), right_size=len(rights),
                                 pairs=pairs)
    # ω regime: towers of constants to the truncation depth
    from .errors import DepthExhaustedError
    d = depth if depth is not None else Y.index.depth
    cX = omega_pro_object(lambda n: X, lambda n: identity(X), depth=d)
    hs = hom_pro(cX, Y, depth=d)
    lim = lim_functor(Y, depth=d)
    if hs.stabilized_at is None or lim.stabilized_at is None:
        raise DepthExhaustedError(
            f"tower did not stabilize within depth {d}; "
            "the adjunction comparison is inconclusive")
    rights = enumerate_base_maps(X, lim.value)
    if len(hs.maps) != len(rights):
        raise VerificationFailure(
            f"hom classes ({len(hs.maps)}) do not match Hom(X, lim) "
            f"({len(rights)}) at depth {d}")
    pairs = []
    for rep in hs.maps:
        _, g0 = rep.component(0)
        # corestrict the 0-germ into the stable image
        phi = _corestrict(g0, lim.value)
        if not any(phi == r for r in rights):
            raise VerificationFailure("ω hom class leaves the stable image")
        pairs.append((rep, phi))
    if len({_key(phi) for _, phi in pairs}) != len(pairs):
        raise VerificationFailure("ω realization not injective")
    return AdjunctionWitness(left_size=len(hs.maps), right_size=len(rights),
                             pairs=pairs, depth=d,
                             stabilized_at=hs.stabilized_at)


def _key(m):
    if m.instance == "set-bij":
        return tuple(sorted(m.mapping.items()))
    return tuple(sorted((n, M.tobytes()) for n, M in m._mats.items()))


def _corestrict(m, sub):
    """Corestrict a base map into a sub-object (same-instance value)."""
    if m.instance == "set-bij":
        bad = [v for v in m.mapping.values() if v not in sub.elements]
        if bad:
            raise VerificationFailure(f"values {bad} outside the stable image")
        return BaseMap(m.source, sub, mapping=dict(m.mapping), check=False)
    raise UnsupportedRegimeError("ω adjunction checks run on SetBij towers")
