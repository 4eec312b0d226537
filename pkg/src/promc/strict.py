"""
Relative matching maps, special (acyclic) fibration detection, the two
inductive strict factorizations, and the inductive lift builder.

Everything processes index levels in the deterministic linear-extension
order (ω levels in numeric order), so certificates are reproducible.
The matching object at level t is the limit of the diagram holding all
X_s, Y_s for s < t together with Y_t; at a minimal t it degenerates to
Y_t and the matching map is the component itself.
"""

from __future__ import annotations

from dataclasses import dataclass

from .base import (ACOF_FIB, COF_ACF, BaseMap, classify_map, compose,
                   factor_map)
from .baselim import Cone, Diagram, finite_limit
from .errors import (PreconditionError, UnsupportedRegimeError,
                     VerificationFailure)
from .indexing import FINITE, OMEGA, linear_extension
from .proobj import (LEVEL, ProMap, ProObject, compose_pro, general_map,
                     level_map)

MODE_L1 = "L1"  # strict cofibration then special acyclic fibration
MODE_L2 = "L2"  # levelwise acyclic cofibration then special fibration

FIB = "fib"
ACYCLIC_FIB = "acyclic-fib"


@dataclass
class MatchingData:
    level: object
    map: BaseMap          # M_t f
    cone: object = None   # LimitCone; None when t is minimal


def matching_diagram(f, t):
    """The finite diagram whose limit is lim_{s<t} X_s x_{lim Y_s} Y_t."""
    X, Y = f.source, f.target
    idx = X.index
    preds = idx.predecessors(t)
    nodes, edges = {}, []
    for s in preds:
        nodes[f"X:{s}"] = X.value(s)
        nodes[f"Y:{s}"] = Y.value(s)
        edges.append((f"X:{s}", f"Y:{s}", f.level_component(s)))
    nodes[f"Y.top:{t}"] = Y.value(t)
    for s in preds:
        for u in preds:
            if idx.lt(u, s):
                edges.append((f"X:{s}", f"X:{u}", X.struct(s, u)))
                edges.append((f"Y:{s}", f"Y:{u}", Y.struct(s, u)))
        edges.append((f"Y.top:{t}", f"Y:{s}", Y.struct(t, s)))
    return Diagram(nodes, edges)


def matching_map(f, t):
    """The relative matching map of a LEVEL presentation at level t."""
    if f.kind != LEVEL:
        raise PreconditionError("matching maps need a LEVEL presentation")
    X, Y = f.source, f.target
    idx = X.index
    preds = idx.predecessors(t)
    if not preds:
        return MatchingData(level=t, map=f.level_component(t))
    dia = matching_diagram(f, t)
    lim = finite_limit(dia)
    legs = {}
    for s in preds:
        legs[f"X:{s}"] = X.struct(t, s)
        legs[f"Y:{s}"] = compose(f.level_component(s), X.struct(t, s))
    legs[f"Y.top:{t}"] = f.level_component(t)
    med = lim.mediate(Cone(dia, X.value(t), legs))
    return MatchingData(level=t, map=med, cone=lim)


@dataclass
class SpecialResult:
    """Per-level classification of the matching maps of a presentation."""
    mode: str
    ok: bool
    verdicts: dict
    failing: object = None
    depth: int | None = None

    def require(self):
        if not self.ok:
            raise PreconditionError(
                f"not a special {self.mode}: fails at level {self.failing}")
        return self


def _levels_in_order(f, depth=None):
    idx = f.source.index
    if idx.regime == FINITE:
        return list(linear_extension(idx))
    d = depth if depth is not None else idx.depth
    return list(range(d))


def detect_special(f, mode, depth=None):
    """Certificate that every relative matching map is a fibration
    (mode "fib") or acyclic fibration (mode "acyclic-fib"), or the first
    failing level."""
    if mode not in (FIB, ACYCLIC_FIB):
        raise PreconditionError(f"unknown special mode {mode!r}")
    verdicts = {}
    idx = f.source.index
    d = (depth if depth is not None else idx.depth) if idx.regime == OMEGA else None
    for t in _levels_in_order(f, depth):
        cls = classify_map(matching_map(f, t).map)
        verdicts[t] = cls
        good = cls.is_fib if mode == FIB else (cls.is_fib and cls.is_we)
        if not good:
            return SpecialResult(mode=mode, ok=False, verdicts=verdicts,
                                 failing=t, depth=d)
    return SpecialResult(mode=mode, ok=True, verdicts=verdicts, depth=d)


# ------------------------------------------------------------ factor_strict


@dataclass
class StrictFactorization:
    """f = right ∘ left with left a levelwise (acyclic) cofibration and
    right special (acyclic); carries per-level certificates."""
    input: ProMap
    mode: str
    middle: ProObject
    left: ProMap
    right: ProMap
    matching: dict
    left_classes: dict
    special: SpecialResult
    depth: int | None = None

    def replay_composite(self):
        for s in self.input.target.index.carrier(self.depth):
            lhs = compose(self.right.level_component(s),
                          self.left.level_component(s))
            if lhs != self.input.level_component(s):
                raise VerificationFailure(f"composite differs at level {s}",
                                          witness=s)


class _FactorState:
    """Inductive state shared by the finite and ω factorizations."""

    def __init__(self, f, mode):
        self.f = f
        self.mode = mode
        self.base_mode = COF_ACF if mode == MODE_L1 else ACOF_FIB
        self.X, self.Y = f.source, f.target
        self.idx = self.X.index
        self.done = []
        self.zvals = {}
        self.zstructs = {}
        self.ivals = {}
        self.pvals = {}
        self.matching = {}

    def build_level(self, s):
        X, Y, idx = self.X, self.Y, self.idx
        preds = [t for t in self.done if idx.lt(t, s)]
        if not preds:
            cmp_map = self.f.level_component(s)
            lim = None
        else:
            nodes, edges = {f"Y.top:{s}": Y.value(s)}, []
            for t in preds:
                nodes[f"Y:{t}"] = Y.value(t)
                nodes[f"Z:{t}"] = self.zvals[t]
                edges.append((f"Z:{t}", f"Y:{t}", self.pvals[t]))
                edges.append((f"Y.top:{s}", f"Y:{t}", Y.struct(s, t)))
            for t in preds:
                for u in preds:
                    if idx.lt(u, t):
                        edges.append((f"Y:{t}", f"Y:{u}", Y.struct(t, u)))
                        edges.append((f"Z:{t}", f"Z:{u}", self.zstructs[(t, u)]))
            dia = Diagram(nodes, edges)
            lim = finite_limit(dia)
            legs = {f"Y.top:{s}": self.f.level_component(s)}
            for t in preds:
                legs[f"Z:{t}"] = compose(self.ivals[t], X.struct(s, t))
                legs[f"Y:{t}"] = compose(self.pvals[t],
                                         compose(self.ivals[t], X.struct(s, t)))
            cmp_map = lim.mediate(Cone(dia, X.value(s), legs))
        fp = factor_map(cmp_map, self.base_mode)
        self.zvals[s] = fp.middle
        self.ivals[s] = fp.left
        self.matching[s] = fp.right
        if lim is None:
            self.pvals[s] = fp.right
        else:
            self.pvals[s] = compose(lim.legs[f"Y.top:{s}"], fp.right)
            for t in preds:
                self.zstructs[(s, t)] = compose(lim.legs[f"Z:{t}"], fp.right)
        self.done.append(s)


def factor_strict(f, mode, depth=None):
    """Inductive strict factorization of a LEVEL presentation.

    Mode L1 gives a levelwise cofibration followed by a special acyclic
    fibration; L2 a levelwise acyclic cofibration followed by a special
    fibration.  Postconditions are re-checked: the left classes via
    classify_map and the right side via detect_special.
    """
    if f.kind != LEVEL:
        raise PreconditionError("factor_strict needs a LEVEL presentation; "
                                "levelize first")
    if mode not in (MODE_L1, MODE_L2):
        raise PreconditionError(f"unknown mode {mode!r}")
    state = _FactorState(f, mode)
    idx = f.source.index
    if idx.regime == OMEGA:
        return _factor_strict_omega(f, mode, state, depth)
    for s in _levels_in_order(f):
        state.build_level(s)
    Z = ProObject(idx, values=state.zvals, structs=state.zstructs)
    left = level_map(f.source, Z, state.ivals)
    right = level_map(Z, f.target, state.pvals)
    return _finish_factorization(f, mode, Z, left, right, state, depth=None)


def _finish_factorization(f, mode, Z, left, right, state, depth):
    left_classes = {}
    for s in Z.index.carrier(depth):
        cls = classify_map(left.level_component(s))
        left_classes[s] = cls
        want = cls.is_cof if mode == MODE_L1 else (cls.is_cof and cls.is_we)
        if not want:
            raise VerificationFailure(
                f"left factor fails its class at level {s}", witness=s)
    special = detect_special(right, ACYCLIC_FIB if mode == MODE_L1 else FIB,
                             depth=depth)
    special.require()
    out = StrictFactorization(input=f, mode=mode, middle=Z, left=left,
                              right=right, matching=dict(state.matching),
                              left_classes=left_classes, special=special,
                              depth=depth)
    out.replay_composite()
    return out


def _factor_strict_omega(f, mode, state, depth):
    d = depth if depth is not None else f.source.index.depth

    def ensure(n):
        while len(state.done) <= n:
            if len(state.done) >= d:
                raise UnsupportedRegimeError(
                    f"ω factorization evaluated past depth {d}")
            state.build_level(len(state.done))

    def zval(n):
        ensure(n)
        return state.zvals[n]

    def zstep(n):
        ensure(n + 1)
        return state.zstructs[(n + 1, n)]

    from .proobj import omega_pro_object
    Z = omega_pro_object(zval, zstep, depth=d)

    def icomp(n):
        ensure(n)
        return state.ivals[n]

    def pcomp(n):
        ensure(n)
        return state.pvals[n]

    left = level_map(f.source, Z, icomp, check=False, depth=d)
    right = level_map(Z, f.target, pcomp, check=False, depth=d)
    ensure(d - 1)
    return _finish_factorization(f, mode, Z, left, right, state, depth=d)


# -------------------------------------------------------------- lift_strict


@dataclass
class LiftResult:
    lift: ProMap
    level_index: dict   # s -> a(s)
    components: dict    # s -> base map B_{a(s)} -> X_s


def _check_pro_square(i, p, top, bottom):
    if top.source is not i.source and top.source != i.source:
        raise PreconditionError("top/left corner mismatch")
    if bottom.source is not i.target and bottom.source != i.target:
        raise PreconditionError("bottom/left corner mismatch")
    if top.target is not p.source and top.target != p.source:
        raise PreconditionError("top/right corner mismatch")
    if bottom.target is not p.target and bottom.target != p.target:
        raise PreconditionError("bottom/right corner mismatch")
    if not compose_pro(p, top).equals(compose_pro(bottom, i)):
        raise PreconditionError("square does not commute in pro-hom")


def lift_strict(i, p, top, bottom, mode=MODE_L1, special=None):
    """Inductive lift for a commuting square of LEVEL presentations over a
    shared finite index.

    Mode L1 pairs a levelwise cofibration i against a special acyclic
    fibration p; mode L2 a levelwise acyclic cofibration against a
    special fibration.  The lift is GENERAL with components
    B_{a(s)} -> X_s, where a(s) is the smallest well-order index
    dominating s and all previous a(t) at which the inputs commute on
    the nose.
    """
    for m, name in ((i, "i"), (p, "p"), (top, "top"), (bottom, "bottom")):
        if m.kind != LEVEL:
            raise PreconditionError(f"{name} must be LEVEL; levelize first")
    idx = i.source.index
    if idx.regime != FINITE:
        raise UnsupportedRegimeError("lift_strict runs in the finite regime")
    if p.source.index != idx:
        raise PreconditionError("square must share one index; levelize first")
    _check_pro_square(i, p, top, bottom)
    for s in idx.elements:
        cls = classify_map(i.level_component(s))
        need = cls.is_cof if mode == MODE_L1 else (cls.is_cof and cls.is_we)
        if not need:
            raise PreconditionError(f"left map fails its class at level {s}")
    if special is None:
        special = detect_special(p, ACYCLIC_FIB if mode == MODE_L1 else FIB)
    if special.mode != (ACYCLIC_FIB if mode == MODE_L1 else FIB):
        raise PreconditionError("special certificate has the wrong mode")
    special.require()

    A, B = i.source, i.target
    X = p.source
    well = linear_extension(idx)
    order = list(well)
    pos = {s: k for k, s in enumerate(order)}
    a_of, comps = {}, {}

    for s in order:
        m = matching_map(p, s)
        floor = pos[s]
        for t in a_of:
            if idx.lt(t, s):
                floor = max(floor, pos[a_of[t]])
        # a(s): smallest well-order index dominating s and all a(t), t < s,
        # at which every needed equality holds on the nose
        chosen = None
        for u in order[floor:]:
            if not idx.leq(s, u):
                continue
            if any(idx.lt(t, s) and not idx.leq(a_of[t], u) for t in a_of):
                continue
            alpha = compose(top.level_component(s), A.struct(u, s))
            if m.cone is None:
                beta = compose(bottom.level_component(s), B.struct(u, s))
            else:
                preds = idx.predecessors(s)
                legs = {f"Y.top:{s}": compose(bottom.level_component(s),
                                              B.struct(u, s))}
                for t in preds:
                    legs[f"X:{t}"] = compose(comps[t], B.struct(u, a_of[t]))
                    legs[f"Y:{t}"] = compose(p.level_component(t), legs[f"X:{t}"])
                cone = Cone(m.cone.diagram, B.value(u), legs)
                if cone.check_limit_cone() is not None:
                    continue
                try:
                    beta = m.cone.mediate(cone)
                except PreconditionError:
                    continue
            if compose(m.map, alpha) != compose(beta, i.level_component(u)):
                continue
            h = _base_lift(i.level_component(u), m.map, alpha, beta)
            if h is None:
                continue
            a_of[s] = u
            comps[s] = h
            chosen = u
            break
        if chosen is None:
            raise VerificationFailure(
                f"no refinement level admits a lift at {s}", witness=s)

    lift = general_map(B, X, {s: (a_of[s], comps[s]) for s in idx.elements})
    if not compose_pro(lift, i).equals(top):
        raise VerificationFailure("lift fails the top triangle")
    if not compose_pro(p, lift).equals(bottom):
        raise VerificationFailure("lift fails the bottom triangle")
    return LiftResult(lift=lift, level_index=a_of, components=comps)


def _base_lift(i_c, m_map, alpha, beta):
    from .base import solve_lift
    try:
        return solve_lift(i_c, m_map, alpha, beta)
    except PreconditionError:
        return None
