"""
Pro-objects and pro-maps over cofinite directed index posets.

A pro-object is a functor from an index poset to a base instance with
structure maps running from larger to smaller indices.  Pro-maps come in
two presentations: LEVEL (a natural transformation over a shared index)
and GENERAL (one component pair (source index, base map) per target
index, compatible up to refinement).  In the finite regime the maximum
index is initial in the index category, so pro-hom equality is decided
by realizing components at the maxima; the ω regime checks everything up
to a truncation depth.
"""

from __future__ import annotations

from .base import BaseMap, compose, identity
from .errors import MalformedError, PreconditionError
from .indexing import DEFAULT_DEPTH, FINITE, OMEGA

LEVEL = "level"
GENERAL = "general"


class ProObject:
    """Values and composable structure maps over an index poset.

    Finite regime: explicit dictionaries.  ω regime: generator callables
    value_fn(n) and step_fn(n): X_{n+1} -> X_n, deterministic in n,
    evaluated lazily and cached.
    """

    __slots__ = ("index", "_values", "_structs", "_value_fn", "_step_fn")

    def __init__(self, index, values=None, structs=None,
                 value_fn=None, step_fn=None):
        self.index = index
        if index.regime == FINITE:
            self._values = dict(values)
            if set(self._values) != set(index.elements):
                raise MalformedError("values must cover the index carrier")
            self._structs = {}
            self._value_fn = self._step_fn = None
            self._close_structs(structs or {})
        else:
            self._values = {}
            self._structs = {}
            self._value_fn = value_fn
            self._step_fn = step_fn

    def _close_structs(self, given):
        idx = self.index
        pairs = sorted((t, s) for t in idx.elements for s in idx.elements
                       if idx.leq(s, t))
        given = dict(given)
        for s in idx.elements:
            self._structs[(s, s)] = identity(self._values[s])
        covers = set(idx.covers())
        # interval height = number of elements strictly between, +1
        def height(t, s):
            return sum(1 for u in idx.elements if idx.leq(s, u) and idx.leq(u, t))
        for (t, s) in sorted((p for p in pairs if p[0] != p[1]),
                             key=lambda p: height(*p)):
            if (t, s) in given:
                m = given[(t, s)]
                if not isinstance(m, BaseMap) or m.source != self._values[t] \
                        or m.target != self._values[s]:
                    raise MalformedError(f"structure map {t}->{s} has wrong endpoints")
                self._structs[(t, s)] = m
            elif (s, t) in covers:
                raise MalformedError(f"missing structure map for cover {t}->{s}")
            else:
                u = next(u for u in idx.elements
                         if (u, t) in covers and idx.leq(s, u))
                self._structs[(t, s)] = compose(self._structs[(u, s)],
                                                self._structs[(t, u)])
        self.validate()

    def validate(self):
        """Functoriality: all composites agree with the stored maps."""
        idx = self.index
        if idx.regime != FINITE:
            return
        for (t, u) in self._structs:
            for s in idx.elements:
                if idx.leq(s, u):
                    lhs = compose(self._structs[(u, s)], self._structs[(t, u)])
                    if lhs != self._structs[(t, s)]:
                        raise MalformedError(
                            f"functoriality fails on {t} >= {u} >= {s}")

    @property
    def instance(self):
        if self.index.regime == FINITE:
            return next(iter(self._values.values())).instance
        return self.value(0).instance

    def value(self, s):
        if self.index.regime == FINITE:
            return self._values[s]
        s = int(s)
        if s not in self._values:
            self._values[s] = self._value_fn(s)
        return self._values[s]

    def step(self, n):
        """ω regime: the structure map X_{n+1} -> X_n."""
        n = int(n)
        if (n + 1, n) not in self._structs:
            m = self._step_fn(n)
            if m.source != self.value(n + 1) or m.target != self.value(n):
                raise MalformedError(f"step {n + 1}->{n} has wrong endpoints")
            self._structs[(n + 1, n)] = m
        return self._structs[(n + 1, n)]

    def struct(self, t, s):
        """The structure map X_t -> X_s for t >= s."""
        if not self.index.leq(s, t):
            raise PreconditionError(f"no structure map {t}->{s}")
        if self.index.regime == FINITE:
            return self._structs[(t, s)]
        t, s = int(t), int(s)
        if (t, s) not in self._structs:
            if t == s:
                m = identity(self.value(s))
            else:
                m = self.step(s)
                for k in range(s + 1, t):
                    m = compose(m, self.step(k))
            self._structs[(t, s)] = m
        return self._structs[(t, s)]

    def max_value(self):
        return self.value(self.index.max_element())

    def __eq__(self, other):
        if not isinstance(other, ProObject) or self.index != other.index:
            return False
        if self.index.regime != FINITE:
            return self is other
        return self._values == other._values and self._structs == other._structs

    def __hash__(self):
        return id(self) if self.index.regime == OMEGA else hash(
            (self.index, tuple(sorted(self._values.items(), key=lambda kv: kv[0]))))

    def __repr__(self):
        if self.index.regime == FINITE:
            return f"ProObject({ {s: self._values[s] for s in self.index.elements} })"
        return "ProObject(omega)"


def pro_object(index, values, structs):
    """Finite-regime constructor; *structs* maps (t, s) pairs (at least
    every covering pair) to base maps, closed under composition here."""
    return ProObject(index, values=values, structs=structs)


def omega_pro_object(value_fn, step_fn, depth=DEFAULT_DEPTH):
    from .indexing import omega
    return ProObject(omega(depth), value_fn=value_fn, step_fn=step_fn)


class ProMap:
    """A morphism of pro-objects in LEVEL or GENERAL presentation."""

    __slots__ = ("source", "target", "kind", "_comps", "_comp_fn")

    def __init__(self, source, target, kind, comps=None, comp_fn=None,
                 check=True, depth=None):
        if source.instance != target.instance:
            raise MalformedError("pro-map mixes instances")
        self.source = source
        self.target = target
        self.kind = kind
        self._comps = dict(comps) if comps is not None else None
        self._comp_fn = comp_fn
        if kind == LEVEL and source.index != target.index:
            raise MalformedError("LEVEL presentation needs a shared index")
        if check:
            self.validate(depth=depth)

    # -- component access ------------------------------------------------

    def level_component(self, s):
        if self.kind != LEVEL:
            raise PreconditionError("not a LEVEL presentation")
        if self._comps is not None:
            if s not in self._comps:
                if self._comp_fn is None:
                    raise PreconditionError(f"no component at {s}")
                self._comps[s] = self._comp_fn(s)
            return self._comps[s]
        return self._comp_fn(s)

    def component(self, s):
        """GENERAL view: (source index t, base map X_t -> Y_s)."""
        if self.kind == LEVEL:
            return (s, self.level_component(s))
        if self._comps is not None and s in self._comps:
            return self._comps[s]
        if self._comp_fn is not None:
            pair = self._comp_fn(s)
            if self._comps is not None:
                self._comps[s] = pair
            return pair
        raise PreconditionError(f"no component at {s}")

    # -- validation -------------------------------------------------------

    def validate(self, depth=None):
        idx = self.target.index
        carrier = idx.carrier(depth)
        if self.kind == LEVEL:
            for s in carrier:
                f = self.level_component(s)
                if f.source != self.source.value(s) or f.target != self.target.value(s):
                    raise MalformedError(f"component at {s} has wrong endpoints")
            if idx.regime == OMEGA:
                pairs = [(n + 1, n) for n in carrier[:-1]]  # induction gives the rest
            else:
                pairs = [(t, s) for t in carrier for s in carrier if idx.lt(s, t)]
            for t, s in pairs:
                lhs = compose(self.target.struct(t, s), self.level_component(t))
                rhs = compose(self.level_component(s), self.source.struct(t, s))
                if lhs != rhs:
                    raise MalformedError(f"naturality fails on {t} >= {s}")
            return
        src_idx = self.source.index
        for s in carrier:
            t, g = self.component(s)
            if not (src_idx.regime == OMEGA or t in src_idx.elements):
                raise MalformedError(f"component at {s} uses unknown index {t}")
            if g.source != self.source.value(t) or g.target != self.target.value(s):
                raise MalformedError(f"component at {s} has wrong endpoints")
        # compatibility up to refinement: realized maps agree under the
        # target structure maps
        for s2 in carrier:
            for s1 in carrier:
                if idx.lt(s1, s2):
                    lhs = compose(self.target.struct(s2, s1),
                                  self.realize(s2, depth=depth))
                    if lhs != self.realize(s1, depth=depth):
                        raise MalformedError(
                            f"compatibility fails from {s2} down to {s1}")

    # -- realization and equality ------------------------------------------

    def _refinement_index(self, depth=None):
        src_idx = self.source.index
        if src_idx.regime == FINITE:
            return src_idx.max_element()
        d = depth if depth is not None else src_idx.depth
        M = d - 1
        for s in self.target.index.carrier(depth):
            M = max(M, int(self.component(s)[0]))
        return M

    def realize(self, s, depth=None, at=None):
        """The component at target index s precomposed up to the source
        maximum (finite) or a common ω refinement level."""
        t, g = self.component(s)
        M = at if at is not None else self._refinement_index(depth)
        return compose(g, self.source.struct(M, t))

    def equals(self, other, depth=None):
        """Pro-hom equality of presentations with the same endpoints."""
        if self.source is not other.source and self.source != other.source:
            raise PreconditionError("comparing maps with different sources")
        if self.target is not other.target and self.target != other.target:
            raise PreconditionError("comparing maps with different targets")
        at = self._refinement_index(depth)
        if self.source.index.regime == OMEGA:
            at = max(at, other._refinement_index(depth))
        for s in self.target.index.carrier(depth):
            if self.realize(s, depth=depth, at=at) != other.realize(s, depth=depth, at=at):
                return False
        return True

    def __repr__(self):
        return f"ProMap({self.kind})"


def level_map(source, target, comps, check=True, depth=None):
    if callable(comps):
        return ProMap(source, target, LEVEL, comp_fn=comps, comps={},
                      check=check, depth=depth)
    return ProMap(source, target, LEVEL, comps=comps, check=check, depth=depth)


def general_map(source, target, comps, check=True, depth=None):
    if callable(comps):
        return ProMap(source, target, GENERAL, comp_fn=comps, comps={},
                      check=check, depth=depth)
    return ProMap(source, target, GENERAL, comps=comps, check=check, depth=depth)


def identity_pro(X):
    if X.index.regime == FINITE:
        return level_map(X, X, {s: identity(X.value(s)) for s in X.index.elements},
                         check=False)
    return level_map(X, X, lambda n: identity(X.value(n)), check=False)


def compose_pro(g, f, check=False, depth=None):
    """g ∘ f by refinement chasing; LEVEL survives a shared index."""
    if f.target is not g.source and f.target != g.source:
        raise PreconditionError("non-composable pro-maps")
    if f.kind == LEVEL and g.kind == LEVEL and f.source.index == g.target.index:
        if f.source.index.regime == FINITE:
            comps = {s: compose(g.level_component(s), f.level_component(s))
                     for s in f.source.index.elements}
            return level_map(f.source, g.target, comps, check=check)
        return level_map(f.source, g.target,
                         lambda n: compose(g.level_component(n), f.level_component(n)),
                         check=check, depth=depth)

    def comp(s):
        t, gamma = g.component(s)
        u, phi = f.component(t)
        return (u, compose(gamma, phi))

    if g.target.index.regime == FINITE:
        return general_map(f.source, g.target,
                           {s: comp(s) for s in g.target.index.elements},
                           check=check)
    return general_map(f.source, g.target, comp, check=check, depth=depth)


def to_general(f):
    if f.kind == GENERAL:
        return f
    if f.target.index.regime == FINITE:
        return general_map(f.source, f.target,
                           {s: (s, f.level_component(s))
                            for s in f.target.index.elements}, check=False)
    return general_map(f.source, f.target,
                       lambda n: (n, f.level_component(n)), check=False)


def constant_over(index, obj):
    """The constant functor on *index* with value *obj*."""
    if index.regime == FINITE:
        values = {s: obj for s in index.elements}
        structs = {(t, s): identity(obj)
                   for t in index.elements for s in index.elements
                   if index.leq(s, t)}
        return ProObject(index, values=values, structs=structs)
    return ProObject(index, value_fn=lambda n: obj,
                     step_fn=lambda n: identity(obj))
