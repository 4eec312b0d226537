"""
Index categories: finite cofinite directed posets and the ω-tower.

Finite posets are validated against the axioms (reflexive, antisymmetric,
transitive, directed, non-empty); the ω regime is handled symbolically
with a truncation depth for anything that must enumerate.  Every finite
directed poset has a maximum element, which later constructions use as
the initial object of the index category.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import MalformedError, PreconditionError, UnsupportedRegimeError

FINITE = "finite"
OMEGA = "omega"

DEFAULT_DEPTH = 16


class IndexViolation(MalformedError):
    """A raw relation failed one of the poset axioms."""

    def __init__(self, axiom, witness):
        super().__init__(f"{axiom} violated, witness {witness}")
        self.axiom = axiom
        self.witness = witness


class IndexPoset:
    """A cofinite directed poset, finite or the ω-tower.

    Finite regime stores element names and the full ≤ relation; the ω
    regime is the natural numbers with the usual order and a truncation
    depth used only for enumeration.
    """

    __slots__ = ("regime", "elements", "_leq", "depth")

    def __init__(self, regime, elements=(), leq=(), depth=DEFAULT_DEPTH):
        self.regime = regime
        if regime == OMEGA:
            self.elements = ()
            self._leq = frozenset()
            self.depth = depth
        elif regime == FINITE:
            self.elements = tuple(sorted(elements))
            self._leq = frozenset(leq)
            self.depth = None
        else:
            raise MalformedError(f"unknown regime {regime!r}")

    def leq(self, s, t):
        if self.regime == OMEGA:
            return int(s) <= int(t)
        return (s, t) in self._leq

    def lt(self, s, t):
        return s != t and self.leq(s, t)

    def carrier(self, depth=None):
        """Elements to enumerate over (all of them in the finite regime)."""
        if self.regime == OMEGA:
            return tuple(range(depth if depth is not None else self.depth))
        return self.elements

    def predecessors(self, t):
        """Strictly smaller elements, sorted."""
        if self.regime == OMEGA:
            return tuple(range(int(t)))
        return tuple(s for s in self.elements if self.lt(s, t))

    def upper_bounds(self, s, t):
        if self.regime == OMEGA:
            return (max(int(s), int(t)),)
        return tuple(u for u in self.elements if self.leq(s, u) and self.leq(t, u))

    def max_element(self):
        """The maximum; exists in every finite directed poset."""
        if self.regime == OMEGA:
            raise UnsupportedRegimeError("the ω-tower has no maximum")
        for m in self.elements:
            if all(self.leq(s, m) for s in self.elements):
                return m
        raise AssertionError("validated directed finite poset lost its maximum")

    def covers(self):
        """Covering pairs (s, t) with s < t and nothing in between."""
        if self.regime == OMEGA:
            raise UnsupportedRegimeError("covers of ω are infinite")
        out = []
        for s in self.elements:
            for t in self.elements:
                if self.lt(s, t) and not any(
                        self.lt(s, u) and self.lt(u, t) for u in self.elements):
                    out.append((s, t))
        return out

    def __eq__(self, other):
        if not isinstance(other, IndexPoset):
            return False
        if self.regime != other.regime:
            return False
        if self.regime == OMEGA:
            return True
        return self.elements == other.elements and self._leq == other._leq

    def __hash__(self):
        return hash((self.regime, self.elements, self._leq))

    def __repr__(self):
        if self.regime == OMEGA:
            return "IndexPoset(omega)"
        return f"IndexPoset({list(self.elements)})"


def omega(depth=DEFAULT_DEPTH):
    return IndexPoset(OMEGA, depth=depth)


def index_violation(elements, leq):
    """First violated axiom with a witness, or None if valid."""
    elements = list(elements)
    leq = set(leq)
    if not elements:
        return ("non-empty", None)
    for x in elements:
        if (x, x) not in leq:
            return ("reflexive", x)
    for (s, t) in leq:
        if s not in elements or t not in elements:
            return ("carrier", (s, t))
    for (s, t) in leq:
        if s != t and (t, s) in leq:
            return ("antisymmetric", (s, t))
    for (s, t) in leq:
        for (t2, u) in leq:
            if t2 == t and (s, u) not in leq:
                return ("transitive", (s, t, u))
    for s in elements:
        for t in elements:
            if not any((s, u) in leq and (t, u) in leq for u in elements):
                return ("directed", (s, t))
    return None


def validate_index(elements, leq=None):
    """Validate a raw relation (or the literal "omega") into an IndexPoset.

    Raises IndexViolation carrying the first failed axiom and a witness.
    """
    if elements == OMEGA:
        return omega()
    bad = index_violation(elements, leq)
    if bad is not None:
        raise IndexViolation(*bad)
    return IndexPoset(FINITE, elements, leq)


def from_covers(elements, covers, depth=DEFAULT_DEPTH):
    """Build a poset from covering pairs (s, t) meaning s < t, closing
    reflexively and transitively, then validating."""
    if elements == OMEGA:
        return omega(depth)
    elements = list(elements)
    leq = {(x, x) for x in elements}
    leq |= {(s, t) for s, t in covers}
    changed = True
    while changed:
        changed = False
        for (a, b) in list(leq):
            for (c, d) in list(leq):
                if b == c and (a, d) not in leq:
                    leq.add((a, d))
                    changed = True
    return validate_index(elements, leq)


def chain_poset(n, names=None):
    """The chain 0 < 1 < ... < n-1 (names optional)."""
    names = [str(i) for i in range(n)] if names is None else list(names)
    leq = {(names[i], names[j]) for i in range(n) for j in range(i, n)}
    return IndexPoset(FINITE, names, leq)


def point_poset(name="pt"):
    return IndexPoset(FINITE, [name], {(name, name)})


@dataclass(frozen=True)
class WellOrdering:
    """An order-respecting bijection onto 0..n-1 (a linear extension)."""
    poset: IndexPoset
    order: tuple

    def position(self, s):
        return self.order.index(s)

    def __iter__(self):
        return iter(self.order)


def linear_extension(poset):
    """Deterministic linear extension: minimal elements first, ties broken
    by lexicographic element identifier."""
    if poset.regime != FINITE:
        raise UnsupportedRegimeError("linear_extension needs the finite regime")
    remaining = set(poset.elements)
    order = []
    while remaining:
        ready = sorted(s for s in remaining
                       if not any(poset.lt(t, s) for t in remaining if t != s))
        if not ready:
            raise AssertionError("cycle in a validated poset")
        pick = ready[0]
        order.append(pick)
        remaining.remove(pick)
    return WellOrdering(poset, tuple(order))


@dataclass(frozen=True)
class CofinalMap:
    """A monotone function between index posets."""
    source: IndexPoset
    target: IndexPoset
    mapping: object  # dict for finite source, callable for omega

    def __call__(self, t):
        if callable(self.mapping):
            return self.mapping(t)
        return self.mapping[t]

    def check_monotone(self, depth=None):
        for s in self.source.carrier(depth):
            for t in self.source.carrier(depth):
                if self.source.leq(s, t) and not self.target.leq(self(s), self(t)):
                    raise PreconditionError(f"not monotone at ({s}, {t})")


@dataclass(frozen=True)
class CofinalityReport:
    ok: bool
    witness: object = None
    depth: int | None = None  # set when the answer is depth-qualified


def is_cofinal(F, depth=None):
    """Whether F hits arbitrarily high: every s in the target is dominated
    by some F(t).  Returns a report with a witness on failure; ω→ω
    answers are qualified by the truncation depth."""
    F.check_monotone(depth)
    tgt = F.target
    src_carrier = F.source.carrier(depth)
    depth_note = None
    if tgt.regime == OMEGA or F.source.regime == OMEGA:
        depth_note = depth if depth is not None else (
            F.source.depth if F.source.regime == OMEGA else tgt.depth)
    for s in tgt.carrier(depth):
        if not any(tgt.leq(s, F(t)) for t in src_carrier):
            return CofinalityReport(False, witness=s, depth=depth_note)
    return CofinalityReport(True, depth=depth_note)
