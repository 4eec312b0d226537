#!/usr/bin/env python3
"""The levelwise weak-equivalence calculus: factoring a witnessed
pro-iso through the chain quotient, composing zigzags, cancellation, a
retract exhibition, and the properness witness."""

from promc import (HFamily, chain_poset, identity_pro, level_map,
                   pro_factor_iso, pro_object, proper_pullback,
                   retract_exhibit, set_map, set_obj, two_of_three,
                   compose_zigzag_we)
from promc.suites import Rng, gen_fib_onto, gen_shift_iso, gen_we_level_map

# worked collapse again, with its witness family
I = chain_poset(2)
X = pro_object(I, {"1": set_obj(["a", "b"]), "0": set_obj(["x"])},
               {("1", "0"): set_map(set_obj(["a", "b"]), set_obj(["x"]),
                                    {"a": "x", "b": "x"})})
Y = pro_object(I, {"1": set_obj(["u"]), "0": set_obj(["y"])},
               {("1", "0"): set_map(set_obj(["u"]), set_obj(["y"]),
                                    {"u": "y"})})
f = level_map(X, Y, {"1": set_map(X.value("1"), Y.value("1"),
                                  {"a": "u", "b": "u"}),
                     "0": set_map(X.value("0"), Y.value("0"), {"x": "y"})})
wit = HFamily({("1", "0"): set_map(Y.value("1"), X.value("0"), {"u": "x"})})

out = pro_factor_iso(f, wit)
print("middle object:", {s: out.middle.value(s).elements for s in I.elements})
print("structure map Z_1 -> Z_0:", out.middle.struct("1", "0").mapping)
out.left_cert.replay()
out.right_cert.replay()
print("both factors certified pro-isos")

# a zigzag through a shift-pattern pro-iso, in ChainF2
rng = Rng(3)
h, hw = gen_shift_iso(rng, "chain-f2", length=2, max_deg=1, max_dim=2)
fwe = gen_we_level_map(rng, h.target)
zz = compose_zigzag_we(fwe, h, identity_pro(h.source), hw)
print("zigzag output is a levelwise we on",
      len(zz.level_classes), "levels")

# two-out-of-three, left cancellation around the worked collapse
o2 = two_of_three("left-cancel", f, identity_pro(X), identity_pro(Y), f, wit)
print("left-cancel output levels all we:",
      all(c.is_we for c in o2.level_classes.values()))

# retract exhibition of an acyclic cofibration
grid = retract_exhibit(identity_pro(X), "acyclic-cof")
grid.replay()
print("identity exhibited as a retract of the factorization's left leg")

# properness: pull a weak equivalence back along a fibration
g_iso, gw = gen_shift_iso(rng, "set-bij", length=2, max_size=3)
pp = proper_pullback(gen_fib_onto(rng, g_iso.target),
                     gen_we_level_map(rng, g_iso.source), g_iso, gw)
print("properness witness levels all we:",
      all(c.is_we for c in pp.level_classes.values()))
