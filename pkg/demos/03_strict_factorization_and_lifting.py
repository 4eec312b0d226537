#!/usr/bin/env python3
"""Relative matching maps, special fibrations, and the two inductive
constructions: strict factorization and the lift builder."""

from promc import (ACYCLIC_FIB, MODE_L1, MODE_L2, chain_poset,
                   classify_map, compose_pro, constant_over, detect_special,
                   factor_strict, level_map, lift_strict, matching_map,
                   pro_object, set_map, set_obj)
from promc.suites import Rng, gen_level_map

# the worked special acyclic fibration over the chain 0 < 1
I = chain_poset(2)
X = pro_object(I, {"1": set_obj(["a", "b"]), "0": set_obj(["x"])},
               {("1", "0"): set_map(set_obj(["a", "b"]), set_obj(["x"]),
                                    {"a": "x", "b": "x"})})
Y = pro_object(I, {"1": set_obj(["u", "v"]), "0": set_obj(["y"])},
               {("1", "0"): set_map(set_obj(["u", "v"]), set_obj(["y"]),
                                    {"u": "y", "v": "y"})})
p = level_map(X, Y, {"1": set_map(X.value("1"), Y.value("1"),
                                  {"a": "u", "b": "v"}),
                     "0": set_map(X.value("0"), Y.value("0"), {"x": "y"})})

m1 = matching_map(p, "1")
print("matching object at 1:", m1.map.target.elements)
print("M_1 p:", m1.map.mapping, "->", classify_map(m1.map))
print("special acyclic fibration:", detect_special(p, ACYCLIC_FIB).ok)

# strict factorization of a random level map, both modes
rng = Rng(5)
f = gen_level_map(rng, chain_poset(3), "chain-f2", max_deg=1, max_dim=2)
for mode in (MODE_L1, MODE_L2):
    fs = factor_strict(f, mode)
    print(f"mode {mode}: middle dims at top level:",
          [fs.middle.value("2").dim(n) for n in fs.middle.value("2").degrees],
          "- special check:", fs.special.ok)

# the lift builder: inclusion c({a}) -> c({a,b}) against p
A = constant_over(I, set_obj(["a"]))
B = constant_over(I, set_obj(["a", "b"]))
i = level_map(A, B, {s: set_map(A.value(s), B.value(s), {"a": "a"})
                     for s in I.elements})
top = level_map(A, X, {"1": set_map(A.value("1"), X.value("1"), {"a": "a"}),
                       "0": set_map(A.value("0"), X.value("0"), {"a": "x"})})
bottom = level_map(B, Y, {
    "1": set_map(B.value("1"), Y.value("1"), {"a": "u", "b": "v"}),
    "0": set_map(B.value("0"), Y.value("0"), {"a": "y", "b": "y"})})
res = lift_strict(i, p, top, bottom, mode=MODE_L1)
print("lift components at refinement levels:", res.level_index)
print("triangles verified:",
      compose_pro(res.lift, i).equals(top) and
      compose_pro(p, res.lift).equals(bottom))
