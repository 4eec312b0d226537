#!/usr/bin/env python3
"""Tour of the two exact model instances.

SetBij: finite sets, weak equivalences the bijections, everything is a
cofibration and a fibration.  ChainF2: bounded chain complexes over
GF(2) with degree-raising differentials; quasi-isos / degreewise
injections / degreewise surjections.
"""

from promc import (ACOF_FIB, COF_ACF, chain_map, chain_obj, classify_map,
                   factor_map, identity, pullback, set_map, set_obj,
                   solve_lift, zero_complex)

# --- SetBij ----------------------------------------------------------------

A = set_obj(["a", "b"])
B = set_obj(["x"])
f = set_map(A, B, {"a": "x", "b": "x"})
print("collapse {a,b} -> {x}:", classify_map(f))

fp = factor_map(f, COF_ACF)
print("cof-then-acyclicfib: left =", fp.left.mapping,
      "right is identity:", fp.right == identity(B))

# --- ChainF2: the disk and the sphere ---------------------------------------

disk = chain_obj(0, 1, [1, 1], {0: [[1]]})   # one generator in degrees 0, 1
sphere = chain_obj(0, 0, [1])                # one generator in degree 0
p = chain_map(disk, sphere, {0: [[1]]})      # identity in degree 0
print("disk -> sphere:", classify_map(p))    # fibration, not a quasi-iso

# factor 0 -> sphere through the mapping cylinder
zero_to_sphere = chain_map(zero_complex(), sphere, {})
cyl = factor_map(zero_to_sphere, COF_ACF)
print("cylinder middle dims:", [cyl.middle.dim(n) for n in cyl.middle.degrees])
print("right factor classes:", classify_map(cyl.right))

# the path-object factorization of the same map
path = factor_map(zero_to_sphere, ACOF_FIB)
print("path middle dims:", [path.middle.dim(n) for n in path.middle.degrees])
print("left factor is an acyclic cofibration:", classify_map(path.left))

# --- lifting ----------------------------------------------------------------

i = chain_map(zero_complex(), disk, {})      # acyclic cofibration
h = solve_lift(i, p, i, p)                   # lift in the square (i, p)
print("lift found:", h is not None, "- it is the identity:",
      h == identity(disk))

# --- finite limits ----------------------------------------------------------

C = set_obj(["u", "v"])
g = set_map(C, B, {"u": "x", "v": "x"})
lim = pullback(f, g)
print("pullback of {a,b} -> {x} <- {u,v}:", lim.apex.elements)
