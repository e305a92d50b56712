"""Finite blob complexes on intervals and circles.

Run:  python demos/blob_models.py
"""

from blobcx.algebra import builtin, regular_bimodule
from blobcx.blob import build_blob_complex, circle, enumerate_configurations, interval, skein
from blobcx.blob.maps import contracting_homotopy, glue, matrix_order, rotation_action
from blobcx.chain import betti_numbers, verify_chain_map, verify_homotopy

A = builtin("truncated_polynomial", 2)

print("configurations per degree (with towers / tower-free)")
for m in (interval(3), circle(2), circle(3)):
    full = [len(enumerate_configurations(m, k)) for k in range(5)]
    free = [len(enumerate_configurations(m, k, 1)) for k in range(5)]
    print(f"  {str(m):10s} {full}  {free}")

print("\nintervals are contractible: betti and the explicit homotopy")
for n in (1, 2, 3, 4):
    model = build_blob_complex(interval(n), A, cap=3)
    f, g, h = contracting_homotopy(model)
    print(f"  interval({n}) dims {model.dims} betti {betti_numbers(model.complex)[:3]} "
          f"homotopy ok: {verify_homotopy(h, f, g).passed}")

print("\ncircles (top degree is truncated, so its betti number is an upper bound)")
for n in (2, 3, 4):
    model = build_blob_complex(circle(n), A, cap=3)
    print(f"  circle({n}) dims {model.dims} betti {betti_numbers(model.complex)}")

model = build_blob_complex(circle(3), A, cap=2)
r = rotation_action(model, 1)
print("\nrotation of circle(3): chain map", verify_chain_map(r).passed,
      " order", [matrix_order(r[k]) for k in range(3)])
g = glue(build_blob_complex(interval(3), A, cap=2), model)
print("gluing interval(3) -> circle(3): chain map", verify_chain_map(g).passed)

M2 = builtin("matrix_algebra", 2)
for n in (2, 3, 4):
    dim, _ = skein(circle(n, marked=True), M2, regular_bimodule(M2))
    print(f"skein module of the marked circle({n}) for M2(Q): dim {dim}")
