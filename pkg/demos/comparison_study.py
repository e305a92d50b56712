"""The low-degree comparison map and the stabilization study.

Run:  python demos/comparison_study.py
"""

from blobcx.algebra import builtin
from blobcx.comparison import build_phi, h0_comparison, stabilization_study, verify_phi

for spec in (("truncated_polynomial", 2), ("matrix_algebra", 2)):
    A = builtin(*spec)
    cm = build_phi(A, n=3)
    checks = verify_phi(cm).checks + h0_comparison(cm).checks
    print(f"{A.name}: " + ", ".join(f"{c.name} [{c.status}]" for c in checks))

    # phi1 of the first Hochschild 1-chain whose image is nonzero
    H, B = cm.source.complex, cm.target.complex
    for j in range(H.dim(1)):
        col = cm.phi[1].column(j)
        if col:
            print(f"  phi1({H.tag(1, j)}) =", " + ".join(f"{v}*{B.tag(1, i)}" for i, v in sorted(col.items())))
            break

print("\nmarked circle betti vs HH (tower-free model, degrees 0..2)")
for spec in (("truncated_polynomial", 2), ("matrix_algebra", 2)):
    A = builtin(*spec)
    rep = stabilization_study(A, None, range(2, 6), 2)
    for row in rep.tables["stabilization"]:
        print(f"  {A.name} N={row['N']}: betti {row['betti']} hh {row['hh']} {row['status'][:40]}")
    print("  minimal N:", rep.tables["minimal_agreeing_N"])
