"""Hochschild homology of the builtin algebras, two ways.

Run:  python demos/hochschild_tour.py
"""

from blobcx.algebra import BUILTIN_ALGEBRAS, builtin, coinvariants, free_bimodule, regular_bimodule
from blobcx.hochschild import hh, small_resolution_hh
from blobcx.linalg import PrimeField

CAP = 5

print(f"HH_0..HH_{CAP - 1} from the cyclic bar complex")
for spec in BUILTIN_ALGEBRAS:
    A = builtin(*spec)
    reg, free = regular_bimodule(A), free_bimodule(A)
    print(f"  {A.name:32s} regular {hh(A, reg, CAP)}  free {hh(A, free, CAP)}  "
          f"coinv {coinvariants(reg).dim}")

# The truncated polynomial rings have a 2-periodic resolution; it gives the
# same numbers without ever forming tensor powers of the algebra.
print("\nbar complex vs periodic resolution for Q[x]/(x^n)")
for n in (2, 3, 4):
    A = builtin("truncated_polynomial", n)
    print(f"  n={n}: bar {hh(A, cap=CAP)}  resolution {small_resolution_hh(n, CAP)}")

# In characteristic 2 the multiplication-by-2 map in the resolution vanishes.
F2 = PrimeField(2)
print("\nQ[x]/(x^2) over GF(2):", hh(builtin("truncated_polynomial", 2, field=F2), cap=CAP),
      " oracle:", small_resolution_hh(2, CAP, F2))
