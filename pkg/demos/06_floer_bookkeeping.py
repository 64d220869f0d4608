"""GF(2) complex bookkeeping: differentials, cohomology, golden values.

Strip counts are inputs; the module checks the axioms (degree raised by one,
d^2 = 0 over GF(2)), computes cohomology by elimination, and reproduces the
golden sphere-pair values: one transverse intersection point in degree 0 in
one order, degree m in the other, and total cohomology {0: 1, m: 1} for a
compactified plane-pair Lagrangian.
"""

from slaglab import (
    Generator,
    build_complex,
    complex_to_json,
    expected_sphere_cohomology,
    verify_degree_zero_identity,
)
from slaglab.errors import DifferentialError

print("the transverse sphere pair, both orders (m = 3):")
cx_zero = build_complex([Generator("origin", 0)], {})
cx_m = build_complex([Generator("origin", 3)], {})
print(f"  HF(S0, S_phi) = {cx_zero.cohomology_dims()}")
print(f"  HF(S_phi, S0) = {cx_m.cohomology_dims()}")
print(f"  degree-zero identity holds: {verify_degree_zero_identity(cx_zero)}")

print("\ngolden total cohomology of a compactified plane-pair Lagrangian:")
for m in (3, 5):
    print(f"  m = {m}: {expected_sphere_cohomology(m)}")

print("\na 4-generator complex with cancelling squares (d^2 = 0):")
gens = [
    Generator("a", 0, 0.0, 1.0),
    Generator("b1", 1, 0.1, 0.8),
    Generator("b2", 1, 0.2, 0.9),
    Generator("c", 2, 0.3, 0.4),
]
counts = {("a", "b1"): 1, ("a", "b2"): 1, ("b1", "c"): 1, ("b2", "c"): 1}
cx = build_complex(gens, counts)
print(f"  chain dims  : {cx.chain_dims()}")
print(f"  cohomology  : {cx.cohomology_dims()}")
print(f"  Euler char  : {cx.euler_characteristic()}")

print("\nan inconsistent differential is rejected:")
try:
    build_complex(
        [Generator("a", 0), Generator("b", 1), Generator("c", 2)],
        {("a", "b"): 1, ("b", "c"): 1},
    )
except DifferentialError as exc:
    print(f"  rejected: {exc}")

print("\nserialized form (the CLI's `floer --input` schema):")
print(complex_to_json(cx_zero))
