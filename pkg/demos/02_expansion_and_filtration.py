"""Expanding rho at t = -exp(h) and reading off the filtration of the
Torelli group.

Run: python3 demos/02_expansion_and_filtration.py
"""

from jones_torelli.exact import Matrix
from jones_torelli.expansion import coefficient, delta_k, filtration_degree, phi_truncated
from jones_torelli.jones import F, F_INV
from jones_torelli.sp4 import graded_identification
from jones_torelli.words import parse_word

psi0 = parse_word("psi0")
phi = phi_truncated(psi0, 2)
for i in range(3):
    print(f"h^{i} coefficient of phi(psi0):")
    for row in coefficient(phi, i).rows:
        print("   ", "  ".join(f"{str(x):>6}" for x in row))

d1 = delta_k(psi0, 1)
print("\ndelta_1(psi0) = F diag(6,6,-24,6,6) F^-1:",
      d1.matrix == F @ Matrix.diagonal([6, 6, -24, 6, 6]) @ F_INV)
print("as an endomorphism of Lambda^2 H / omega:", [str(x) for x in graded_identification(d1)[::6]], "(diagonal)")

# commutators of degree-1 elements go one step deeper
u, v = parse_word("psi0"), parse_word("xi psi0 xi'")
c = parse_word("[psi0, xi psi0 xi']")
print("\nfiltration degree of psi0:", filtration_degree(psi0, 3))
print("filtration degree of [psi0, xi psi0 xi^-1]:", filtration_degree(c, 3))
d2 = delta_k(c, 2)
print("delta_2 of the commutator equals the bracket of delta_1's:",
      d2 == delta_k(u, 1).bracket(delta_k(v, 1)))

# iota is central of order 2 in the image, so iota^2 never leaves the identity
print("iota^2 degree within h^4:", filtration_degree(parse_word("iota^2"), 4))
