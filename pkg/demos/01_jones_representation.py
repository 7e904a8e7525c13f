"""A tour of the five-dimensional Jones representation of the genus-2
mapping class group.

Run: python3 demos/01_jones_representation.py
"""

from jones_torelli.exact import T
from jones_torelli.jones import RHO_XI, RHO_Z1, psi0_closed_form, rho_evaluate, rho_specialize
from jones_torelli.words import parse_word, symplectic_action


def show(title, m):
    print(title)
    for row in m.rows:
        print("   ", " | ".join(f"{str(x):>26}" for x in row))
    print()


show("rho(z1):", RHO_Z1)
show("rho(xi):", RHO_XI)

# z2..z5 are conjugates of z1 by powers of xi, and xi = z1 z2 z3 z4 z5
print("xi = z1 z2 z3 z4 z5:", rho_evaluate(parse_word("z1 z2 z3 z4 z5")) == RHO_XI)
for i in range(1, 5):
    lhs = rho_evaluate(parse_word(f"z{i} z{i + 1} z{i}"))
    rhs = rho_evaluate(parse_word(f"z{i + 1} z{i} z{i + 1}"))
    print(f"braid relation z{i} z{i + 1}: {lhs == rhs}")
print("xi^6 = 1:", (RHO_XI ** 6).is_identity())
print("iota^2 = 1:", (rho_evaluate(parse_word("iota")) ** 2).is_identity())
print()

# psi0 is the twist along a separating curve, so it acts trivially on homology
psi0 = parse_word("psi0")
print("psi0 acts trivially on H_1:", symplectic_action(psi0).is_identity())
m = rho_evaluate(psi0)
show("rho(psi0):", m)
print("matches t^6 Id + (t^15 + 1) t^-24 N:", m == psi0_closed_form())
print("rho(psi0) at t = 1 is Id:", rho_specialize(psi0, 1).is_identity())
print("rho(psi0) at t = -1 is Id:", rho_specialize(psi0, -1).is_identity())
print("but at t = 2 it is not:", not rho_specialize(psi0, 2).is_identity())
print("entry (4,1) =", m[3, 0], " which factors as", (T ** 15 + 1) * T ** -24, "times", T ** 10 - 1)
