"""How much of psi0 survives modulo commutators with the mapping class
group, seen through the truncations of degree 1 and 2.

Run: python3 demos/04_cyclic_quotients.py   (about 20 seconds)
"""

from jones_torelli import quotients

r1 = quotients.degree1_report()
print("degree 1: lattice L spanned by conjugates of delta_1(psi0)")
print("  rank of L by conjugating-word length:", r1.rank_by_depth)
print("  stabilized at length", r1.stabilized_at, "; L stable under all generators:", r1.sp_stable)
print("  L / L' elementary divisors:", r1.divisors)
print("  order of delta_1(psi0) modulo L':", r1.order)

r2 = quotients.degree2_report()
print("\ndegree 2: class-2 group 1 + a h + b h^2 (mod h^3)")
print("  subgroup ranks:", r2.ranks())
print("  closure rounds:", r2.closure_rounds)
print("  order of phi2(psi0) modulo the commutator image:", r2.order)
print("  degree-1 order divides it:", r2.order % r1.order == 0)
