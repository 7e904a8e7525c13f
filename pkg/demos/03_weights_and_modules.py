"""Weight spaces of End(Gamma_{0,1}), its decomposition, and the
alternation of iterated brackets.

Run: python3 demos/03_weights_and_modules.py
"""

from jones_torelli import sp4
from jones_torelli.cli import reference_table
from jones_torelli.expansion import delta_k
from jones_torelli.words import parse_word

full = sp4.full_space()
print("End(Gamma_{0,1}), dimension", full.dim)
print(reference_table(full))
print("matches the reference table:", sp4.matches_table(full, sp4.END_WEIGHT_TABLE))
print("constituents:", sp4.identify_module(full))

g02 = sp4.gamma02()
print("\nGamma_{0,2} generated from e_{1,2}, dimension", g02.dim)
print(reference_table(g02))
print("matches the reference table:", sp4.matches_table(g02, sp4.GAMMA02_WEIGHT_TABLE))

br = sp4.bracket_module(g02, g02)
print("\n[G02, G02]: dimension", br.dim, "->", sp4.identify_module(br))
print("[G02, G20]:", sp4.identify_module(sp4.bracket_module(g02, br)))

print("\niterated brackets C_k = [C_1, C_{k-1}]:")
for k, labels in sp4.alternation(6):
    print(f"  C_{k}: {labels}")

d = delta_k(parse_word("psi0"), 1)
basis, info = sp4.orbit_span(d, depth=4)
print("\norbit of delta_1(psi0): rank by word length", info["rank_by_depth"])
print("span is Gamma_{0,2}:", sp4.Submodule(basis) == g02, " Sp-stable:", info["sp_stable"])
