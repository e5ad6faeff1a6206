"""Composition-flag point counts over finite fields and the resulting functional phi_M."""

from slopebases import cartan
from slopebases.envalg import word_str, words_of_weight
from slopebases.preproj import catalog_module, direct_sum, flag_euler, hn_polytope, phi

c = cartan("A3")
m = direct_sum(catalog_module(c, "2/13/2"), catalog_module(c, "S2"))
print(f"module 2/13/2 + S2, dimension vector {m.dims}")
for w in words_of_weight(c, m.dims):
    fc = flag_euler(w, m)
    if fc.euler:
        poly = " + ".join(f"{a}q^{k}" for k, a in enumerate(fc.coefficients) if a)
        print(f"  word {word_str(w)}: #F(q) = {poly}, Euler characteristic {fc.euler}")
print("nonzero values of phi_M:", ", ".join(f"{k}:{v}" for k, v in phi(m).value_map().items() if v))
print("HN polytope:", hn_polytope(m))
