"""A walk through O(N) in type A2: functionals, slopes, expansions, polytopes, crystal."""

from slopebases import cartan, expand_ordered, pol, zeta
from slopebases.crystal import crystal_graph, politeness_check, semicanonical_family
from slopebases.preproj import catalog_module, phi
from slopebases.stability import is_semistable, rim_of

c = cartan("A2")
z1, z2 = zeta(c, 0), zeta(c, 1)
m12 = phi(catalog_module(c, "M12"))
m21 = phi(catalog_module(c, "M21"))



def values(f):
    return ", ".join(f"{w}:{v}" for w, v in f.value_map().items())


print("zeta_1 * zeta_2 on words:", values(z1 * z2))
print("phi(M12) on words:       ", values(m12))
print("phi(M21) on words:       ", values(m21))

theta = (1, -1)
print(f"\ntheta = {theta}")
for name, f in (("zeta_1 zeta_2", z1 * z2), ("phi(M12)", m12), ("phi(M21)", m21)):
    ok, slope = is_semistable(f, theta)
    rim = " -> ".join(str(x) for x in rim_of(f, theta))
    print(f"  {name:14s} semistable={ok!s:5s} rim {rim}")

print("\nphi(M21) as a sum of ordered monomials:")
for m in expand_ordered(m21, theta):
    print("  ", m.coefficient, "*", " * ".join("[" + values(g) + "]" for g in m.factors))

print("\npolytopes:")
for name, f in (("phi(M12)", m12), ("phi(M21)", m21), ("zeta_1 zeta_2", z1 * z2)):
    print(f"  {name:14s} {pol(f)}")

B = semicanonical_family(c, 3)
print("\npoliteness of the dual semicanonical basis up to height 3:", politeness_check(B).passed)
print("\ncrystal graph:")
print(crystal_graph(B).to_text())
