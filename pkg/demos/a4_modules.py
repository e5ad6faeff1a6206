"""Two A4 modules with the same dimension vector that Hom from a small module tells apart."""

from slopebases.preproj import A4_PAIR_TEXT, a4_pair_modules, head_socle_multiplicities, hom_dim

mods = a4_pair_modules()
for name in ("M'", "M''"):
    print(f"{name} is given by the diagrams")
    print("    " + A4_PAIR_TEXT[name].replace("\n", "\n    "))
    head, socle = head_socle_multiplicities(mods[name])
    print(f"  dimension vector {mods[name].dims}")
    print(f"  head multiplicities  {head}")
    print(f"  socle multiplicities {socle}")
    print(f"  dim Hom(N, {name}) = {hom_dim(mods['N'], mods[name])}\n")
