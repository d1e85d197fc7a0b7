"""Show, on A2 with w = s1 s2, which set of roots the rescaled generators produce.

Multiplying alpha_i^vee(c) n(s_i) along a reduced word gives the product of
alpha^vee(c) over positive roots made negative by w^-1, not by w.
"""

from lgk.rootdatum import build_from_type
from lgk.tits import LEFT, LITERAL, rescaled_section, rescaled_section_from_generators, scaling_support
from lgk.torus import KElem
from lgk.weyl import from_word

N = 24


def main():
    d = build_from_type("A2", "sc")
    w = from_word(d, [0, 1])
    c = [KElem(0, (("c", 1),), N)] * len(d.roots)
    gen = rescaled_section_from_generators(c, w, N)
    print("w = s1 s2")
    print("generators:", gen)
    for conv in (LEFT, LITERAL):
        roots = [d.coefficients[k] for k in scaling_support(w, conv)]
        e = rescaled_section(c, w, N, conv)
        print(f"{conv:>8}: roots {roots} -> {e}  matches generators: {e == gen}")


if __name__ == "__main__":
    main()
