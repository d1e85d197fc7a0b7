"""Tabulate restricted types and c-coefficients for every pinned automorphism up to rank 4."""

from lgk.fixedgroup import build_fixed_datum, weyl_order_check
from lgk.rootdatum import build_from_type, diagram_automorphisms


def main():
    print(f"{'datum':<12} {'perm':<10} {'restricted':<10} {'c':<12} |W^theta|")
    for name in ["A1", "A2", "A3", "A4", "B2", "B3", "C3", "D4", "G2"]:
        d = build_from_type(name)
        for th in diagram_automorphisms(d):
            if th.is_identity:
                continue
            fd = build_fixed_datum(d, th)
            perm = "".join(str(i + 1) for i in th.perm)
            w = weyl_order_check(fd).witness["fixed"]
            print(f"{name + ' sc':<12} {perm:<10} {fd.type_name or '?':<10} {str(list(fd.c)):<12} {w}")


if __name__ == "__main__":
    main()
