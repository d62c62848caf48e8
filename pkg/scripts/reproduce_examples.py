"""Recompute the worked examples: determinants, D#, K class, reduction trace and Z."""
from dualgraph.birational import build_Z, reduce_to_trivial
from dualgraph.boundary import KValue, classify_K
from dualgraph.corpus import CORPUS, verify_paper
from dualgraph.cycles import pa_genus
from dualgraph.graph import determinant_d


def show(name: str) -> None:
    b = CORPUS[name].boundary()
    k = classify_K(b)
    print(f"== {name}: {CORPUS[name].description}")
    print(f"   d(D) = {determinant_d(b.D)}, d(C+D) = {determinant_d(b.graph)}")
    print("   D# = " + ", ".join(f"{v}:{k.d_sharp.cycle[v]}" for v in b.D.ids))
    print(f"   (D#.C) = {k.c_pairing} -> {k.value.value}")
    if k.value is KValue.AMPLE:
        trace = reduce_to_trivial(b)
        for s in trace.steps:
            print(f"   contract {s.contracted} (case {s.case}) -> C = {s.boundary.c_id}, (D#.C) = {s.c_pairing}")
        z = build_Z(b, trace)
        print(f"   Z = {z.literal()}, p_a(Z) = {pa_genus(z)}")


def main() -> None:
    for name in ("trivial_long_arm_m3", "trivial_two_point_m3", "ample_f3", "ample_f2", "conic_complement"):
        show(name)
    report = verify_paper()
    print(report.lines()[-1])


if __name__ == "__main__":
    main()
