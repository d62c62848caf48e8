"""Enumerate boundaries over Hirzebruch seeds and check the K-class properties on each.

Usage: python3 scripts/enumerate_boundaries.py [--depth 8] [--m 2 3 4] [--jsonl out.jsonl]
"""
import argparse
import json
import time
from collections import Counter

from dualgraph.birational import build_Z, reduce_to_trivial
from dualgraph.boundary import KValue, branched_components
from dualgraph.construct import EnumerationConfig, enumerate_boundaries
from dualgraph.corpus import jsonable
from dualgraph.cycles import pa_genus
from dualgraph.graph import determinant_d
from dualgraph.singularity import is_rational


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--depth", type=int, default=8)
    ap.add_argument("--m", type=int, nargs="+", default=[2, 3, 4])
    ap.add_argument("--jsonl", help="write one record per boundary")
    args = ap.parse_args()

    start = time.perf_counter()
    found = enumerate_boundaries(EnumerationConfig(tuple(args.m), args.depth, ("negdef", "minres")))
    classes = Counter()
    problems = []
    for e in found:
        b, k = e.boundary, e.kclass
        classes[k.value.value] += 1
        if determinant_d(b.graph) != -1:
            problems.append((e.canonical, "d(C+D) != -1"))
        branched = branched_components(b)
        if k.value is KValue.TRIVIAL and branched:
            E = branched[0]
            if any(k.d_sharp.cycle[v].denominator != 1 for v in E.ids) or is_rational(E).rational:
                problems.append((e.canonical, "K-trivial branched component"))
        if k.value is KValue.AMPLE and branched:
            z = build_Z(b, reduce_to_trivial(b))
            if pa_genus(z) != 1:
                problems.append((e.canonical, "p_a(Z) != 1"))
    elapsed = time.perf_counter() - start

    if args.jsonl:
        with open(args.jsonl, "w") as fh:
            for e in found:
                fh.write(json.dumps(jsonable(e.to_json()), sort_keys=True) + "\n")
    print(f"depth {args.depth}, m in {args.m}: {len(found)} boundaries in {elapsed:.1f}s")
    for name in ("anti_ample", "trivial", "ample"):
        print(f"  {name}: {classes[name]}")
    print(f"property violations: {len(problems)}")
    for canon, what in problems:
        print(f"  {what}: {canon}")


if __name__ == "__main__":
    main()
