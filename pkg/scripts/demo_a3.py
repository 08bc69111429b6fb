"""Walk through the restricted structure on kA3: axioms, the removed sequence, and its Serre quotient."""

from onesided.complexes import ChainMap
from onesided.conflations import AXIOMS, check_axiom, is_conflation
from onesided.hull import hull_conflation_check, hull_embed
from onesided.percolation import PercolatingSpec, SerreGenerators, a_reject, a_trace, quotient_hom_dim
from onesided.quiver import KCPair
from onesided.specs import load_category_spec


def main() -> None:
    spec = load_category_spec("a3.json")
    c, probes = spec.conflations, spec.probes()
    print("axioms of the restricted class:")
    for ax in AXIOMS:
        print(f"  {ax:4s} {check_axiom(c, ax, probes).verdict}")

    iota, pi = spec.morphisms["iota"], spec.morphisms["pi"]
    x, y, z = (hull_embed(c, o) for o in (iota.src, iota.dst, pi.dst))
    maps = (ChainMap(x.complex, y.complex, {0: iota}), ChainMap(y.complex, z.complex, {0: pi}))
    print(f"\nS2 -> I2 -> S3 is a conflation: {is_conflation(c, KCPair(iota, pi))}")
    print(f"... but a conflation in the exact hull: {hull_conflation_check(c, x, y, z, maps, probes)}")

    serre = PercolatingSpec(spec.conflations, SerreGenerators(("1",)))
    print("\nquotient by the simple at vertex 1:")
    names = [n for n in spec.indecomposables if not serre.contains(spec.reps[n])]
    for n in names:
        r, t = a_reject(serre, spec.reps[n])[0], a_trace(serre, spec.reps[n])[0]
        print(f"  {n:3s} reject {r.dims} trace {t.dims}")
    print("  quotient hom dims:")
    print("       " + " ".join(f"{n:>3s}" for n in names))
    for s in names:
        row = " ".join(f"{quotient_hom_dim(serre, spec.reps[s], spec.reps[t]):3d}" for t in names)
        print(f"  {s:4s} {row}")


if __name__ == "__main__":
    main()
