"""In add{S1, P2, P3, S2, S3} inside kA3-modules, S2 has only split inflations out of it yet is not injective."""

from onesided.conflations import AllShortExact, ProbeSet
from onesided.derived import inflations_split, is_injective
from onesided.specs import load_category_spec


def main() -> None:
    spec = load_category_spec("a3.json")
    f = [spec.reps[n] for n in ("S1", "P2", "P3", "S2", "S3")]
    probes, s2 = ProbeSet(tuple(f)), spec.reps["S2"]
    c = AllShortExact()
    print(f"every inflation out of S2 splits: {inflations_split(c, s2, probes, subcategory=f)}")
    print(f"S2 is injective:                  {is_injective(c, s2, probes, subcategory=f)}")


if __name__ == "__main__":
    main()
