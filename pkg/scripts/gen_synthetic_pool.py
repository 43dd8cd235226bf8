"""Generate a synthetic word pool: norms TSV, IS-A taxonomy TSV, and a blocklist.

The pool mixes concrete taxonomy-backed nouns with abstract nouns, verbs, and
adjectives so the level builder has something to rank. Norms are drawn from
seeded distributions; the taxonomy is a small hand-written tree plus generated
leaf expansions, so every chain tops out at "entity".

Usage:
    python scripts/gen_synthetic_pool.py --out-dir fixtures [--seed 7] [--leaves 4]
"""

from __future__ import annotations

import argparse
import random
from pathlib import Path

# (hyponym, hypernym) backbone; leaf fan-out is generated below
BACKBONE = [
    ("physical object", "entity"),
    ("living being", "entity"),
    ("abstraction", "entity"),
    ("animal", "living being"),
    ("plant", "living being"),
    ("mammal", "animal"),
    ("bird", "animal"),
    ("insect", "animal"),
    ("canine", "mammal"),
    ("feline", "mammal"),
    ("rodent", "mammal"),
    ("fox", "canine"),
    ("dog", "canine"),
    ("wolf", "canine"),
    ("cat", "feline"),
    ("lion", "feline"),
    ("sparrow", "bird"),
    ("eagle", "bird"),
    ("beetle", "insect"),
    ("ant", "insect"),
    ("tree", "plant"),
    ("flower", "plant"),
    ("oak", "tree"),
    ("pine", "tree"),
    ("rose", "flower"),
    ("tulip", "flower"),
    ("food", "physical object"),
    ("tool", "physical object"),
    ("vehicle", "physical object"),
    ("fruit", "food"),
    ("vegetable", "food"),
    ("bread", "food"),
    ("apple", "fruit"),
    ("banana", "fruit"),
    ("pear", "fruit"),
    ("carrot", "vegetable"),
    ("onion", "vegetable"),
    ("hammer", "tool"),
    ("saw", "tool"),
    ("car", "vehicle"),
    ("bicycle", "vehicle"),
    ("idea", "abstraction"),
    ("emotion", "abstraction"),
    ("number", "abstraction"),
]

LEAF_PARENTS = ["fox", "dog", "cat", "apple", "oak", "car", "hammer", "sparrow"]

ABSTRACT_NOUNS = [
    "entropy", "insinuation", "belief", "justice", "irony", "paradox",
    "notion", "concept", "theory", "doubt",
]
VERBS = ["run", "think", "bake", "carve", "wander", "ponder", "sail", "whisk"]
ADJECTIVES = ["fuzzy", "bright", "sour", "rigid", "quaint", "sleek", "mellow", "stern"]

BLOCKLIST_SAMPLE = ["knife", "weapon"]


def generate(out_dir: Path, seed: int, leaves_per_parent: int) -> None:
    rng = random.Random(seed)
    edges = list(BACKBONE)
    for parent in LEAF_PARENTS:
        for index in range(leaves_per_parent):
            edges.append((f"{parent} kind {index}", parent))

    taxonomy_words = sorted({w for pair in edges for w in pair})
    depth = {}  # distance from "entity" drives concreteness downward... upward
    parents = {hypo: hyper for hypo, hyper in edges}
    for word in taxonomy_words:
        d, cursor = 0, word
        while cursor in parents:
            cursor = parents[cursor]
            d += 1
        depth[word] = d

    out_dir.mkdir(parents=True, exist_ok=True)
    norms_path = out_dir / "norms.tsv"
    with norms_path.open("w", encoding="utf-8") as fh:
        fh.write("lemma\tpos\tconcreteness\tfrequency\tfamiliarity\n")
        for word in taxonomy_words:
            # deeper (more specific) words are more concrete, less frequent
            concreteness = min(5.0, 1.5 + 0.55 * depth[word] + rng.uniform(-0.2, 0.2))
            frequency = max(0.1, 6.5 - 0.6 * depth[word] + rng.uniform(-0.5, 0.5))
            familiarity = min(7.0, max(1.0, 7.2 - 0.5 * depth[word] + rng.uniform(-0.8, 0.3)))
            fh.write(f"{word}\tnoun\t{concreteness:.2f}\t{frequency:.2f}\t{familiarity:.2f}\n")
        for word in ABSTRACT_NOUNS:
            fh.write(
                f"{word}\tnoun\t{rng.uniform(1.0, 2.2):.2f}"
                f"\t{rng.uniform(1.0, 3.5):.2f}\t{rng.uniform(2.0, 5.0):.2f}\n"
            )
        for word in VERBS:
            fh.write(
                f"{word}\tverb\t{rng.uniform(2.0, 4.0):.2f}"
                f"\t{rng.uniform(2.0, 5.0):.2f}\t{rng.uniform(3.0, 6.5):.2f}\n"
            )
        for word in ADJECTIVES:
            fh.write(
                f"{word}\tadjective\t{rng.uniform(1.5, 3.5):.2f}"
                f"\t{rng.uniform(1.5, 4.5):.2f}\t{rng.uniform(2.5, 6.0):.2f}\n"
            )

    taxonomy_path = out_dir / "taxonomy.tsv"
    with taxonomy_path.open("w", encoding="utf-8") as fh:
        for hypo, hyper in edges:
            fh.write(f"{hypo}\t{hyper}\n")

    blocklist_path = out_dir / "blocklist.txt"
    blocklist_path.write_text("\n".join(BLOCKLIST_SAMPLE) + "\n", encoding="utf-8")

    n_words = len(taxonomy_words) + len(ABSTRACT_NOUNS) + len(VERBS) + len(ADJECTIVES)
    print(f"wrote {norms_path} ({n_words} words)")
    print(f"wrote {taxonomy_path} ({len(edges)} edges)")
    print(f"wrote {blocklist_path} ({len(BLOCKLIST_SAMPLE)} lemmas)")


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--out-dir", default="fixtures", type=Path)
    parser.add_argument("--seed", default=7, type=int)
    parser.add_argument("--leaves", default=4, type=int, help="generated kinds per leaf parent")
    args = parser.parse_args()
    generate(args.out_dir, args.seed, args.leaves)
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
