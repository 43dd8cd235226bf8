"""Desk-scale play simulation: synthetic players grind matches in-process.

Players know the taxonomy with some probability per rung and otherwise invent
words, which exercises the crowd-validation path: watch arcs cross the N=50
threshold as the same invented pairs recur. Prints score and star
distributions, level progression, and graph growth.

Usage:
    python scripts/gen_synthetic_pool.py --out-dir fixtures
    python scripts/simulate_matches.py --norms fixtures/norms.tsv \
        --taxonomy fixtures/taxonomy.tsv --players 20 --matches 400
"""

from __future__ import annotations

import argparse
import collections
import random
import statistics

from wordladders.cli import build_assets
from wordladders.config import EngineConfig
from wordladders.ladder_graph import GameMode, Ladder
from wordladders.levels import AdvancementDueError
from wordladders.lexicon import Language
from wordladders.sessions import Education, GameService, ReadingHabits, UserProfile


class Clock:
    def __init__(self):
        self.now = 0.0

    def __call__(self):
        return self.now


def invent_ladder(service, prompt, rng, knowledge=0.7, max_side=4):
    """Walk up/down the KB while knowledge holds, else invent a lemma."""
    kb = service.assets[Language.EN].kb
    ascent, descent = [], []
    cursor = prompt
    for _ in range(rng.randint(0, max_side)):
        parents = sorted(kb.direct_hypernyms(cursor))
        if parents and rng.random() < knowledge:
            cursor = rng.choice(parents)
        else:
            cursor = f"made-up-{rng.randint(0, 30)}"
        if cursor in ascent or cursor == prompt:
            break
        ascent.append(cursor)
    cursor = prompt
    for _ in range(rng.randint(0, max_side)):
        children = sorted(kb.direct_hyponyms(cursor))
        if children and rng.random() < knowledge:
            cursor = rng.choice(children)
        else:
            cursor = f"kind-of-{rng.randint(0, 30)}"
        if cursor in descent or cursor in ascent or cursor == prompt:
            break
        descent.append(cursor)
    return Ladder(prompt=prompt, ascent=ascent, descent=descent)


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--norms", required=True)
    parser.add_argument("--taxonomy", required=True)
    parser.add_argument("--blocklist", default=None)
    parser.add_argument("--players", type=int, default=20)
    parser.add_argument("--matches", type=int, default=400)
    parser.add_argument("--seed", type=int, default=11)
    parser.add_argument("--knowledge", type=float, default=0.7,
                        help="probability a player recalls a true taxonomy rung")
    parser.add_argument("--n-levels", type=int, default=10)
    args = parser.parse_args()

    rng = random.Random(args.seed)
    clock = Clock()
    config = EngineConfig(n_levels=args.n_levels, seed=args.seed)
    assets = build_assets(
        Language.EN, args.norms, args.taxonomy, args.blocklist, config
    )
    service = GameService(assets, config=config, clock=clock)

    educations = list(Education)
    habits = list(ReadingHabits)
    for i in range(args.players):
        service.register_user(
            UserProfile(
                nickname=f"player{i:03d}",
                age=rng.randint(10, 80),
                education=rng.choice(educations),
                profession=rng.choice(["student", "teacher", "engineer", "retired"]),
                mother_tongue=rng.choice(["italian", "english", "german"]),
                reading_habits=rng.choice(habits),
            )
        )

    scores, star_counts = [], collections.Counter()
    skipped = 0
    for _ in range(args.matches):
        nickname = f"player{rng.randrange(args.players):03d}"
        clock.now += rng.uniform(30.0, 600.0)
        try:
            match = service.start_match([nickname], GameMode.INDIVIDUAL, Language.EN)
        except AdvancementDueError:
            skipped += 1
            continue
        ladder = invent_ladder(service, match.prompt, rng, knowledge=args.knowledge)
        clock.now += rng.uniform(10.0, 115.0)
        result = service.submit_ladder(match.match_id, nickname, ladder)
        scores.append(result.score)
        star_counts[result.stars] += 1

    print(f"played {len(scores)} matches ({skipped} draws blocked awaiting advancement)")
    print(f"score mean {statistics.fmean(scores):.1f}  "
          f"median {statistics.median(scores):.1f}  "
          f"sd {statistics.stdev(scores):.1f}")
    print("stars:", {s: star_counts[s] for s in sorted(star_counts)})

    levels = [p.level for p in service.progress.values()]
    print("player levels:", collections.Counter(levels))

    crowd_valid = 0
    kb_arcs = 0
    invented = 0
    for graph in service.graphs.values():
        for arcs in (graph.hyper_arcs, graph.hypo_arcs):
            for arc in arcs.values():
                if arc.in_kb:
                    kb_arcs += 1
                elif arc.play_count >= config.n_threshold:
                    crowd_valid += 1
                else:
                    invented += 1
    print(f"arcs: {kb_arcs} KB, {crowd_valid} crowd-validated (>= {config.n_threshold} "
          f"plays), {invented} below threshold across {len(service.graphs)} graphs")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
