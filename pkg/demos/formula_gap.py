"""Where the closed mutation formula and the procedure part ways."""

import random

from dtilde import colored_quiver as cq

Q = cq.from_arrows(2, "ikj", [("i", "k", 1), ("k", "i", 1), ("k", "j", 0), ("j", "k", 2),
                              ("i", "j", 0), ("j", "i", 2)])
print("regular at k:", cq.is_regular_at(Q, "k"))
print("procedure:", dict(cq.mutate(Q, "k").arrows))
print("formula:  ", dict(cq.mutate_formula(Q, "k").arrows))

rng = random.Random(1)
tally = {}
for _ in range(2000):
    R = cq.random_quiver(rng, rng.randint(2, 7), rng.randint(1, 3))
    k = rng.choice(R.vertices)
    key = (cq.is_regular_at(R, k), cq.mutate(R, k) == cq.mutate_formula(R, k))
    tally[key] = tally.get(key, 0) + 1
print("\n(regular, agree) counts on random quivers:", dict(sorted(tally.items())))
