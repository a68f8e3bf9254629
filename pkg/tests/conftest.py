import random

import pytest

from semideg.core import Digraph


def random_digraph(rng: random.Random, p: int, density: float = 0.5) -> Digraph:
    rows = []
    for i in range(p):
        r = 0
        for j in range(p):
            if i != j and rng.random() < density:
                r |= 1 << j
        rows.append(r)
    return Digraph(p, tuple(rows))


@pytest.fixture
def rng():
    return random.Random(0xC0FFEE)
