import random

import pytest

from basilica import basilica


@pytest.fixture(scope="session")
def B():
    return basilica()


@pytest.fixture()
def rng():
    return random.Random(0)


def random_element(system, rng, max_len=8):
    letters = [1, -1, 2, -2]
    w = []
    for _ in range(rng.randint(0, max_len)):
        l = rng.choice(letters)
        if w and w[-1] == -l:
            continue
        w.append(l)
    return system.element(w)
