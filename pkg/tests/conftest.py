import os
import random

import pytest

from gentlebands import BandWord, Quiver, StringWord

DATA = os.path.join(os.path.dirname(__file__), os.pardir, "data")


@pytest.fixture(scope="session")
def kron():
    return Quiver(["1", "2"], [("a", "1", "2"), ("b", "1", "2")])


@pytest.fixture(scope="session")
def glued():
    return Quiver(
        ["1", "2", "3"],
        [("a", "1", "2"), ("b", "1", "2"), ("c", "2", "3"), ("d", "2", "3")],
        relations=[("c", "a"), ("d", "b")],
    )


@pytest.fixture(scope="session")
def five():
    return Quiver(
        ["1", "2", "3", "4", "5"],
        [("a", "1", "3"), ("b", "2", "3"), ("c", "3", "4"),
         ("d", "3", "5"), ("e", "1", "4"), ("f", "2", "5")],
        relations=[("c", "a"), ("d", "b")],
    )


@pytest.fixture(scope="session")
def easy():
    # 1 -a-> 2 with arrows b: 2->3 and c: 2->4, relation "first a then b"
    return Quiver(
        ["1", "2", "3", "4"],
        [("a", "1", "2"), ("b", "2", "3"), ("c", "2", "4")],
        relations=[("b", "a")],
    )


def S(q, text):
    letters, base = q.parse_walk(text)
    return StringWord(q, letters, base=base)


def B(q, text):
    return BandWord(q, q.parse_walk(text)[0])


@pytest.fixture(scope="session")
def mk():
    return S


@pytest.fixture(scope="session")
def mkband():
    return B


def random_walk(q, rng, max_len):
    """A uniformly-extended random valid walk (possibly empty)."""
    n = q.n_letters
    if rng.random() < 0.1 or max_len == 0:
        return (), rng.choice(q.vertices)
    first = rng.randrange(n)
    word = [first]
    while len(word) < max_len:
        nxt = [y for y in range(n) if q.valid_follow(word[-1], y)]
        if not nxt or rng.random() < 0.25:
            break
        word.append(rng.choice(nxt))
    return tuple(word), None


@pytest.fixture()
def rng():
    return random.Random(0)
