"""Named vector lists used by the acceptance suite and the CLI."""

import random

from .cones import pointedness_certificate
from .errors import InvalidVectorList, NotPointed
from .matroid import VectorList, family_Xk

X1 = VectorList(1, ((2,), (1,)))
X3 = family_Xk(1)
STANDARD_BASIS = VectorList(2, ((1, 0), (0, 1)))
DOUBLED_BASIS = VectorList(2, ((1, 0), (1, 0), (0, 1), (0, 1)))
RANDOM_SEED = 2


def random_pointed(seed=0, d=2, n=4, bound=3):
    """Deterministic pointed spanning list with entries in ``[-bound, bound]``."""
    rng = random.Random(seed)
    while True:
        vecs = tuple(tuple(rng.randint(-bound, bound) for _ in range(d)) for _ in range(n))
        try:
            X = VectorList(d, vecs)
            pointedness_certificate(X)
        except (InvalidVectorList, NotPointed):
            continue
        return X


def named(name):
    """Look up ``X1``, ``X3``, ``Xk:<k>``, ``basis``, ``doubled`` or ``random:<seed>``."""
    head, _, arg = name.partition(":")
    if head == "X1":
        return X1
    if head == "X3":
        return X3
    if head == "Xk":
        return family_Xk(int(arg or 1))
    if head == "basis":
        return STANDARD_BASIS
    if head == "doubled":
        return DOUBLED_BASIS
    if head == "random":
        return random_pointed(int(arg or RANDOM_SEED))
    raise KeyError(name)


def acceptance_lists():
    """The lists the property suite runs over."""
    return {"X1": X1, "X3": X3, "Xk:2": family_Xk(2), "Xk:3": family_Xk(3),
            "basis": STANDARD_BASIS, "doubled": DOUBLED_BASIS,
            f"random:{RANDOM_SEED}": random_pointed(RANDOM_SEED)}
