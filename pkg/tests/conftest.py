import random

import pytest
from hypothesis import HealthCheck, settings

from locgal.order import MeetSemilattice, Preorder, bits
from locgal.site import SitePresentation

settings.register_profile("default", max_examples=60, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


def random_meet_semilattice(rng: random.Random, n: int) -> MeetSemilattice:
    """Down-sets of a random poset on ``k`` points, closed under intersection, plus the top.

    Any intersection-closed family of sets containing the whole set is a
    meet-semilattice under inclusion, so this covers lots of shapes.
    """
    k = rng.randint(max(1, (n - 1).bit_length()), 4)
    full = (1 << k) - 1
    family = {full}
    while len(family) < n:
        family.add(rng.randrange(0, full + 1))
        # close under intersection
        changed = True
        while changed:
            changed = False
            for a in list(family):
                for b in list(family):
                    if a & b not in family:
                        family.add(a & b)
                        changed = True
        if len(family) >= 2**k:
            break
    sets = sorted(family, key=lambda s: (-bin(s).count("1"), s))[:n]
    # truncating may break closure; recompute the closure inside the kept sets
    kept = set(sets)
    for a in sets:
        for b in sets:
            kept.add(a & b)
    sets = sorted(kept, key=lambda s: (-bin(s).count("1"), s))
    labels = [format(s, f"0{k}b") for s in sets]
    order = Preorder.from_function(list(range(len(sets))), lambda i, j: sets[i] & ~sets[j] == 0)
    return MeetSemilattice.from_order(Preorder(tuple(labels), order.up))


def random_site(rng: random.Random, max_base: int = 12, max_covers: int = 6, max_family: int = 3,
                name: str = "") -> SitePresentation:
    n = rng.randint(1, max_base)
    base = random_meet_semilattice(rng, n)
    while len(base) > max_base:
        base = random_meet_semilattice(rng, n)
    covers = []
    for _ in range(rng.randint(0, max_covers)):
        t = rng.randrange(len(base))
        below = bits(base.down_mask(t))
        # empty families make whole regions zero; keep them occasional
        k = 0 if rng.random() < 0.1 else rng.randint(1, min(max_family, len(below)))
        covers.append((t, rng.sample(below, k)))
    return SitePresentation.build(base, covers, name)


@pytest.fixture
def chain2_site():
    """The 2-chain ``a <= 1`` with the basic cover ``{a} -> 1``."""
    base = MeetSemilattice.from_order(Preorder.chain(["a", "1"]))
    return SitePresentation.build(base, [(1, [0])], "chain2")
