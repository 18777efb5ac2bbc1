"""Pure-Python set-of-bitmask kernels.

Reference implementation of the hot loops used by the saturation engine.
Families of lattice elements are encoded as Python ints (bit i set <=> element
i is a member). Every function returns a sorted list so both backends agree
byte for byte.
"""

BACKEND = "python"


def pull(mask, row):
    """Image of the members of ``mask`` under ``row`` (a meet-table row)."""
    out = 0
    while mask:
        low = mask & -mask
        out |= 1 << row[low.bit_length() - 1]
        mask ^= low
    return out


def union_product(left, right, limit=-1):
    """Sorted distinct ``l | r`` over all pairs; ``None`` once ``limit`` is passed."""
    out = set()
    for a in left:
        for b in right:
            out.add(a | b)
        if 0 <= limit < len(out):
            return None
    return sorted(out)


def minimize(masks):
    """The subset-minimal members of ``masks``, sorted."""
    kept = []
    for m in sorted(set(masks), key=lambda v: (bin(v).count("1"), v)):
        for k in kept:
            if k & m == k:
                break
        else:
            kept.append(m)
    kept.sort()
    return kept


def union_product_min(left, right):
    return minimize(a | b for a in left for b in right)


def unions_upto(masks, k):
    """All unions of between 1 and ``k`` members of ``masks`` (repetition allowed)."""
    base = sorted(set(masks))
    out = set(base)
    frontier = set(base)
    for _ in range(k - 1):
        frontier = {f | m for f in frontier for m in base} - out
        if not frontier:
            break
        out |= frontier
    return sorted(out)
