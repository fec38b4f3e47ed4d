"""Tuple-level brute force, deliberately independent of solvagraph."""

from itertools import permutations


def compose(a, b):
    """a then b."""
    return tuple(b[k] for k in a)


def inverse(a):
    out = [0] * len(a)
    for i, v in enumerate(a):
        out[v] = i
    return tuple(out)


def cycle(n, *cycles):
    img = list(range(n))
    for c in cycles:
        for k, a in enumerate(c):
            img[a - 1] = c[(k + 1) % len(c)] - 1
    return tuple(img)


def parity(p):
    seen, sign = set(), 0
    for i in range(len(p)):
        if i in seen:
            continue
        j, length = i, 0
        while j not in seen:
            seen.add(j)
            j = p[j]
            length += 1
        sign += length - 1
    return sign % 2


def alternating(n):
    return [p for p in permutations(range(n)) if parity(p) == 0]


def closure(gens, n):
    e = tuple(range(n))
    seen = {e}
    todo = [e]
    while todo:
        x = todo.pop()
        for g in gens:
            y = compose(x, g)
            if y not in seen:
                seen.add(y)
                todo.append(y)
    return frozenset(seen)


def commutator(a, b):
    return compose(compose(inverse(a), inverse(b)), compose(a, b))


def derived(H, n):
    return closure({commutator(a, b) for a in H for b in H}, n)


def is_solvable(H, n):
    while len(H) > 1:
        D = derived(H, n)
        if D == H:
            return False
        H = D
    return True


def conjugacy_class_sizes(G):
    G = list(G)
    left = set(G)
    sizes = []
    for x in G:
        if x not in left:
            continue
        orbit = {compose(compose(inverse(g), x), g) for g in G}
        left -= orbit
        sizes.append(len(orbit))
    return sorted(sizes)


def solvabilizer_size(G, x, n):
    return sum(is_solvable(closure([g, x], n), n) for g in G)


def element_order(p):
    e = tuple(range(len(p)))
    k, cur = 1, p
    while cur != e:
        cur = compose(cur, p)
        k += 1
    return k
