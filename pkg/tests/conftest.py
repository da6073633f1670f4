from itertools import accumulate

from flagsph.partitions import Partition, enumerate_partitions


def brute_collapse(a: Partition, eps: int) -> Partition:
    """Maximum of {b in P_eps(d) : b <= a}, found by scanning the whole class."""
    n = a.total

    def leq(x, y):
        xs = list(accumulate(x.padded(n)))
        ys = list(accumulate(y.padded(n)))
        return all(p <= q for p, q in zip(xs, ys))

    below = [b for b in enumerate_partitions(n, eps) if leq(b, a)]
    top = [b for b in below if all(leq(c, b) for c in below)]
    assert len(top) == 1
    return top[0]
