"""Fixed graphs for the packing-or-hitting recursion, chosen to reach every branch."""
from nonnull_paths.constructions import random_instance
from nonnull_paths.graph import STGraph

from corpus import Z2


class Builder:
    def __init__(self):
        self.names, self.edges, self.S, self.T = [], [], set(), set()

    def v(self, name):
        if name not in self.names:
            self.names.append(name)
        return self.names.index(name)

    def edge(self, a, b, lab=1):
        self.edges.append((self.v(a), self.v(b), lab))

    def odd_cycle(self, pre, cut, S=(), T=()):
        ring = [cut] + [f"{pre}{i}" for i in range(1, 5)]
        for i, a in enumerate(ring):
            self.edge(a, ring[(i + 1) % 5])
        self.S.update(ring[i] for i in S)
        self.T.update(ring[i] for i in T)

    def blob(self, pre, cut, kind="S"):
        # a safe tree hanging off ``cut`` whose leaves are all sources or all targets
        self.edge(cut, f"{pre}1", 1)
        self.edge(f"{pre}1", f"{pre}2", 0)
        self.edge(f"{pre}1", f"{pre}3", 1)
        self.edge(f"{pre}3", f"{pre}4", 1)
        (self.S if kind == "S" else self.T).update((f"{pre}2", f"{pre}4"))

    def graph(self):
        return STGraph(Z2, self.names, self.edges, [self.v(x) for x in sorted(self.S)],
                       [self.v(x) for x in sorted(self.T)])


def two_cycles(adjacent=True):
    b = Builder()
    ends = dict(S=(1,), T=(2,)) if adjacent else dict(S=(1,), T=(3,))
    b.odd_cycle("a", "c", **ends)
    b.odd_cycle("b", "c", **ends)
    return b.graph()


def blob_first():
    # the blob's cut vertex gets index 0, so its separation is found first
    b = Builder()
    b.blob("y", "a3")
    b.odd_cycle("a", "c", S=(1,), T=(2,))
    b.odd_cycle("b", "c", S=(1,), T=(2,))
    return b.graph()


def through_gadget(two=False):
    b = Builder()
    b.blob("y", "a3", "T")
    b.odd_cycle("a", "c", S=(1,))
    if two:
        b.blob("z", "b2", "S")
        b.odd_cycle("b", "c", T=(4,))
    else:
        b.odd_cycle("b", "c", S=(1,), T=(2,))
    return b.graph()


def feeding_blobs(two=False):
    b = Builder()
    b.blob("y", "a2", "S")
    if two:
        b.blob("z", "b2", "T")
    b.odd_cycle("a", "c", S=(1,), T=(3,))
    b.odd_cycle("b", "c", S=(1,), T=(3,) if two else (2,))
    return b.graph()


def regression_set():
    """(name, graph, k) triples."""
    return [
        ("two-cycles", two_cycles(), 2),
        ("two-cycles-far", two_cycles(adjacent=False), 2),
        ("blob-first", blob_first(), 2),
        ("through-gadget", through_gadget(), 2),
        ("through-two-gadgets", through_gadget(two=True), 2),
        ("feeding-blob", feeding_blobs(), 2),
        ("two-feeding-blobs", feeding_blobs(two=True), 2),
        ("random-10", random_instance(Z2, 10, 0.3, 0.3, 0.3, 3), 2),
        ("random-12", random_instance(Z2, 12, 0.3, 0.3, 0.3, 2), 2),
        ("through-gadget-k1", through_gadget(), 1),
    ]
