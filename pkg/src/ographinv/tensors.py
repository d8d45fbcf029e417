"""Graded tensors and tensor networks with one audited sign mechanism.

A tensor stores the coefficients of an element of a tensor product of
graded spaces and their duals: an out-leg is a primal factor, an in-leg
a dual factor. A network bonds out-legs to in-legs and is evaluated by
contracting one bond at a time. Every Koszul sign comes from a single
rule: the in-leg is moved until it sits directly to the right of its
out-leg, each elementary transposition of two odd legs contributing -1,
and the adjacent pair is then summed away with no further sign.
"""

from fractions import Fraction

from .scalars import is_zero, scalar_eq

_ZERO = Fraction(0)
_ONE = Fraction(1)

__all__ = [
    "GradedSpace",
    "Leg",
    "GradedTensor",
    "TensorNetwork",
    "swap",
    "duality_tensors",
    "contract",
    "plan_order",
]


class GradedSpace:
    """Finite dimensional Z2-graded vector space: a dimension plus a
    parity bit (0 even, 1 odd) per basis vector. All-even parities
    recover the ungraded case."""

    __slots__ = ("dim", "parity")

    def __init__(self, dim, parity=None):
        if dim < 1:
            raise ValueError("dimension must be at least 1")
        if parity is None:
            parity = (0,) * dim
        parity = tuple(parity)
        if len(parity) != dim or any(p not in (0, 1) for p in parity):
            raise ValueError("parity must assign 0 or 1 to each basis vector")
        self.dim = dim
        self.parity = parity

    def __eq__(self, other):
        return (
            isinstance(other, GradedSpace)
            and self.dim == other.dim
            and self.parity == other.parity
        )

    def __hash__(self):
        return hash((self.dim, self.parity))

    def __repr__(self):
        if all(p == 0 for p in self.parity):
            return "GradedSpace(%d)" % self.dim
        return "GradedSpace(%d, parity=%r)" % (self.dim, self.parity)


class Leg:
    """A tensor slot: a graded space plus a polarity. An out-leg is a
    primal factor of the element, an in-leg a dual factor."""

    __slots__ = ("space", "polarity")

    def __init__(self, space, polarity):
        if polarity not in ("in", "out"):
            raise ValueError("polarity must be 'in' or 'out'")
        self.space = space
        self.polarity = polarity

    def __eq__(self, other):
        return (
            isinstance(other, Leg)
            and self.space == other.space
            and self.polarity == other.polarity
        )

    def __hash__(self):
        return hash((self.space, self.polarity))

    def __repr__(self):
        return "Leg(%r, %r)" % (self.space, self.polarity)


def _unflatten(flat, dims):
    idx = [0] * len(dims)
    for k in range(len(dims) - 1, -1, -1):
        flat, idx[k] = divmod(flat, dims[k])
    return tuple(idx)


def _flatten(idx, dims):
    flat = 0
    for i, d in zip(idx, dims):
        flat = flat * d + i
    return flat


class GradedTensor:
    """Dense array of exact scalars over an ordered list of legs.

    Entries are element coefficients with respect to the leg order.
    `even` declares the tensor a parity-even map: every entry whose
    total index parity is odd must then vanish.
    """

    __slots__ = ("legs", "data", "even")

    def __init__(self, legs, data, even=None):
        self.legs = tuple(legs)
        size = 1
        for leg in self.legs:
            size *= leg.space.dim
        data = list(data)
        if len(data) != size:
            raise ValueError("data length does not match leg dimensions")
        self.data = data
        parity = self._total_parities()
        if even is None:
            even = all(is_zero(v) for v, p in zip(data, parity) if p)
        elif even:
            for v, p in zip(data, parity):
                if p and not is_zero(v):
                    raise ValueError("odd-parity entry in a tensor declared even")
        self.even = even

    def _total_parities(self):
        dims = self.shape
        out = []
        for flat in range(len(self.data)):
            idx = _unflatten(flat, dims)
            p = 0
            for leg, i in zip(self.legs, idx):
                p ^= leg.space.parity[i]
            out.append(p)
        return out

    @property
    def shape(self):
        return tuple(leg.space.dim for leg in self.legs)

    @property
    def scalar(self):
        if self.legs:
            raise ValueError("tensor has open legs")
        return self.data[0]

    def entry(self, idx):
        return self.data[_flatten(idx, self.shape)]

    @classmethod
    def from_map(cls, in_spaces, out_spaces, entries, even=True):
        """Build the element of a linear map from its matrix entries.

        `entries` maps index tuples (inputs then outputs) to scalars.
        The stored coefficient differs from the matrix entry by the
        Koszul factor of reading the dual basis factors against the
        input tuple: -1 for every pair of odd input slots.
        """
        legs = [Leg(V, "in") for V in in_spaces]
        legs += [Leg(W, "out") for W in out_spaces]
        legs = tuple(legs)
        dims = tuple(leg.space.dim for leg in legs)
        size = 1
        for d in dims:
            size *= d
        data = [_ZERO] * size
        k = len(in_spaces)
        for idx, val in entries.items():
            if is_zero(val):
                continue
            odd = [a for a in range(k) if in_spaces[a].parity[idx[a]]]
            if (len(odd) * (len(odd) - 1) // 2) % 2:
                val = -val
            data[_flatten(idx, dims)] = val
        return cls(legs, data, even=even)

    def matrix_entry(self, idx):
        """Matrix entry of a from_map-built tensor (in-legs first)."""
        k = sum(1 for leg in self.legs if leg.polarity == "in")
        odd = [a for a in range(k) if self.legs[a].space.parity[idx[a]]]
        val = self.entry(idx)
        if (len(odd) * (len(odd) - 1) // 2) % 2:
            val = -val
        return val

    def transpose(self, perm):
        """Reorder legs by perm (new position -> old position), with
        the Koszul sign of the permutation applied entrywise."""
        perm = list(perm)
        if sorted(perm) != list(range(len(self.legs))):
            raise ValueError("perm must be a permutation of leg positions")
        if perm == list(range(len(self.legs))):
            return self
        legs = list(self.legs)
        dims = self.shape
        entries = {}
        for flat, val in enumerate(self.data):
            if is_zero(val):
                continue
            entries[_unflatten(flat, dims)] = val
        order = list(range(len(legs)))
        # bubble the legs into place, one signed adjacent swap at a time
        for target, want in enumerate(perm):
            pos = order.index(want)
            while pos > target:
                legs[pos - 1], legs[pos] = legs[pos], legs[pos - 1]
                order[pos - 1], order[pos] = order[pos], order[pos - 1]
                swapped = {}
                for idx, val in entries.items():
                    if legs[pos].space.parity[idx[pos - 1]] and legs[pos - 1].space.parity[idx[pos]]:
                        val = -val
                    nidx = list(idx)
                    nidx[pos - 1], nidx[pos] = nidx[pos], nidx[pos - 1]
                    swapped[tuple(nidx)] = val
                entries = swapped
                pos -= 1
        ndims = tuple(leg.space.dim for leg in legs)
        size = 1
        for d in ndims:
            size *= d
        data = [_ZERO] * size
        for idx, val in entries.items():
            data[_flatten(idx, ndims)] = val
        return GradedTensor(legs, data)

    def __eq__(self, other):
        if not isinstance(other, GradedTensor):
            return NotImplemented
        if self.legs != other.legs:
            return False
        return all(scalar_eq(a, b) for a, b in zip(self.data, other.data))

    def __repr__(self):
        return "GradedTensor(legs=%r)" % (self.legs,)


class TensorNetwork:
    """Nodes plus bonds. A bond joins an out-leg to an in-leg over the
    same space; each leg appears in at most one bond."""

    def __init__(self, nodes, bonds):
        self.nodes = list(nodes)
        seen = set()
        norm = []
        for end1, end2 in bonds:
            leg1 = self._leg(end1)
            leg2 = self._leg(end2)
            if leg1.space != leg2.space or leg1.polarity == leg2.polarity:
                raise ValueError(
                    "bond %r-%r must join an out-leg to an in-leg over one space"
                    % (end1, end2)
                )
            for end in (end1, end2):
                if end in seen:
                    raise ValueError("leg %r appears in two bonds" % (end,))
                seen.add(end)
            norm.append((end1, end2) if leg1.polarity == "out" else (end2, end1))
        self.bonds = tuple(sorted(norm))

    def _leg(self, end):
        node, pos = end
        return self.nodes[node].legs[pos]

    def open_legs(self):
        bonded = {end for bond in self.bonds for end in bond}
        out = []
        for i, node in enumerate(self.nodes):
            for pos in range(len(node.legs)):
                if (i, pos) not in bonded:
                    out.append((i, pos))
        return out


def swap(V, W):
    """The Koszul symmetry V (x) W -> W (x) V: (v, w) goes to (w, v)
    with a -1 exactly when both are odd."""
    entries = {}
    for v in range(V.dim):
        for w in range(W.dim):
            val = _ONE
            if V.parity[v] and W.parity[w]:
                val = -val
            entries[(v, w, w, v)] = val
    return GradedTensor.from_map([V, W], [W, V], entries)


def duality_tensors(V):
    """Pairing, copairing, and their pivotal partners for V.

    ev and coev realize the standard signless pairing f (x) x -> f(x)
    and copairing 1 -> sum e_i (x) f^i. ev_hat and coev_hat are their
    composites with the symmetry, the pivotal combination that makes
    twists trivial; in the all-even case ev_hat(x (x) f) = f(x).
    """
    d = V.dim
    plain = []
    signed = []
    for i in range(d):
        for j in range(d):
            if i == j:
                plain.append(_ONE)
                signed.append(-_ONE if V.parity[i] else _ONE)
            else:
                plain.append(_ZERO)
                signed.append(_ZERO)
    out_in = (Leg(V, "out"), Leg(V, "in"))
    in_out = (Leg(V, "in"), Leg(V, "out"))
    ev = GradedTensor(out_in, plain, even=True)
    coev = GradedTensor(out_in, plain, even=True)
    ev_hat = GradedTensor(in_out, signed, even=True)
    coev_hat = GradedTensor(in_out, signed, even=True)
    return ev, coev, ev_hat, coev_hat


def _bond_key(bond):
    return bond


def plan_order(net):
    """Greedy contraction plan: always execute next the bond whose
    contraction leaves the smallest intermediate tensor."""
    parent = list(range(len(net.nodes)))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    sizes = {}
    for i, node in enumerate(net.nodes):
        s = 1
        for leg in node.legs:
            s *= leg.space.dim
        sizes[i] = s
    remaining = set(net.bonds)
    plan = []
    while remaining:
        best = None
        for bond in sorted(remaining, key=_bond_key):
            (i, li), (j, _) = bond
            ri, rj = find(i), find(j)
            d = net.nodes[i].legs[li].space.dim
            if ri == rj:
                cost = sizes[ri] // (d * d)
            else:
                cost = sizes[ri] * sizes[rj] // (d * d)
            if best is None or cost < best[0]:
                best = (cost, bond)
        cost, bond = best
        (i, _), (j, _) = bond
        ri, rj = find(i), find(j)
        if ri != rj:
            parent[rj] = ri
            sizes.pop(rj)
        sizes[find(i)] = cost
        remaining.discard(bond)
        plan.append(bond)
    return plan


class _Cluster:
    __slots__ = ("legs", "entries")

    def __init__(self, legs, entries):
        self.legs = legs  # list of (origin endpoint, Leg)
        self.entries = entries  # sparse {index tuple: scalar}


def _node_cluster(net, i):
    node = net.nodes[i]
    dims = node.shape
    entries = {}
    for flat, val in enumerate(node.data):
        if not is_zero(val):
            entries[_unflatten(flat, dims)] = val
    legs = [((i, pos), leg) for pos, leg in enumerate(node.legs)]
    return _Cluster(legs, entries)


def _merge(a, b):
    legs = a.legs + b.legs
    entries = {}
    for ia, va in a.entries.items():
        for ib, vb in b.entries.items():
            entries[ia + ib] = va * vb
    return _Cluster(legs, entries)


def _join(a, b, batch):
    """Merge two clusters and contract every bond in `batch` between
    them, matching entries by the bonded indices instead of forming
    the full outer product. Entry for entry this applies the same
    movement sign rule as contracting the bonds one at a time."""
    na = len(a.legs)
    ids = [origin for origin, _ in a.legs] + [origin for origin, _ in b.legs]
    pars = [leg.space.parity for _, leg in a.legs] + [
        leg.space.parity for _, leg in b.legs
    ]
    a_key, b_key = [], []
    for out_end, in_end in batch:
        po, pi = ids.index(out_end), ids.index(in_end)
        if po < na:
            a_key.append(po)
            b_key.append(pi - na)
        else:
            a_key.append(pi)
            b_key.append(po - na)
    steps = []
    for out_end, in_end in batch:
        pa, pb = ids.index(out_end), ids.index(in_end)
        lo, hi = (pa, pb) if pa < pb else (pb, pa)
        between = [(k, pars[k]) for k in range(lo + 1, hi)]
        steps.append((pa, pb, pars[pa], between, lo, hi))
        for k in (hi, lo):
            del ids[k]
            del pars[k]
    survivors = set(ids)
    new_legs = [pair for pair in a.legs + b.legs if pair[0] in survivors]
    buckets = {}
    for ia, va in a.entries.items():
        buckets.setdefault(tuple(ia[p] for p in a_key), []).append((ia, va))
    out = {}
    for ib, vb in b.entries.items():
        for ia, va in buckets.get(tuple(ib[p] for p in b_key), ()):
            cur = list(ia + ib)
            val = va * vb
            neg = False
            for pa, pb, sp, between, lo, hi in steps:
                if sp[cur[pa]]:
                    s = 1 if pb < pa else 0
                    for k, pv in between:
                        s ^= pv[cur[k]]
                    if s:
                        neg = not neg
                del cur[hi]
                del cur[lo]
            if neg:
                val = -val
            nidx = tuple(cur)
            acc = out.get(nidx)
            out[nidx] = val if acc is None else acc + val
    out = {k: v for k, v in out.items() if not is_zero(v)}
    return _Cluster(new_legs, out)


def _pair_contract(cluster, a, b):
    """Contract positions a (out-leg) and b (in-leg) of one cluster."""
    legs = cluster.legs
    lo, hi = (a, b) if a < b else (b, a)
    space = legs[a][1].space
    between = [legs[k][1].space.parity for k in range(lo + 1, hi)]
    in_crosses_out = b < a
    new_legs = legs[:lo] + legs[lo + 1 : hi] + legs[hi + 1 :]
    out = {}
    for idx, val in cluster.entries.items():
        i = idx[a]
        if i != idx[b]:
            continue
        if space.parity[i]:
            s = 1 if in_crosses_out else 0
            for par, k in zip(between, range(lo + 1, hi)):
                s ^= par[idx[k]]
            if s:
                val = -val
        nidx = idx[:lo] + idx[lo + 1 : hi] + idx[hi + 1 :]
        acc = out.get(nidx)
        out[nidx] = val if acc is None else acc + val
    out = {k: v for k, v in out.items() if not is_zero(v)}
    return _Cluster(new_legs, out)


def _sort_legs(cluster):
    """Bubble the legs into lexicographic origin order, Koszul-signed."""
    legs = cluster.legs
    entries = cluster.entries
    n = len(legs)
    changed = True
    while changed:
        changed = False
        for k in range(n - 1):
            if legs[k][0] > legs[k + 1][0]:
                pl = legs[k][1].space.parity
                pr = legs[k + 1][1].space.parity
                swapped = {}
                for idx, val in entries.items():
                    if pl[idx[k]] and pr[idx[k + 1]]:
                        val = -val
                    nidx = idx[:k] + (idx[k + 1], idx[k]) + idx[k + 2 :]
                    swapped[nidx] = val
                entries = swapped
                legs = legs[:k] + [legs[k + 1], legs[k]] + legs[k + 2 :]
                changed = True
    return _Cluster(list(legs), entries)


def contract(net, order=None):
    """Evaluate the network: contract every bond, then return the
    tensor on the open legs in (node, leg position) order. A closed
    network yields a 0-leg tensor."""
    plan = list(order) if order is not None else plan_order(net)
    if sorted(plan) != sorted(net.bonds):
        raise ValueError("order must list every bond exactly once")
    clusters = {}
    where = {}

    def absorb(i):
        if i not in where:
            clusters[i] = _node_cluster(net, i)
            where[i] = i

    def root(i):
        while where[i] != i:
            where[i] = where[where[i]]
            i = where[i]
        return i

    done = set()
    for bond in plan:
        if bond in done:
            continue
        (i, li), (j, lj) = bond
        absorb(i)
        absorb(j)
        ri, rj = root(i), root(j)
        if ri == rj:
            cl = clusters[ri]
            pos = {origin: k for k, (origin, _) in enumerate(cl.legs)}
            clusters[ri] = _pair_contract(cl, pos[(i, li)], pos[(j, lj)])
            done.add(bond)
            continue
        ca, cb = clusters[ri], clusters[rj]
        ends_a = {origin for origin, _ in ca.legs}
        ends_b = {origin for origin, _ in cb.legs}
        batch = [
            bd
            for bd in plan
            if bd not in done
            and (
                (bd[0] in ends_a and bd[1] in ends_b)
                or (bd[0] in ends_b and bd[1] in ends_a)
            )
        ]
        clusters[ri] = _join(ca, cb, batch)
        del clusters[rj]
        where[rj] = ri
        done.update(batch)
    for i in range(len(net.nodes)):
        absorb(i)
    roots = sorted({root(i) for i in range(len(net.nodes))})
    total = clusters[roots[0]]
    for r in roots[1:]:
        total = _merge(total, clusters[r])
    total = _sort_legs(total)
    legs = tuple(leg for _, leg in total.legs)
    dims = tuple(leg.space.dim for leg in legs)
    size = 1
    for d in dims:
        size *= d
    data = [_ZERO] * size
    for idx, val in total.entries.items():
        data[_flatten(idx, dims)] = val
    return GradedTensor(legs, data)
