import random
from fractions import Fraction

import pytest

from ographinv.tensors import (
    GradedSpace,
    GradedTensor,
    Leg,
    TensorNetwork,
    contract,
    duality_tensors,
    plan_order,
    swap,
)

F = Fraction


def rand_space(rng, maxdim=4):
    d = rng.randint(1, maxdim)
    return GradedSpace(d, tuple(rng.randint(0, 1) for _ in range(d)))


def rand_even_tensor(rng, legs):
    dims = [leg.space.dim for leg in legs]
    size = 1
    for d in dims:
        size *= d
    data = []
    for flat in range(size):
        idx, rest = [], flat
        for d in reversed(dims):
            rest, i = divmod(rest, d)
            idx.append(i)
        idx.reverse()
        p = 0
        for leg, i in zip(legs, idx):
            p ^= leg.space.parity[i]
        data.append(F(0) if p else F(rng.randint(-3, 3)))
    return GradedTensor(legs, data)


def identity_map(V):
    return GradedTensor.from_map(
        [V], [V], {(i, i): F(1) for i in range(V.dim)}
    )


def from_matrix(V, W, rows):
    entries = {}
    for i in range(V.dim):
        for j in range(W.dim):
            entries[(i, j)] = rows[i][j]
    return GradedTensor.from_map([V], [W], entries)


def test_even_validation_rejects_odd_entry():
    V = GradedSpace(2, (0, 1))
    legs = (Leg(V, "in"),)
    with pytest.raises(ValueError):
        GradedTensor(legs, [F(0), F(1)], even=True)


def test_swap_all_even_is_plain_permutation():
    V = GradedSpace(2)
    W = GradedSpace(3)
    c = swap(V, W)
    for v in range(2):
        for w in range(3):
            for w2 in range(3):
                for v2 in range(2):
                    want = F(1) if (v == v2 and w == w2) else F(0)
                    assert c.matrix_entry((v, w, w2, v2)) == want


def test_swap_odd_odd_entry_is_minus_one():
    V = GradedSpace(2, (0, 1))
    c = swap(V, V)
    assert c.matrix_entry((1, 1, 1, 1)) == F(-1)
    assert c.matrix_entry((0, 1, 1, 0)) == F(1)


def test_swap_squares_to_identity():
    rng = random.Random(11)
    for _ in range(10):
        V = rand_space(rng)
        W = rand_space(rng)
        net = TensorNetwork(
            [swap(V, W), swap(W, V)],
            [((0, 2), (1, 0)), ((0, 3), (1, 1))],
        )
        got = contract(net)
        want = GradedTensor.from_map(
            [V, W],
            [V, W],
            {
                (v, w, v, w): F(1)
                for v in range(V.dim)
                for w in range(W.dim)
            },
        )
        assert got == want


def test_series_bond_is_matrix_product():
    V = GradedSpace(2, (0, 1))
    f = from_matrix(V, V, [[F(1), F(0)], [F(0), F(2)]])
    g = from_matrix(V, V, [[F(3), F(0)], [F(0), F(5)]])
    net = TensorNetwork([f, g], [((0, 1), (1, 0))])
    got = contract(net)
    want = from_matrix(V, V, [[F(3), F(0)], [F(0), F(10)]])
    assert got == want


def test_self_closure_gives_supertrace():
    V = GradedSpace(3, (0, 1, 0))
    f = from_matrix(
        V, V, [[F(2), F(0), F(0)], [F(0), F(7), F(0)], [F(0), F(0), F(4)]]
    )
    net = TensorNetwork([f], [((0, 1), (0, 0))])
    assert contract(net).scalar == F(2) - F(7) + F(4)


def test_snake_identity():
    rng = random.Random(5)
    for _ in range(12):
        V = rand_space(rng, maxdim=5)
        ev, coev, _, _ = duality_tensors(V)
        net = TensorNetwork([coev, ev], [((1, 0), (0, 1))])
        got = contract(net)
        # open legs come out (out, in); align with the map convention
        assert got.transpose([1, 0]) == identity_map(V)


def test_trivial_twist_identities():
    rng = random.Random(7)
    for _ in range(12):
        V = rand_space(rng, maxdim=4)
        ev, coev, ev_hat, coev_hat = duality_tensors(V)
        c = swap(V, V)
        # id = (id (x) ev_hat) after the symmetry after (id (x) coev)
        net1 = TensorNetwork(
            [coev, c, ev_hat],
            [((0, 0), (1, 1)), ((1, 3), (2, 0)), ((2, 1), (0, 1))],
        )
        assert contract(net1) == identity_map(V)
        # id = (ev (x) id) after the symmetry after (coev_hat (x) id)
        net2 = TensorNetwork(
            [coev_hat, c, ev],
            [((0, 1), (1, 0)), ((1, 2), (2, 1)), ((2, 0), (0, 0))],
        )
        assert contract(net2) == identity_map(V)


def test_closure_of_identity_counts_dimension():
    V = GradedSpace(4)
    _, coev, ev_hat, _ = duality_tensors(V)
    net = TensorNetwork([coev, ev_hat], [((0, 0), (1, 0)), ((1, 1), (0, 1))])
    assert contract(net).scalar == F(4)


def test_closure_of_identity_graded_counts_superdimension():
    V = GradedSpace(3, (0, 1, 1))
    _, coev, ev_hat, _ = duality_tensors(V)
    net = TensorNetwork([coev, ev_hat], [((0, 0), (1, 0)), ((1, 1), (0, 1))])
    assert contract(net).scalar == F(1) - F(2)


def test_naturality_of_swap():
    rng = random.Random(13)
    for _ in range(10):
        V, W = rand_space(rng), rand_space(rng)
        V2, W2 = rand_space(rng), rand_space(rng)
        f = rand_even_tensor(rng, (Leg(V, "in"), Leg(V2, "out")))
        g = rand_even_tensor(rng, (Leg(W, "in"), Leg(W2, "out")))
        lhs = contract(
            TensorNetwork(
                [f, g, swap(V2, W2)],
                [((0, 1), (2, 0)), ((1, 1), (2, 1))],
            )
        )
        rhs = contract(
            TensorNetwork(
                [swap(V, W), g, f],
                [((0, 2), (1, 0)), ((0, 3), (2, 0))],
            )
        )
        assert lhs == rhs


def test_hexagon_against_flattened_product_space():
    rng = random.Random(17)
    for _ in range(8):
        V, W, U = rand_space(rng, 3), rand_space(rng, 3), rand_space(rng, 3)
        WU = GradedSpace(
            W.dim * U.dim,
            tuple(
                (W.parity[w] + U.parity[u]) % 2
                for w in range(W.dim)
                for u in range(U.dim)
            ),
        )
        big = swap(V, WU)
        net = TensorNetwork(
            [swap(V, W), swap(V, U)],
            [((0, 3), (1, 0))],
        )
        got = contract(net).transpose([0, 1, 3, 2, 4, 5])
        for v in range(V.dim):
            for w in range(W.dim):
                for u in range(U.dim):
                    lhs = big.matrix_entry(
                        (v, w * U.dim + u, w * U.dim + u, v)
                    )
                    rhs = got.matrix_entry((v, w, u, w, u, v))
                    assert lhs == rhs


def test_network_with_zero_tensor_is_zero():
    V = GradedSpace(2)
    z = GradedTensor((Leg(V, "in"), Leg(V, "out")), [F(0)] * 4)
    f = identity_map(V)
    net = TensorNetwork([z, f], [((0, 1), (1, 0)), ((1, 1), (0, 0))])
    assert contract(net).scalar == F(0)


def test_transpose_round_trip():
    rng = random.Random(19)
    for _ in range(10):
        legs = tuple(
            Leg(rand_space(rng, 3), rng.choice(("in", "out")))
            for _ in range(3)
        )
        t = rand_even_tensor(rng, legs)
        perm = [0, 1, 2]
        rng.shuffle(perm)
        inverse = [perm.index(k) for k in range(3)]
        assert t.transpose(perm).transpose(inverse) == t


def test_bond_validation():
    V = GradedSpace(2)
    f = identity_map(V)
    with pytest.raises(ValueError):
        TensorNetwork([f, f], [((0, 0), (1, 0))])  # in-leg to in-leg
    with pytest.raises(ValueError):
        TensorNetwork(
            [f, f], [((0, 1), (1, 0)), ((0, 1), (1, 0))]
        )  # leg reused


def random_network(rng):
    spaces = [rand_space(rng, 4) for _ in range(3)]
    nodes = []
    for _ in range(rng.randint(2, 6)):
        legs = tuple(
            Leg(rng.choice(spaces), rng.choice(("in", "out")))
            for _ in range(rng.randint(1, 3))
        )
        nodes.append(rand_even_tensor(rng, legs))
    outs, ins = [], []
    for i, node in enumerate(nodes):
        for pos, leg in enumerate(node.legs):
            (outs if leg.polarity == "out" else ins).append((i, pos))
    rng.shuffle(outs)
    rng.shuffle(ins)
    bonds = []
    used = set()
    for o in outs:
        space = nodes[o[0]].legs[o[1]].space
        for e in ins:
            if e in used or nodes[e[0]].legs[e[1]].space != space:
                continue
            if rng.random() < 0.75:
                bonds.append((o, e))
                used.add(e)
            break
    return TensorNetwork(nodes, bonds)


def test_contraction_order_independence():
    rng = random.Random(23)
    done = 0
    while done < 50:
        net = random_network(rng)
        if not net.bonds:
            continue
        ref = contract(net)
        shuffled = list(net.bonds)
        rng.shuffle(shuffled)
        assert contract(net, order=shuffled) == ref
        done += 1


def test_plan_order_covers_all_bonds_and_is_deterministic():
    rng = random.Random(29)
    net = random_network(rng)
    plan = plan_order(net)
    assert sorted(plan) == sorted(net.bonds)
    assert plan == plan_order(net)


def test_plan_order_contracts_spokes_into_hub():
    V = GradedSpace(2)
    hub = rand_even_tensor(random.Random(1), tuple(Leg(V, "in") for _ in range(4)))
    spokes = [
        rand_even_tensor(random.Random(i), (Leg(V, "out"),)) for i in range(4)
    ]
    bonds = [((1 + i, 0), (0, i)) for i in range(4)]
    net = TensorNetwork([hub] + spokes, bonds)
    plan = plan_order(net)
    assert sorted(plan) == sorted(net.bonds)
    got = contract(net, order=plan)
    assert got == contract(net, order=sorted(net.bonds))
