"""Hopf monoids given by exact structure constants.

Constructors for group algebras, the small quantum Borel algebras at a
root of unity, and exterior algebras; a loader for structure-constant
files; and a checker that verifies every defining identity entrywise
by contracting tensor networks.
"""

import re
from fractions import Fraction

from . import linalg
from .scalars import is_zero, parse_scalar, zeta
from .tensors import GradedSpace, GradedTensor, TensorNetwork, contract, swap

_ZERO = Fraction(0)
_ONE = Fraction(1)

__all__ = [
    "HopfMonoid",
    "AxiomReport",
    "make_group_algebra",
    "make_uq_borel",
    "make_exterior",
    "load_structure_constants",
    "check_axioms",
    "antipode_power",
    "dual_hopf",
]


class HopfMonoid:
    """A Hopf monoid as six parity-even structure tensors on a graded
    space, together with the inverse antipode and a field tag."""

    __slots__ = ("space", "M", "unit", "delta", "eps", "S", "S_inv", "field")

    def __init__(self, space, M, unit, delta, eps, S, S_inv, field="rational"):
        for name, t in (
            ("M", M), ("unit", unit), ("delta", delta),
            ("eps", eps), ("S", S), ("S_inv", S_inv),
        ):
            if not t.even:
                raise ValueError("structure tensor %s is not parity-even" % name)
        self.space = space
        self.M = M
        self.unit = unit
        self.delta = delta
        self.eps = eps
        self.S = S
        self.S_inv = S_inv
        self.field = field

    @property
    def dim(self):
        return self.space.dim

    def __repr__(self):
        return "HopfMonoid(dim=%d, field=%s)" % (self.dim, self.field)


class AxiomReport:
    """Outcome of the axiom suite: one (name, holds, witness) triple
    per identity, where witness is the first failing index if any."""

    def __init__(self, entries):
        self.entries = list(entries)

    @property
    def failures(self):
        return [e for e in self.entries if not e[1]]

    @property
    def ok(self):
        return not self.failures

    def __repr__(self):
        return "AxiomReport(ok=%r, failures=%r)" % (
            self.ok,
            [e[0] for e in self.failures],
        )


def _matrix_dict(tensor):
    """Nonzero matrix entries of a from_map-built tensor."""
    dims = tensor.shape
    out = {}
    for flat, val in enumerate(tensor.data):
        if is_zero(val):
            continue
        idx, rest = [], flat
        for d in reversed(dims):
            rest, i = divmod(rest, d)
            idx.append(i)
        idx.reverse()
        idx = tuple(idx)
        out[idx] = tensor.matrix_entry(idx)
    return out


def _build(space, m, unit_vec, d, eps_vec, s, field, s_inv=None):
    M = GradedTensor.from_map([space, space], [space], m)
    unit = GradedTensor.from_map([], [space], unit_vec)
    delta = GradedTensor.from_map([space], [space, space], d)
    eps = GradedTensor.from_map([space], [], eps_vec)
    S = GradedTensor.from_map([space], [space], s)
    if s_inv is None:
        rows = [[s.get((i, j), _ZERO) for j in range(space.dim)] for i in range(space.dim)]
        inv = linalg.invert(rows)
        if inv is None:
            raise ValueError("antipode is not invertible")
        s_inv = {
            (i, j): inv[i][j]
            for i in range(space.dim)
            for j in range(space.dim)
            if not is_zero(inv[i][j])
        }
    S_inv = GradedTensor.from_map([space], [space], s_inv)
    return HopfMonoid(space, M, unit, delta, eps, S, S_inv, field)


def make_group_algebra(table):
    """Group algebra on a multiplication table of indices. The table is
    checked to be a group; the diagonal coproduct, trivial counit and
    inversion antipode then satisfy every axiom."""
    n = len(table)
    for row in table:
        if len(row) != n or any(not (0 <= x < n) for x in row):
            raise ValueError("multiplication table is not an n by n index table")
    for i in range(n):
        for j in range(n):
            for k in range(n):
                if table[table[i][j]][k] != table[i][table[j][k]]:
                    raise ValueError("multiplication table is not associative")
    ident = None
    for e in range(n):
        if all(table[e][i] == i and table[i][e] == i for i in range(n)):
            ident = e
            break
    if ident is None:
        raise ValueError("multiplication table has no identity element")
    inv = [None] * n
    for i in range(n):
        for j in range(n):
            if table[i][j] == ident and table[j][i] == ident:
                inv[i] = j
                break
        if inv[i] is None:
            raise ValueError("element %d has no inverse" % i)
    space = GradedSpace(n)
    m = {(i, j, table[i][j]): _ONE for i in range(n) for j in range(n)}
    d = {(g, g, g): _ONE for g in range(n)}
    eps_vec = {(g,): _ONE for g in range(n)}
    s = {(i, inv[i]): _ONE for i in range(n)}
    return _build(space, m, {(ident,): _ONE}, d, eps_vec, s, "rational", s_inv=s)


def make_uq_borel(n):
    """Borel part of the small quantum sl2 at q a primitive n-th root
    of unity: generators E, K with KE = qEK, E^n = 0, K^n = 1, on the
    basis E^a K^b ordered lexicographically by (a, b)."""
    if n < 2:
        raise ValueError("n must be at least 2")
    q = zeta(n)
    dim = n * n

    def bi(a, b):
        return a * n + b

    def mprod(i, j):
        a, b = divmod(i, n)
        c, e = divmod(j, n)
        if a + c >= n:
            return None
        return bi(a + c, (b + e) % n), q ** (b * c)

    m = {}
    for i in range(dim):
        for j in range(dim):
            r = mprod(i, j)
            if r is not None:
                m[(i, j, r[0])] = r[1]

    def sq_mul(A, B):
        out = {}
        for (x1, y1), c1 in A.items():
            for (x2, y2), c2 in B.items():
                rx = mprod(x1, x2)
                ry = mprod(y1, y2)
                if rx is None or ry is None:
                    continue
                key = (rx[0], ry[0])
                val = c1 * c2 * rx[1] * ry[1]
                acc = out.get(key)
                out[key] = val if acc is None else acc + val
        return {k: v for k, v in out.items() if not is_zero(v)}

    dE = {(bi(1, 0), bi(0, 0)): _ONE, (bi(0, 1), bi(1, 0)): _ONE}
    dK = {(bi(0, 1), bi(0, 1)): _ONE}
    d = {}
    for a in range(n):
        for b in range(n):
            cur = {(bi(0, 0), bi(0, 0)): _ONE}
            for _ in range(a):
                cur = sq_mul(cur, dE)
            for _ in range(b):
                cur = sq_mul(cur, dK)
            for (x, y), v in cur.items():
                d[(bi(a, b), x, y)] = v

    def el_mul(A, B):
        out = {}
        for x, c1 in A.items():
            for y, c2 in B.items():
                r = mprod(x, y)
                if r is None:
                    continue
                acc = out.get(r[0])
                val = c1 * c2 * r[1]
                out[r[0]] = val if acc is None else acc + val
        return {k: v for k, v in out.items() if not is_zero(v)}

    sE = {bi(1, n - 1): -(q ** (n - 1))}
    sK = {bi(0, n - 1): _ONE}
    s = {}
    for a in range(n):
        for b in range(n):
            cur = {bi(0, 0): _ONE}
            for _ in range(b):
                cur = el_mul(cur, sK)
            for _ in range(a):
                cur = el_mul(cur, sE)
            for y, v in cur.items():
                s[(bi(a, b), y)] = v

    eps_vec = {(bi(0, b),): _ONE for b in range(n)}
    field = "rational" if n <= 2 else "zeta(%d)" % n
    return _build(GradedSpace(dim), m, {(bi(0, 0),): _ONE}, d, eps_vec, s, field)


def make_exterior(d, koszul=True):
    """Exterior algebra on d odd generators, monomial basis indexed by
    subset bitmask; parity is word length mod 2. With koszul=False the
    same structure constants are declared on an all-even space, which
    breaks the bialgebra axiom and serves as a negative control."""
    if d < 1:
        raise ValueError("d must be at least 1")
    dim = 1 << d

    def merge(A, B):
        if A & B:
            return None
        inv = 0
        for x in range(d):
            if A >> x & 1:
                inv += bin(B & ((1 << x) - 1)).count("1")
        return A | B, (-_ONE if inv % 2 else _ONE)

    m = {}
    for A in range(dim):
        for B in range(dim):
            r = merge(A, B)
            if r is not None:
                m[(A, B, r[0])] = r[1]

    def par(A):
        return bin(A).count("1") & 1

    def sq_mul(P, Q):
        out = {}
        for (x1, y1), c1 in P.items():
            for (x2, y2), c2 in Q.items():
                rx = merge(x1, x2)
                ry = merge(y1, y2)
                if rx is None or ry is None:
                    continue
                val = c1 * c2 * rx[1] * ry[1]
                if par(y1) and par(x2):
                    val = -val
                key = (rx[0], ry[0])
                acc = out.get(key)
                out[key] = val if acc is None else acc + val
        return {k: v for k, v in out.items() if not is_zero(v)}

    dd = {}
    for A in range(dim):
        cur = {(0, 0): _ONE}
        for i in range(d):
            if A >> i & 1:
                cur = sq_mul(cur, {(1 << i, 0): _ONE, (0, 1 << i): _ONE})
        for (x, y), v in cur.items():
            dd[(A, x, y)] = v

    # antipode: anti-morphism with the Koszul rule, S(X_A) = (-1)^|A| X_A
    s = {(A, A): (-_ONE if par(A) else _ONE) for A in range(dim)}

    parity = tuple(par(A) if koszul else 0 for A in range(dim))
    space = GradedSpace(dim, parity)
    eps_vec = {(0,): _ONE}
    return _build(space, m, {(0,): _ONE}, dd, eps_vec, s, "rational", s_inv=s)


def _identity(space):
    return GradedTensor.from_map(
        [space], [space], {(i, i): _ONE for i in range(space.dim)}
    )


def _net(nodes, bonds, ins, outs):
    net = TensorNetwork(nodes, bonds)
    t = contract(net)
    opens = net.open_legs()
    perm = [opens.index(e) for e in list(ins) + list(outs)]
    return t.transpose(perm)


def _first_mismatch(lhs, rhs):
    dims = lhs.shape
    for flat, (a, b) in enumerate(zip(lhs.data, rhs.data)):
        if a is b or is_zero(a - b):
            continue
        idx, rest = [], flat
        for dd in reversed(dims):
            rest, i = divmod(rest, dd)
            idx.append(i)
        idx.reverse()
        return tuple(idx)
    return None


def check_axioms(H):
    """Evaluate every defining identity as two contracted networks and
    compare them entrywise. Failures are data, not exceptions."""
    sp = H.space
    M, D, S, Si, unit, eps = H.M, H.delta, H.S, H.S_inv, H.unit, H.eps
    idt = _identity(sp)
    c = swap(sp, sp)
    S2 = antipode_power(H, 2)
    one = GradedTensor((), [_ONE])
    unit_eps = _net([eps, unit], [], [(0, 0)], [(1, 0)])
    pairs = []

    pairs.append((
        "associativity",
        _net([M, M], [((0, 2), (1, 0))], [(0, 0), (0, 1), (1, 1)], [(1, 2)]),
        _net([M, M], [((0, 2), (1, 1))], [(1, 0), (0, 0), (0, 1)], [(1, 2)]),
    ))
    pairs.append((
        "left unit",
        _net([unit, M], [((0, 0), (1, 0))], [(1, 1)], [(1, 2)]),
        idt,
    ))
    pairs.append((
        "right unit",
        _net([unit, M], [((0, 0), (1, 1))], [(1, 0)], [(1, 2)]),
        idt,
    ))
    pairs.append((
        "coassociativity",
        _net([D, D], [((0, 1), (1, 0))], [(0, 0)], [(1, 1), (1, 2), (0, 2)]),
        _net([D, D], [((0, 2), (1, 0))], [(0, 0)], [(0, 1), (1, 1), (1, 2)]),
    ))
    pairs.append((
        "left counit",
        _net([D, eps], [((0, 1), (1, 0))], [(0, 0)], [(0, 2)]),
        idt,
    ))
    pairs.append((
        "right counit",
        _net([D, eps], [((0, 2), (1, 0))], [(0, 0)], [(0, 1)]),
        idt,
    ))
    pairs.append((
        "bialgebra compatibility",
        _net([M, D], [((0, 2), (1, 0))], [(0, 0), (0, 1)], [(1, 1), (1, 2)]),
        _net(
            [D, D, c, M, M],
            [
                ((0, 2), (2, 0)),
                ((1, 1), (2, 1)),
                ((0, 1), (3, 0)),
                ((2, 2), (3, 1)),
                ((2, 3), (4, 0)),
                ((1, 2), (4, 1)),
            ],
            [(0, 0), (1, 0)],
            [(3, 2), (4, 2)],
        ),
    ))
    pairs.append((
        "counit multiplicativity",
        _net([M, eps], [((0, 2), (1, 0))], [(0, 0), (0, 1)], []),
        _net([eps, eps], [], [(0, 0), (1, 0)], []),
    ))
    pairs.append((
        "unit comultiplicativity",
        _net([unit, D], [((0, 0), (1, 0))], [], [(1, 1), (1, 2)]),
        _net([unit, unit], [], [], [(0, 0), (1, 0)]),
    ))
    pairs.append((
        "counit of unit",
        _net([unit, eps], [((0, 0), (1, 0))], [], []),
        one,
    ))
    pairs.append((
        "left antipode",
        _net(
            [D, S, M],
            [((0, 1), (1, 0)), ((1, 1), (2, 0)), ((0, 2), (2, 1))],
            [(0, 0)],
            [(2, 2)],
        ),
        unit_eps,
    ))
    pairs.append((
        "right antipode",
        _net(
            [D, S, M],
            [((0, 2), (1, 0)), ((1, 1), (2, 1)), ((0, 1), (2, 0))],
            [(0, 0)],
            [(2, 2)],
        ),
        unit_eps,
    ))
    pairs.append((
        "antipode anti-multiplicativity",
        _net([M, S], [((0, 2), (1, 0))], [(0, 0), (0, 1)], [(1, 1)]),
        _net(
            [S, S, c, M],
            [
                ((0, 1), (2, 0)),
                ((1, 1), (2, 1)),
                ((2, 2), (3, 0)),
                ((2, 3), (3, 1)),
            ],
            [(0, 0), (1, 0)],
            [(3, 2)],
        ),
    ))
    pairs.append((
        "antipode anti-comultiplicativity",
        _net([S, D], [((0, 1), (1, 0))], [(0, 0)], [(1, 1), (1, 2)]),
        _net(
            [D, S, S, c],
            [
                ((0, 1), (1, 0)),
                ((0, 2), (2, 0)),
                ((1, 1), (3, 0)),
                ((2, 1), (3, 1)),
            ],
            [(0, 0)],
            [(3, 2), (3, 3)],
        ),
    ))
    pairs.append((
        "antipode of unit",
        _net([unit, S], [((0, 0), (1, 0))], [], [(1, 1)]),
        _net([unit], [], [], [(0, 0)]),
    ))
    pairs.append((
        "counit of antipode",
        _net([S, eps], [((0, 1), (1, 0))], [(0, 0)], []),
        _net([eps], [], [(0, 0)], []),
    ))
    pairs.append((
        "antipode inverse left",
        _net([S, Si], [((0, 1), (1, 0))], [(0, 0)], [(1, 1)]),
        idt,
    ))
    pairs.append((
        "antipode inverse right",
        _net([Si, S], [((0, 1), (1, 0))], [(0, 0)], [(1, 1)]),
        idt,
    ))
    pairs.append((
        "antipode square multiplicativity",
        _net([M, S2], [((0, 2), (1, 0))], [(0, 0), (0, 1)], [(1, 1)]),
        _net(
            [S2, S2, M],
            [((0, 1), (2, 0)), ((1, 1), (2, 1))],
            [(0, 0), (1, 0)],
            [(2, 2)],
        ),
    ))
    pairs.append((
        "antipode square comultiplicativity",
        _net([S2, D], [((0, 1), (1, 0))], [(0, 0)], [(1, 1), (1, 2)]),
        _net(
            [D, S2, S2],
            [((0, 1), (1, 0)), ((0, 2), (2, 0))],
            [(0, 0)],
            [(1, 1), (2, 1)],
        ),
    ))

    entries = []
    for name, lhs, rhs in pairs:
        witness = _first_mismatch(lhs, rhs)
        entries.append((name, witness is None, witness))
    return AxiomReport(entries)


def antipode_power(H, k):
    """The antipode composed k times (inverse antipode for k < 0)."""
    n = H.dim
    base = H.S if k >= 0 else H.S_inv
    rows = [[base.matrix_entry((i, j)) for j in range(n)] for i in range(n)]
    power = abs(k)
    acc = [[_ONE if i == j else _ZERO for j in range(n)] for i in range(n)]
    for _ in range(power):
        acc = [
            [
                sum((acc[i][m] * rows[m][j] for m in range(n)), _ZERO)
                for j in range(n)
            ]
            for i in range(n)
        ]
    entries = {
        (i, j): acc[i][j]
        for i in range(n)
        for j in range(n)
        if not is_zero(acc[i][j])
    }
    return GradedTensor.from_map([H.space], [H.space], entries)


def dual_hopf(H):
    """The dual Hopf monoid on the dual basis: product transposes the
    coproduct, coproduct transposes the product, with the Koszul factor
    for reordering dual basis pairs in the graded case."""
    n = H.dim
    p = H.space.parity
    dmat = _matrix_dict(H.delta)
    mmat = _matrix_dict(H.M)
    smat = _matrix_dict(H.S)
    simat = _matrix_dict(H.S_inv)
    umat = _matrix_dict(H.unit)
    emat = _matrix_dict(H.eps)
    m = {}
    for (k, i, j), v in dmat.items():
        if p[i] and p[j]:
            v = -v
        m[(i, j, k)] = v
    d = {}
    for (i, j, k), v in mmat.items():
        if p[i] and p[j]:
            v = -v
        d[(k, i, j)] = v
    s = {(j, i): v for (i, j), v in smat.items()}
    s_inv = {(j, i): v for (i, j), v in simat.items()}
    unit_vec = {(k,): v for (k,), v in emat.items()}
    eps_vec = {(k,): v for (k,), v in umat.items()}
    return _build(H.space, m, unit_vec, d, eps_vec, s, H.field, s_inv=s_inv)


_HEADER = re.compile(r"^hopf\s+dim=(\d+)\s+field=(rational|zeta\(\d+\))$")
_LINES = {
    "M": re.compile(r"^M\s+(\d+)\s+(\d+)\s*->\s*(\d+)\s*:\s*(.+)$"),
    "unit": re.compile(r"^unit\s*->\s*(\d+)\s*:\s*(.+)$"),
    "D": re.compile(r"^D\s+(\d+)\s*->\s*(\d+)\s+(\d+)\s*:\s*(.+)$"),
    "eps": re.compile(r"^eps\s+(\d+)\s*:\s*(.+)$"),
    "S": re.compile(r"^S\s+(\d+)\s*->\s*(\d+)\s*:\s*(.+)$"),
}


def _solve_antipode(dim, m, d, unit_vec, eps_vec):
    """Solve M(S x id)Delta = unit eps for S as a linear system."""
    rows = []
    rhs = []
    for x in range(dim):
        for y in range(dim):
            row = [_ZERO] * (dim * dim)
            for (xx, u, v), dv in d.items():
                if xx != x:
                    continue
                for mm in range(dim):
                    mv = m.get((mm, v, y))
                    if mv is not None:
                        row[u * dim + mm] = row[u * dim + mm] + dv * mv
            rows.append(row)
            rhs.append(unit_vec.get((y,), _ZERO) * eps_vec.get((x,), _ZERO))
    sol = linalg.solve(rows, rhs)
    if sol is None:
        raise ValueError("no antipode satisfies the antipode axiom")
    return {
        (u, mm): sol[u * dim + mm]
        for u in range(dim)
        for mm in range(dim)
        if not is_zero(sol[u * dim + mm])
    }


def load_structure_constants(text):
    """Parse the algebra grammar and build the monoid; the full axiom
    suite must pass or loading fails naming the first broken identity."""
    dim = None
    field = None
    parity = None
    m, d = {}, {}
    unit_vec, eps_vec, s = {}, {}, {}
    saw_s = False
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if dim is None:
            got = _HEADER.match(line)
            if not got:
                raise ValueError("line %d: expected the hopf header" % lineno)
            dim = int(got.group(1))
            field = got.group(2)
            continue
        if line.startswith("parity="):
            bits = line[len("parity="):].strip()
            if len(bits) != dim or any(ch not in "01" for ch in bits):
                raise ValueError("line %d: parity must be a %d-bit string" % (lineno, dim))
            parity = tuple(int(ch) for ch in bits)
            continue
        for kind, pat in _LINES.items():
            got = pat.match(line)
            if not got:
                continue
            parts = got.groups()
            val = parse_scalar(parts[-1].strip())
            idx = tuple(int(x) for x in parts[:-1])
            if any(not (0 <= x < dim) for x in idx):
                raise ValueError("line %d: index out of range" % lineno)
            if kind == "M":
                m[idx] = val
            elif kind == "unit":
                unit_vec[idx] = val
            elif kind == "D":
                d[idx] = val
            elif kind == "eps":
                eps_vec[idx] = val
            else:
                s[idx] = val
                saw_s = True
            break
        else:
            raise ValueError("line %d: unrecognized entry %r" % (lineno, line))
    if dim is None:
        raise ValueError("missing hopf header")
    if not saw_s:
        s = _solve_antipode(dim, m, d, unit_vec, eps_vec)
    space = GradedSpace(dim, parity)
    H = _build(space, m, unit_vec, d, eps_vec, s, field)
    report = check_axioms(H)
    if not report.ok:
        name, _, witness = report.failures[0]
        raise ValueError("axiom failure: %s at index %r" % (name, witness))
    return H
