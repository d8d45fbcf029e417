"""Integrals and cointegrals of a Hopf monoid.

The right integral mu_R and right cointegral e_R are each cut out by a
linear system whose solution space must be one-dimensional; they are
normalized so that mu_R(e_R) = 1. From them come the distinguished
group-like element a, the distinguished group-like functional alpha,
the scalar q = alpha(a), and the left-handed partners e_L, mu_L.
"""

from fractions import Fraction

from . import linalg
from .hopf import AxiomReport, _matrix_dict
from .scalars import is_zero

_ZERO = Fraction(0)
_ONE = Fraction(1)

__all__ = ["IntegralData", "solve_integrals", "verify_integral_lemmas"]


class IntegralData:
    """Integrals, cointegrals, distinguished group-likes, and q."""

    __slots__ = ("mu_R", "e_R", "mu_L", "e_L", "a", "alpha", "q")

    def __init__(self, mu_R, e_R, mu_L, e_L, a, alpha, q):
        self.mu_R = list(mu_R)
        self.e_R = list(e_R)
        self.mu_L = list(mu_L)
        self.e_L = list(e_L)
        self.a = list(a)
        self.alpha = list(alpha)
        self.q = q

    def __repr__(self):
        return "IntegralData(q=%r)" % (self.q,)


def _scaled_kernel_line(rows, what):
    basis = linalg.kernel(rows)
    if len(basis) != 1:
        raise ValueError(
            "%s solution space has dimension %d, expected 1" % (what, len(basis))
        )
    vec = basis[0]
    lead = next(v for v in vec if not is_zero(v))
    return [v / lead for v in vec]


def solve_integrals(H):
    """Solve the defining equations of mu_R and e_R, normalize, and
    derive the rest. Requires the axioms to hold."""
    n = H.dim
    mmat = _matrix_dict(H.M)
    dmat = _matrix_dict(H.delta)
    smat = _matrix_dict(H.S)
    simat = _matrix_dict(H.S_inv)
    unit = [H.unit.matrix_entry((k,)) for k in range(n)]
    eps = [H.eps.matrix_entry((k,)) for k in range(n)]

    # mu(x_(1)) x_(2) = mu(x) 1, one equation per basis pair (x, y)
    rows = []
    for x in range(n):
        for y in range(n):
            row = [_ZERO] * n
            for (xx, u, v), dv in dmat.items():
                if xx == x and v == y:
                    row[u] = row[u] + dv
            row[x] = row[x] - unit[y]
            rows.append(row)
    mu_R = _scaled_kernel_line(rows, "right integral")

    # e x = eps(x) e, one equation per basis pair (x, y)
    rows = []
    for x in range(n):
        for y in range(n):
            row = [_ZERO] * n
            for (i, xx, yy), mv in mmat.items():
                if xx == x and yy == y:
                    row[i] = row[i] + mv
            row[y] = row[y] - eps[x]
            rows.append(row)
    e_R = _scaled_kernel_line(rows, "right cointegral")

    pairing = sum((m * e for m, e in zip(mu_R, e_R)), _ZERO)
    if is_zero(pairing):
        raise ValueError("normalization impossible: mu_R(e_R) = 0")
    e_R = [v / pairing for v in e_R]

    # a = mu_R(e_R(2)) e_R(1); alpha(x) = mu_R(x e_R); q = alpha(a)
    a = [_ZERO] * n
    for (x, u, v), dv in dmat.items():
        a[u] = a[u] + e_R[x] * dv * mu_R[v]
    alpha = [_ZERO] * n
    for (j, i, k), mv in mmat.items():
        alpha[j] = alpha[j] + e_R[i] * mv * mu_R[k]
    q = sum((av * bv for av, bv in zip(a, alpha)), _ZERO)
    if is_zero(q):
        raise ValueError("q = alpha(a) vanishes")

    e_L = [_ZERO] * n
    for (j, i), sv in simat.items():
        e_L[i] = e_L[i] + e_R[j] * sv
    mu_L = [_ZERO] * n
    for i in range(n):
        mu_L[i] = sum((sv * mu_R[j] for (ii, j), sv in smat.items() if ii == i), _ZERO)
    return IntegralData(mu_R, e_R, mu_L, e_L, a, alpha, q)


def verify_integral_lemmas(H, I):
    """Check S(e_R) = q e_L and mu_L(e_R) = q exactly, and re-check
    that a and alpha are group-like. Failures are data."""
    n = H.dim
    mmat = _matrix_dict(H.M)
    dmat = _matrix_dict(H.delta)
    smat = _matrix_dict(H.S)
    unit = [H.unit.matrix_entry((k,)) for k in range(n)]
    eps = [H.eps.matrix_entry((k,)) for k in range(n)]
    entries = []

    s_e = [_ZERO] * n
    for (j, i), sv in smat.items():
        s_e[i] = s_e[i] + I.e_R[j] * sv
    witness = None
    for i in range(n):
        if not is_zero(s_e[i] - I.q * I.e_L[i]):
            witness = (i,)
            break
    entries.append(("antipode of cointegral", witness is None, witness))

    mu_l_e = sum((m * e for m, e in zip(I.mu_L, I.e_R)), _ZERO)
    holds = is_zero(mu_l_e - I.q)
    entries.append(("left integral of cointegral", holds, None if holds else ()))

    delta_a = {}
    for (x, u, v), dv in dmat.items():
        key = (u, v)
        acc = delta_a.get(key)
        val = I.a[x] * dv
        delta_a[key] = val if acc is None else acc + val
    witness = None
    for u in range(n):
        for v in range(n):
            if not is_zero(delta_a.get((u, v), _ZERO) - I.a[u] * I.a[v]):
                witness = (u, v)
                break
        if witness:
            break
    if witness is None:
        eps_a = sum((av * ev for av, ev in zip(I.a, eps)), _ZERO)
        if not is_zero(eps_a - _ONE):
            witness = ()
    entries.append(("group-likeness of a", witness is None, witness))

    witness = None
    for x in range(n):
        for y in range(n):
            prod = sum(
                (mv * I.alpha[k] for (xx, yy, k), mv in mmat.items()
                 if xx == x and yy == y),
                _ZERO,
            )
            if not is_zero(prod - I.alpha[x] * I.alpha[y]):
                witness = (x, y)
                break
        if witness:
            break
    if witness is None:
        alpha_1 = sum((uv * av for uv, av in zip(unit, I.alpha)), _ZERO)
        if not is_zero(alpha_1 - _ONE):
            witness = ()
    entries.append(("group-likeness of alpha", witness is None, witness))
    return AxiomReport(entries)
