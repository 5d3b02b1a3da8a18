"""Three-term recurrence stepping, Jost solutions and discrete Wronskians.

Because the perturbation has finite support, the Jost solutions are exact
plane waves outside the window: ``f_l(z, n) = z^n I`` for ``n >= n_max + 1``
and ``f_r(z, n) = z^{-n} I`` for ``n <= n_min - 1``.  Each is seeded with two
exact consecutive values and carried across the window by the recurrence.
"""
from dataclasses import dataclass

from . import cmatrix as cm
from .errors import DomainError
from .lattice import SpectralPoint, lambda_of_z

FORWARD = "forward"
BACKWARD = "backward"


@dataclass(frozen=True)
class SolutionFrame:
    """Two consecutive values ``(psi(n), psi(n+1))`` of a matrix solution."""

    n: int
    value: object
    next: object


def plane_wave(z, n, q):
    """``z^n I``."""
    return (z ** n) * cm.identity(q)


def _as_z(z):
    z = z.z if isinstance(z, SpectralPoint) else complex(z)
    if z == 0:
        raise DomainError("z must be nonzero")
    return z


def _step_forward(p, lam, n, psi_n, psi_n1):
    # psi(n+2) from psi(n), psi(n+1): the equation at site n+1
    m = n + 1
    rhs = (lam * p.w(m) - p.b(m)) @ psi_n1 - cm.adjoint(p.a(m)) @ psi_n
    return p.a_inv(m + 1) @ rhs


def _step_backward(p, lam, n, psi_n, psi_n1):
    # psi(n-1) from psi(n), psi(n+1): the equation at site n
    rhs = (lam * p.w(n) - p.b(n)) @ psi_n - p.a(n + 1) @ psi_n1
    return p.a_adj_inv(n) @ rhs


def step_recurrence(p, z, frame, direction=FORWARD):
    """Advance or retreat a :class:`SolutionFrame` by one site.

    Raises
    ------
    SingularMatrixError
        If the ``a`` matrix that has to be inverted is singular.
    """
    z = _as_z(z)
    lam = lambda_of_z(z, p.tail)
    if direction == FORWARD:
        new = _step_forward(p, lam, frame.n, frame.value, frame.next)
        return SolutionFrame(frame.n + 1, frame.next, new)
    if direction == BACKWARD:
        new = _step_backward(p, lam, frame.n, frame.value, frame.next)
        return SolutionFrame(frame.n - 1, new, frame.value)
    raise ValueError(f"direction must be {FORWARD!r} or {BACKWARD!r}, got {direction!r}")


def jost_left(p, z, n_lo, n_hi):
    """Values of ``f_l(z, n)`` for ``n_lo <= n <= n_hi`` as a dict.

    Sites at or beyond ``n_max + 1`` are filled with the exact plane wave;
    only sites to the left of that are obtained by stepping.
    """
    z = _as_z(z)
    q = p.q
    edge = p.n_max + 1
    out = {n: plane_wave(z, n, q) for n in range(max(n_lo, edge), n_hi + 1)}
    if n_lo < edge:
        lam = lambda_of_z(z, p.tail)
        nxt = plane_wave(z, edge + 1, q)
        cur = plane_wave(z, edge, q)
        for n in range(edge, n_lo, -1):
            cur, nxt = _step_backward(p, lam, n, cur, nxt), cur
            if n - 1 <= n_hi:
                out[n - 1] = cur
    return out


def jost_right(p, z, n_lo, n_hi):
    """Values of ``f_r(z, n)`` for ``n_lo <= n <= n_hi``; mirror of :func:`jost_left`."""
    z = _as_z(z)
    q = p.q
    edge = p.n_min - 1
    zi = 1 / z
    out = {n: plane_wave(zi, n, q) for n in range(n_lo, min(n_hi, edge) + 1)}
    if n_hi > edge:
        lam = lambda_of_z(z, p.tail)
        prev = plane_wave(zi, edge - 1, q)
        cur = plane_wave(zi, edge, q)
        for n in range(edge - 1, n_hi - 1):
            prev, cur = cur, _step_forward(p, lam, n, prev, cur)
            if n + 2 >= n_lo:
                out[n + 2] = cur
    return out


def jost_g_left(p, z, n_lo, n_hi):
    """``g_l(z, n) = f_l(1/z, n)``."""
    return jost_left(p, 1 / _as_z(z), n_lo, n_hi)


def jost_g_right(p, z, n_lo, n_hi):
    """``g_r(z, n) = f_r(1/z, n)``."""
    return jost_right(p, 1 / _as_z(z), n_lo, n_hi)


@dataclass(frozen=True)
class JostPair:
    """Left and right Jost solutions of one spectral point on a common range."""

    z: SpectralPoint
    f_l: dict
    f_r: dict


def jost_pair(p, z, n_lo, n_hi):
    if not isinstance(z, SpectralPoint):
        z = SpectralPoint.at(z, p.tail)
    return JostPair(z, jost_left(p, z.z, n_lo, n_hi), jost_right(p, z.z, n_lo, n_hi))


def wronskian(p, alpha, beta, n):
    """Discrete Wronskian ``alpha(n) a(n+1) beta(n+1) - alpha(n+1) a(n+1)^dagger beta(n)``.

    ``alpha`` and ``beta`` are the pairs of values at ``n`` and ``n + 1``.
    """
    a1 = p.a(n + 1)
    return alpha[0] @ a1 @ beta[1] - alpha[1] @ cm.adjoint(a1) @ beta[0]


def wronskian_of(p, alpha, beta, n):
    """Wronskian of two solutions given as site dictionaries."""
    return wronskian(p, (alpha[n], alpha[n + 1]), (beta[n], beta[n + 1]), n)


def adjoint_values(values):
    """Pointwise adjoint of a site dictionary."""
    return {n: cm.adjoint(m) for n, m in values.items()}
