"""Coefficient profiles of the weighted matrix Jacobi system on the integer lattice.

The system is

    a(n+1) psi(n+1) + b(n) psi(n) + a(n)^dagger psi(n-1) = lambda w(n) psi(n),

with ``(a, b, w)`` equal to ``(a_inf I, b_inf I, w_inf I)`` outside a finite
window.  Sites ``n_min..n_max`` carry ``b`` and ``w``; ``a`` may additionally be
set at ``n_max + 1`` because the equation at ``n_max`` couples through it.
"""
import json
import math
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from . import cmatrix as cm
from .errors import DomainError, EmptyGridError, ProfileError

DEFAULT_EXCLUSION_EPS = 1e-6
UNIT_CIRCLE_TOL = 1e-12


@dataclass(frozen=True)
class Tail:
    """Scalar limits (a_inf, b_inf, w_inf) of the coefficients at both infinities."""

    a_inf: float
    b_inf: float
    w_inf: float

    @property
    def kind(self):
        return "Jacobi-like" if self.a_inf > 0 else "Schrödinger-like"


REDUCED_TAIL = Tail(1.0, 0.0, 1.0)


def _frozen(m):
    m = cm.as_cmat(m).copy()
    m.setflags(write=False)
    return m


class CoefficientProfile:
    """Immutable coefficient triple ``(a(n), b(n), w(n))`` with a finite window.

    Parameters
    ----------
    q : int
        Matrix size.
    tail : Tail or tuple
        ``(a_inf, b_inf, w_inf)``.
    a, b, w : dict, optional
        Site index -> q x q matrix.  Sites not given take the tail value.
    window : (int, int), optional
        ``(n_min, n_max)``.  Inferred from the keys when omitted; an empty
        window has ``n_max == n_min - 1``.
    metadata : dict, optional
        Free-form annotations carried along (e.g. ``expect_unequal_det``).
    """

    def __init__(self, q, tail, a=None, b=None, w=None, window=None, metadata=None):
        if int(q) != q or q < 1:
            raise ProfileError(f"q must be a positive integer, got {q!r}")
        self.q = int(q)
        if not isinstance(tail, Tail):
            tail = Tail(*(float(t) for t in tail))
        self.tail = tail
        self._a = self._read_sites(a, "a")
        self._b = self._read_sites(b, "b")
        self._w = self._read_sites(w, "w")
        if window is None:
            window = self._infer_window()
        n_min, n_max = (int(x) for x in window)
        if n_max < n_min - 1:
            raise ProfileError(f"window ({n_min}, {n_max}) is inverted")
        self.n_min, self.n_max = n_min, n_max
        for name, sites, hi in (("a", self._a, n_max + 1), ("b", self._b, n_max), ("w", self._w, n_max)):
            bad = [n for n in sites if not n_min <= n <= hi]
            if bad:
                raise ProfileError(f"{name} given at sites {bad} outside [{n_min}, {hi}]")
        self.metadata = dict(metadata or {})

    def _read_sites(self, sites, name):
        out = {}
        for n, m in (sites or {}).items():
            m = cm.as_cmat(m)
            if m.shape != (self.q, self.q):
                raise ProfileError(f"{name}({n}) has shape {m.shape}, expected {(self.q, self.q)}")
            out[int(n)] = _frozen(m)
        return out

    def _infer_window(self):
        bw = set(self._b) | set(self._w)
        keys = bw | set(self._a)
        if not keys:
            return (0, -1)
        n_min = min(keys)
        n_max = max(max(bw, default=n_min - 1), max(self._a, default=n_min) - 1)
        return (n_min, max(n_max, n_min - 1))

    # -- accessors ---------------------------------------------------------

    @property
    def window(self):
        return (self.n_min, self.n_max)

    @property
    def is_free(self):
        return not (self._a or self._b or self._w)

    def a(self, n):
        m = self._a.get(n)
        return m if m is not None else self._tail_a

    def b(self, n):
        m = self._b.get(n)
        return m if m is not None else self._tail_b

    def w(self, n):
        m = self._w.get(n)
        return m if m is not None else self._tail_w

    @cached_property
    def _tail_a(self):
        return _frozen(self.tail.a_inf * cm.identity(self.q))

    @cached_property
    def _tail_b(self):
        return _frozen(self.tail.b_inf * cm.identity(self.q))

    @cached_property
    def _tail_w(self):
        return _frozen(self.tail.w_inf * cm.identity(self.q))

    @cached_property
    def _a_inverses(self):
        return {}

    def a_inv(self, n):
        """``a(n)^{-1}``, cached per site."""
        return self._cached_inverse(("a", n), lambda: self.a(n))

    def a_adj_inv(self, n):
        """``(a(n)^dagger)^{-1}``, cached per site."""
        return self._cached_inverse(("ad", n), lambda: cm.adjoint(self.a(n)))

    def _cached_inverse(self, key, build):
        cache = self._a_inverses
        if key[1] not in self._a:
            key = (key[0], "tail")
        inv = cache.get(key)
        if inv is None:
            inv = cache[key] = _frozen(cm.inverse(build()))
        return inv

    def a_sites(self):
        """Sites where ``a`` may differ from the tail: ``n_min .. n_max + 1``."""
        return range(self.n_min, self.n_max + 2)

    def sites(self):
        return range(self.n_min, self.n_max + 1)

    def stored(self, name):
        """Copy of the explicitly stored site dictionary for ``a``, ``b`` or ``w``."""
        return dict({"a": self._a, "b": self._b, "w": self._w}[name])

    def with_metadata(self, **extra):
        md = {**self.metadata, **extra}
        return CoefficientProfile(self.q, self.tail, self._a, self._b, self._w, self.window, md)

    def __repr__(self):
        return (f"CoefficientProfile(q={self.q}, window={self.window}, tail={tuple(vars(self.tail).values())}, "
                f"sites a={sorted(self._a)} b={sorted(self._b)} w={sorted(self._w)})")

    def __eq__(self, other):
        if not isinstance(other, CoefficientProfile):
            return NotImplemented
        if (self.q, self.tail) != (other.q, other.tail):
            return False
        lo = min(self.n_min, other.n_min) - 1
        hi = max(self.n_max, other.n_max) + 2
        return all(
            np.array_equal(f(self, n), f(other, n))
            for n in range(lo, hi + 1)
            for f in (CoefficientProfile.a, CoefficientProfile.b, CoefficientProfile.w)
        )

    __hash__ = None


def free_profile(q, tail=REDUCED_TAIL):
    return CoefficientProfile(q, tail)


# -- class A validation ------------------------------------------------------


@dataclass
class ValidationReport:
    """Outcome of checking the admissibility conditions item by item."""

    items: dict = field(default_factory=dict)
    classification: str = ""

    def add(self, key, passed, detail=""):
        self.items[key] = (bool(passed), detail)

    @property
    def passed(self):
        return all(ok for ok, _ in self.items.values())

    def failures(self):
        return [k for k, (ok, _) in self.items.items() if not ok]

    def lines(self):
        out = []
        for key, (ok, detail) in self.items.items():
            out.append(f"({key}) {'PASS' if ok else 'FAIL'}" + (f": {detail}" if detail else ""))
        out.append(f"classification: {self.classification}")
        return out

    def __str__(self):
        return "\n".join(self.lines())


def validate_class_A(p):
    """Check the admissibility conditions for a finitely supported profile.

    Items are (a) Hermitian ``b`` and ``w``, (b) invertible ``a`` and positive
    definite ``w``, (c) admissible tail scalars, (d) summability, which holds
    identically for finite support provided every entry is finite.
    """
    rep = ValidationReport()
    bad_h = [f"{name}({n})" for n in p.sites() for name, get in (("b", p.b), ("w", p.w))
             if not cm.is_hermitian(get(n))]
    rep.add("a", not bad_h, "non-Hermitian " + ", ".join(bad_h) if bad_h else "b(n), w(n) Hermitian")

    msgs = []
    for n in p.a_sites():
        if cm.cond(p.a(n)) == np.inf:
            msgs.append(f"a({n}) singular")
    for n in p.sites():
        if not cm.is_positive_definite(p.w(n)):
            msgs.append(f"w({n}) not positive definite")
    rep.add("b", not msgs, "; ".join(msgs) if msgs else "a(n) invertible, w(n) positive")

    t = p.tail
    finite = all(math.isfinite(x) for x in (t.a_inf, t.b_inf, t.w_inf))
    tail_ok = finite and t.w_inf > 0 and t.a_inf != 0
    rep.add("c", tail_ok, f"a_inf={t.a_inf}, b_inf={t.b_inf}, w_inf={t.w_inf}")

    entries_finite = all(
        np.all(np.isfinite(m)) for d in (p._a, p._b, p._w) for m in d.values()
    )
    rep.add("d", entries_finite, "finite support" if entries_finite else "non-finite entries")
    rep.classification = t.kind if tail_ok else "invalid tail"
    return rep


def perturbation_terms(p, n):
    """The summability data ``(P(n), Q(n))`` measuring deviation from the free system."""
    t = p.tail
    s = t.w_inf / t.a_inf
    wm = cm.hermitian_inv_sqrt(p.w(n - 1))
    wn = cm.hermitian_inv_sqrt(p.w(n))
    eye = cm.identity(p.q)
    big_p = s * wm @ p.a(n) @ wn - eye
    big_q = s * wn @ p.b(n) @ wn - (t.b_inf / t.a_inf) * eye
    return big_p, big_q


# -- reduction to the unweighted system ---------------------------------------


@dataclass(frozen=True)
class ReducedProfile:
    """Coefficients ``(a~(n), b~(n))`` of the unweighted system with tails ``(I, 0)``."""

    q: int
    window: tuple
    a_tilde_sites: dict
    b_tilde_sites: dict

    def a_tilde(self, n):
        return self.a_tilde_sites.get(n, cm.identity(self.q))

    def b_tilde(self, n):
        return self.b_tilde_sites.get(n, cm.zeros(self.q))

    def to_profile(self):
        """The reduced system as a profile with tail (1, 0, 1) and unit weight."""
        return CoefficientProfile(self.q, REDUCED_TAIL, a=self.a_tilde_sites, b=self.b_tilde_sites,
                                  window=self.window)


def reduce_profile(p):
    """Remove the weight and normalise the tails.

    ``a~(n) = (w_inf/a_inf) w(n-1)^{-1/2} a(n) w(n)^{-1/2}`` and
    ``b~(n) = (w_inf/a_inf) w(n)^{-1/2} b(n) w(n)^{-1/2} - (b_inf/a_inf) I``.
    """
    t = p.tail
    s = t.w_inf / t.a_inf
    isq = {n: cm.hermitian_inv_sqrt(p.w(n)) for n in range(p.n_min - 1, p.n_max + 2)}
    a_t = {n: s * isq[n - 1] @ p.a(n) @ isq[n] for n in p.a_sites()}
    b_t = {n: s * isq[n] @ p.b(n) @ isq[n] - (t.b_inf / t.a_inf) * cm.identity(p.q) for n in p.sites()}
    return ReducedProfile(p.q, p.window, a_t, b_t)


def reduce_solution(p, n, psi):
    """Map a solution value of the weighted system to the reduced one."""
    return cm.hermitian_sqrt(p.w(n)) @ cm.as_cmat(psi) / math.sqrt(p.tail.w_inf)


def reduce_lambda(lam, tail):
    return (tail.w_inf * lam - tail.b_inf) / tail.a_inf


# -- spectral parameter -------------------------------------------------------


def lambda_of_z(z, tail):
    """``lambda = (a_inf (z + 1/z) + b_inf) / w_inf``."""
    z = complex(z)
    if z == 0:
        raise DomainError("z must be nonzero")
    return (tail.a_inf * (z + 1 / z) + tail.b_inf) / tail.w_inf


def lambda_bounds(tail):
    """``(lambda_min, lambda_max)``: the continuous spectrum."""
    return ((-2 * abs(tail.a_inf) + tail.b_inf) / tail.w_inf,
            (2 * abs(tail.a_inf) + tail.b_inf) / tail.w_inf)


@dataclass(frozen=True)
class SpectralPoint:
    """A point ``z`` of the unit circle away from ``+-1`` and its ``lambda``."""

    z: complex
    lam: complex

    @classmethod
    def at(cls, z, tail=REDUCED_TAIL, exclusion_eps=DEFAULT_EXCLUSION_EPS):
        z = unit_z(z, exclusion_eps)
        return cls(z, lambda_of_z(z, tail))

    @property
    def conj(self):
        return SpectralPoint(self.z.conjugate(), self.lam.conjugate())

    def __complex__(self):
        return self.z


def unit_z(z, exclusion_eps=DEFAULT_EXCLUSION_EPS):
    """Validate a spectral point and return it renormalised to modulus one."""
    if isinstance(z, SpectralPoint):
        z = z.z
    z = complex(z)
    r = abs(z)
    if not abs(r - 1.0) <= UNIT_CIRCLE_TOL:
        raise DomainError(f"|z| = {r!r} is not on the unit circle")
    z = z / r
    if abs(z - 1) <= exclusion_eps or abs(z + 1) <= exclusion_eps:
        raise DomainError(f"z = {z} is within {exclusion_eps} of an exceptional point")
    return z


def make_spectral_grid(n_points, exclusion_eps=DEFAULT_EXCLUSION_EPS, tail=REDUCED_TAIL):
    """Midpoint grid on the upper and lower unit semicircles.

    ``ceil(N/2)`` points sit at angles ``pi (k + 1/2) / ceil(N/2)`` and the
    remaining ``floor(N/2)`` are their conjugates, so even ``N`` gives a grid
    closed under conjugation.  Points inside the exclusion bands around
    ``z = +-1`` are dropped.
    """
    if n_points < 1:
        raise EmptyGridError("need at least one grid point")
    n_up = (n_points + 1) // 2
    n_down = n_points - n_up
    theta = np.pi * (np.arange(n_up) + 0.5) / n_up
    upper = np.exp(1j * theta)
    zs = list(upper) + list(np.conj(upper[:n_down]))
    pts = []
    for z in zs:
        if abs(z - 1) > exclusion_eps and abs(z + 1) > exclusion_eps:
            pts.append(SpectralPoint(complex(z), lambda_of_z(z, tail)))
    if not pts:
        raise EmptyGridError(f"exclusion_eps={exclusion_eps} removes every grid point")
    return pts


# -- config files -------------------------------------------------------------


def _parse_complex(x):
    if isinstance(x, (list, tuple)):
        if len(x) != 2:
            raise ProfileError(f"complex entry must be [re, im], got {x!r}")
        return complex(float(x[0]), float(x[1]))
    if isinstance(x, (int, float)):
        return complex(x)
    raise ProfileError(f"cannot read complex number from {x!r}")


def _parse_matrix(rows, q):
    if isinstance(rows, (int, float)) and q == 1:
        return np.array([[complex(rows)]])
    try:
        m = np.array([[_parse_complex(x) for x in row] for row in rows], dtype=np.complex128)
    except TypeError as exc:
        raise ProfileError(f"malformed matrix {rows!r}") from exc
    if m.shape != (q, q):
        raise ProfileError(f"matrix has shape {m.shape}, expected {(q, q)}")
    return m


def matrix_to_json(m):
    return [[[float(x.real), float(x.imag)] for x in row] for row in cm.as_cmat(m)]


def profile_from_dict(doc):
    """Build a profile from the JSON document layout (see README)."""
    try:
        q = doc["q"]
        t = doc["tail"]
        tail = Tail(float(t["a_inf"]), float(t["b_inf"]), float(t["w_inf"]))
    except (KeyError, TypeError, ValueError) as exc:
        raise ProfileError(f"missing or malformed field: {exc}") from exc
    window = None
    if "window" in doc:
        window = (int(doc["window"]["n_min"]), int(doc["window"]["n_max"]))
    sites = {}
    for name in ("a", "b", "w"):
        sites[name] = {int(k): _parse_matrix(v, q) for k, v in (doc.get(name) or {}).items()}
    meta = {k: v for k, v in doc.items() if k not in {"q", "tail", "window", "a", "b", "w"}}
    return CoefficientProfile(q, tail, window=window, metadata=meta, **sites)


def profile_to_dict(p):
    doc = {
        "q": p.q,
        "tail": {"a_inf": p.tail.a_inf, "b_inf": p.tail.b_inf, "w_inf": p.tail.w_inf},
        "window": {"n_min": p.n_min, "n_max": p.n_max},
    }
    for name in ("a", "b", "w"):
        stored = p.stored(name)
        if stored:
            doc[name] = {str(n): matrix_to_json(m) for n, m in sorted(stored.items())}
    doc.update(p.metadata)
    return doc


def load_profile(path):
    try:
        with open(path, encoding="utf-8") as fh:
            doc = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise ProfileError(f"cannot read profile {path}: {exc}") from exc
    return profile_from_dict(doc)


def save_profile(p, path):
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(profile_to_dict(p), fh, indent=2)
        fh.write("\n")
