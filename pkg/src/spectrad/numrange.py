"""Numerical range and numerical radius machinery.

The workhorse identity: w(T) = max over theta of the largest eigenvalue of
Re(exp(i*theta) T).  A uniform angle grid locates the candidate maxima and
golden-section refinement polishes each bracket.
"""

import math
from dataclasses import dataclass

import numpy as np

from . import _kernels as kern
from . import matkernel as mk
from .errors import InvalidInputError

TWO_PI = 2.0 * math.pi
GRID_SIZE = 720
_INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0


@dataclass(frozen=True)
class Angle:
    """A rotation angle in radians, normalized into [0, 2*pi)."""

    theta: float

    def __post_init__(self):
        object.__setattr__(self, "theta", float(self.theta) % TWO_PI)


@dataclass(frozen=True)
class NumericalRadiusResult:
    """w(T), the angle achieving it, and optional boundary samples of W(T)."""

    w: float
    argmax_angle: float
    boundary_samples: list[complex] | None = None


def real_part(s):
    """(S + S*)/2, Hermitian by construction."""
    return mk.hermitize(mk.as_matrix(s))


def _g(t, theta):
    """Largest eigenvalue of Re(exp(i*theta) T) at a single angle."""
    return float(kern.realpart_top_eig_grid(t, np.array([theta]))[0])


def _golden_max(t, lo, hi, width):
    """Golden-section maximization of _g on [lo, hi] down to the given bracket width."""
    c = hi - _INV_PHI * (hi - lo)
    d = lo + _INV_PHI * (hi - lo)
    fc = _g(t, c)
    fd = _g(t, d)
    while hi - lo > width:
        if fc >= fd:
            hi, d, fd = d, c, fc
            c = hi - _INV_PHI * (hi - lo)
            fc = _g(t, c)
        else:
            lo, c, fc = c, d, fd
            d = lo + _INV_PHI * (hi - lo)
            fd = _g(t, d)
    return (c, fc) if fc >= fd else (d, fd)


# Safety valve for plateau sweeps (constant g up to roundoff makes every grid
# point a local maximum); beyond this many refinements the remaining brackets
# are within grid roundoff of the ones already polished.
MAX_REFINEMENTS = 64


def numerical_radius(t, tol=None, grid_size=GRID_SIZE, boundary_samples=None):
    """Numerical radius within tol, plus the maximizing rotation angle.

    Evaluates g(theta) = lam_max(Re(exp(i*theta) T)) on a uniform grid,
    then refines each local-maximum bracket by golden-section search until
    the bracket width is at most tol / max(1, ||T||).  Brackets are taken
    in descending order of their grid value; g is Lipschitz in theta with
    constant ||T||, so a bracket whose value cannot beat the running best
    ends the scan.

    ``boundary_samples``, when given, additionally attaches that many
    range-boundary points to the result.
    """
    m = mk.as_matrix(t)
    samples = None if boundary_samples is None else fov_boundary(m, boundary_samples)
    norm_t = float(kern.svdvals(m)[0])
    if tol is None:
        tol = 1e-10 * max(1.0, norm_t)
    if tol <= 0:
        raise InvalidInputError(f"tol must be positive, got {tol}")
    if norm_t == 0.0:
        return NumericalRadiusResult(w=0.0, argmax_angle=0.0, boundary_samples=samples)

    grid_size = int(grid_size)
    if grid_size < 4:
        raise InvalidInputError(f"grid_size must be >= 4, got {grid_size}")
    h = TWO_PI / grid_size
    thetas = np.arange(grid_size) * h
    g = kern.realpart_top_eig_grid(m, thetas)

    width = tol / max(1.0, norm_t)
    top = int(np.argmax(g))
    best_val = float(g[top])
    best_theta = float(thetas[top])
    order = np.argsort(-g, kind="stable")
    refined = 0
    for j in order:
        j = int(j)
        gj = float(g[j])
        if gj + norm_t * h <= best_val + 0.25 * tol or refined >= MAX_REFINEMENTS:
            break
        prev = float(g[(j - 1) % grid_size])
        nxt = float(g[(j + 1) % grid_size])
        if gj < prev or gj < nxt:
            continue
        theta, val = _golden_max(m, thetas[j] - h, thetas[j] + h, width)
        refined += 1
        if val > best_val:
            best_val = val
            best_theta = theta
    return NumericalRadiusResult(
        w=best_val, argmax_angle=float(best_theta % TWO_PI), boundary_samples=samples
    )


def fov_boundary(t, samples):
    """Points of W(T) whose hull approximates it from inside.

    For each angle the top eigenvector v of Re(exp(i*theta) T) is a unit
    vector maximizing the rotated real part, so v* T v lies on (or
    numerically next to) the boundary of the range.
    """
    m = mk.as_matrix(t)
    samples = int(samples)
    if samples < 3:
        raise InvalidInputError(f"samples must be >= 3, got {samples}")
    pts = []
    for k in range(samples):
        theta = TWO_PI * k / samples
        h = mk.hermitize(np.exp(1j * theta) * m)
        _, v = kern.eigh(h)
        top = v[:, -1]
        pts.append(complex(top.conj() @ m @ top))
    return pts


def peripheral_angle(t):
    """-arg(z) for a peripheral eigenvalue z (|z| = r), normalized into [0, 2*pi).

    Among peripheral eigenvalues the one with the smallest argument wins;
    the zero matrix gets angle 0.
    """
    vals = mk.eigenvalues(t)
    r = float(np.abs(vals).max())
    if r == 0.0:
        return Angle(0.0)
    peripheral = vals[np.abs(vals) >= r * (1.0 - 1e-12)]
    args = np.angle(peripheral)
    args = np.where(args < 0.0, args + TWO_PI, args)
    z = peripheral[int(np.argmin(args))]
    return Angle(-float(np.angle(z)))


def rotated_realpart_norm(t, theta):
    """Operator norm of Re(exp(i*theta) T), i.e. its largest absolute eigenvalue."""
    th = theta.theta if isinstance(theta, Angle) else float(theta)
    m = mk.as_matrix(t)
    w = kern.eigvalsh(mk.hermitize(np.exp(1j * th) * m))
    return float(max(abs(w[0]), abs(w[-1])))
