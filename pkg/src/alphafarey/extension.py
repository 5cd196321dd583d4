"""Planar natural extensions, their domains, and the translation isomorphism psi."""
from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterator

import numpy as np

from .arith import (
    AlphaFareyError,
    DomainError,
    MobiusMatrix,
    NEG_INF,
    PoleError,
    floor_exact,
    format_real,
    is_neg_inf,
    mobius_apply,
    to_exact,
    to_float,
)
from .expansions import alpha_digit, check_alpha, first_digit_of_alpha
from .farey import farey_bounds


class TagError(AlphaFareyError):
    exit_code = 2


class DivergentIntegralError(AlphaFareyError):
    exit_code = 2


# Tags
OMEGA_STAR = "OmegaStar"
UPSILON_INV = "UpsilonInv"
VFLAT_MINUS = "VFlatMinus"
VFLAT_PLUS = "VFlatPlus"
D1 = "D1"
D2 = "D2"
SHIFTED = "Shifted"


@dataclass(frozen=True)
class PlanarPoint:
    x: object
    y: object

    def __iter__(self):
        return iter((self.x, self.y))


@dataclass(frozen=True)
class TaggedPoint:
    x: object
    y: object
    tag: str
    j: int = 0  # steps to return (UpsilonInv) or digit (Shifted)

    @property
    def point(self) -> PlanarPoint:
        return PlanarPoint(self.x, self.y)

    def __str__(self):
        extra = f"({self.j})" if self.tag in (UPSILON_INV, SHIFTED) else ""
        return f"{self.tag}{extra}[{format_real(self.x)}, {format_real(self.y)}]"


def _xy(p):
    return p.x, p.y


def _shift(v, c):
    """v + c with -inf absorbing."""
    if is_neg_inf(v):
        return v
    return v + c


def _neg_inf_like(x):
    return -math.inf if isinstance(x, float) else NEG_INF


# ---------------------------------------------------------------------------
# Branch matrices (forward maps)
# ---------------------------------------------------------------------------

M_MINUS = MobiusMatrix(-1, 0, 1, 1)      # -x/(1+x)
M_PLUS = MobiusMatrix(1, 0, -1, 1)       # x/(1-x)
M_R = MobiusMatrix(-1, 1, 1, 0)          # (1-x)/x
M_MINUS2 = MobiusMatrix(-2, -1, 1, 0)    # -(1+2x)/x
M_R2 = MobiusMatrix(-2, 1, 1, 0)         # (1-2x)/x


def gauss_matrix(eps: int, b: int) -> MobiusMatrix:
    """x -> eps/x - b as a matrix."""
    return MobiusMatrix(-b, eps, 1, 0)


def _apply2(m: MobiusMatrix, x, y):
    return mobius_apply(m, x), mobius_apply(m, y)


# ---------------------------------------------------------------------------
# Cylinders of Omega*
# ---------------------------------------------------------------------------

def k0_of(alpha) -> int:
    """Smallest positive digit: 1/(k0 + alpha) <= alpha < 1/(k0 - 1 + alpha)."""
    alpha = check_alpha(alpha)
    if alpha == 1:
        return 1
    return first_digit_of_alpha(alpha)


@dataclass(frozen=True)
class CylinderRegion:
    sign: str   # "+" or "-"
    k: int
    role: str = "OmegaStarCyl"
    shift: int = 0  # for OmegaHatShifted(l)

    def __str__(self):
        return f"{self.role}({self.sign},{self.k})"


def cylinder_interval(alpha, sign: str, k: int):
    """x-range (lo, hi) of the (sign, k) cylinder, or None when empty."""
    alpha = check_alpha(alpha)
    if sign == "+":
        kk = k0_of(alpha)
        if k < kk:
            return None
        lo = 1 / (k + alpha)
        hi = alpha if k == kk else 1 / (k - 1 + alpha)
    elif sign == "-":
        if k < 2:
            return None
        lo = alpha - 1 if k == 2 else -1 / (k - 1 + alpha)
        hi = -1 / (k + alpha)
    else:
        raise DomainError(f"sign must be '+' or '-', got {sign!r}")
    return (lo, hi) if lo < hi else None


def classify_cylinder(alpha, p) -> CylinderRegion:
    """(sign, k) of the Omega* cylinder containing p (uses the digit rule)."""
    alpha = check_alpha(alpha)
    x = to_exact(p.x if hasattr(p, "x") else p)
    if x == 0:
        raise DomainError("x = 0 lies in no cylinder")
    if not (alpha - 1 <= x <= alpha):
        raise DomainError(f"x={format_real(x)} outside [alpha-1, alpha]")
    eps, b = alpha_digit(alpha, x)
    return CylinderRegion("+" if eps > 0 else "-", b)


# ---------------------------------------------------------------------------
# Planar maps
# ---------------------------------------------------------------------------

def ghat_star_matrix(alpha, x) -> MobiusMatrix:
    eps, b = alpha_digit(alpha, x)
    return gauss_matrix(eps, b)


def ghat_star_step(alpha, p) -> PlanarPoint:
    """The planar map (eps/x - b, eps/y - b) on Omega*."""
    alpha = check_alpha(alpha)
    x, y = _xy(p)
    x = to_exact(x)
    if x == 0:
        raise DomainError("ghat_star_step is undefined at x = 0")
    if not (alpha - 1 <= x <= alpha):
        raise DomainError(f"x={format_real(x)} outside [alpha-1, alpha]")
    if not is_neg_inf(y) and y == 0:
        raise PoleError("y = 0 is a pole")
    m = ghat_star_matrix(alpha, x)
    return PlanarPoint(*_apply2(m, x, y))


def fhat_alpha_matrix(alpha, x) -> MobiusMatrix:
    lo, mid, hi = farey_bounds(alpha)
    if not (lo <= x <= hi):
        raise DomainError(f"x={format_real(x)} outside [alpha-1, 1/alpha]")
    if x < 0:
        return M_MINUS
    if x <= mid:
        return M_PLUS
    return M_R


def fhat_alpha_step(alpha, p) -> PlanarPoint:
    """Simultaneous slow Farey action on both coordinates."""
    alpha = check_alpha(alpha)
    x, y = to_exact(p.x), p.y
    return PlanarPoint(*_apply2(fhat_alpha_matrix(alpha, x), x, y))


def fhat_flat_branch(alpha, x, tag: str | None = None) -> tuple[int, MobiusMatrix]:
    """(branch number 1..5, matrix) of the accelerated planar map.

    At x = 0 a VFlatMinus tag selects the negative branch.
    """
    lo, mid, _ = farey_bounds(alpha)
    if not (lo <= x <= 1):
        raise DomainError(f"x={format_real(x)} outside [alpha-1, 1]")
    if alpha == 1:
        if 2 * x < 1:
            return 3, M_PLUS
        return 5, M_R
    if x < 0 or (x == 0 and tag == VFLAT_MINUS):
        if 2 * alpha < 1 and 2 * x < -1:
            return 1, M_MINUS2
        return 2, M_MINUS
    if 2 * x < 1:
        return 3, M_PLUS
    if x <= mid:
        return 4, M_R2
    return 5, M_R


def fhat_flat_step(alpha, p) -> TaggedPoint:
    """One step of the accelerated planar map; the result carries its side tag."""
    alpha = check_alpha(alpha)
    x = to_exact(p.x)
    tag = getattr(p, "tag", None)
    br, m = fhat_flat_branch(alpha, x, tag)
    nx, ny = _apply2(m, x, p.y)
    return TaggedPoint(nx, ny, VFLAT_MINUS if br in (1, 4) else VFLAT_PLUS)


def fhat_one_step(p) -> PlanarPoint:
    """The Farey natural extension on V_1 = [0,1] x [-inf, 0]."""
    x = to_exact(p.x)
    if not (0 <= x <= 1):
        raise DomainError(f"x={format_real(x)} outside [0, 1]")
    m = M_PLUS if 2 * x < 1 else M_R
    return PlanarPoint(*_apply2(m, x, p.y))


# ---------------------------------------------------------------------------
# psi and the conjugacy
# ---------------------------------------------------------------------------

def psi_forward(p: TaggedPoint) -> TaggedPoint:
    if p.tag == D1:
        return TaggedPoint(_shift(p.x, -1), _shift(p.y, -1), VFLAT_MINUS)
    if p.tag == D2:
        return TaggedPoint(p.x, p.y, VFLAT_PLUS)
    raise TagError(f"psi_forward needs a D1/D2 tag, got {p.tag}")


def psi_inverse(p: TaggedPoint) -> TaggedPoint:
    if p.tag == VFLAT_MINUS:
        return TaggedPoint(_shift(p.x, 1), _shift(p.y, 1), D1)
    if p.tag == VFLAT_PLUS:
        return TaggedPoint(p.x, p.y, D2)
    raise TagError(f"psi_inverse needs a VFlatMinus/VFlatPlus tag, got {p.tag}")


def _coord_gap(a, b):
    if is_neg_inf(a) or is_neg_inf(b):
        return Fraction(0) if (is_neg_inf(a) and is_neg_inf(b)) else math.inf
    return abs(a - b)


def conjugacy_residual(alpha, p: TaggedPoint):
    """max-coordinate gap between psi^-1 F_flat psi (p) and F(p); 0 on valid orbits."""
    alpha = check_alpha(alpha)
    if p.tag not in (D1, D2):
        raise TagError(f"conjugacy_residual needs a D1/D2 tag, got {p.tag}")
    lhs = psi_inverse(fhat_flat_step(alpha, psi_forward(p)))
    rhs = fhat_one_step(p)
    return max(_coord_gap(lhs.x, rhs.x), _coord_gap(lhs.y, rhs.y))


def density_ratio(m: MobiusMatrix, x, y):
    """Pull-back of dx dy/(x - y)^2 under (M, M); equals 1 when det = +-1."""
    x, y = to_exact(x), to_exact(y)
    if x == y:
        raise DomainError("density is singular on the diagonal")
    cx, cy = m.a21 * x + m.a22, m.a21 * y + m.a22
    if cx == 0 or cy == 0:
        raise PoleError(f"pole of {m}")
    det = m.det
    jac = (det / (cx * cx)) * (det / (cy * cy))
    nx, ny = mobius_apply(m, x), mobius_apply(m, y)
    return abs(jac) * (x - y) ** 2 / (nx - ny) ** 2


def branch_matrices(alpha) -> dict[str, list[MobiusMatrix]]:
    """Every branch matrix of the three planar maps (Gauss digits up to 12)."""
    gauss = [gauss_matrix(e, b) for e in (1, -1) for b in range(1, 13)]
    return {
        "ghat_star": gauss,
        "fhat_alpha": [M_MINUS, M_PLUS, M_R],
        "fhat_flat": [M_MINUS2, M_MINUS, M_PLUS, M_R2, M_R],
    }


# ---------------------------------------------------------------------------
# Tagged orbits (exact)
# ---------------------------------------------------------------------------

def fhat_alpha_orbit(alpha, x, n: int, y=NEG_INF) -> list[TaggedPoint]:
    """n+1 points of the slow planar orbit of (x, y) in Omega*, tagged by
    OmegaStar or UpsilonInv(j) with j the steps left until Omega* again."""
    alpha = check_alpha(alpha)
    x = to_exact(x)
    if not (alpha - 1 <= x <= alpha):
        raise DomainError("start must lie in Omega*")
    out = [TaggedPoint(x, y, OMEGA_STAR)]
    left = 0
    for _ in range(n):
        cur = out[-1]
        if cur.tag == OMEGA_STAR:
            left = alpha_digit(alpha, cur.x)[1] if cur.x != 0 else 1
        nxt = fhat_alpha_step(alpha, cur)
        left -= 1
        out.append(TaggedPoint(nxt.x, nxt.y, OMEGA_STAR if left == 0 else UPSILON_INV, left))
    return out


def flat_orbit(alpha, x, n: int, y=NEG_INF) -> list[TaggedPoint]:
    """n+1 points of the accelerated planar orbit, tagged by side."""
    alpha = check_alpha(alpha)
    x = to_exact(x)
    p = TaggedPoint(x, y, VFLAT_MINUS if x < 0 else VFLAT_PLUS)
    out = [p]
    for _ in range(n):
        p = fhat_flat_step(alpha, p)
        out.append(p)
    return out


def v1_orbit(alpha, x, n: int, y=NEG_INF) -> list[TaggedPoint]:
    """The accelerated orbit pulled back to V_1 by psi^-1 (D1/D2 tags)."""
    return [psi_inverse(p) for p in flat_orbit(alpha, x, n, y)]


# ---------------------------------------------------------------------------
# Induced maps flat1 and flat2
# ---------------------------------------------------------------------------

def flat1_step(alpha, p: TaggedPoint) -> TaggedPoint:
    """First return of the accelerated planar map to V_flat1 = V_flat and y <= -1."""
    alpha = check_alpha(alpha)
    x, y = p.x, p.y
    if p.tag == SHIFTED:
        c = p.j - 1
        inv_y = 0 if is_neg_inf(y) else 1 / y
        return TaggedPoint(1 / x - c, inv_y - c, OMEGA_STAR)
    if p.tag != OMEGA_STAR:
        raise TagError(f"flat1_step needs OmegaStar or Shifted, got {p.tag}")
    if x == 0:
        raise DomainError("flat1_step is undefined at x = 0")
    eps, b = alpha_digit(alpha, x)
    if eps < 0 and 2 * x >= -1:
        nx, ny = _apply2(M_MINUS, x, y)
        return TaggedPoint(nx, ny, SHIFTED, b)
    nx, ny = _apply2(gauss_matrix(eps, b), x, y)
    return TaggedPoint(nx, ny, OMEGA_STAR)


def in_vflat2(p: TaggedPoint) -> bool:
    if p.tag == SHIFTED:
        return True
    if p.x >= 0:
        return True
    return is_neg_inf(p.y) or p.y <= -2


def flat2_step(alpha, p: TaggedPoint, limit: int = 10_000) -> tuple[TaggedPoint, int]:
    """First return of flat1 to V_flat2; returns (point, return time)."""
    if not in_vflat2(p):
        raise DomainError("flat2_step needs a point of V_flat2")
    q = p
    for t in range(1, limit + 1):
        q = flat1_step(alpha, q)
        if in_vflat2(q):
            return q, t
    raise DomainError("no return to V_flat2 within limit")


def flat1_orbit(alpha, x, n: int, y=NEG_INF) -> list[TaggedPoint]:
    alpha = check_alpha(alpha)
    p = TaggedPoint(to_exact(x) if not isinstance(x, float) else x, y, OMEGA_STAR)
    out = [p]
    for _ in range(n):
        if p.x == 0:
            break
        p = flat1_step(alpha, p)
        out.append(p)
    return out


def vflat2_to_w(p: TaggedPoint) -> TaggedPoint:
    """psi^-1 restricted to V_flat2: (x+1, y+1) on the negative part."""
    if p.x < 0:
        return TaggedPoint(_shift(p.x, 1), _shift(p.y, 1), D1)
    return TaggedPoint(p.x, p.y, D2)


def gauss_planar_step(p) -> PlanarPoint:
    """The Gauss natural extension on W = [0,1] x [-inf, -1]."""
    x = to_exact(p.x)
    if not (0 < x <= 1):
        raise DomainError("need 0 < x <= 1")
    b = floor_exact(1 / x)
    return PlanarPoint(*_apply2(gauss_matrix(1, b), x, p.y))


# ---------------------------------------------------------------------------
# Float clouds
# ---------------------------------------------------------------------------

SYSTEMS = ("omega-star", "v", "vflat")


@dataclass
class DomainCloud:
    alpha: object
    system: str
    xs: np.ndarray
    ys: np.ndarray
    tags: list[str]
    seed: int
    orbit_length: int

    def __len__(self):
        return len(self.xs)

    def xw(self) -> np.ndarray:
        """Points in (x, -1/y) coordinates."""
        with np.errstate(divide="ignore"):
            w = np.where(np.isinf(self.ys), 0.0, -1.0 / self.ys)
        return np.column_stack([self.xs, w])

    def header(self) -> dict:
        return {"alpha": format_real(self.alpha), "system": self.system,
                "seed": self.seed, "orbit_length": self.orbit_length, "points": len(self)}

    def to_csv(self, header: dict | None = None) -> str:
        buf = io.StringIO()
        for k, v in {**(header or {}), **self.header()}.items():
            buf.write(f"# {k}: {v}\n")
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["x", "y", "tag"])
        for x, y, t in zip(self.xs, self.ys, self.tags):
            w.writerow([repr(float(x)), repr(float(y)), t])
        return buf.getvalue()

    def to_json(self, header: dict | None = None) -> str:
        return json.dumps({**(header or {}), **self.header(),
                           "x": [float(v) for v in self.xs],
                           "y": [None if math.isinf(v) else float(v) for v in self.ys],
                           "tag": self.tags})


def _float_digit(alpha: float, x: float) -> tuple[int, int]:
    inv = 1.0 / x
    if inv < 0:
        return -1, math.floor(1.0 - alpha - inv)
    return 1, math.floor(inv + 1.0 - alpha)


def _act(m: MobiusMatrix, v: float) -> float:
    if v == -math.inf:
        return m.a11 / m.a21 if m.a21 else v
    den = m.a21 * v + m.a22
    if den == 0:
        return -math.inf
    return (m.a11 * v + m.a12) / den


def _cloud_step(system: str, a: float, x: float, y: float, tag: str, left: int):
    mid, hi = 1.0 / (1.0 + a), 1.0 / a
    if system == "omega-star":
        eps, b = _float_digit(a, x)
        m = gauss_matrix(eps, b)
        return _act(m, x), _act(m, y), OMEGA_STAR, 0
    if system == "v":
        if tag == OMEGA_STAR:
            left = _float_digit(a, x)[1]
        m = M_MINUS if x < 0 else (M_PLUS if x <= mid else M_R)
        left -= 1
        return _act(m, x), _act(m, y), (OMEGA_STAR if left == 0 else UPSILON_INV), left
    # vflat
    if a == 1.0:
        m, br = (M_PLUS, 3) if x < 0.5 else (M_R, 5)
    elif x < 0:
        m, br = (M_MINUS2, 1) if (a < 0.5 and x < -0.5) else (M_MINUS, 2)
    elif x < 0.5:
        m, br = M_PLUS, 3
    elif x <= mid:
        m, br = M_R2, 4
    else:
        m, br = M_R, 5
    return _act(m, x), _act(m, y), (VFLAT_MINUS if br in (1, 4) else VFLAT_PLUS), 0


def sample_domain(alpha, system: str, n_points: int, seed: int = 0,
                  orbit_length: int = 1000, burn_in: int = 60) -> DomainCloud:
    """Seeded float orbit cloud of a planar map; restarts every orbit_length points."""
    alpha = check_alpha(alpha)
    if system not in SYSTEMS:
        raise DomainError(f"unknown system {system!r}; choose from {SYSTEMS}")
    if n_points < 0:
        raise DomainError("n_points must be >= 0")
    a = to_float(alpha)
    rng = np.random.default_rng(seed)
    xs, ys, tags = [], [], []
    while len(xs) < n_points:
        x = float(rng.uniform(a - 1.0, a))
        y, tag, left = -math.inf, (VFLAT_MINUS if x < 0 else VFLAT_PLUS) if system == "vflat" else OMEGA_STAR, 0
        if system == "omega-star":
            tag = OMEGA_STAR
        steps = 0
        while steps < burn_in + orbit_length and len(xs) < n_points:
            if x == 0.0:
                break
            x, y, tag, left = _cloud_step(system, a, x, y, tag, left)
            steps += 1
            if steps > burn_in:
                xs.append(x)
                ys.append(y)
                tags.append(tag)
    return DomainCloud(alpha, system, np.array(xs, dtype=float), np.array(ys, dtype=float),
                       tags, seed, orbit_length)


def cloud_components(points: np.ndarray, gap: float, resolution: float = 0.01) -> tuple[int, np.ndarray]:
    """Connected components of a 2-d cloud where points closer than gap are joined.

    The cloud is first thinned to one representative per resolution cell.
    Returns (count, per-representative labels).
    """
    from scipy.sparse import coo_matrix
    from scipy.sparse.csgraph import connected_components
    from scipy.spatial import cKDTree

    if len(points) == 0:
        return 0, np.zeros(0, dtype=int)
    reps = np.unique(np.round(np.asarray(points) / resolution).astype(np.int64), axis=0) * resolution
    pairs = cKDTree(reps).query_pairs(gap, output_type="ndarray")
    n = len(reps)
    graph = coo_matrix((np.ones(len(pairs)), (pairs[:, 0], pairs[:, 1])), shape=(n, n))
    return connected_components(graph, directed=False)


# ---------------------------------------------------------------------------
# Measure estimates
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Box:
    """[x0, x1] x [y0, y1]; y0 may be -inf."""
    x0: float
    x1: float
    y0: float
    y1: float

    def w_range(self) -> tuple[float, float]:
        w0 = 0.0 if math.isinf(self.y0) else -1.0 / self.y0
        return w0, -1.0 / self.y1


def _density_xw(x, w):
    return 1.0 / (1.0 + x * w) ** 2


@dataclass(frozen=True)
class MeasureResult:
    value: float
    stderr: float

    def to_dict(self) -> dict:
        return {"value": self.value, "stderr": self.stderr}


def measure_estimate(box: Box, region: Callable | None = None, n_samples: int = 100_000,
                     seed: int = 0, method: str = "mc") -> MeasureResult:
    """Integral of dx dy/(x-y)^2 over region within box (y <= y1 < 0 <= x or similar).

    Works in (x, w = -1/y) where the density becomes dx dw/(1 + x w)^2.
    method 'quad' integrates the whole box; 'mc' samples the region predicate,
    which receives numpy arrays (x, y).
    """
    if not (box.x0 <= box.x1 and box.y0 <= box.y1):
        raise DomainError("empty or inverted box")
    if box.y1 >= 0:
        raise DomainError("box must lie in y < 0")
    if max(box.x0, box.y0) <= min(box.x1, box.y1):
        raise DivergentIntegralError("box touches the diagonal x = y")
    w0, w1 = box.w_range()
    if box.x0 == box.x1 or w0 == w1:
        return MeasureResult(0.0, 0.0)
    if method == "quad":
        if region is not None:
            raise DomainError("quadrature supports full boxes only")
        from scipy.integrate import dblquad
        val, err = dblquad(lambda w, x: _density_xw(x, w), box.x0, box.x1, w0, w1)
        return MeasureResult(float(val), float(err))
    if method != "mc":
        raise DomainError(f"unknown method {method!r}")
    if n_samples < 1:
        raise DomainError("n_samples must be >= 1")
    rng = np.random.default_rng(seed)
    x = rng.uniform(box.x0, box.x1, n_samples)
    w = rng.uniform(w0, w1, n_samples)
    f = _density_xw(x, w)
    if region is not None:
        with np.errstate(divide="ignore"):
            y = np.where(w == 0, -np.inf, -1.0 / w)
        f = f * np.asarray(region(x, y), dtype=float)
    area = (box.x1 - box.x0) * (w1 - w0)
    return MeasureResult(float(area * f.mean()), float(area * f.std(ddof=1) / math.sqrt(n_samples)))


class CloudRegion:
    """Occupancy-grid approximation of a cloud closure in (x, w) coordinates."""

    def __init__(self, cloud: DomainCloud, resolution: float = 0.005):
        self.h = resolution
        xw = cloud.xw()
        cells = np.floor(xw / resolution).astype(np.int64)
        self.cells = {tuple(c) for c in np.unique(cells, axis=0)}
        lo, hi = xw.min(axis=0), xw.max(axis=0)
        self.box = Box(float(lo[0]), float(hi[0]) + resolution,
                       -math.inf if lo[1] <= 0 else -1.0 / lo[1],
                       -1.0 / (hi[1] + resolution))

    def __call__(self, x, y):
        with np.errstate(divide="ignore"):
            w = np.where(np.isinf(y), 0.0, -1.0 / y)
        ci = np.floor(np.asarray(x) / self.h).astype(np.int64)
        cj = np.floor(w / self.h).astype(np.int64)
        return np.fromiter(((i, j) in self.cells for i, j in zip(ci, cj)), dtype=bool, count=len(ci))


# ---------------------------------------------------------------------------
# SVG
# ---------------------------------------------------------------------------

def landmarks_for(alpha) -> dict[str, list[tuple[str, float]]]:
    """Axis landmarks used in the figures for alpha = sqrt2 - 1."""
    r2, r5 = math.sqrt(2), math.sqrt(5)
    return {
        "x": [("sqrt2-2", r2 - 2), ("(sqrt2-2)/2", (r2 - 2) / 2), ("0", 0.0),
              ("sqrt2-1", r2 - 1), ("sqrt2/2", r2 / 2), ("1", 1.0)],
        "y": [("-1", -1.0), ("-(sqrt5-1)/2", -(r5 - 1) / 2), ("-(sqrt5+1)/2", -(r5 + 1) / 2),
              ("-2", -2.0), ("-(sqrt5+3)/2", -(r5 + 3) / 2)],
    }


def cloud_svg(cloud: DomainCloud, window: tuple[float, float, float, float] | None = None,
              landmarks: dict | None = None, size: int = 600, header: dict | None = None) -> str:
    """Static scatter of a cloud with y clipped to the window (x0, x1, y0, y1)."""
    a = to_float(cloud.alpha)
    x0, x1, y0, y1 = window or (a - 1.0, 1.0 / a if cloud.system == "v" else max(a, 1.0), -5.0, 0.0)
    pad = 50
    sx = (size - 2 * pad) / (x1 - x0)
    sy = (size - 2 * pad) / (y1 - y0)

    def px(x):
        return pad + (x - x0) * sx

    def py(y):
        return size - pad - (y - y0) * sy

    out = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}">']
    for k, v in {**(header or {}), **cloud.header()}.items():
        out.append(f"<!-- {k}: {v} -->")
    out.append(f'<rect x="{pad}" y="{pad}" width="{size - 2 * pad}" height="{size - 2 * pad}" '
               'fill="none" stroke="black"/>')
    colours = {OMEGA_STAR: "#3050c0", UPSILON_INV: "#c03030", VFLAT_MINUS: "#3050c0",
               VFLAT_PLUS: "#c03030"}
    for x, y, t in zip(cloud.xs, cloud.ys, cloud.tags):
        if x0 <= x <= x1 and y0 <= y <= y1:
            out.append(f'<circle cx="{px(x):.2f}" cy="{py(y):.2f}" r="0.6" fill="{colours.get(t, "black")}"/>')
    marks = landmarks if landmarks is not None else landmarks_for(cloud.alpha)
    for label, v in marks.get("x", []):
        if x0 <= v <= x1:
            out.append(f'<line x1="{px(v):.2f}" y1="{size - pad}" x2="{px(v):.2f}" y2="{size - pad + 6}" stroke="black"/>')
            out.append(f'<text x="{px(v):.2f}" y="{size - pad + 18}" font-size="9" text-anchor="middle">{label}</text>')
    for label, v in marks.get("y", []):
        if y0 <= v <= y1:
            out.append(f'<line x1="{pad - 6}" y1="{py(v):.2f}" x2="{pad}" y2="{py(v):.2f}" stroke="black"/>')
            out.append(f'<text x="{pad - 8}" y="{py(v) + 3:.2f}" font-size="9" text-anchor="end">{label}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"
