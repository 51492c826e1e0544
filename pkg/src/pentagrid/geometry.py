"""Isometries of the Poincaré disc and the geometric layout of the pentagrid.

Points of the disc are Python complex numbers.  An even isometry is a
fractional-linear map ``z -> (a z + b) / (c z + d)`` with unit determinant
that preserves the unit disc; an odd one first conjugates ``z`` and then
applies such a map.  Every tile of a ball is placed by an even isometry that
carries the base pentagon onto it, side ``j`` onto side ``j``.
"""

from __future__ import annotations

import cmath
import enum
import math
from dataclasses import dataclass
from typing import Iterable, Mapping, Optional, Sequence

from .grid import CENTER, Ball, Tile

GEOM_TOL = 1e-9
ALG_TOL = 1e-12


class GeometryError(ValueError):
    """Raised on numerically degenerate input."""


# -- h-lines -------------------------------------------------------------------

@dataclass(frozen=True)
class HLine:
    """A hyperbolic line: a diameter (``center is None``) or an orthogonal circle.

    For a diameter ``direction`` is a unit complex number along it.  For a
    circle, ``center`` and ``radius`` satisfy ``|center|**2 == 1 + radius**2``.
    """

    center: Optional[complex] = None
    radius: float = 0.0
    direction: complex = 1.0

    @classmethod
    def diameter(cls, angle: float) -> "HLine":
        return cls(direction=cmath.exp(1j * angle))

    @classmethod
    def circle(cls, center: complex) -> "HLine":
        r2 = abs(center) ** 2 - 1.0
        if r2 <= 0:
            raise GeometryError("an orthogonal circle needs its centre outside the unit disc")
        return cls(center=complex(center), radius=math.sqrt(r2))

    @classmethod
    def through(cls, z1: complex, z2: complex, tol: float = GEOM_TOL) -> "HLine":
        """The h-line through two distinct points of the closed disc."""
        if abs(z1 - z2) < tol:
            raise GeometryError("points coincide")
        cross = (z1.conjugate() * z2).imag
        if abs(cross) < tol * max(abs(z1), abs(z2), 1.0):
            w = z1 if abs(z1) > abs(z2) else z2
            return cls(direction=w / abs(w))
        # centre solves Re(conj(w) * Omega) = (|w|^2 + 1) / 2 for w = z1, z2
        r1 = (abs(z1) ** 2 + 1) / 2
        r2 = (abs(z2) ** 2 + 1) / 2
        det = z1.real * z2.imag - z1.imag * z2.real
        x = (r1 * z2.imag - r2 * z1.imag) / det
        y = (z1.real * r2 - z2.real * r1) / det
        return cls.circle(complex(x, y))

    @property
    def is_diameter(self) -> bool:
        return self.center is None

    def endpoints(self) -> tuple[complex, complex]:
        """The two ideal points of the line on the unit circle."""
        if self.center is None:
            return self.direction, -self.direction
        omega = self.center
        u = omega / abs(omega)
        half = math.atan(self.radius)
        return u * cmath.exp(1j * half), u * cmath.exp(-1j * half)

    def distance_to(self, z: complex) -> float:
        """Euclidean distance from z to the supporting line or circle."""
        if self.center is None:
            return abs((self.direction.conjugate() * z).imag)
        return abs(abs(z - self.center) - self.radius)

    def contains(self, z: complex, tol: float = GEOM_TOL) -> bool:
        return self.distance_to(z) < tol

    def side(self, z: complex) -> float:
        """Signed value whose sign tells on which side of the line z lies."""
        if self.center is None:
            return (self.direction.conjugate() * z).imag
        return abs(z - self.center) - self.radius


# -- isometries ----------------------------------------------------------------

@dataclass(frozen=True)
class Isometry:
    a: complex = 1
    b: complex = 0
    c: complex = 0
    d: complex = 1
    odd: bool = False

    @staticmethod
    def identity() -> "Isometry":
        return Isometry()

    @classmethod
    def _normalized(cls, a, b, c, d, odd) -> "Isometry":
        det = a * d - b * c
        s = cmath.sqrt(det)
        return cls(a / s, b / s, c / s, d / s, odd)

    def __call__(self, z: complex) -> complex:
        w = z.conjugate() if self.odd else z
        return (self.a * w + self.b) / (self.c * w + self.d)

    def apply(self, points: Iterable[complex]) -> list[complex]:
        return [self(z) for z in points]

    def __matmul__(self, other: "Isometry") -> "Isometry":
        """Composition: ``(g @ h)(z) == g(h(z))``."""
        a2, b2, c2, d2 = other.a, other.b, other.c, other.d
        if self.odd:
            a2, b2, c2, d2 = a2.conjugate(), b2.conjugate(), c2.conjugate(), d2.conjugate()
        return Isometry._normalized(
            self.a * a2 + self.b * c2,
            self.a * b2 + self.b * d2,
            self.c * a2 + self.d * c2,
            self.c * b2 + self.d * d2,
            self.odd != other.odd,
        )

    def inverse(self) -> "Isometry":
        a, b, c, d = self.d, -self.b, -self.c, self.a
        if self.odd:
            # g = M o conj, so g^-1 = conj o M^-1 = conj(M^-1) o conj
            a, b, c, d = a.conjugate(), b.conjugate(), c.conjugate(), d.conjugate()
        return Isometry._normalized(a, b, c, d, self.odd)

    @property
    def orientation(self) -> str:
        return "odd" if self.odd else "even"

    def trace(self) -> complex:
        return self.a + self.d

    def close_to(self, other: "Isometry", samples: Sequence[complex] = (0, 0.5, 0.3j, -0.4 + 0.2j),
                 tol: float = GEOM_TOL) -> bool:
        return self.odd == other.odd and all(abs(self(z) - other(z)) < tol for z in samples)


def hdist(z: complex, w: complex) -> float:
    """Hyperbolic distance in the disc (curvature -1)."""
    num = abs(z - w)
    den = abs(1 - z.conjugate() * w)
    return 2.0 * math.atanh(min(num / den, 1.0))


def reflect(line: HLine) -> Isometry:
    """The reflection in an h-line."""
    if line.center is None:
        u = line.direction
        return Isometry(u, 0, 0, u.conjugate(), odd=True)
    omega = line.center
    # inversion z -> omega + R^2 / (conj z - conj omega)
    return Isometry._normalized(omega, -1, 1, -omega.conjugate(), True)


def rotation(angle: float, center: complex = 0) -> Isometry:
    spin = Isometry(cmath.exp(0.5j * angle), 0, 0, cmath.exp(-0.5j * angle))
    if center == 0:
        return spin
    move = translation_to(center)
    return move @ spin @ move.inverse()


def translation_to(p: complex) -> Isometry:
    """The shift along the diameter through p carrying 0 onto p."""
    if abs(p) >= 1:
        raise GeometryError("point must lie inside the disc")
    return Isometry._normalized(1, p, p.conjugate(), 1, False)


def hmidpoint(z: complex, w: complex) -> complex:
    to_z = translation_to(z)
    m = to_z.inverse()(w)
    if abs(m) < ALG_TOL:
        return z
    return to_z(m / abs(m) * math.tanh(math.atanh(abs(m)) / 2))


def push_direction(g: Isometry, z: complex, v: complex) -> complex:
    """Image under g of the unit tangent direction v at z."""
    if g.odd:
        z, v = z.conjugate(), v.conjugate()
    w = v / (g.c * z + g.d) ** 2
    return w / abs(w)


def tangent_direction(p: complex, q: complex) -> complex:
    """Unit tangent at p of the h-line from p toward q."""
    to_p = translation_to(p)
    q0 = to_p.inverse()(q)
    return push_direction(to_p, 0, q0 / abs(q0))


def perpendicular_bisector(p: complex, q: complex) -> HLine:
    m = hmidpoint(p, q)
    to_m = translation_to(m)
    u = to_m.inverse()(q)
    u /= abs(u)
    return HLine.through(to_m(0.5j * u), to_m(-0.5j * u))


def shift_along(p: complex, q: complex) -> Isometry:
    """The shift along the h-line pq that carries p onto q."""
    to_p = translation_to(p)
    q0 = to_p.inverse()(q)
    return to_p @ translation_to(q0) @ to_p.inverse()


# -- classification ------------------------------------------------------------

class MotionKind(str, enum.Enum):
    IDENTITY = "identity"
    ROTATION = "rotation"
    IDEAL_ROTATION = "ideal_rotation"
    SHIFT = "shift"
    REFLECTION = "reflection"
    GLIDE = "glide"


@dataclass(frozen=True)
class MotionClass:
    kind: MotionKind
    center: Optional[complex] = None
    angle: Optional[float] = None
    axis: Optional[HLine] = None
    length: Optional[float] = None

    def __str__(self) -> str:
        return self.kind.value


def _fixed_points(g: Isometry) -> list[complex]:
    # c z^2 + (d - a) z - b = 0
    a, b, c, d = g.a, g.b, g.c, g.d
    if abs(c) < ALG_TOL:
        return [b / (d - a)] if abs(d - a) > ALG_TOL else []
    disc = cmath.sqrt((d - a) ** 2 + 4 * b * c)
    return [((a - d) + disc) / (2 * c), ((a - d) - disc) / (2 * c)]


def classify(g: Isometry, tol: float = GEOM_TOL) -> MotionClass:
    """Identify the type of an isometry and its witness data."""
    if g.odd:
        sq = g @ g
        if sq.close_to(Isometry.identity(), tol=tol):
            return MotionClass(MotionKind.REFLECTION, axis=_reflection_axis(g))
        inner = classify(sq, tol)
        if inner.kind is not MotionKind.SHIFT:
            raise GeometryError(f"odd isometry whose square is a {inner.kind.value}")
        return MotionClass(MotionKind.GLIDE, axis=inner.axis, length=inner.length / 2)
    tr = abs(g.trace().real)
    if abs(g.trace().imag) > 1e-6:
        raise GeometryError("matrix is not a disc isometry")
    if abs(tr - 2) < tol:
        if g.close_to(Isometry.identity(), tol=tol):
            return MotionClass(MotionKind.IDENTITY)
        return MotionClass(MotionKind.IDEAL_ROTATION, center=_fixed_points(g)[0])
    fixed = _fixed_points(g)
    if tr < 2:
        center = min(fixed, key=abs)
        deriv = 1 / (g.c * center + g.d) ** 2
        return MotionClass(MotionKind.ROTATION, center=center, angle=cmath.phase(deriv))
    e1, e2 = fixed
    return MotionClass(
        MotionKind.SHIFT,
        axis=HLine.through(e1 / abs(e1), e2 / abs(e2)),
        length=2 * math.acosh(tr / 2),
    )


def _reflection_axis(g: Isometry) -> HLine:
    # a reflection matrix is proportional to [[omega, -1], [1, -conj(omega)]]
    # for a circle, or to diag(u, conj(u)) for a diameter
    if abs(g.c) > ALG_TOL:
        return HLine.circle(g.a / g.c)
    u = cmath.sqrt(g.a / g.d)
    return HLine(direction=u / abs(u))


# -- base polygon --------------------------------------------------------------

@dataclass(frozen=True)
class RegularPolygon:
    p: int
    q: int
    vertices: tuple[complex, ...]
    cosh_circumradius: float
    cosh_inradius: float

    @property
    def vertex_radius(self) -> float:
        return abs(self.vertices[0])

    def side_line(self, j: int) -> HLine:
        """Side j (1-based) runs from vertex j-1 to vertex j."""
        return HLine.through(self.vertices[(j - 1) % self.p], self.vertices[j % self.p])

    def side_midpoint(self, j: int) -> complex:
        v1, v2 = self.vertices[(j - 1) % self.p], self.vertices[j % self.p]
        return hmidpoint(v1, v2)

    def contains(self, z: complex, tol: float = 0.0) -> bool:
        """True when z lies strictly inside (by more than tol)."""
        for j in range(1, self.p + 1):
            line = self.side_line(j)
            if line.side(z) * line.side(0) <= 0 or abs(line.side(z)) <= tol:
                return False
        return True


def base_polygon(p: int, q: int) -> RegularPolygon:
    """Regular p-gon with interior angle 2*pi/q centred at 0, a vertex on the positive x-axis."""
    if p < 3 or q < 3:
        raise ValueError("p and q must both be at least 3")
    if 1 / p + 1 / q >= 1 / 2:
        raise ValueError(
            f"{{{p},{q}}} is not hyperbolic: the condition 1/p + 1/q < 1/2 fails"
        )
    # right triangle centre / edge midpoint / vertex with angles pi/p, pi/2, pi/q
    cosh_circ = 1 / (math.tan(math.pi / p) * math.tan(math.pi / q))
    cosh_in = math.cos(math.pi / q) / math.sin(math.pi / p)
    r = math.tanh(math.acosh(cosh_circ) / 2)
    verts = tuple(r * cmath.exp(2j * math.pi * k / p) for k in range(p))
    return RegularPolygon(p, q, verts, cosh_circ, cosh_in)


PENTAGON = base_polygon(5, 4)


def _son_maps(poly: RegularPolygon) -> tuple[Isometry, ...]:
    # P_k carries the base tile onto its neighbour across side k, side 1 onto side k
    out = []
    for k in range(1, poly.p + 1):
        mirror = Isometry(cmath.exp(1j * math.pi * k / poly.p), 0, 0,
                          cmath.exp(-1j * math.pi * k / poly.p), odd=True)
        out.append(reflect(poly.side_line(k)) @ mirror)
    return tuple(out)


_PENTA_SONS = _son_maps(PENTAGON)


def neighbor_map(k: int) -> Isometry:
    """Even isometry placing the tile across side k (1-based) of the base pentagon."""
    return _PENTA_SONS[k - 1]


# -- layout --------------------------------------------------------------------

def layout(b: Ball) -> dict[Tile, Isometry]:
    """Place every tile of the ball, each from its father across the shared side."""
    out = {CENTER: Isometry.identity()}
    for t in b.tiles:
        if t.is_center:
            continue
        up = b.neighbors(t)[0]
        k = b.side_toward(up, t) + 1
        g = out[up] @ _PENTA_SONS[k - 1]
        # the placed tile's side 1 must face the father
        out[t] = g
    return out


def tile_vertices(g: Isometry, poly: RegularPolygon = PENTAGON) -> list[complex]:
    return g.apply(poly.vertices)


def side_midpoints(g: Isometry, poly: RegularPolygon = PENTAGON) -> list[complex]:
    return [g(poly.side_midpoint(j)) for j in range(1, poly.p + 1)]


def geometric_adjacency(placement: Mapping[Tile, Isometry], tol: float = GEOM_TOL
                        ) -> set[tuple[Tile, int, Tile, int]]:
    """Pairs of tile sides whose images coincide, found by matching side midpoints."""
    import numpy as np
    from scipy.spatial import cKDTree

    keys = []
    pts = []
    for t, g in placement.items():
        for j, m in enumerate(side_midpoints(g)):
            keys.append((t, j))
            pts.append((m.real, m.imag))
    tree = cKDTree(np.array(pts))
    out = set()
    for i, k in tree.query_pairs(tol, output_type="ndarray"):
        (t, j), (u, m) = keys[i], keys[k]
        out.add((t, j, u, m))
        out.add((u, m, t, j))
    return out


# -- rendering -----------------------------------------------------------------

DEFAULT_PALETTE = {"a": "#d62728", "b": "#1f77b4", "c": "#2ca02c", "d": "#ff7f0e"}


def _xy(z: complex) -> str:
    # SVG's y axis points down; flip so the picture keeps its orientation
    return f"{z.real:.6f} {-z.imag:.6f}"


def _side_command(p: complex, q: complex) -> str:
    line = HLine.through(p, q)
    if line.is_diameter:
        return f"L {_xy(q)}"
    u, v = p - line.center, q - line.center
    # cross product in screen coordinates, where y is negated
    sweep = 1 if (u.real * -v.imag - -u.imag * v.real) > 0 else 0
    r = line.radius
    return f"A {r:.6f} {r:.6f} 0 0 {sweep} {_xy(q)}"


def tile_path(g: Isometry, poly: RegularPolygon = PENTAGON) -> str:
    pts = tile_vertices(g, poly)
    parts = [f"M {_xy(pts[0])}"]
    for i in range(len(pts)):
        parts.append(_side_command(pts[i], pts[(i + 1) % len(pts)]))
    parts.append("Z")
    return " ".join(parts)


def render_svg(
    b: Ball,
    coloring: Optional[Mapping[Tile, Sequence[str]]] = None,
    palette: Mapping[str, str] = DEFAULT_PALETTE,
    size: int = 800,
) -> str:
    """SVG drawing of a ball; ``coloring`` gives each tile's five side colors."""
    if len(b) == 0:
        raise ValueError("cannot render an empty ball")
    if coloring is not None:
        missing = [t for t in coloring if t not in b]
        if missing:
            raise ValueError(f"coloring refers to tiles outside the ball: {missing[0]}")
    placement = layout(b)
    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{size}" height="{size}" '
        'viewBox="-1.05 -1.05 2.10 2.10">',
        '<circle class="border" cx="0" cy="0" r="1" fill="none" stroke="black" stroke-width="0.004"/>',
    ]
    for t in b.tiles:
        g = placement[t]
        out.append(
            f'<path class="tile" data-tile="{t}" d="{tile_path(g)}" '
            'fill="#f4f1e8" stroke="#555" stroke-width="0.002"/>'
        )
    if coloring is not None:
        for t, colors in coloring.items():
            pts = tile_vertices(placement[t])
            for j, key in enumerate(colors):
                if key not in palette:
                    raise ValueError(f"color {key!r} of tile {t} is not in the palette")
                p, q = pts[j], pts[(j + 1) % 5]
                out.append(
                    f'<path class="side" data-tile="{t}" data-side="{j + 1}" '
                    f'd="M {_xy(p)} {_side_command(p, q)}" fill="none" '
                    f'stroke="{palette[key]}" stroke-width="0.006"/>'
                )
    out.append("</svg>")
    return "\n".join(out) + "\n"


# -- the five-generator circuit around a pentagon --------------------------------

@dataclass(frozen=True)
class MotionCase:
    arrangement: str  # "contiguous" or "separated"
    g1: str  # "g" glide or "r" reflection
    g2: str
    angle: int
    expected: int

    @property
    def ok(self) -> bool:
        return self.angle == self.expected and self.angle != 1


MOTION_TABLE = {
    ("contiguous", "g", "g"): 2,
    ("contiguous", "g", "r"): 4,
    ("contiguous", "r", "g"): 4,
    ("contiguous", "r", "r"): 2,
    ("separated", "g", "g"): 4,
    ("separated", "g", "r"): 2,
    ("separated", "r", "g"): 2,
    ("separated", "r", "r"): 4,
}


def side_generator(kind: str, x: complex, y: complex) -> Isometry:
    """A motion carrying vertex x to the adjacent vertex y.

    ``"s"`` shifts along the side, ``"r"`` reflects in its perpendicular
    bisector and ``"g"`` glides: the reflection in the side after the shift.
    """
    if kind == "s":
        return shift_along(x, y)
    if kind == "r":
        return reflect(perpendicular_bisector(x, y))
    if kind == "g":
        return reflect(HLine.through(x, y)) @ shift_along(x, y)
    raise ValueError(f"unknown generator kind {kind!r}")


def circuit_angle(kinds: Sequence[str], tol: float = GEOM_TOL) -> int:
    """Run the circuit A->B->C->D->E->A around the base pentagon.

    The vertices are taken clockwise and ``kinds[i]`` is the motion used on
    the i-th side.  The product fixes A and permutes the four right angles
    there.  They are numbered clockwise from 1, the pentagon's own corner.
    The result is the angle that corner 1 lands in.
    """
    v = PENTAGON.vertices
    a, b, c, d, e = v[0], v[4], v[3], v[2], v[1]
    circuit = [(a, b), (b, c), (c, d), (d, e), (e, a)]
    h = Isometry.identity()
    for kind, (x, y) in zip(kinds, circuit):
        h = side_generator(kind, x, y) @ h
    if abs(h(a) - a) > tol:
        raise GeometryError("circuit product does not fix its base vertex")
    bis = tangent_direction(a, e) + tangent_direction(a, b)
    bis /= abs(bis)
    img = push_direction(h, a, bis)
    turn = (cmath.phase(bis) - cmath.phase(img)) % (2 * math.pi)
    quarters = turn / (math.pi / 2)
    if abs(quarters - round(quarters)) > 0.25:
        raise GeometryError("image direction falls near an angle boundary")
    return 1 + round(quarters) % 4


def verify_motion_table(tol: float = GEOM_TOL) -> list[MotionCase]:
    """Evaluate all eight odd-pair placements against the expected angles."""
    out = []
    for (arrangement, g1, g2), expected in MOTION_TABLE.items():
        kinds = ["s"] * 5
        kinds[0] = g1
        kinds[1 if arrangement == "contiguous" else 2] = g2
        out.append(MotionCase(arrangement, g1, g2, circuit_angle(kinds, tol), expected))
    return out
