"""Single-qubit Bloch geometry: the stabilizer octahedron, magic directions, regions.

The octahedron with vertices at the six Pauli eigenstates bounds the
single-qubit states reachable by stabilizer operations and classical
randomness.  Its twelve edge midpoints are the H-type magic directions,
its eight face centers the T-type ones.  Everything here is plain float
geometry; exact arithmetic lives in the map-derivation modules.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

PHYS_TOL = 1e-9

ISQ2 = 1.0 / math.sqrt(2.0)

#: fidelity of the best H-type direction achievable inside the octahedron
F_H_STAR = math.sqrt((1.0 + ISQ2) / 2.0)

#: T-type distillation reaches states with max t-alignment above sqrt(3/7)
D_T_PLANE = math.sqrt(3.0 / 7.0)

#: distance from the center to an octahedron face
D_O_FACE = 1.0 / math.sqrt(3.0)


@dataclass(frozen=True)
class BlochVector:
    x: float
    y: float
    z: float

    def as_tuple(self) -> tuple[float, float, float]:
        return (self.x, self.y, self.z)

    def norm(self) -> float:
        return math.sqrt(self.x * self.x + self.y * self.y + self.z * self.z)

    def is_physical(self, tol: float = PHYS_TOL) -> bool:
        return self.x**2 + self.y**2 + self.z**2 <= 1.0 + tol

    def __str__(self) -> str:
        return f"{self.x:.12g},{self.y:.12g},{self.z:.12g}"

    _TOKENS = {
        "isq2": ISQ2,
        "-isq2": -ISQ2,
        "1/2": 0.5,
        "-1/2": -0.5,
        "0": 0.0,
        "1": 1.0,
        "-1": -1.0,
    }

    @classmethod
    def parse(cls, text: str) -> "BlochVector":
        """Parse "x,y,z" where each token is a decimal or one of the exact
        tokens isq2, -isq2, 1/2, -1/2, 0, 1, -1."""
        parts = [p.strip() for p in text.split(",")]
        if len(parts) != 3:
            raise ValueError(f"expected three comma-separated components: {text!r}")
        vals = []
        for p in parts:
            if p in cls._TOKENS:
                vals.append(cls._TOKENS[p])
            else:
                try:
                    vals.append(float(p))
                except ValueError as exc:
                    raise ValueError(f"bad Bloch component {p!r}") from exc
        return cls(*vals)


@dataclass(frozen=True)
class SingleQubitDensity:
    """2x2 density matrix entries; trace one, Hermitian, PSD up to tolerance."""

    rho00: float
    rho01: complex
    rho10: complex
    rho11: float

    def validate(self, tol: float = PHYS_TOL) -> None:
        if abs(self.rho00 + self.rho11 - 1.0) > tol:
            raise ValueError("trace differs from 1")
        if abs(self.rho10 - self.rho01.conjugate()) > tol:
            raise ValueError("matrix is not Hermitian")
        det = self.rho00 * self.rho11 - (self.rho01 * self.rho10).real
        if det < -tol:
            raise ValueError("matrix is not positive semidefinite")

    def as_matrix(self) -> np.ndarray:
        return np.array(
            [[self.rho00, self.rho01], [self.rho10, self.rho11]], dtype=complex
        )


def bloch_to_density(v: BlochVector) -> SingleQubitDensity:
    return SingleQubitDensity(
        rho00=(1.0 + v.z) / 2.0,
        rho01=(v.x - 1j * v.y) / 2.0,
        rho10=(v.x + 1j * v.y) / 2.0,
        rho11=(1.0 - v.z) / 2.0,
    )


def density_to_bloch(rho: SingleQubitDensity) -> BlochVector:
    return BlochVector(
        x=2.0 * rho.rho01.real,
        y=(1j * (rho.rho01 - rho.rho10)).real,
        z=rho.rho00 - rho.rho11,
    )


# ── magic directions and the rotation group ─────────────────────────

def _edge_midpoints() -> tuple[tuple[float, float, float], ...]:
    dirs = []
    for i, j in itertools.combinations(range(3), 2):
        for si in (1, -1):
            for sj in (1, -1):
                vec = [0.0, 0.0, 0.0]
                vec[i] = si * ISQ2
                vec[j] = sj * ISQ2
                dirs.append(tuple(vec))
    return tuple(dirs)


#: the twelve octahedron edge midpoints, components (±1, ±1, 0)/sqrt(2)
H_DIRECTIONS: tuple[tuple[float, float, float], ...] = _edge_midpoints()

#: the eight face centers (±1, ±1, ±1)/sqrt(3)
T_DIRECTIONS: tuple[tuple[float, float, float], ...] = tuple(
    (sx / math.sqrt(3), sy / math.sqrt(3), sz / math.sqrt(3))
    for sx in (1, -1)
    for sy in (1, -1)
    for sz in (1, -1)
)


def octahedral_rotations() -> tuple[np.ndarray, ...]:
    """The 24 rotation matrices of the octahedron: signed permutations with
    determinant +1."""
    mats = []
    for perm in itertools.permutations(range(3)):
        for signs in itertools.product((1, -1), repeat=3):
            m = np.zeros((3, 3), dtype=int)
            for row, col in enumerate(perm):
                m[row, col] = signs[row]
            if round(np.linalg.det(m)) == 1:
                mats.append(m)
    assert len(mats) == 24
    return tuple(mats)


# ── geometry queries ─────────────────────────────────────────────────


def octahedron_contains(v: BlochVector) -> bool:
    """True inside or on the boundary of |x| + |y| + |z| <= 1."""
    return abs(v.x) + abs(v.y) + abs(v.z) <= 1.0


def h_alignment(v: BlochVector) -> float:
    """Largest dot product with an H-type direction."""
    return max(v.x * hx + v.y * hy + v.z * hz for hx, hy, hz in H_DIRECTIONS)


def t_alignment(v: BlochVector) -> float:
    """Largest dot product with a T-type direction."""
    return max(v.x * tx + v.y * ty + v.z * tz for tx, ty, tz in T_DIRECTIONS)


def h_fidelity(v: BlochVector) -> float:
    """Best fidelity with an H-type magic state over all 12 directions."""
    if not v.is_physical():
        raise ValueError(f"Bloch vector is not physical: {v}")
    return math.sqrt((1.0 + h_alignment(v)) / 2.0)


# ── regions ──────────────────────────────────────────────────────────


class RegionLabel(Enum):
    SIMULABLE = "SIMULABLE"
    H_DISTILLABLE_NEW = "H_DISTILLABLE_NEW"
    H_DISTILLABLE_BK = "H_DISTILLABLE_BK"
    T_DISTILLABLE = "T_DISTILLABLE"
    GAP = "GAP"


@dataclass(frozen=True)
class RegionReport:
    label: RegionLabel
    simulable: bool
    h_distillable_new: bool
    h_distillable_bk: bool
    t_distillable: bool
    fidelity: float
    h_dot: float
    t_dot: float


def classify_region(v: BlochVector) -> RegionReport:
    """Classify a Bloch vector against the known distillation regions.

    Precedence for the scalar label: SIMULABLE, then H (widest criterion
    first), then T, else GAP.  The flags report every region that applies.
    """
    if not v.is_physical():
        raise ValueError(f"Bloch vector is not physical: {v}")
    from .knownmaps import bk15_threshold  # local import; knownmaps is leaf-light

    hd = h_alignment(v)
    td = t_alignment(v)
    fid = math.sqrt((1.0 + hd) / 2.0)
    simulable = octahedron_contains(v)
    h_new = fid > F_H_STAR
    h_bk = (1.0 - hd) / 2.0 < bk15_threshold()
    t_ok = td > D_T_PLANE
    if simulable:
        label = RegionLabel.SIMULABLE
    elif h_new:
        label = RegionLabel.H_DISTILLABLE_NEW
    elif h_bk:
        label = RegionLabel.H_DISTILLABLE_BK
    elif t_ok:
        label = RegionLabel.T_DISTILLABLE
    else:
        label = RegionLabel.GAP
    return RegionReport(
        label=label,
        simulable=simulable,
        h_distillable_new=h_new,
        h_distillable_bk=h_bk,
        t_distillable=t_ok,
        fidelity=fid,
        h_dot=hd,
        t_dot=td,
    )


# ── twirls ───────────────────────────────────────────────────────────


def _project(v: BlochVector, axis: tuple[float, float, float]) -> BlochVector:
    d = v.x * axis[0] + v.y * axis[1] + v.z * axis[2]
    return BlochVector(d * axis[0], d * axis[1], d * axis[2])


def twirl_h(v: BlochVector, axis: tuple[float, float, float] | None = None) -> BlochVector:
    """Project onto an H-type axis (default: the best-aligned one).

    This is the Bloch-level action of randomizing over the symmetries fixing
    that axis; it is idempotent.
    """
    if axis is None:
        axis = max(H_DIRECTIONS, key=lambda h: v.x * h[0] + v.y * h[1] + v.z * h[2])
    return _project(v, axis)


def twirl_t(v: BlochVector, axis: tuple[float, float, float] | None = None) -> BlochVector:
    """Project onto a T-type axis (default: the best-aligned one)."""
    if axis is None:
        axis = max(T_DIRECTIONS, key=lambda t: v.x * t[0] + v.y * t[1] + v.z * t[2])
    return _project(v, axis)


# ── error-rate parametrization of the H axis ─────────────────────────


def p_to_x(p: float) -> float:
    """Error rate p in [0, 1/2] -> H-line coordinate x = (1-2p)/sqrt(2)."""
    if not 0.0 <= p <= 0.5:
        raise ValueError(f"error rate must lie in [0, 1/2]: {p}")
    return (1.0 - 2.0 * p) * ISQ2


def x_to_p(x: float) -> float:
    """Inverse of p_to_x on x in [0, 1/sqrt(2)]."""
    if not -1e-12 <= x <= ISQ2 + 1e-12:
        raise ValueError(f"x must lie in [0, 1/sqrt(2)]: {x}")
    return (1.0 - math.sqrt(2.0) * x) / 2.0
