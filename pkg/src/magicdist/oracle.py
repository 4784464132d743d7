"""Dense statevector oracle: slow, explicit, and obviously correct.

Everything here works on full 2^n amplitude vectors (n <= 12): logical
state overlaps computed by literally contracting rho into each qubit, a
small Clifford gate interpreter, and postselected Pauli measurements.
The exact engine is verified against this module on small codes; the
state-reduction scripts replay through it.

Conventions, fixed once and asserted in tests: qubit 1 is the most
significant index bit (matching how codewords print), and a Pauli product
is stored as i^m X^x Z^z so that

    P |e> = i^m (-1)^{popcount(e & z)} |e ^ x>.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .bloch import BlochVector, SingleQubitDensity
from .codes import CodewordSet
from .distill import OverlapTriple

MAX_ORACLE_N = 12

_PHASES = (1 + 0j, 1j, -1 + 0j, -1j)
_PHASE_PREFIX = {0: "", 1: "i", 2: "-", 3: "-i"}
_PREFIXES = {"": 0, "+": 0, "i": 1, "+i": 1, "-": 2, "-i": 3}


# ===== 1. dense states ===============================================


@dataclass(frozen=True, eq=False)
class DenseState:
    """A pure state as an explicit amplitude vector, qubit 1 = MSB."""

    n: int
    amplitudes: np.ndarray

    def __post_init__(self):
        if not 1 <= self.n <= MAX_ORACLE_N:
            raise ValueError(f"oracle handles 1..{MAX_ORACLE_N} qubits, got {self.n}")
        amps = np.asarray(self.amplitudes, dtype=complex).reshape(-1)
        if amps.shape != (1 << self.n,):
            raise ValueError(f"expected {1 << self.n} amplitudes, got {amps.shape}")
        object.__setattr__(self, "amplitudes", amps)

    @classmethod
    def computational(cls, n: int, index: int = 0) -> "DenseState":
        if not 0 <= index < (1 << n):
            raise ValueError(f"basis index {index} out of range for n={n}")
        amps = np.zeros(1 << n, dtype=complex)
        amps[index] = 1.0
        return cls(n, amps)

    @property
    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))

    def normalized(self) -> "DenseState":
        nrm = self.norm
        if nrm == 0.0:
            raise ValueError("cannot normalize the zero vector")
        return DenseState(self.n, self.amplitudes / nrm)

    def inner(self, other: "DenseState") -> complex:
        if other.n != self.n:
            raise ValueError("qubit counts differ")
        return complex(np.vdot(self.amplitudes, other.amplitudes))

    def fidelity(self, other: "DenseState") -> float:
        return abs(self.inner(other)) ** 2

    def bloch_of_qubit(self, q: int) -> BlochVector:
        """Bloch vector of one qubit of a (normalized) state."""
        bit = _qubit_bit(self.n, q)
        x = pauli_expectation(self, PauliProduct(self.n, bit, 0))
        y = pauli_expectation(self, PauliProduct(self.n, bit, bit, 1))
        z = pauli_expectation(self, PauliProduct(self.n, 0, bit))
        return BlochVector(x.real, y.real, z.real)


def _qubit_bit(n: int, q: int) -> int:
    if not 1 <= q <= n:
        raise ValueError(f"qubit index {q} out of range for n={n}")
    return 1 << (n - q)


def parse_state_text(text: str) -> DenseState:
    """Parse the state file format: `n=<int>` then 2^n lines `re im`."""
    lines = [
        ln.strip() for ln in text.splitlines() if ln.strip() and not ln.lstrip().startswith("#")
    ]
    if not lines or not lines[0].replace(" ", "").startswith("n="):
        raise ValueError("state file must start with a line n=<int>")
    n = int(lines[0].split("=", 1)[1])
    rows = lines[1:]
    if len(rows) != (1 << n):
        raise ValueError(f"expected {1 << n} amplitude lines, got {len(rows)}")
    amps = np.empty(1 << n, dtype=complex)
    for i, row in enumerate(rows):
        parts = row.split()
        if len(parts) != 2:
            raise ValueError(f"amplitude line {i}: expected `re im`, got {row!r}")
        amps[i] = complex(float(parts[0]), float(parts[1]))
    return DenseState(n, amps)


def state_to_text(state: DenseState) -> str:
    rows = [f"n={state.n}"]
    rows.extend(f"{float(a.real)!r} {float(a.imag)!r}" for a in state.amplitudes)
    return "\n".join(rows) + "\n"


def load_state(path: str) -> DenseState:
    with open(path, encoding="utf-8") as fh:
        return parse_state_text(fh.read())


def save_state(state: DenseState, path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(state_to_text(state))


# ===== 2. Pauli products =============================================


@dataclass(frozen=True)
class PauliProduct:
    """i^phase_power * X^x_mask * Z^z_mask on n qubits (qubit 1 = MSB)."""

    n: int
    x_mask: int
    z_mask: int
    phase_power: int = 0

    def __post_init__(self):
        size = 1 << self.n
        if not (0 <= self.x_mask < size and 0 <= self.z_mask < size):
            raise ValueError("Pauli mask exceeds the qubit register")
        object.__setattr__(self, "phase_power", self.phase_power % 4)

    @classmethod
    def from_string(cls, text: str) -> "PauliProduct":
        """Parse e.g. `ZIZ`, `-XXI`, `iY` (leftmost letter = qubit 1)."""
        s = text.strip()
        letters_at = next(
            (k for k, ch in enumerate(s) if ch.upper() in "IXYZ" and ch != "i"), len(s)
        )
        prefix, letters = s[:letters_at], s[letters_at:]
        if prefix not in _PREFIXES or not letters:
            raise ValueError(f"malformed Pauli string {text!r}")
        phase = _PREFIXES[prefix]
        x = z = 0
        for ch in letters.upper():
            x <<= 1
            z <<= 1
            if ch == "X":
                x |= 1
            elif ch == "Z":
                z |= 1
            elif ch == "Y":
                x |= 1
                z |= 1
                phase += 1  # Y = i X Z
            elif ch != "I":
                raise ValueError(f"bad Pauli letter {ch!r} in {text!r}")
        return cls(len(letters), x, z, phase)

    def to_string(self) -> str:
        letters = []
        y_count = 0
        for q in range(1, self.n + 1):
            bit = 1 << (self.n - q)
            xb, zb = bool(self.x_mask & bit), bool(self.z_mask & bit)
            letters.append("IXZY"[xb + 2 * zb])
            y_count += xb and zb
        return _PHASE_PREFIX[(self.phase_power - y_count) % 4] + "".join(letters)

    @property
    def phase(self) -> complex:
        return _PHASES[self.phase_power]

    @property
    def weight(self) -> int:
        return (self.x_mask | self.z_mask).bit_count()

    @property
    def is_identity(self) -> bool:
        return self.x_mask == 0 and self.z_mask == 0

    @property
    def is_hermitian(self) -> bool:
        # P^dag = i^{2 popcount(x&z) - m} X^x Z^z
        return (self.phase_power - (self.x_mask & self.z_mask).bit_count()) % 2 == 0

    def commutes_with(self, other: "PauliProduct") -> bool:
        anti = (self.x_mask & other.z_mask).bit_count() + (
            self.z_mask & other.x_mask
        ).bit_count()
        return anti % 2 == 0

    def multiply(self, other: "PauliProduct") -> "PauliProduct":
        """Operator product self * other (apply `other` first)."""
        if other.n != self.n:
            raise ValueError("qubit counts differ")
        m = self.phase_power + other.phase_power
        m += 2 * (self.z_mask & other.x_mask).bit_count()
        return PauliProduct(self.n, self.x_mask ^ other.x_mask, self.z_mask ^ other.z_mask, m)

    def negated(self) -> "PauliProduct":
        return PauliProduct(self.n, self.x_mask, self.z_mask, self.phase_power + 2)

    def apply(self, state: DenseState) -> DenseState:
        """P |psi>, exact up to float arithmetic (no normalization step)."""
        if state.n != self.n:
            raise ValueError("qubit counts differ")
        idx = np.arange(1 << self.n, dtype=np.uint32)
        src = idx ^ np.uint32(self.x_mask)
        signs = 1.0 - 2.0 * (np.bitwise_count(src & np.uint32(self.z_mask)) & 1)
        return DenseState(self.n, self.phase * signs * state.amplitudes[src])


def pauli_expectation(state: DenseState, P: PauliProduct) -> complex:
    return state.inner(P.apply(state))


# ===== 3. Clifford gates =============================================

_ISQ2 = 1.0 / math.sqrt(2.0)

GATES: dict[str, np.ndarray] = {
    "H": np.array([[_ISQ2, _ISQ2], [_ISQ2, -_ISQ2]], dtype=complex),
    "S": np.diag([1, 1j]).astype(complex),
    "SDG": np.diag([1, -1j]).astype(complex),
    "X": np.array([[0, 1], [1, 0]], dtype=complex),
    "Y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "Z": np.diag([1, -1]).astype(complex),
    "CX": np.array(
        [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]], dtype=complex
    ),
    "CZ": np.diag([1, 1, 1, -1]).astype(complex),
    "CY": np.array(
        [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, -1j], [0, 0, 1j, 0]], dtype=complex
    ),
    "SWAP": np.array(
        [[1, 0, 0, 0], [0, 0, 1, 0], [0, 1, 0, 0], [0, 0, 0, 1]], dtype=complex
    ),
}


def _apply_matrix(vec: np.ndarray, n: int, axes: list[int], mat: np.ndarray) -> np.ndarray:
    """Apply a 2^k x 2^k matrix to the given tensor axes of a 2^n vector."""
    k = len(axes)
    psi = np.moveaxis(vec.reshape((2,) * n), axes, range(k))
    psi = (mat @ psi.reshape(1 << k, -1)).reshape((2,) * n)
    return np.moveaxis(psi, range(k), axes).reshape(-1)


def apply_clifford(state: DenseState, gate: str, qubits: tuple[int, ...]) -> DenseState:
    """Apply a named gate to the given (1-indexed) qubits."""
    name = gate.upper()
    if name not in GATES:
        raise ValueError(f"unknown gate {gate!r}")
    mat = GATES[name]
    arity = 1 if mat.shape[0] == 2 else 2
    if len(qubits) != arity:
        raise ValueError(f"{name} acts on {arity} qubit(s), got {qubits}")
    if arity == 2 and qubits[0] == qubits[1]:
        raise ValueError("two-qubit gate needs distinct qubits")
    axes = [q - 1 for q in qubits]
    for q in qubits:
        if not 1 <= q <= state.n:
            raise ValueError(f"qubit index {q} out of range for n={state.n}")
    return DenseState(state.n, _apply_matrix(state.amplitudes, state.n, axes, mat))


# ===== 4. postselected measurement ===================================


def measure_postselect(
    state: DenseState, P: PauliProduct, outcome: int
) -> tuple[float, DenseState]:
    """Project onto (I + outcome P)/2 and renormalize.

    Returns (probability, state); postselecting a (numerically) impossible
    outcome raises instead of fabricating a state.
    """
    if outcome not in (+1, -1):
        raise ValueError(f"outcome must be +1 or -1, got {outcome}")
    if not P.is_hermitian:
        raise ValueError(f"cannot measure non-Hermitian product {P.to_string()}")
    projected = 0.5 * (state.amplitudes + outcome * P.apply(state).amplitudes)
    prob = float(np.real(np.vdot(state.amplitudes, projected)))
    if prob < 1e-12:
        raise ValueError(
            f"postselection on {P.to_string()} = {outcome:+d} has probability {max(prob, 0.0):.3e}"
        )
    return prob, DenseState(state.n, projected / math.sqrt(prob))


# ===== 5. logical overlaps by brute force ============================


def logical_states(S: CodewordSet) -> tuple[DenseState, DenseState]:
    """|0_L> and |1_L> as dense vectors: uniform over S and its complement coset."""
    n = S.n
    if n > MAX_ORACLE_N:
        raise ValueError(f"dense oracle is limited to n <= {MAX_ORACLE_N}, got n={n}")
    ones = (1 << n) - 1
    amp = 1.0 / math.sqrt(len(S))
    a0 = np.zeros(1 << n, dtype=complex)
    a1 = np.zeros(1 << n, dtype=complex)
    for w in S.words:
        a0[w] = amp
        a1[w ^ ones] = amp
    return DenseState(n, a0), DenseState(n, a1)


def dense_overlaps(S: CodewordSet, rho: SingleQubitDensity) -> OverlapTriple:
    """(A00, A11, A01) of rho^(x)n computed with explicit 2^n vectors.

    rho is contracted into one qubit at a time (n passes over the vector),
    never materializing the 2^n x 2^n product operator.
    """
    rho.validate()
    v0, v1 = logical_states(S)
    mat = rho.as_matrix()
    m0 = v0.amplitudes
    m1 = v1.amplitudes
    for axis in range(S.n):
        m0 = _apply_matrix(m0, S.n, [axis], mat)
        m1 = _apply_matrix(m1, S.n, [axis], mat)
    return OverlapTriple(
        a00=complex(np.vdot(v0.amplitudes, m0)),
        a11=complex(np.vdot(v1.amplitudes, m1)),
        a01=complex(np.vdot(v0.amplitudes, m1)),
    )
