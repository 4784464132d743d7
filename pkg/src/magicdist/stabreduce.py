"""Detect stabilizer states and reduce non-stabilizer ones to a single qubit.

Given any pure n-qubit state that is not a stabilizer state, there is a
sequence of Clifford gates and exactly n-1 commuting postselected Pauli
measurements, each succeeding with positive probability, that leaves one
qubit in a state that is not a Pauli eigenstate.  This module makes that
construction executable:

    is_stabilizer_state     find n independent commuting unit-expectation
                            Pauli products (or report there are none)
    clifford_to_computational   rotate a stabilized state onto |0...0>
    reduce_state            build the measurement script constructively
    verify_script           replay a script through the dense oracle

The recursion mirrors the underlying argument.  If the state has any
unit-expectation Pauli, rotate it onto +Z of one qubit and "measure" it
(probability 1), shrinking the problem.  Otherwise split on one qubit,
psi = alpha |0> psi0 + beta |1> psi1 with alpha, beta != 0; if a branch is
non-stabilizer, postselect that branch and recurse.  If both branches are
stabilizer states, Clifford-rotate them to |0...0> and |+...+>, and then
either the all-Z or the all-X postselection on the other qubits leaves a
non-Pauli-eigenstate on the split qubit (both failing would force the two
remaining amplitudes to satisfy incompatible balance conditions).
"""

from __future__ import annotations

import cmath
import math
import random
from dataclasses import dataclass

import numpy as np

from .bloch import BlochVector
from .oracle import (
    DenseState,
    PauliProduct,
    apply_clifford,
    measure_postselect,
)

MAX_REDUCE_N = 8
UNIT_TOL = 1e-9
NON_PAULI_TOL = 1e-6

_PHASES = (1 + 0j, 1j, -1 + 0j, -1j)


# ===== 1. Pauli conjugation by Clifford gates ========================


def conjugate_pauli(P: PauliProduct, gate: str, qubits: tuple[int, ...]) -> PauliProduct:
    """U P U^dag for a named gate, exactly, in the i^m X^x Z^z form."""
    name = gate.upper()
    n, x, z, m = P.n, P.x_mask, P.z_mask, P.phase_power
    bits = [1 << (n - q) for q in qubits]
    for q in qubits:
        if not 1 <= q <= n:
            raise ValueError(f"qubit index {q} out of range for n={n}")
    if name == "H":
        (b,) = bits
        if x & z & b:
            m += 2  # H Y H = -Y
        x, z = (x & ~b) | (z & b), (z & ~b) | (x & b)
    elif name == "S":
        (b,) = bits
        if x & b:
            z ^= b
            m += 1  # S X Sdg = Y,  S(XZ)Sdg = iX
    elif name == "SDG":
        (b,) = bits
        if x & b:
            z ^= b
            m += 3
    elif name == "X":
        (b,) = bits
        if z & b:
            m += 2
    elif name == "Y":
        (b,) = bits
        if (x ^ z) & b:
            m += 2
    elif name == "Z":
        (b,) = bits
        if x & b:
            m += 2
    elif name == "CX":
        bc, bt = bits
        if x & bc:
            x ^= bt
        if z & bt:
            z ^= bc
    elif name == "CZ":
        bc, bt = bits
        if (x & bc) and (x & bt):
            m += 2
        if x & bc:
            z ^= bt
        if x & bt:
            z ^= bc
    elif name == "SWAP":
        bc, bt = bits
        xc, xt = bool(x & bc), bool(x & bt)
        zc, zt = bool(z & bc), bool(z & bt)
        x = (x & ~bc & ~bt) | (bc if xt else 0) | (bt if xc else 0)
        z = (z & ~bc & ~bt) | (bc if zt else 0) | (bt if zc else 0)
    elif name == "CY":
        # CY = S_t CX S_t^dag, so conjugate through the factors
        c, t = qubits
        out = conjugate_pauli(P, "SDG", (t,))
        out = conjugate_pauli(out, "CX", (c, t))
        return conjugate_pauli(out, "S", (t,))
    else:
        raise ValueError(f"no conjugation rule for gate {gate!r}")
    return PauliProduct(n, x, z, m)


# ===== 2. stabilizer detection =======================================


def _fwht(v: np.ndarray) -> np.ndarray:
    """Walsh-Hadamard transform: out[z] = sum_e (-1)^popcount(e&z) v[e]."""
    a = v.copy()
    size = a.size
    h = 1
    while h < size:
        a = a.reshape(-1, 2 * h)
        left = a[:, :h].copy()
        right = a[:, h:].copy()
        a[:, :h] = left + right
        a[:, h:] = left - right
        a = a.reshape(size)
        h *= 2
    return a


def _basis_insert(slots: dict[int, int], v: int) -> bool:
    """Insert into a GF(2) xor basis; False if v is already in the span."""
    while v:
        high = v.bit_length() - 1
        if high not in slots:
            slots[high] = v
            return True
        v ^= slots[high]
    return False


def _unit_generators(phi: DenseState, limit: int, tol: float = UNIT_TOL) -> list[PauliProduct]:
    """Up to `limit` independent Pauli products with <G> = +1.

    Scans all 4^n products via one Walsh-Hadamard transform per X-mask
    (the z-sweep for fixed x is exactly a WHT of conj(psi[e^x]) psi[e]),
    absorbing the eigenphase into the stored power of i, and greedily
    accumulates a symplectically independent set.
    """
    n = phi.n
    size = 1 << n
    amps = phi.amplitudes
    idx = np.arange(size, dtype=np.uint32)
    slots: dict[int, int] = {}
    found: list[PauliProduct] = []
    for x in range(size):
        u = np.conj(amps[idx ^ np.uint32(x)]) * amps
        vals = _fwht(u)
        for z in np.nonzero(np.abs(vals) >= 1.0 - tol)[0]:
            z = int(z)
            if x == 0 and z == 0:
                continue
            val = complex(vals[z])
            k = round(cmath.phase(val) / (math.pi / 2)) % 4
            if abs(val - _PHASES[k]) > tol:
                continue
            if not _basis_insert(slots, (x << n) | z):
                continue
            found.append(PauliProduct(n, x, z, (-k) % 4))
            if len(found) == limit:
                return found
    return found


@dataclass(frozen=True)
class StabilizerWitness:
    """n independent commuting Pauli products with expectation +1."""

    n: int
    generators: tuple[PauliProduct, ...]

    def __post_init__(self):
        gens = self.generators
        if len(gens) != self.n:
            raise ValueError(f"witness needs {self.n} generators, got {len(gens)}")
        slots: dict[int, int] = {}
        for i, g in enumerate(gens):
            if g.n != self.n:
                raise ValueError("generator qubit count mismatch")
            if not g.is_hermitian:
                raise ValueError(f"non-Hermitian generator {g.to_string()}")
            if not _basis_insert(slots, (g.x_mask << self.n) | g.z_mask):
                raise ValueError("generators are not independent")
            for h in gens[:i]:
                if not g.commutes_with(h):
                    raise ValueError(
                        f"generators {g.to_string()} and {h.to_string()} anticommute"
                    )


def is_stabilizer_state(psi: DenseState, tol: float = UNIT_TOL) -> StabilizerWitness | None:
    """A full witness if psi is a stabilizer state, else None."""
    if psi.n > MAX_REDUCE_N:
        raise ValueError(f"detection is limited to n <= {MAX_REDUCE_N}, got {psi.n}")
    phi = psi.normalized()
    gens = _unit_generators(phi, limit=phi.n, tol=tol)
    if len(gens) < phi.n:
        return None
    return StabilizerWitness(phi.n, tuple(gens))


def find_unit_pauli(psi: DenseState, tol: float = UNIT_TOL) -> PauliProduct | None:
    """Some non-identity Pauli product with <G> = +1, or None."""
    gens = _unit_generators(psi.normalized(), limit=1, tol=tol)
    return gens[0] if gens else None


# ===== 3. rotating witnesses onto the computational basis ============


@dataclass(frozen=True)
class CliffordStep:
    gate: str
    qubits: tuple[int, ...]


@dataclass(frozen=True)
class MeasurementStep:
    operator: PauliProduct
    outcome: int


def clifford_to_computational(witness: StabilizerWitness) -> tuple[CliffordStep, ...]:
    """Gates mapping the stabilized state onto |0...0> (up to global phase).

    Symplectic Gaussian elimination: for each qubit in turn, steer one
    generator to +Z there by single-qubit rotations and CX fan-in, then
    clear that column from the remaining generators by row multiplication.
    """
    m = witness.n
    gens = list(witness.generators)
    steps: list[CliffordStep] = []

    def conj_all(gate: str, qubits: tuple[int, ...]) -> None:
        steps.append(CliffordStep(gate, qubits))
        for i, g in enumerate(gens):
            gens[i] = conjugate_pauli(g, gate, qubits)

    def support(g: PauliProduct, q: int) -> int:
        return (g.x_mask | g.z_mask) & (1 << (m - q))

    for q in range(1, m + 1):
        bq = 1 << (m - q)
        row = next((r for r in range(q - 1, m) if support(gens[r], q)), None)
        if row is None:
            # all remaining rows are identity at q; some later column is
            # populated (independence), so swap it in
            for j in range(q + 1, m + 1):
                row = next((r for r in range(q - 1, m) if support(gens[r], j)), None)
                if row is not None:
                    conj_all("SWAP", (q, j))
                    break
            if row is None:
                raise ValueError("witness generators are inconsistent")
        gens[q - 1], gens[row] = gens[row], gens[q - 1]

        if not (gens[q - 1].x_mask == 0 and gens[q - 1].z_mask == bq):
            # single-qubit-rotate every supported column of this row to X
            for j in range(q, m + 1):
                bj = 1 << (m - j)
                g = gens[q - 1]
                if g.x_mask & bj and g.z_mask & bj:
                    conj_all("S", (j,))
                elif g.z_mask & bj:
                    conj_all("H", (j,))
            # fan all other X columns into column q
            for j in range(q + 1, m + 1):
                if gens[q - 1].x_mask & (1 << (m - j)):
                    conj_all("CX", (q, j))
            conj_all("H", (q,))
        if gens[q - 1].phase_power == 2:
            conj_all("X", (q,))
        if gens[q - 1] != PauliProduct(m, 0, bq, 0):
            raise ValueError("witness generators are inconsistent")
        # clear Z_q from every other row (commutation forbids X there)
        for r in range(m):
            if r != q - 1 and gens[r].z_mask & bq:
                gens[r] = gens[r].multiply(gens[q - 1])
    return tuple(steps)


def _plus_circuit(witness: StabilizerWitness) -> tuple[CliffordStep, ...]:
    """Gates fixing |0...0> that map the stabilized state onto |+...+>.

    Requires the X-parts of the generators to have full rank (true for
    the branch states met in reduce_state: a Z-type stabilizer on the
    branch would lift to a unit-expectation Pauli of the parent state).
    Row operations bring the X-block to the identity; then S clears
    diagonal Z-entries, CZ the (symmetric) off-diagonal ones, and Z fixes
    signs -- all diagonal gates, so |0...0> is untouched.
    """
    m = witness.n
    gens = list(witness.generators)

    # row-reduce the X-block to the identity (full rank square -> I)
    for q in range(m):
        bq = 1 << (m - 1 - q)
        pivot = next((r for r in range(q, m) if gens[r].x_mask & bq), None)
        if pivot is None:
            raise ValueError("X-block is rank-deficient; no |0>-fixing rotation")
        gens[q], gens[pivot] = gens[pivot], gens[q]
        for r in range(m):
            if r != q and gens[r].x_mask & bq:
                gens[r] = gens[r].multiply(gens[q])

    steps: list[CliffordStep] = []

    def conj_all(gate: str, qubits: tuple[int, ...]) -> None:
        steps.append(CliffordStep(gate, qubits))
        for i, g in enumerate(gens):
            gens[i] = conjugate_pauli(g, gate, qubits)

    for q in range(1, m + 1):
        if gens[q - 1].z_mask & (1 << (m - q)):
            conj_all("S", (q,))
    for q in range(1, m + 1):
        for j in range(q + 1, m + 1):
            if gens[q - 1].z_mask & (1 << (m - j)):
                conj_all("CZ", (q, j))
    for q in range(1, m + 1):
        if gens[q - 1].phase_power == 2:
            conj_all("Z", (q,))
        if gens[q - 1] != PauliProduct(m, 1 << (m - q), 0, 0):
            raise ValueError("witness generators are inconsistent")
    return tuple(steps)


# ===== 4. measurement scripts ========================================


@dataclass(frozen=True)
class MeasurementScript:
    """Clifford steps and postselected Pauli measurements, in order."""

    n: int
    steps: tuple[CliffordStep | MeasurementStep, ...]
    final_qubit: int

    @property
    def measurement_count(self) -> int:
        return sum(1 for s in self.steps if isinstance(s, MeasurementStep))

    def to_text(self) -> str:
        lines = [f"# n={self.n}", f"# final {self.final_qubit}"]
        for s in self.steps:
            if isinstance(s, CliffordStep):
                lines.append(f"C {s.gate} {' '.join(str(q) for q in s.qubits)}")
            else:
                lines.append(f"M {s.operator.to_string()} {s.outcome:+d}")
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "MeasurementScript":
        n: int | None = None
        final = 1
        steps: list[CliffordStep | MeasurementStep] = []
        for raw in text.splitlines():
            line = raw.strip()
            if not line:
                continue
            if line.startswith("#"):
                body = line[1:].strip()
                if body.replace(" ", "").startswith("n="):
                    n = int(body.split("=", 1)[1])
                elif body.startswith("final"):
                    final = int(body.split()[1])
                continue
            parts = line.split()
            if parts[0] == "C":
                if len(parts) < 3:
                    raise ValueError(f"malformed Clifford step: {line!r}")
                steps.append(CliffordStep(parts[1], tuple(int(q) for q in parts[2:])))
            elif parts[0] == "M":
                if len(parts) != 3 or parts[2] not in ("+1", "-1"):
                    raise ValueError(f"malformed measurement step: {line!r}")
                P = PauliProduct.from_string(parts[1])
                if n is None:
                    n = P.n
                steps.append(MeasurementStep(P, int(parts[2])))
            else:
                raise ValueError(f"unknown script line: {line!r}")
        if n is None:
            raise ValueError("cannot infer qubit count: no measurements and no `# n=` line")
        return cls(n, tuple(steps), final)


def verify_script(psi: DenseState, script: MeasurementScript) -> tuple[float, BlochVector]:
    """Replay a script through the dense oracle.

    Returns the cumulative postselection probability and the Bloch vector
    of the declared final qubit; a numerically impossible postselection
    raises along the way.
    """
    if psi.n != script.n:
        raise ValueError(f"state has {psi.n} qubits, script expects {script.n}")
    state = psi.normalized()
    probability = 1.0
    for step in script.steps:
        if isinstance(step, CliffordStep):
            state = apply_clifford(state, step.gate, step.qubits)
        else:
            p, state = measure_postselect(state, step.operator, step.outcome)
            probability *= p
    return probability, state.bloch_of_qubit(script.final_qubit)


# ===== 5. the reduction ==============================================


def _extract_active(state: DenseState, active: list[int]) -> DenseState:
    """The state of the active qubits (the rest are pinned, product form)."""
    n = state.n
    m = len(active)
    amps = state.amplitudes
    base = int(np.argmax(np.abs(amps)))
    for q in active:
        base &= ~(1 << (n - q))
    out = np.empty(1 << m, dtype=complex)
    for e in range(1 << m):
        g = base
        for i, q in enumerate(active):
            if e & (1 << (m - 1 - i)):
                g |= 1 << (n - q)
        out[e] = amps[g]
    return DenseState(m, out).normalized()


def _split_top(phi: DenseState) -> tuple[float, float, DenseState | None, DenseState | None]:
    """phi = a |0> phi0 + b |1> phi1 on qubit 1; branches None when empty."""
    half = 1 << (phi.n - 1)
    top, bottom = phi.amplitudes[:half], phi.amplitudes[half:]
    a = float(np.linalg.norm(top))
    b = float(np.linalg.norm(bottom))
    phi0 = DenseState(phi.n - 1, top / a) if a > 0 else None
    phi1 = DenseState(phi.n - 1, bottom / b) if b > 0 else None
    return a, b, phi0, phi1


def _rotate_to_z(G: PauliProduct) -> tuple[list[CliffordStep], int]:
    """Local gates turning G into +Z on one of its support qubits."""
    m = G.n
    steps: list[CliffordStep] = []

    def push(gate: str, qubits: tuple[int, ...]) -> None:
        nonlocal G
        steps.append(CliffordStep(gate, qubits))
        G = conjugate_pauli(G, gate, qubits)

    support = [q for q in range(1, m + 1) if (G.x_mask | G.z_mask) & (1 << (m - q))]
    if not support:
        raise ValueError("cannot rotate the identity")
    target = support[-1]
    if len(support) == 1 and not (G.x_mask & (1 << (m - target))):
        pass  # already a plain Z: only the sign may need fixing
    else:
        for q in support:
            bq = 1 << (m - q)
            if G.x_mask & bq and G.z_mask & bq:
                push("S", (q,))
            elif G.z_mask & bq:
                push("H", (q,))
        for q in support[:-1]:
            push("CX", (target, q))
        push("H", (target,))
    if G.phase_power == 2:
        push("X", (target,))
    if G != PauliProduct(m, 0, 1 << (m - target), 0):
        raise ValueError("unit Pauli rotation failed")
    return steps, target


def _single_pauli(n: int, q: int, basis: str) -> PauliProduct:
    bit = 1 << (n - q)
    return PauliProduct(n, bit, 0) if basis == "X" else PauliProduct(n, 0, bit)


def reduce_state(psi: DenseState, tol: float = UNIT_TOL) -> tuple[MeasurementScript, BlochVector]:
    """Reduce a non-stabilizer pure state to one non-Pauli-eigenstate qubit.

    Returns the measurement script (exactly n-1 postselected measurements,
    all commuting, each with positive probability) plus the Bloch vector
    of the final qubit, already verified by construction: every step is
    applied through the dense oracle while the script is being built.
    """
    n = psi.n
    if n < 2:
        raise ValueError("nothing to reduce; classify the single qubit directly")
    if n > MAX_REDUCE_N:
        raise ValueError(f"reduction is limited to n <= {MAX_REDUCE_N}, got {n}")
    state = psi.normalized()
    if is_stabilizer_state(state, tol) is not None:
        raise ValueError("input is a stabilizer state; there is nothing to distill")

    active = list(range(1, n + 1))
    steps: list[CliffordStep | MeasurementStep] = []

    def do_gate(gate: str, qubits: tuple[int, ...]) -> None:
        nonlocal state
        steps.append(CliffordStep(gate, qubits))
        state = apply_clifford(state, gate, qubits)

    def do_measure(P: PauliProduct, outcome: int) -> None:
        nonlocal state
        steps.append(MeasurementStep(P, outcome))
        _, state = measure_postselect(state, P, outcome)

    def mapped(qubits: tuple[int, ...], table: list[int]) -> tuple[int, ...]:
        return tuple(table[q - 1] for q in qubits)

    while len(active) > 1:
        phi = _extract_active(state, active)
        unit = find_unit_pauli(phi, tol)
        if unit is not None:
            # rotate the stabilizer onto +Z of one qubit; measuring it
            # succeeds with probability 1 and retires the qubit
            local_steps, local_target = _rotate_to_z(unit)
            for st in local_steps:
                do_gate(st.gate, mapped(st.qubits, active))
            target = active[local_target - 1]
            do_measure(_single_pauli(n, target, "Z"), +1)
            active.remove(target)
            continue

        split = active[0]
        others = active[1:]
        _, _, phi0, phi1 = _split_top(phi)  # both nonzero: no unit <Z_1>
        w0 = is_stabilizer_state(phi0, tol)
        if w0 is None:
            do_measure(_single_pauli(n, split, "Z"), +1)
            active.remove(split)
            continue
        w1 = is_stabilizer_state(phi1, tol)
        if w1 is None:
            do_measure(_single_pauli(n, split, "Z"), -1)
            active.remove(split)
            continue

        # both branches are stabilizer states: build the canonical form
        # alpha |0>|0...0> + beta |1>|+...+>, then one basis of
        # postselections on the other qubits must leave the split qubit
        # off the Pauli axes
        for st in clifford_to_computational(w0):
            do_gate(st.gate, mapped(st.qubits, others))
        phi_now = _extract_active(state, active)
        _, _, _, phi1_now = _split_top(phi_now)
        w1_now = is_stabilizer_state(phi1_now, tol)
        if w1_now is None:
            raise AssertionError("Clifford image of a stabilizer state must stay one")
        for st in _plus_circuit(w1_now):
            do_gate(st.gate, mapped(st.qubits, others))

        chosen: list[MeasurementStep] | None = None
        chosen_state = state
        for basis in ("Z", "X"):
            trial = state
            trial_steps = []
            try:
                for q in others:
                    P = _single_pauli(n, q, basis)
                    _, trial = measure_postselect(trial, P, +1)
                    trial_steps.append(MeasurementStep(P, +1))
            except ValueError:
                continue
            b = trial.bloch_of_qubit(split)
            if max(abs(b.x), abs(b.y), abs(b.z)) < 1.0 - NON_PAULI_TOL:
                chosen, chosen_state = trial_steps, trial
                break
        if chosen is None:
            raise AssertionError("neither the Z nor the X postselection worked")
        steps.extend(chosen)
        state = chosen_state
        active = [split]

    final = active[0]
    script = MeasurementScript(n, tuple(steps), final)
    return script, state.bloch_of_qubit(final)


# ===== 6. random states for exercising the pipeline ==================

_SCRAMBLE_GATES_1Q = ("H", "S", "X", "Z")
_SCRAMBLE_GATES_2Q = ("CX", "CZ", "SWAP")


def random_clifford_scramble(
    state: DenseState, rng: random.Random, depth: int | None = None
) -> DenseState:
    """Apply a random Clifford circuit (depth defaults to 3 n^2 gates)."""
    n = state.n
    if depth is None:
        depth = 3 * n * n
    for _ in range(depth):
        if n >= 2 and rng.random() < 0.5:
            c, t = rng.sample(range(1, n + 1), 2)
            state = apply_clifford(state, rng.choice(_SCRAMBLE_GATES_2Q), (c, t))
        else:
            state = apply_clifford(
                state, rng.choice(_SCRAMBLE_GATES_1Q), (rng.randrange(1, n + 1),)
            )
    return state


def random_stabilizer_state(n: int, rng: random.Random) -> DenseState:
    """A random Clifford orbit point of |0...0>."""
    return random_clifford_scramble(DenseState.computational(n, 0), rng)


def random_nonstabilizer_state(n: int, rng: random.Random) -> DenseState:
    """A Haar single-qubit state times stabilizer junk, Clifford-scrambled."""
    while True:
        v = np.array(
            [complex(rng.gauss(0, 1), rng.gauss(0, 1)) for _ in range(2)], dtype=complex
        )
        nrm = np.linalg.norm(v)
        if nrm < 1e-6:
            continue
        one = DenseState(1, v / nrm)
        b = one.bloch_of_qubit(1)
        if max(abs(b.x), abs(b.y), abs(b.z)) < 1.0 - 1e-3:
            break
    if n == 1:
        return one
    junk = random_stabilizer_state(n - 1, rng)
    product = DenseState(n, np.kron(one.amplitudes, junk.amplitudes))
    return random_clifford_scramble(product, rng)
