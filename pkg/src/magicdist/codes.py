"""Binary code machinery: codeword sets and the weight statistics behind distillation.

Codewords are plain ints; bit 1 of a length-n word is the most significant
bit (so the printed bitstring reads left to right).  The central object is
the pair-weight table counting (|a|, |b|, |a^b|) over ordered pairs of
codewords — it is a sufficient statistic for every logical overlap of a
product state with the code's logical basis.
"""

from __future__ import annotations

import functools
import random
from collections import Counter
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

MAX_N = 32
MAX_DIM = 24
MAX_PAIRS = 1 << 24

_POP8 = np.array([bin(v).count("1") for v in range(256)], dtype=np.uint8)


def popcount_u32(arr: np.ndarray) -> np.ndarray:
    """Vectorized population count for uint32/uint64-safe integer arrays."""
    a = arr.astype(np.uint32)
    return (
        _POP8[a & 0xFF].astype(np.int64)
        + _POP8[(a >> 8) & 0xFF]
        + _POP8[(a >> 16) & 0xFF]
        + _POP8[(a >> 24) & 0xFF]
    )


def word_to_str(word: int, n: int) -> str:
    return format(word, f"0{n}b")


def str_to_word(bits: str) -> int:
    if not bits or set(bits) - {"0", "1"}:
        raise ValueError(f"not a bitstring: {bits!r}")
    return int(bits, 2)


# ===== 1. codeword sets ==============================================


@dataclass(frozen=True)
class CodewordSet:
    """A binary linear code given as its full (sorted) list of codewords."""

    n: int
    words: tuple[int, ...]
    dim: int

    def __len__(self) -> int:
        return len(self.words)

    def __iter__(self):
        return iter(self.words)

    def __contains__(self, word: int) -> bool:
        return word in set(self.words)

    def bitstrings(self) -> list[str]:
        return [word_to_str(w, self.n) for w in self.words]


def _gf2_basis(vectors) -> list[int]:
    """Row-reduce ints over GF(2); returns an independent basis (pivot-sorted)."""
    basis: list[int] = []
    for v in vectors:
        for b in basis:
            v = min(v, v ^ b)
        if v:
            basis.append(v)
            basis.sort(reverse=True)
    return basis


def span_codewords(generators, n: int) -> CodewordSet:
    """Span of the given generator words inside GF(2)^n.

    The zero word is always included.  Guards: n <= 32 and the span no
    larger than 2^24 words.
    """
    if not 1 <= n <= MAX_N:
        raise ValueError(f"n must be in 1..{MAX_N}, got {n}")
    gens = list(generators)
    for g in gens:
        if g < 0 or g >> n:
            raise ValueError(f"generator {g:#x} does not fit in {n} bits")
    basis = _gf2_basis(gens)
    if len(basis) > MAX_DIM:
        raise ValueError(f"span dimension {len(basis)} exceeds {MAX_DIM}")
    words = [0]
    for b in basis:
        words += [w ^ b for w in words]
    return CodewordSet(n=n, words=tuple(sorted(words)), dim=len(basis))


# ===== 2. weight statistics ==========================================


@dataclass(frozen=True)
class WeightDistribution:
    """weight -> number of codewords of that weight."""

    counts: dict[int, int]

    def total(self) -> int:
        return sum(self.counts.values())

    def __getitem__(self, w: int) -> int:
        return self.counts.get(w, 0)

    def items(self):
        return sorted(self.counts.items())


def weight_distribution(S: CodewordSet) -> WeightDistribution:
    return WeightDistribution(dict(Counter(w.bit_count() for w in S.words)))


@dataclass(frozen=True)
class PairWeightTable:
    """(|a|, |b|, |a^b|) -> count over all ordered pairs (a, b) in S x S."""

    n: int
    size: int  # |S|
    counts: dict[tuple[int, int, int], int]

    def total(self) -> int:
        return sum(self.counts.values())

    def __getitem__(self, key: tuple[int, int, int]) -> int:
        return self.counts.get(key, 0)

    def items(self):
        return sorted(self.counts.items())

    def marginal(self) -> WeightDistribution:
        """Weight distribution recovered from the diagonal |b| = 0 slice."""
        out: dict[int, int] = {}
        for (wa, wb, wc), cnt in self.counts.items():
            if wb == 0:
                out[wa] = out.get(wa, 0) + cnt
        return WeightDistribution(out)


def pair_weight_table(S: CodewordSet, jobs: int = 1) -> PairWeightTable:
    """Tally (|a|, |b|, |a^b|) over S x S.

    Vectorized over row blocks; with jobs > 1 the blocks are counted in a
    thread pool and summed, which is order-independent and produces counts
    identical to the sequential tally.
    """
    m = len(S.words)
    if m * m > MAX_PAIRS:
        raise ValueError(f"|S|^2 = {m * m} exceeds {MAX_PAIRS} pairs")
    words = np.array(S.words, dtype=np.uint32)
    wts = popcount_u32(words)
    K = S.n + 1

    def count_block(rows: slice) -> np.ndarray:
        xor = words[rows, None] ^ words[None, :]
        keys = (wts[rows, None] * K + wts[None, :]) * K + popcount_u32(xor)
        return np.bincount(keys.ravel(), minlength=K * K * K)

    jobs = max(1, jobs)
    blocks = [slice(i, min(i + 256, m)) for i in range(0, m, 256)]
    if jobs == 1 or len(blocks) == 1:
        total = sum(count_block(b) for b in blocks)
    else:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            total = sum(pool.map(count_block, blocks))
    counts = {}
    for key in np.flatnonzero(total):
        wa, rest = divmod(int(key), K * K)
        wb, wc = divmod(rest, K)
        counts[(wa, wb, wc)] = int(total[key])
    return PairWeightTable(n=S.n, size=m, counts=counts)


# ===== 3. validation =================================================


@dataclass(frozen=True)
class ValidationReport:
    is_linear: bool
    all_weights_even: bool
    self_orthogonal: bool
    excludes_all_ones: bool
    messages: tuple[str, ...] = field(default=())

    @property
    def ok(self) -> bool:
        return (
            self.is_linear
            and self.all_weights_even
            and self.self_orthogonal
            and self.excludes_all_ones
        )


def validate_S(S: CodewordSet) -> ValidationReport:
    """Check S really is the kind of code the distillation maps assume.

    Required: linear (closed under XOR, contains 0), all weights even,
    pairwise even overlaps (self-orthogonal), and the all-ones word absent
    so that the two logical basis states do not collide.
    """
    msgs: list[str] = []
    words = set(S.words)
    basis = _gf2_basis(S.words)
    linear = 0 in words and len(words) == 1 << len(basis)
    if linear:
        # spans agree (cheap because |span| == |S|)
        linear = set(span_codewords(basis, S.n).words) == words
    if not linear:
        msgs.append("set is not closed under XOR")

    even = all(w.bit_count() % 2 == 0 for w in S.words)
    if not even:
        msgs.append("a codeword has odd weight")

    if linear:
        # bilinearity: checking the basis suffices
        pairs = [(a, b) for i, a in enumerate(basis) for b in basis[i:]]
    else:
        pairs = [(a, b) for a in S.words for b in S.words]
    ortho = all((a & b).bit_count() % 2 == 0 for a, b in pairs)
    if not ortho:
        msgs.append("two codewords overlap on an odd number of positions")

    ones_ok = (1 << S.n) - 1 not in words
    if not ones_ok:
        msgs.append("the all-ones word is in S (logical states would collide)")

    return ValidationReport(
        is_linear=linear,
        all_weights_even=even,
        self_orthogonal=ortho,
        excludes_all_ones=ones_ok,
        messages=tuple(msgs),
    )


# ===== 4. built-in codes =============================================


@functools.cache
def steane_S() -> CodewordSet:
    """Even subcode of the [7,4] Hamming code: {0} plus seven weight-4 words."""
    gens = [str_to_word(g) for g in ("0001111", "0110011", "1010101")]
    return span_codewords(gens, 7)


@functools.cache
def golay_S() -> CodewordSet:
    """Even-weight subcode (dimension 11) of the cyclic [23,12,7] Golay code.

    The full code is spanned by the 12 cyclic shifts of the generator
    polynomial x^11 + x^10 + x^6 + x^5 + x^4 + x^2 + 1; the even subcode is
    carved out by pairing up the odd-weight generators.
    """
    n = 23
    gpoly = (1 << 11) | (1 << 10) | (1 << 6) | (1 << 5) | (1 << 4) | (1 << 2) | 1
    shifts = [gpoly << i for i in range(12)]  # degrees <= 22, no wraparound
    odd = [g for g in shifts if g.bit_count() % 2]
    even = [g for g in shifts if g.bit_count() % 2 == 0]
    gens = even + [odd[0] ^ g for g in odd[1:]]
    S = span_codewords(gens, n)
    assert S.dim == 11, "even Golay subcode should have dimension 11"
    return S


@functools.cache
def rm15_S() -> CodewordSet:
    """Logical-|0> support of the 15-qubit punctured Reed-Muller code.

    Spanned by the four linear forms on F_2^4 evaluated at the 15 nonzero
    points: {0} plus fifteen weight-8 words.
    """
    n = 15
    gens = []
    for j in range(4):
        bits = 0
        for i in range(1, 16):  # point i sits at position i (MSB = position 1)
            if (i >> j) & 1:
                bits |= 1 << (n - i)
        gens.append(bits)
    return span_codewords(gens, n)


# ===== 5. code files =================================================


def parse_code_text(text: str) -> CodewordSet:
    """Parse the code file format: first line "n=<int>", then one generator
    bitstring per line (leftmost character = position 1)."""
    lines = [ln.strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln and not ln.startswith("#")]
    if not lines or not lines[0].startswith("n="):
        raise ValueError('code file must start with "n=<int>"')
    try:
        n = int(lines[0][2:])
    except ValueError as exc:
        raise ValueError(f"bad n in code file: {lines[0]!r}") from exc
    gens = []
    for ln in lines[1:]:
        if len(ln) != n:
            raise ValueError(f"generator {ln!r} is not {n} bits long")
        gens.append(str_to_word(ln))
    return span_codewords(gens, n)


def load_code(path: str | Path) -> CodewordSet:
    return parse_code_text(Path(path).read_text())


def resolve_code(selector: str) -> CodewordSet:
    """Map a CLI selector (steane | golay | rm15 | @file) to a codeword set."""
    builtin = {"steane": steane_S, "golay": golay_S, "rm15": rm15_S}
    if selector in builtin:
        return builtin[selector]()
    if selector.startswith("@"):
        return load_code(selector[1:])
    raise ValueError(
        f"unknown code {selector!r} (expected steane, golay, rm15 or @file)"
    )


# ===== 6. random supports for randomized verification ================


def random_code_support(n: int, rng: random.Random) -> CodewordSet:
    """A random valid codeword support on n positions.

    Rejection sampling: draw a few even-weight generators, force pairwise
    even overlaps, and keep the span only if the full validity report is
    clean (in particular the all-ones word must stay outside the span).
    """
    if not 2 <= n <= 16:
        raise ValueError(f"random supports are kept small: n in 2..16, got {n}")
    for _ in range(400):
        k = rng.randint(1, max(2, n // 2))
        gens: list[int] = []
        for _ in range(k):
            w = rng.getrandbits(n)
            if w.bit_count() % 2:
                w ^= 1 << rng.randrange(n)  # make the weight even
            if w:
                gens.append(w)
        if not gens:
            continue
        if any(
            (a & b).bit_count() % 2 for i, a in enumerate(gens) for b in gens[:i]
        ):
            continue
        S = span_codewords(gens, n)
        if validate_S(S).ok:
            return S
    raise RuntimeError(f"could not sample a valid support on {n} positions")
