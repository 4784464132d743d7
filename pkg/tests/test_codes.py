"""Codeword supports: constructions, weight tables, validation, files."""

import random

import pytest

from magicdist.codes import (
    golay_S,
    load_code,
    pair_weight_table,
    parse_code_text,
    random_code_support,
    resolve_code,
    rm15_S,
    span_codewords,
    steane_S,
    str_to_word,
    validate_S,
    weight_distribution,
    word_to_str,
)

# the Golay pair-weight classes, keyed ((|a|, |b|) -> {|a^b|: count})
GOLAY_PAIR_CLASSES = {
    (8, 8): {0: 506, 8: 106260, 12: 141680, 16: 7590},
    (8, 12): {8: 141680, 12: 425040, 16: 85008},
    (8, 16): {8: 7590, 12: 85008, 16: 35420},
    (12, 12): {0: 1288, 8: 425040, 12: 1020096, 16: 212520},
    (12, 16): {8: 85008, 12: 212520, 16: 28336},
    (16, 16): {0: 253, 8: 35420, 12: 28336, 16: 0},
}


# ===== 1. the built-in supports ======================================


def test_steane_support():
    S = steane_S()
    assert S.n == 7 and S.dim == 3 and len(S.words) == 8
    assert weight_distribution(S).counts == {0: 1, 4: 7}
    assert validate_S(S).ok


def test_golay_weight_distribution_matches_the_even_rows():
    S = golay_S()
    assert S.n == 23 and S.dim == 11
    assert weight_distribution(S).counts == {0: 1, 8: 506, 12: 1288, 16: 253}
    assert validate_S(S).ok


def test_rm15_support():
    S = rm15_S()
    assert S.n == 15 and S.dim == 4
    assert weight_distribution(S).counts == {0: 1, 8: 15}
    assert validate_S(S).ok


def test_golay_pair_weight_table_exact():
    S = golay_S()
    table = pair_weight_table(S)
    counts = table.counts
    assert table.size == len(S.words)
    assert table.total() == len(S.words) ** 2
    for (wa, wb), row in GOLAY_PAIR_CLASSES.items():
        for wc, expected in row.items():
            assert counts.get((wa, wb, wc), 0) == expected, (wa, wb, wc)
            assert counts.get((wb, wa, wc), 0) == expected, (wb, wa, wc)
    # rows against the zero word reproduce the weight distribution
    wd = weight_distribution(S).counts
    for w, cnt in wd.items():
        if w:
            assert counts[(0, w, w)] == cnt
            assert counts[(w, 0, w)] == cnt


def test_pair_weight_table_parallel_matches_serial():
    S = golay_S()
    assert pair_weight_table(S, jobs=1).counts == pair_weight_table(S, jobs=4).counts


def test_pair_weight_table_is_symmetric_for_steane():
    counts = pair_weight_table(steane_S()).counts
    assert counts == {
        (0, 0, 0): 1,
        (0, 4, 4): 7,
        (4, 0, 4): 7,
        (4, 4, 0): 7,
        (4, 4, 4): 42,
    }


# ===== 2. validation =================================================


def test_validation_catches_odd_weights():
    S = span_codewords([0b110, 0b011], 3)  # contains weight-2 words, fine
    assert validate_S(S).all_weights_even
    bad = span_codewords([0b100], 3)
    report = validate_S(bad)
    assert not report.all_weights_even
    assert not report.ok


def test_validation_catches_all_ones():
    bad = span_codewords([0b11, 0b00], 2)
    report = validate_S(bad)
    assert not report.excludes_all_ones
    assert not report.ok


def test_validation_catches_odd_overlaps():
    # weight-2 words with a single shared position
    bad = span_codewords([0b1100, 0b0110], 4)
    report = validate_S(bad)
    assert not report.self_orthogonal
    assert not report.ok


# ===== 3. files and selectors ========================================


def test_code_file_round_trip(tmp_path):
    S = steane_S()
    text = "n=7\n" + "\n".join(word_to_str(g, 7) for g in [0b0001111, 0b0110011, 0b1010101]) + "\n"
    path = tmp_path / "steane.code"
    path.write_text(text)
    loaded = load_code(path)
    assert loaded.words == S.words
    assert resolve_code(f"@{path}").words == S.words


def test_parse_code_text_errors():
    with pytest.raises(ValueError):
        parse_code_text("7\n0001111\n")
    with pytest.raises(ValueError):
        parse_code_text("n=7\n00111\n")
    with pytest.raises(ValueError):
        parse_code_text("n=x\n")


def test_resolve_code_rejects_unknown():
    with pytest.raises(ValueError):
        resolve_code("hamming")


def test_word_str_round_trip():
    rng = random.Random(2)
    for _ in range(50):
        n = rng.randrange(1, 24)
        w = rng.getrandbits(n)
        assert str_to_word(word_to_str(w, n)) == w


# ===== 4. random supports ============================================


def test_random_supports_are_valid():
    rng = random.Random(31)
    for _ in range(30):
        S = random_code_support(rng.randint(3, 8), rng)
        report = validate_S(S)
        assert report.ok, report.messages
        assert 0 in S.words
