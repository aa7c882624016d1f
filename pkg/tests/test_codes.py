import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from hcp import codes
from hcp.codes import BinaryCode
from hcp.words import Word


def brute_min_distance(words):
    w = np.asarray(words, dtype=np.int64)
    d = np.bitwise_count(w[:, None] ^ w[None, :])
    np.fill_diagonal(d, 99)
    return int(d.min())


def test_c8_codes(built):
    c8, c8p = built["c8"], built["c8p"]
    assert len(c8) == len(c8p) == 16
    assert codes.min_distance(c8) == codes.min_distance(c8p) == 4
    assert brute_min_distance(c8.words) == 4
    assert sorted(set(c8.words.tolist()) & set(c8p.words.tolist())) == [0b00000000, 0b11111111]
    assert Word.parse("00101110").bits in c8
    assert Word.parse("01001110").bits in c8p


def test_cyclic_closure_is_rotation_and_xor_closed(built):
    for c in (built["c8"], built["c8p"]):
        s = set(c.words.tolist())
        assert all(codes.rotate_first7(w) in s for w in s)
        assert all((a ^ b) in s for a in s for b in s)


def test_rotation_fixes_last_position():
    w = Word.parse("10000001").bits
    assert format(codes.rotate_first7(w), "08b") in ("01000001", "00000011")
    x = Word.parse("00101110").bits
    y = x
    for _ in range(7):
        y = codes.rotate_first7(y)
    assert y == x


def test_b8(built):
    b8 = built["b8"]
    assert len(b8) == 128 and codes.min_distance(b8) == 2
    assert np.all(np.bitwise_count(b8.words) % 2 == 0)
    assert codes.is_subcode(built["c8p"], b8) and codes.is_subcode(built["c8"], b8)


def test_golay(built):
    f = built["f"]
    assert len(f) == 4096 and f.rank == 12
    assert codes.min_distance(f) == 8
    weights = np.bincount(np.bitwise_count(f.words), minlength=25)
    # weight distribution of the extended Golay code
    assert {w: int(weights[w]) for w in np.flatnonzero(weights)} == {0: 1, 8: 759, 12: 2576, 16: 759, 24: 1}


def test_turyn_of_zero_codes():
    z = BinaryCode.linear(8, [])
    out = codes.turyn_compose(z, z)
    assert out.words.tolist() == [0] and out.length == 24


def test_code_d(built):
    d = built["d"]
    assert len(d) == 1 << 18 and codes.min_distance(d) == 4
    assert codes.is_subcode(built["f"], d)


def test_d_words_are_distinct_triples(built):
    # |C8| * |B8|^2 distinct words: the generator map is injective
    c8, b8 = built["c8"], built["b8"]
    assert c8.rank + 2 * b8.rank == built["d"].rank == 18


def test_c16_and_l(built):
    c16, l_code = built["c16"], built["l"]
    assert len(c16) == 1 << 11 and codes.min_distance(c16) == 4
    assert len(l_code) == 1 << 18
    assert np.all(np.bitwise_count(l_code.words) % 2 == 0)
    assert codes.min_distance(l_code) == 2


def test_c16_inner_code_choice(built):
    # the inner code C8' gives the (16, 2^11, 4) code directly
    c16 = codes._build_c16_from(built["c8p"])
    assert c16.rank == 11 and codes.min_distance(c16) == 4


def test_n(built):
    n_code, l_code = built["n"], built["l"]
    assert len(n_code) == 1 << 21
    assert codes.n_offset() == Word.parse("000000010000000100000001").bits
    assert Word(codes.n_offset(), 24).weight == 3
    assert np.all(np.bitwise_count(n_code.words) % 2 == 1)
    off = codes.n_offset()
    assert all((v ^ off) in n_code for v in l_code.basis)
    shifted = l_code.translate(off)
    assert np.all(np.isin(shifted.words, n_code.words))
    assert codes.n_offset() in n_code


def test_set_distance(built):
    assert codes.set_distance(built["d"], built["n"]) == 3
    assert codes.set_distance(built["f"], built["f"]) == 0
    omega = codes.neighborhood(built["f"])
    assert codes.set_distance(built["f"], omega) == 1


def test_set_distance_small_brute_force():
    rng = np.random.default_rng(1)
    for _ in range(30):
        n = int(rng.integers(3, 9))
        a = BinaryCode.linear(n, rng.integers(0, 1 << n, 2).tolist())
        b = BinaryCode.linear(n, rng.integers(0, 1 << n, 2).tolist()).translate(int(rng.integers(0, 1 << n)))
        brute = int(np.bitwise_count(a.words[:, None] ^ b.words[None, :]).min())
        assert codes.set_distance(a, b) == brute
        explicit = BinaryCode.from_words(n, b.words)
        assert codes.set_distance(a, explicit) == brute


def test_neighborhood(built):
    f = built["f"]
    omega = codes.neighborhood(f)
    assert len(omega) == 24 * 4096
    assert np.all(np.bitwise_count(omega.words) % 2 == 1)
    assert codes.neighborhood(BinaryCode.linear(24, [])).words.tolist() == [1 << i for i in range(24)]
    assert len(codes.neighborhood(BinaryCode.from_words(24, []))) == 0


def test_min_distance_errors():
    with pytest.raises(ValueError):
        codes.min_distance(BinaryCode.linear(8, []))
    with pytest.raises(ValueError):
        codes.min_distance(BinaryCode.from_words(8, []))
    assert codes.min_distance(BinaryCode.from_words(8, [0b111, 0b1, 0b11110000])) == 2


def test_coset_partition_golay(built):
    cosets = codes.build_golay_neighborhood_cosets()
    assert len(cosets) == 64
    assert cosets[0].offset is None and np.array_equal(cosets[0].words, built["f"].words)
    reps = [int(c.words[0]) for c in cosets]
    assert reps == sorted(reps)
    allw = np.concatenate([c.words for c in cosets])
    assert allw.size == len(built["d"]) and np.array_equal(np.sort(allw), built["d"].words)


def test_coset_partition_l_in_n(built):
    cosets = codes.build_l_cosets()
    assert len(cosets) == 8
    allw = np.sort(np.concatenate([c.words for c in cosets]))
    assert np.array_equal(allw, built["n"].words)


def test_coset_partition_trivial_and_errors(built):
    f = built["f"]
    [only] = codes.coset_partition(f, f)
    assert np.array_equal(only.words, f.words)
    with pytest.raises(ValueError):
        codes.coset_partition(built["d"], f)


def test_golay_neighborhoods_pairwise_disjoint():
    cosets = codes.build_golay_neighborhood_cosets()
    allw = np.concatenate([codes.neighborhood(c).words for c in cosets])
    assert allw.size == 64 * 24 * 4096
    assert np.unique(allw).size == allw.size


@settings(max_examples=50, deadline=None)
@given(st.integers(2, 12), st.lists(st.integers(0, 4095), max_size=6), st.integers(0, 4095))
def test_reduce_gives_smallest_coset_word(n, gens, v):
    gens = [g % (1 << n) for g in gens]
    v %= 1 << n
    code = BinaryCode.linear(n, gens)
    coset = code.words ^ np.uint32(v)
    assert codes.reduce(v, code.basis) == int(coset.min())
    assert len(code) == len(set(code.words.tolist()))
    s = set(code.words.tolist())
    assert all((a ^ b) in s for a in list(s)[:16] for b in list(s)[:16])


@settings(max_examples=30, deadline=None)
@given(st.integers(3, 10), st.data())
def test_min_distance_matches_brute_force(n, data):
    gens = data.draw(st.lists(st.integers(1, (1 << n) - 1), min_size=1, max_size=5))
    code = BinaryCode.linear(n, gens)
    if len(code) >= 2:
        assert codes.min_distance(code) == brute_min_distance(code.words)


def test_linearity_sampled(built):
    rng = np.random.default_rng(5)
    for name in ("f", "d", "c16", "l"):
        c = built[name]
        w = c.words
        a, b = rng.choice(w, 200), rng.choice(w, 200)
        assert all(int(x) in c for x in a ^ b)
        assert len(c) == 1 << c.rank == w.size


def test_text_format_roundtrip(tmp_path, built):
    for name in ("f", "n", "l"):
        path = tmp_path / f"{name}.code"
        codes.save(built[name], path)
        back = codes.load(path)
        assert back.basis == built[name].basis and back.offset == built[name].offset
    head = (tmp_path / "n.code").read_text().splitlines()[0]
    assert head == "code n=24 k=21 offset=000000010000000100000001"
    assert (tmp_path / "f.code").read_text().startswith("code n=24 k=12 offset=-\n")


def test_text_format_errors():
    with pytest.raises(ValueError):
        codes.loads("code n=8 k=2 offset=-\n10000000\n")
    with pytest.raises(ValueError):
        codes.loads("code n=8 k=2 offset=-\n10000000\n10000000\n")
    with pytest.raises(ValueError):
        codes.loads("nonsense")
