import pytest

from nrcodes.codes import (
    Code,
    CodeFileError,
    code_predicates,
    coset_decomposition,
    golay24,
    is_linear,
    linear_basis,
    nordstrom_robinson,
    project,
    puncture,
    punctured_nr,
    read_code,
    reed_muller_subcode,
    span,
    translate,
    write_code,
)

JSTAR_MASK = (1 << 8) - 1


def test_golay_parameters(golay):
    assert golay.m == 24
    assert golay.size == 4096
    assert golay.min_distance == 8
    assert 0 in golay
    assert (1 << 8) - 1 in golay  # the all-ones prefix word
    hist = golay.weight_histogram
    assert (hist[8], hist[12], hist[16]) == (759, 2576, 759)
    assert hist[0] == hist[24] == 1
    assert sum(hist) == 4096


def test_golay_is_linear(golay):
    assert is_linear(golay)
    assert len(linear_basis(golay)) == 12


def test_golay_construction_deterministic():
    a = golay24.__wrapped__()
    b = golay24.__wrapped__()
    assert a.words == b.words


def test_coset_decomposition(golay):
    decomp = coset_decomposition(golay)
    assert decomp.D.size == 32
    assert 0 in decomp.D
    assert all(w & JSTAR_MASK == 0 for w in decomp.D.words)
    for i, rep in enumerate(decomp.reps, start=1):
        assert rep & JSTAR_MASK == (1 << (i - 1)) | (1 << 7)
    cosets = decomp.cosets()
    assert len(cosets) == 8
    all_words = [w for c in cosets for w in c]
    assert len(set(all_words)) == 8 * 32  # pairwise disjoint


def test_projection():
    c = Code(3, [0b000, 0b111])
    assert project(c, [1, 2, 3]) == c
    assert project(c, [1, 2]).words == (0b00, 0b11)
    with pytest.raises(ValueError):
        project(c, [])
    with pytest.raises(ValueError):
        project(c, [0, 1])


def test_projection_of_d_is_injective(golay):
    decomp = coset_decomposition(golay)
    assert project(decomp.D, range(9, 25)).size == 32


def test_nordstrom_robinson(nr):
    assert (nr.m, nr.size, nr.min_distance) == (16, 256, 6)
    assert all(w.bit_count() % 2 == 0 for w in nr.words)
    hist = nr.weight_histogram
    assert hist[6] == 112 and hist[8] == 30 and hist[10] == 112
    assert 0 in nr


def test_nr_construction_deterministic():
    a = nordstrom_robinson.__wrapped__()
    b = nordstrom_robinson.__wrapped__()
    assert a.words == b.words


def test_nr_is_union_of_kernel_cosets(nr, rm, golay):
    decomp = coset_decomposition(golay)
    words = set(rm.words)
    for rep in decomp.reps:
        words.update(w ^ (rep >> 8) for w in rm.words)
    assert tuple(sorted(words)) == nr.words


def test_nr_independent_of_representative_choice(nr, golay):
    # the construction pins the least qualifying word; any qualifying word
    # gives the same projected union
    decomp = coset_decomposition(golay)
    words = [w >> 8 for w in decomp.D.words]
    for i in range(1, 8):
        pattern = (1 << (i - 1)) | (1 << 7)
        candidates = [w for w in golay.words if w & JSTAR_MASK == pattern]
        second = candidates[1]
        words.extend((second ^ w) >> 8 for w in decomp.D.words)
    assert tuple(sorted(set(words))) == nr.words


def test_reed_muller_subcode(nr, rm):
    assert (rm.m, rm.size, rm.min_distance) == (16, 32, 8)
    assert is_linear(rm)
    assert all(w in nr for w in rm.words)
    for a in rm.words:
        for b in rm.words:
            assert (a ^ b) in rm


def test_puncture(nr):
    pn = puncture(nr, 1)
    assert (pn.m, pn.size, pn.min_distance) == (15, 256, 5)
    assert pn.weight_histogram[5] == 42
    assert puncture(Code(2, [0b00, 0b11]), 1).words == (0, 1)
    with pytest.raises(ValueError):
        puncture(nr, 17)
    assert punctured_nr(1) == pn


def test_translate(nr, rm):
    c = Code(3, [0b000, 0b011])
    assert translate(c, 0) == c
    lin = span([0b011, 0b101], 3)
    for w in lin.words:
        assert translate(lin, w) == lin
    beta = next(w for w in nr.words if w not in rm and w != 0)
    assert translate(nr, beta) != nr
    with pytest.raises(ValueError):
        translate(c, 1 << 5)


def test_code_predicates(nr):
    preds = code_predicates(nr)
    assert preds.is_antipodal
    assert not preds.is_linear
    assert preds.is_even
    small = code_predicates(Code(3, [0b000, 0b011]))
    assert not small.is_antipodal
    rep = code_predicates(Code(3, [0b000, 0b111]))
    assert rep.is_antipodal and rep.is_linear


def test_code_basics():
    c = Code(4, [3, 5, 3, 0])  # duplicates collapse
    assert c.words == (0, 3, 5)
    assert len(c) == 3
    assert 5 in c and 6 not in c
    assert c.min_distance == 2
    assert Code(4, [7]).min_distance is None
    with pytest.raises(ValueError):
        Code(3, [])
    with pytest.raises(ValueError):
        Code(3, [9])


def test_code_file_round_trip(tmp_path, nr):
    path = tmp_path / "nr.code"
    write_code(nr, path)
    lines = path.read_text().splitlines()
    assert lines[0] == "m=16"
    assert len(lines) == 257
    assert read_code(path) == nr


def test_code_file_reader_accepts_any_order(tmp_path):
    path = tmp_path / "c.code"
    path.write_text("m=3\n110\n000\n110\n")
    code = read_code(path)
    assert code.words == (0, 0b011)


@pytest.mark.parametrize(
    "content",
    [
        "110\n000\n",  # missing header
        "m=3\n11\n",  # wrong length
        "m=3\n11x\n",  # bad character
        "m=0\n",  # bad length
        "m=3\n",  # no words
    ],
)
def test_code_file_reader_rejects(tmp_path, content):
    path = tmp_path / "bad.code"
    path.write_text(content)
    with pytest.raises(CodeFileError):
        read_code(path)
