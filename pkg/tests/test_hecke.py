"""Hecke table format, providers, and the Weil transform."""

import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from g3surj.hecke import (
    DatabaseAdapter,
    FixtureDirectory,
    HeckeFetchError,
    HeckeFormatError,
    HeckeTable,
    MissingHeckeTable,
    cache_filename,
    fetch_hecke_table,
    parse_hecke_table,
    serialize_hecke_table,
    weil_transform,
)
from g3surj.intpoly import IntPoly

# -- parsing ------------------------------------------------------------------


def test_parse_basic():
    t = parse_hecke_table("M 11 d 1\n2 -2 1\n")
    assert t.level == 11 and t.dim == 1
    assert t.polynomial(2) == IntPoly([-2, 1])


def test_parse_empty_table():
    t = parse_hecke_table("M 1 d 0\n")
    assert t.level == 1 and t.dim == 0 and not t.entries
    assert t.polynomial(5) == IntPoly([1])
    assert t.covers([2, 5, 7])


def test_parse_comments_and_blanks():
    t = parse_hecke_table("# generated\nM 11 d 1\n\n2 -2 1  # T_2\n")
    assert t.polynomial(2) == IntPoly([-2, 1])


def test_parse_row_length_error_line_number():
    with pytest.raises(HeckeFormatError) as err:
        parse_hecke_table("M 11 d 1\n2 -2\n")
    assert err.value.line == 2


def test_parse_non_monic():
    with pytest.raises(HeckeFormatError) as err:
        parse_hecke_table("M 11 d 1\n2 -2 3\n")
    assert "monic" in str(err.value) and err.value.line == 2


def test_parse_duplicate_prime():
    with pytest.raises(HeckeFormatError) as err:
        parse_hecke_table("M 11 d 1\n2 -2 1\n2 0 1\n")
    assert "duplicate" in str(err.value) and err.value.line == 3


def test_parse_malformed_header():
    with pytest.raises(HeckeFormatError) as err:
        parse_hecke_table("level 11 dim 1\n")
    assert err.value.line == 1


def test_roundtrip_serialize_parse():
    t = HeckeTable(level=15, dim=2, entries={3: IntPoly([1, -1, 1]), 2: IntPoly([-1, 0, 1])})
    text = serialize_hecke_table(t)
    t2 = parse_hecke_table(text)
    assert t2.level == t.level and t2.dim == t.dim
    assert dict(t2.entries) == dict(t.entries)
    assert serialize_hecke_table(t2) == text


def test_committed_fixture_roundtrips(hecke_dir):
    text = (hecke_dir / "hecke_M2969.txt").read_text(encoding="utf-8")
    table = parse_hecke_table(text)
    assert table.level == 2969 and table.dim == 247
    assert serialize_hecke_table(table) == text


def test_table_invariants():
    with pytest.raises(ValueError):
        HeckeTable(level=11, dim=1, entries={2: IntPoly([3, 2, 1])})  # wrong degree
    with pytest.raises(ValueError):
        HeckeTable(level=11, dim=1, entries={2: IntPoly([3, 2])})  # not monic


# -- Weil transform -----------------------------------------------------------


def test_weil_transform_linear():
    assert weil_transform(IntPoly([-3, 1]), 5) == IntPoly([5, -3, 1])


def test_weil_transform_constant():
    assert weil_transform(IntPoly([1]), 7) == IntPoly([1])


def test_weil_transform_quadratic():
    assert weil_transform(IntPoly([-5, 0, 1]), 2) == IntPoly([4, 0, -1, 0, 1])


def test_weil_transform_requires_monic():
    with pytest.raises(ValueError):
        weil_transform(IntPoly([1, 2]), 3)


@given(
    st.integers(-9, 9),
    st.sampled_from([2, 3, 5, 7, 11]),
    st.lists(st.integers(-5, 5), min_size=0, max_size=4),
)
@settings(max_examples=100)
def test_weil_transform_divisibility(c, p, rest):
    # (x - c) | H  ==>  (x^2 - c x + p) | H'
    h = IntPoly([-c, 1]) * IntPoly(rest + [1])
    hp = weil_transform(h, p)
    assert hp.degree == 2 * h.degree and hp.is_monic()
    _, rem = hp.divmod_monic(IntPoly([p, -c, 1]))
    assert rem.is_zero()


# -- providers ----------------------------------------------------------------


def test_fixture_directory_missing(tmp_path):
    provider = FixtureDirectory(tmp_path)
    with pytest.raises(MissingHeckeTable) as err:
        provider.load(11)
    assert err.value.level == 11


def test_fixture_directory_loads(tmp_path):
    (tmp_path / cache_filename(11)).write_text("M 11 d 1\n2 -2 1\n", encoding="utf-8")
    t = FixtureDirectory(tmp_path).load(11)
    assert t.polynomial(2) == IntPoly([-2, 1])


def mock_payload(level=33, dim=3):
    return {
        "level": level,
        "dim_new": dim,
        "orbits": [
            {"label": "a", "dim": 1, "charpoly": {"2": [-1, 1], "5": [2, 1]}},
            {"label": "b", "dim": 2, "charpoly": {"2": [-1, 1, 1], "5": [1, 0, 1]}},
        ],
    }


def test_fetch_assembles_orbit_product(tmp_path):
    calls = []

    def opener(url, timeout):
        calls.append(url)
        return json.dumps(mock_payload()).encode()

    t = fetch_hecke_table(33, [2, 5], "http://db.example/api", cache_dir=tmp_path, opener=opener)
    assert t.dim == 3
    assert t.polynomial(2) == IntPoly([-1, 1]) * IntPoly([-1, 1, 1])
    assert t.polynomial(5) == IntPoly([2, 1]) * IntPoly([1, 0, 1])
    assert len(calls) == 1
    assert "level=33" in calls[0] and "weight=2" in calls[0]
    # second call comes from the cache, no network
    t2 = fetch_hecke_table(33, [2, 5], "http://db.example/api", cache_dir=tmp_path, opener=opener)
    assert len(calls) == 1
    assert dict(t2.entries) == dict(t.entries)


def test_fetch_zero_dimensional_level(tmp_path):
    def opener(url, timeout):
        return json.dumps({"level": 3, "dim_new": 0, "orbits": []}).encode()

    t = fetch_hecke_table(3, [2, 5, 7], "http://db.example", cache_dir=tmp_path, opener=opener)
    assert t.dim == 0 and not t.entries
    assert (tmp_path / cache_filename(3)).read_text(encoding="utf-8") == "M 3 d 0\n"


def test_fetch_orbit_degree_mismatch():
    payload = mock_payload(dim=4)

    def opener(url, timeout):
        return json.dumps(payload).encode()

    with pytest.raises(HeckeFetchError) as err:
        fetch_hecke_table(33, [2], "http://db.example", opener=opener)
    assert "orbit degrees" in str(err.value)


def test_fetch_missing_prime():
    def opener(url, timeout):
        return json.dumps(mock_payload()).encode()

    with pytest.raises(HeckeFetchError) as err:
        fetch_hecke_table(33, [2, 7], "http://db.example", opener=opener)
    assert "p = 7" in str(err.value)


def test_fetch_bounded_retries():
    calls = []

    def opener(url, timeout):
        calls.append(url)
        raise OSError("connection refused")

    client_error = None
    with pytest.raises(HeckeFetchError) as err:
        fetch_hecke_table(33, [2], "http://db.example", opener=opener, retries=3)
    assert len(calls) == 3
    assert "after 3 attempts" in str(err.value)


def test_adapter_url_shape():
    url = DatabaseAdapter().query_url("http://db.example/api/", 2969, [7, 2, 5])
    assert url == "http://db.example/api/newforms?level=2969&weight=2&primes=2,5,7"
