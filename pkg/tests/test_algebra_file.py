import json

import pytest
from hypothesis import given, strategies as st

from superkantor.algebra_file import AlgebraFileError, content_hash, dumps, loads
from superkantor.bracket import random_superskew_bracket
from superkantor.corpus import corpus_algebras
from superkantor.grassmann import grassmann_poisson_bracket
from superkantor.kantor import kantor_double


def same(A, B):
    return (A.basis == B.basis and A.parity == B.parity and dict(A.sc) == dict(B.sc)
            and A.unit_index == B.unit_index and A.name == B.name)


@pytest.mark.parametrize("key", list(corpus_algebras()))
def test_roundtrip(key):
    A = corpus_algebras()[key]
    text = dumps(A)
    B, br = loads(text)
    assert br is None and same(A, B)
    assert dumps(B) == text


@given(st.integers(0, 2 ** 32 - 1))
def test_roundtrip_with_bracket(seed):
    A = corpus_algebras()["T3xG1"]
    br = random_superskew_bracket(A, seed, (-1, 0, 1, "1/2"))
    text = dumps(A, br)
    B, br2 = loads(text)
    assert same(A, B)
    assert {k: dict(v) for k, v in br.constants.items()} == {k: dict(v) for k, v in br2.constants.items()}
    assert dumps(B, br2) == text


def test_double_labels_and_provenance():
    P = grassmann_poisson_bracket(2)
    J = kantor_double(P.algebra, P)
    doc = json.loads(dumps(J))
    assert doc["basis"][4:] == [b + "·x" for b in doc["basis"][:4]]
    assert "derived_from" in doc["metadata"]
    assert loads(dumps(J))[0].dim == 8


def minimal(**kw):
    doc = {"name": "a", "basis": ["1", "x"], "parity": [0, 1],
           "products": {"1*1": {"1": "1"}, "1*x": {"x": "1"}, "x*1": {"x": "1"}}}
    doc.update(kw)
    return json.dumps(doc)


@pytest.mark.parametrize("bad", [
    minimal(products={"1*y": {"1": "1"}}),
    minimal(products={"1*1": {"y": "1"}}),
    minimal(products={"1*1": {"1": "2/4"}}),
    minimal(products={"1*1": {"1": 0.5}}),
    minimal(products={"1x": {"1": "1"}}),
    minimal(products={"1*x": {"1": "1"}}),           # grading violated
    minimal(parity=[0, 2]),
    minimal(basis=["1", "1"]),
    minimal(basis=["1", "a*b"]),
    minimal(unit="z"),
    minimal(unit="x"),
    minimal(bracket={"x*x": {"x": "1"}}),             # bracket changes parity
    "not json",
    json.dumps([1, 2]),
])
def test_invalid_files(bad):
    with pytest.raises(AlgebraFileError):
        loads(bad)


def test_non_superskew_bracket_loads_but_is_flagged():
    from superkantor.bracket import is_superskew
    A, br = loads(minimal(bracket={"1*1": {"1": "1"}}))
    assert not is_superskew(br)


def test_dimension_cap(monkeypatch):
    monkeypatch.setenv("KANTOR_DIM_CAP", "1")
    with pytest.raises(AlgebraFileError, match="cap"):
        loads(minimal())


def test_content_hash_is_stable():
    assert content_hash("abc") == content_hash(b"abc")
    assert content_hash("abc").startswith("sha256:")
