from __future__ import annotations

import json

import pytest
from hypothesis import given, settings, strategies as st

from builders import K
from rrlab import formats
from rrlab.arrows import ArrowQuery, verify_arrow
from rrlab.colourings import Colouring
from rrlab.gluing import make_triple
from rrlab.sequences import SeqSet
from rrlab.structures import enumerate_copies, generate_random


@settings(max_examples=50, deadline=None)
@given(st.sampled_from([(1, 0), (2, 2), (2, 1), (3, 1)]), st.integers(0, 6), st.integers(0, 2**32))
def test_structure_round_trip(nm, size, seed):
    s = generate_random(*nm, size, seed)
    text = formats.dumps_json(formats.structure_to_json(s))
    back = formats.structure_from_json(json.loads(text))
    assert back == s
    assert formats.dumps_json(formats.structure_to_json(back)) == text


@settings(max_examples=50, deadline=None)
@given(st.integers(2, 4), st.sets(st.lists(st.integers(0, 3), max_size=4).map(tuple), max_size=6))
def test_seqset_round_trip(d, elems):
    S = SeqSet.of(d, [tuple(min(c, d - 1) for c in x) for x in elems])
    text = formats.seqset_to_text(S)
    assert formats.seqset_from_text(text) == S
    assert formats.seqset_to_text(formats.seqset_from_text(text)) == text


def test_colouring_round_trip():
    c = Colouring.of(enumerate_copies(K(4), K(2)), [0, 1, 0, 2, 2, 1])
    obj = json.loads(formats.dumps_json(formats.colouring_to_json(c)))
    assert formats.colouring_from_json(obj) == c


def test_triple_round_trip():
    t = make_triple([(1, 0, 0, 0), ()], [(0, 0, 0), ()])
    obj = json.loads(formats.dumps_json(formats.triple_to_json(t)))
    assert formats.triple_from_json(obj, 2) == t


@pytest.mark.parametrize("A", [K(2), K(3)])
def test_certificate_round_trip(A):
    cert = verify_arrow(ArrowQuery(A, K(2), K(1), 2))
    for timing in (False, True):
        text = formats.dumps_json(formats.certificate_to_json(cert, timing=timing))
        back = formats.certificate_from_json(json.loads(text), cert.copies)
        assert formats.dumps_json(formats.certificate_to_json(back, timing=timing)) == text
        assert back.holds == cert.holds and back.witnesses == cert.witnesses
    assert "ms" not in formats.certificate_to_json(cert, timing=False)["stats"]


class TestErrors:
    def test_bad_json_reports_line_and_column(self, tmp_path):
        p = tmp_path / "s.json"
        p.write_text('{\n  "n": 2,\n  oops\n}')
        with pytest.raises(formats.FormatError) as err:
            formats.read_structure(p)
        assert err.value.where == f"{p}:3:3"

    def test_structure_paths(self):
        obj = formats.structure_to_json(K(3))
        obj["edges"][1]["label"]["i"] = "x"
        with pytest.raises(formats.FormatError) as err:
            formats.structure_from_json(obj)
        assert err.value.where == "structure.edges[1].label.i"

    def test_structure_must_be_simple(self):
        obj = formats.structure_to_json(K(3))
        del obj["edges"][0]
        with pytest.raises(formats.FormatError, match="no label"):
            formats.structure_from_json(obj)

    def test_unknown_vertex(self):
        obj = formats.structure_to_json(K(2))
        obj["edges"][0]["v"] = "9"
        with pytest.raises(formats.FormatError) as err:
            formats.structure_from_json(obj)
        assert err.value.where.endswith("edges[0].v")

    def test_seqset_line_numbers(self):
        with pytest.raises(formats.FormatError) as err:
            formats.seqset_from_text("d=2\n0,1\n\n0,2\n")
        assert err.value.where == "sequences:4"
        with pytest.raises(formats.FormatError) as err:
            formats.seqset_from_text("d=2\n0\n0\n")
        assert err.value.where == "sequences:3"
        with pytest.raises(formats.FormatError):
            formats.seqset_from_text("0,1\n")
        with pytest.raises(formats.FormatError):
            formats.seqset_from_text("")

    def test_colouring_must_be_canonical(self):
        with pytest.raises(formats.FormatError):
            formats.colouring_from_json({"copies": [["b"], ["a"]], "colours": [0, 0]})
        with pytest.raises(formats.FormatError) as err:
            formats.colouring_from_json({"copies": [["a"]], "colours": [-1]})
        assert err.value.where == "colouring.colours[0]"

    def test_triple_union(self):
        with pytest.raises(formats.FormatError):
            formats.triple_from_json({"B": ["0"], "X": ["0"], "Y": ["1"]})
        with pytest.raises(formats.FormatError) as err:
            formats.triple_from_json({"B": ["0", 3], "X": ["0"], "Y": ["1"]})
        assert err.value.where == "triple.B[1]"

    def test_certificate_consistency(self):
        with pytest.raises(formats.FormatError):
            formats.certificate_from_json({"verdict": "fails", "stats": {"colourings": 1}})
        with pytest.raises(formats.FormatError):
            formats.certificate_from_json({"verdict": "maybe"})
