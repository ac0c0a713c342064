import json

import pytest
from hypothesis import given

from blocktoeplitz import INF, Circulant, Diagonal, Explicit, Matrix, Polynomial, Schur, fab_basis, gr
from blocktoeplitz.casestudies import nilpotent_case
from blocktoeplitz.serialize import (
    SchemaError,
    bt_from_json,
    bt_to_json,
    case_report_to_json,
    family_to_json,
    matrix_from_json,
    spec_from_json,
    spec_to_json,
)
from conftest import block_toeplitz


@given(block_toeplitz())
def test_block_toeplitz_roundtrip(t):
    assert bt_from_json(json.loads(json.dumps(bt_to_json(t)))) == t


def test_block_order_in_json():
    t = bt_from_json({"n": 2, "d": 1, "blocks": [[["5"]], [["1"]], [["3/2i"]]]})
    assert t.coeff(-1) == 5 and t.coeff(0) == 1 and t.coeff(1) == gr("3/2i")


@pytest.mark.parametrize("spec", [Diagonal(3), Circulant(3, INF), Circulant(2, gr("1-i")), Schur(1, 2),
                                  Polynomial(Matrix([[0, 1], [0, 0]])),
                                  Explicit(2, [Matrix.identity(2)])], ids=repr)
def test_spec_roundtrip(spec):
    assert spec_from_json(json.loads(json.dumps(spec_to_json(spec)))) == spec


@pytest.mark.parametrize("obj, field", [
    ({"n": 2, "d": 1, "blocks": [[["1"]]]}, "toeplitz.blocks"),
    ({"n": 0, "d": 1, "blocks": []}, "toeplitz.n"),
    ({"n": 1, "d": 1, "blocks": [[["x"]]]}, "toeplitz.blocks[0][0][0]"),
    ({"n": 1, "d": 2, "blocks": [[["1"]]]}, "toeplitz.blocks[0]"),
    ([1, 2], "toeplitz"),
])
def test_schema_errors_name_field(obj, field):
    with pytest.raises(SchemaError) as info:
        bt_from_json(obj)
    assert info.value.field == field


def test_spec_errors():
    with pytest.raises(SchemaError):
        spec_from_json({"kind": "banded"})
    with pytest.raises(SchemaError):
        spec_from_json({"kind": "poly", "M": [["1", "2"]]})
    with pytest.raises(SchemaError):
        spec_from_json({"kind": "circulant", "n": 2, "alpha": "1+"})
    with pytest.raises(SchemaError):
        matrix_from_json([["1"], ["1", "2"]])
    with pytest.raises(SchemaError):
        matrix_from_json([[True]])


def test_reports_are_json():
    f = fab_basis(Diagonal(2), Matrix.identity(2), Matrix.zeros(2), 2)
    out = family_to_json(f)
    assert out["dim"] == 4 and out["entry"] == {"kind": "diagonal", "d": 2}
    rep = json.dumps(case_report_to_json(nilpotent_case(2)), sort_keys=True)
    assert json.loads(rep)["verdict"] == "verified"
