# Tests for lattice spec validation, loading, and saving.

import pytest
import json
from src.thetaglue.core.errors import SpecError
from src.thetaglue.core.lattice_spec import Family, LatticeSpec, create_spec


def test_odd_family_ranks():
    """ODD_8M blocks have rank 8m."""
    spec = create_spec(Family.ODD_8M, (1, 1, 2))
    assert spec.k == 3
    assert spec.n == (8, 8, 16)
    assert spec.rank == 32
    assert spec.ell == 1


def test_even_family_ranks():
    """EVEN_8M4 blocks have rank 8m + 4."""
    spec = create_spec("EVEN_8M4", (0, 1))
    assert spec.family is Family.EVEN_8M4
    assert spec.n == (4, 12)
    assert spec.rank == 16


def test_four_block_ranks():
    """FOUR_BLOCK blocks have rank 8m + 4eps + 2."""
    assert create_spec(Family.FOUR_BLOCK, (0, 0, 0, 0)).n == (2, 2, 2, 2)
    assert create_spec(Family.FOUR_BLOCK, (0, 0, 0, 0), epsilon=1).rank == 24


@pytest.mark.parametrize("family,m,epsilon", [
    ("ODD_8M", (1, 1), 0),
    ("ODD_8M", (0,), 0),
    ("EVEN_8M4", (1,), 0),
    ("EVEN_8M4", (-1, 0), 0),
    ("FOUR_BLOCK", (0, 0, 0), 0),
    ("FOUR_BLOCK", (0, 0, 0, 0), 2),
    ("ODD_8M", (1,), 1),
    ("D_LATTICE", (1,), 0),
    ("ODD_8M", (), 0),
])
def test_invalid_specs(family, m, epsilon):
    """Parity, range and family violations are SpecErrors."""
    with pytest.raises(SpecError):
        create_spec(family, m, epsilon)


def test_k_must_match_m():
    """Explicit k must agree with the parameter count."""
    with pytest.raises(SpecError):
        LatticeSpec(family=Family.ODD_8M, k=3, m=(1,))


def test_describe():
    """One-line description."""
    spec = create_spec(Family.FOUR_BLOCK, (0, 0, 0, 1), epsilon=1)
    assert spec.describe() == "family=FOUR_BLOCK k=4 m=0,0,0,1 epsilon=1 n=6,6,6,14 rank=32"
    assert "epsilon" not in create_spec(Family.ODD_8M, (3,)).describe()


def test_save_and_load(tmp_path):
    """Specs round-trip through JSON."""
    spec = create_spec(Family.EVEN_8M4, (1, 1))
    path = tmp_path / "d12.json"
    spec.save(path)

    data = json.loads(path.read_text())
    assert data == {"family": "EVEN_8M4", "k": 2, "m": [1, 1], "epsilon": 0}
    assert LatticeSpec.load(path) == spec


def test_load_comma_string(write_spec):
    """m may be given as a comma list; k defaults to its length."""
    path = write_spec("ODD_8M", "1,1,1")
    spec = LatticeSpec.load(path)
    assert spec.m == (1, 1, 1)
    assert spec.k == 3


def test_load_missing_field(tmp_path):
    """A spec without m is rejected."""
    path = tmp_path / "bad.json"
    path.write_text(json.dumps({"family": "ODD_8M"}))
    with pytest.raises(SpecError, match="missing field 'm'"):
        LatticeSpec.load(path)


def test_load_malformed(tmp_path, write_spec):
    """Broken JSON, non-numeric m and missing files."""
    broken = tmp_path / "broken.json"
    broken.write_text("{ not json")
    with pytest.raises(SpecError):
        LatticeSpec.load(broken)
    with pytest.raises(SpecError):
        LatticeSpec.load(write_spec("ODD_8M", "1,x", name="nan.json"))
    with pytest.raises(SpecError):
        LatticeSpec.load(tmp_path / "absent.json")
    with pytest.raises(SpecError):
        LatticeSpec.from_dict([1, 2])


@pytest.mark.parametrize("field,value", [
    ("m", [1.5]),
    ("m", [True]),
    ("m", "1,2.5"),
    ("k", 1.5),
    ("epsilon", 0.5),
])
def test_load_rejects_fractional_parameters(write_spec, field, value):
    """Block parameters are whole numbers, never truncated."""
    base = {"family": "ODD_8M", "m": [1]}
    base[field] = value
    path = write_spec(base.pop("family"), base.pop("m"), **base)
    with pytest.raises(SpecError, match="must be an integer"):
        LatticeSpec.load(path)


def test_load_accepts_integral_floats(write_spec):
    """1.0 is the integer 1."""
    spec = LatticeSpec.load(write_spec("ODD_8M", [1.0, 1, 2.0]))
    assert spec.m == (1, 1, 2)
