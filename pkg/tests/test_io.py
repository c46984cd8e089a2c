import numpy as np
import pytest

from theta_norms import io as tio
from theta_norms.errors import ParseError
from theta_norms.function_space import DiscreteMeasureSpace, GridFunction
from theta_norms.sequence_space import PowerDecay, WeightedSequence


def test_matrix_round_trip(tmp_path, rng):
    M = rng.uniform(-1, 1, (3, 5))
    p = tmp_path / "m.csv"
    tio.write_matrix_csv(p, M)
    assert np.array_equal(tio.read_matrix_csv(p), M)


def test_matrix_ragged(tmp_path):
    p = tmp_path / "m.csv"
    p.write_text("1,2\n3\n")
    with pytest.raises(ParseError, match="row 2"):
        tio.read_matrix_csv(p)


def test_matrix_bad_number_names_line(tmp_path):
    p = tmp_path / "m.csv"
    p.write_text("1,2\n\n3,x\n")
    with pytest.raises(ParseError, match=r"m\.csv:3"):
        tio.read_matrix_csv(p)


def test_matrix_missing_and_empty(tmp_path):
    with pytest.raises(ParseError):
        tio.read_matrix_csv(tmp_path / "nope.csv")
    (tmp_path / "e.csv").write_text("# nothing\n")
    with pytest.raises(ParseError, match="empty"):
        tio.read_matrix_csv(tmp_path / "e.csv")


def test_matrix_rejects_nonfinite(tmp_path):
    p = tmp_path / "m.csv"
    p.write_text("1,inf\n")
    with pytest.raises(ParseError, match="non-finite"):
        tio.read_matrix_csv(p)


def test_sequence_round_trip_with_tail(tmp_path):
    x = WeightedSequence([0.5, 0.25, 0.1], PowerDecay(1.0, 2.0))
    p = tmp_path / "s.csv"
    tio.write_sequence_csv(p, x)
    back = tio.read_sequence_csv(p)
    assert np.array_equal(back.entries, x.entries)
    assert back.tail == x.tail


def test_sequence_errors(tmp_path):
    p = tmp_path / "s.csv"
    p.write_text("#tail power_decay 1.0\n1\n")
    with pytest.raises(ParseError, match=":1"):
        tio.read_sequence_csv(p)
    p.write_text("1,2\n")
    with pytest.raises(ParseError, match="one entry"):
        tio.read_sequence_csv(p)
    # envelope below the listed entries
    p.write_text("#tail power_decay 1.0 2.0\n1\n1\n")
    with pytest.raises(ParseError):
        tio.read_sequence_csv(p)


def test_grid_round_trip(tmp_path, rng):
    mu = DiscreteMeasureSpace.graded(3, 2)
    f = GridFunction(rng.standard_normal(len(mu)))
    p = tmp_path / "g.csv"
    tio.write_grid_csv(p, mu, f)
    mu2, f2 = tio.read_grid_csv(p)
    assert mu2.kind == "quadrature"
    assert np.array_equal(mu2.nodes, mu.nodes) and np.array_equal(mu2.weights, mu.weights)
    assert np.array_equal(f2.samples, f.samples)


def test_counting_grid_round_trip(tmp_path):
    mu = DiscreteMeasureSpace.counting(4)
    p = tmp_path / "g.csv"
    tio.write_grid_csv(p, mu, GridFunction([1.0, 2.0, 3.0, 4.0]))
    assert p.read_text().startswith("#kind counting")
    assert tio.read_grid_csv(p)[0].kind == "counting"


def test_grid_errors(tmp_path):
    p = tmp_path / "g.csv"
    p.write_text("0,1\n")
    with pytest.raises(ParseError, match="node,weight,sample"):
        tio.read_grid_csv(p)
    p.write_text("1,1,0\n0,1,0\n")
    with pytest.raises(ParseError, match="increasing"):
        tio.read_grid_csv(p)


def test_grid2_round_trip(tmp_path, rng):
    y = np.linspace(0, 1, 4)
    F = rng.standard_normal((3, 4))
    p = tmp_path / "g2.csv"
    tio.write_grid2_csv(p, y, F)
    y2, F2 = tio.read_grid2_csv(p)
    assert np.array_equal(y2, y) and np.array_equal(F2, F)


def test_grid2_width_mismatch(tmp_path):
    p = tmp_path / "g2.csv"
    p.write_text("0,1,2\n1,2\n")
    with pytest.raises(ParseError, match="3 Y nodes"):
        tio.read_grid2_csv(p)
