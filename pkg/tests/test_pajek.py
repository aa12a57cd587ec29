import io
import warnings

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import make_net
from wnet.pajek import (
    PajekFormatError,
    format_number,
    ingest_csv,
    read_clu,
    read_nam,
    read_net,
    read_vec,
    with_iso2,
    write_clu,
    write_net,
)

MINIMAL = '*Vertices 2\n1 "A"\n2 "B"\n*Arcs\n1 2 5\n'


def parse(text):
    return read_net(io.StringIO(text))


def test_minimal_file():
    net = parse(MINIMAL)
    assert net.n == 2 and net.labels == ("A", "B")
    assert net.arcs == ((0, 1, 5.0),)


def test_duplicates_summed_with_warning():
    with pytest.warns(UserWarning, match="duplicate"):
        net = parse(MINIMAL + "1 2 5\n")
    assert net.arcs == ((0, 1, 10.0),)


def test_comments_blank_lines_crlf_and_case():
    text = '% made by hand\r\n*vertices 3\r\n1 "A b"\r\n\r\n2 "C"\r\n3 D 0.1 0.2 0.5\r\n*arcs\r\n1 3\r\n% note\r\n3 1 2.5\r\n'
    net = parse(text)
    assert net.labels == ("A b", "C", "D")
    assert net.arcs == ((0, 2, 1.0), (2, 0, 2.5))


def test_edges_become_reciprocal_arcs():
    with pytest.warns(UserWarning, match="Edges"):
        net = parse('*Vertices 2\n1 "A"\n2 "B"\n*Edges\n1 2 4\n')
    assert net.arcs == ((0, 1, 4.0), (1, 0, 4.0))


@pytest.mark.parametrize(
    "text, line",
    [
        ("*Vertexes 2\n", 1),
        ('*Vertices 2\n1 "A"\n2 "B"\n*Arcs\n1 3 5\n', 5),
        ('*Vertices 2\n1 "A"\n2 "B"\n*Arcs\n1 2 x\n', 5),
        ('*Vertices 2\n1 "A"\n2 "B"\n*Arcs\n1 2 -1\n', 5),
        ('*Vertices 2\n1 "A"\n2 "B"\n*Matrix\n', 4),
    ],
)
def test_errors_carry_line_numbers(text, line):
    with pytest.raises(PajekFormatError) as exc:
        parse(text)
    assert exc.value.line == line


@pytest.mark.parametrize(
    "text",
    [MINIMAL, '*Vertices 3\n1 "A"\n2 "B"\n3 "C"\n*Arcs\n1 2 0.5\n2 3 1e-3\n3 1 217003\n', '*Vertices 2\n1 "A"\n2 "B"\n*Arcs\n'],
)
def test_write_read_round_trip(text):
    net = parse(text)
    assert parse(write_net(net)) == net
    assert write_net(parse(write_net(net))) == write_net(net)


def test_no_exponent_in_output():
    net = make_net(2, [(0, 1, 1e-7), (1, 0, 1.5e20)])
    out = write_net(net)
    assert "e" not in out.split("*Arcs")[1]
    assert parse(out) == net


@settings(max_examples=80, deadline=None)
@given(st.lists(st.tuples(st.integers(1, 4), st.integers(1, 4), st.floats(0, 1e9, allow_nan=False)), max_size=20))
def test_parser_conserves_weight_mass(rows):
    body = "".join(f"{s} {t} {format_number(w)}\n" for s, t, w in rows)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        net = parse('*Vertices 4\n1 "a"\n2 "b"\n3 "c"\n4 "d"\n*Arcs\n' + body)
    assert net.total_weight() == pytest.approx(sum(w for _, _, w in rows), rel=1e-12)


def test_read_vec():
    assert read_vec(io.StringIO("*Vertices 3\n1.0\n2.5\n4\n")).tolist() == [1.0, 2.5, 4.0]
    with pytest.raises(PajekFormatError):
        read_vec(io.StringIO("*Vertices 3\n1\n2\n"))


def test_clu_round_trip():
    assert read_clu(io.StringIO("*Vertices 3\n1\n1\n2\n")) == (1, 1, 2)
    five = (1, 1, 2, 3, 3, 4, 5, 5, 4, 2)
    assert read_clu(io.StringIO(write_clu(five))) == five
    with pytest.raises(PajekFormatError):
        read_clu(io.StringIO("*Vertices 0\n"))
    with pytest.raises(PajekFormatError):
        read_clu(io.StringIO("*Vertices 1\n1.5\n"))


def test_read_nam_and_attach():
    net = parse(MINIMAL)
    codes = read_nam(io.StringIO('*Vertices 2\n1 "ES"\n2 "IT"\n'))
    assert codes == ["ES", "IT"]
    assert read_nam(io.StringIO("*Vertices 2\nES\nIT\n")) == ["ES", "IT"]
    tagged = with_iso2(net, codes)
    assert tagged.index("ES") == 0 and tagged.nodes[1].iso2 == "IT"
    with pytest.raises(PajekFormatError):
        read_nam(io.StringIO("*Vertices 3\nES\nIT\n"))


def test_ingest_csv_basic():
    net = ingest_csv(io.StringIO("B,A,1\nA,B,3\n"))
    assert net.labels == ("A", "B")
    assert net.arcs == ((0, 1, 3.0), (1, 0, 1.0))


def test_ingest_csv_sums_and_header():
    text = "Sending Country;Receiving Country;Participants\nA;B;2\nA;B;3\n"
    net = ingest_csv(io.StringIO(text), ("Sending Country", "Receiving Country", "Participants"))
    assert net.arcs == ((0, 1, 5.0),)
    # header auto-detected with positional columns
    assert ingest_csv(io.StringIO(text)).arcs == ((0, 1, 5.0),)


def test_ingest_csv_quotes_and_tab():
    net = ingest_csv(io.StringIO('"Korea, Rep"\tB\t4\nB\t"Korea, Rep"\t1\n'))
    assert net.labels == ("B", "Korea, Rep")


@pytest.mark.parametrize(
    "text, cols",
    [("A,B,1\nB,A,x\n", (0, 1, 2)), ("A,A,1\n", (0, 1, 2)), ("s,r,c\nA,B,1\n", ("s", "r", "count"))],
)
def test_ingest_csv_errors(text, cols):
    with pytest.raises(ValueError):
        ingest_csv(io.StringIO(text), cols)
