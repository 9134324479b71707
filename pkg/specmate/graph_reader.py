import re
from pathlib import Path

from specmate.errors import GraphFormatError
from specmate.graph import Graph
from specmate.graph6 import parse_graph6

_ROW_RE = re.compile(r"^[01](?:[\s,]*[01])*$")


def _parse_row(line: str, number: int, n: int) -> list[int]:
    text = line.strip()
    if not _ROW_RE.match(text):
        raise GraphFormatError(f"line {number}: expected 0/1 entries, got {text!r}")
    entries = [int(c) for c in text if c in "01"]
    if len(entries) != n:
        raise GraphFormatError(f"line {number}: expected {n} entries, got {len(entries)}")
    return entries


class AdjacencyReader:
    """Reads an adjacency file: the vertex count n, then n rows of 0/1 entries.

    Rows may separate entries by whitespace or commas, or write them run together
    ("0110"). Blank lines and lines starting with '#' are skipped.
    """

    def __init__(self, path: str | Path):
        self._path = Path(path)

    @property
    def path(self) -> Path:
        return self._path

    def load(self) -> Graph:
        with open(self._path) as f:
            return self.parse(f.read())

    @staticmethod
    def parse(text: str) -> Graph:
        lines = [
            (number, line)
            for number, line in enumerate(text.splitlines(), start=1)
            if line.strip() and not line.lstrip().startswith("#")
        ]
        if not lines:
            raise GraphFormatError("empty adjacency file")
        number, header = lines[0]
        try:
            n = int(header.strip())
        except ValueError:
            raise GraphFormatError(f"line {number}: expected the vertex count, got {header.strip()!r}") from None
        body = lines[1:]
        if len(body) != n:
            raise GraphFormatError(f"expected {n} matrix rows, found {len(body)}")
        return Graph.from_matrix([_parse_row(line, number, n) for number, line in body])


def read_adjacency_file(path: str | Path) -> Graph:
    return AdjacencyReader(path).load()


def load_graph(graph6: str | None = None, adj: str | Path | None = None) -> Graph:
    """Exactly one of a graph6 string or an adjacency file path."""
    if (graph6 is None) == (adj is None):
        raise ValueError("give exactly one of a graph6 string or an adjacency file")
    if graph6 is not None:
        return parse_graph6(graph6)
    return read_adjacency_file(adj)
