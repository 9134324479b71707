from specmate.errors import Graph6Error
from specmate.graph import Graph

_BIAS = 63
_MAX_HEADER_ORDER = 62  # '~' (126) introduces the multi-byte size header


def _body_length(n: int) -> int:
    return (n * (n - 1) // 2 + 5) // 6


def parse_graph6(text: str | bytes) -> Graph:
    """Decode a single-byte-header graph6 string (surrounding whitespace ignored).

    Error offsets index the input as given, leading whitespace included.
    """
    if isinstance(text, str):
        try:
            raw = text.encode("ascii")
        except UnicodeEncodeError as exc:
            raise Graph6Error(f"character {text[exc.start]!r} is not ASCII", exc.start) from None
    else:
        raw = bytes(text)
    data = raw.lstrip()
    lead = len(raw) - len(data)
    data = data.rstrip()
    if data.startswith(b">>graph6<<"):
        raise Graph6Error("file header '>>graph6<<' is not supported inline", lead)
    if not data:
        raise Graph6Error("empty input", 0)
    for offset, byte in enumerate(data):
        if not _BIAS <= byte <= 126:
            raise Graph6Error(f"byte 0x{byte:02x} outside the printable range 63..126", lead + offset)
    if data[0] == 126:
        raise Graph6Error("multi-byte size headers are not supported", lead)
    n = data[0] - _BIAS
    if n < 1:
        raise Graph6Error("graphs with zero vertices are not supported", lead)
    expected = _body_length(n)
    body = data[1:]
    if len(body) < expected:
        raise Graph6Error(f"truncated body: {len(body)} of {expected} bytes", lead + len(data))
    if len(body) > expected:
        raise Graph6Error(f"{len(body) - expected} trailing bytes", lead + 1 + expected)

    rows = [0] * n
    k = 0
    for j in range(1, n):
        for i in range(j):
            byte = body[k // 6] - _BIAS
            if byte >> (5 - k % 6) & 1:
                rows[i] |= 1 << j
                rows[j] |= 1 << i
            k += 1
    return Graph(n, tuple(rows))


def emit_graph6(g: Graph) -> str:
    if not 1 <= g.n <= _MAX_HEADER_ORDER:
        raise ValueError(f"graph6 output supports 1..{_MAX_HEADER_ORDER} vertices, got {g.n}")
    values = [0] * _body_length(g.n)
    k = 0
    for j in range(1, g.n):
        for i in range(j):
            if g.rows[i] >> j & 1:
                values[k // 6] |= 1 << (5 - k % 6)
            k += 1
    return chr(_BIAS + g.n) + "".join(chr(_BIAS + v) for v in values)
