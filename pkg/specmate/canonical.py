"""Canonical labeling and automorphism testing by colour refinement plus backtracking.

Each node of the search tree is an equitable colouring. A child individualizes one
vertex of the first non-singleton cell and refines again; leaves are discrete
colourings, i.e. vertex orderings. The canonical label is the largest leaf
certificate. Vertices of a cell that are twins (same neighbourhood apart from each
other) are swapped by an automorphism fixing everything else, so only one of them
is branched on.

Two leaves with the same certificate yield an automorphism. Stored automorphisms
that fix the current path pointwise prune children lying in the orbit of an explored
child, and when the new automorphism maps the earlier leaf's branch onto the current
one the search resumes at the node where the two paths diverge.
"""

from dataclasses import dataclass

from specmate.graph import Graph


@dataclass(frozen=True)
class CanonicalLabel:
    data: bytes

    def hex(self) -> str:
        return self.data.hex()


def _refine(nbrs: list[list[int]], colors: list[int]) -> list[int]:
    count = len(set(colors))
    while True:
        sigs = [(colors[v], tuple(sorted(colors[w] for w in nb))) for v, nb in enumerate(nbrs)]
        ranking = {sig: r for r, sig in enumerate(sorted(set(sigs)))}
        colors = [ranking[sig] for sig in sigs]
        if len(ranking) == count:
            return colors
        count = len(ranking)


def _individualize(colors: list[int], v: int) -> list[int]:
    keys = [(c, 0 if u == v else 1) for u, c in enumerate(colors)]
    ranking = {key: r for r, key in enumerate(sorted(set(keys)))}
    return [ranking[key] for key in keys]


def _target_cell(colors: list[int]) -> list[int] | None:
    cells: dict[int, list[int]] = {}
    for v, c in enumerate(colors):
        cells.setdefault(c, []).append(v)
    for c in sorted(cells):
        if len(cells[c]) > 1:
            return cells[c]
    return None


def _meets_orbit(v: int, explored: set[int], path: tuple[int, ...], automorphisms: list[list[int]]) -> bool:
    """Whether some automorphism fixing path pointwise maps v into explored."""
    gens = [g for g in automorphisms if all(g[u] == u for u in path)]
    if not gens:
        return False
    orbit = {v}
    frontier = [v]
    while frontier:
        u = frontier.pop()
        for g in gens:
            w = g[u]
            if w not in orbit:
                orbit.add(w)
                frontier.append(w)
    return not orbit.isdisjoint(explored)


class _SearchTree:
    def __init__(self, g: Graph):
        self._g = g
        self._nbrs = [g.neighbors(v) for v in range(g.n)]
        self._root = _refine(self._nbrs, [0] * g.n)

    def _twin_classes(self, cell: list[int]) -> list[list[int]]:
        rows = self._g.rows
        classes: list[list[int]] = []
        for v in cell:
            for cls in classes:
                u = cls[0]
                if rows[u] & ~(1 << v) == rows[v] & ~(1 << u):
                    cls.append(v)
                    break
            else:
                classes.append([v])
        return classes

    def _certificate(self, colors: list[int]) -> tuple[bytes, list[int]]:
        n = self._g.n
        order = [0] * n
        for v, c in enumerate(colors):
            order[c] = v
        bits = 0
        for a in range(n):
            row = self._g.rows[order[a]]
            for b in range(a + 1, n):
                bits = bits << 1 | (row >> order[b] & 1)
        width = (n * (n - 1) // 2 + 7) // 8
        return bytes([n]) + bits.to_bytes(width, "big"), order

    def canonical(self) -> tuple[bytes, list[int]]:
        best: list[tuple[bytes, list[int]]] = []
        leaves: dict[bytes, tuple[list[int], tuple[int, ...]]] = {}
        automorphisms: list[list[int]] = []

        def visit(colors: list[int], path: tuple[int, ...]) -> int | None:
            """Returns the depth to resume at when a whole subtree is an image of one already seen."""
            cell = _target_cell(colors)
            if cell is None:
                cert, order = self._certificate(colors)
                if not best or cert > best[0][0]:
                    best[:] = [(cert, order)]
                if cert not in leaves:
                    leaves[cert] = (order, path)
                    return None
                ref_order, ref_path = leaves[cert]
                gamma = [0] * len(order)
                for u, v in zip(ref_order, order):
                    gamma[u] = v
                automorphisms.append(gamma)
                j = 0
                while ref_path[j] == path[j]:
                    j += 1
                if all(gamma[v] == v for v in path[:j]) and gamma[ref_path[j]] == path[j]:
                    return j
                return None
            explored: set[int] = set()
            for cls in self._twin_classes(cell):
                v = cls[0]
                if explored and _meets_orbit(v, explored, path, automorphisms):
                    continue
                explored.update(cls)
                back = visit(_refine(self._nbrs, _individualize(colors, v)), path + (v,))
                if back is not None and back < len(path):
                    return back
            return None

        visit(self._root, ())
        return best[0]

    def has_automorphism(self) -> bool:
        seen: set[bytes] = set()

        def visit(colors: list[int]) -> bool:
            cell = _target_cell(colors)
            if cell is None:
                cert, _ = self._certificate(colors)
                if cert in seen:
                    return True
                seen.add(cert)
                return False
            if any(len(cls) > 1 for cls in self._twin_classes(cell)):
                return True
            return any(visit(_refine(self._nbrs, _individualize(colors, v))) for v in cell)

        return visit(self._root)


def canonical_form(g: Graph) -> CanonicalLabel:
    cert, _ = _SearchTree(g).canonical()
    return CanonicalLabel(cert)


def canonical_graph(g: Graph) -> Graph:
    """Relabel g so that isomorphic inputs give identical graphs."""
    _, order = _SearchTree(g).canonical()
    perm = [0] * g.n
    for position, v in enumerate(order):
        perm[v] = position
    return g.permuted(perm)


def is_asymmetric(g: Graph) -> bool:
    return not _SearchTree(g).has_automorphism()
