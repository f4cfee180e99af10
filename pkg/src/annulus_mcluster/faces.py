"""Face extraction for dissected polygons.

Used both for genuine polygon dissections and for the annulus, which is
first cut open along a spanning diagonal.
"""

from __future__ import annotations

from dataclasses import dataclass

# A side label is ("E", "O", i) / ("E", "I", j) for a boundary edge of the
# outer / inner polygon, ("E", "P", i) for an edge of a plain polygon, and
# ("D", idx) for a diagonal.
Side = tuple


@dataclass(frozen=True)
class Face:
    """A face as its corners and sides in counterclockwise order.

    ``sides[t]`` joins ``corners[t]`` to ``corners[t + 1]``.
    """

    corners: tuple
    sides: tuple

    def __len__(self) -> int:
        return len(self.sides)

    def diagonal_positions(self) -> list[tuple[int, int]]:
        """``(position, diagonal index)`` for every diagonal side."""
        return [(t, s[1]) for t, s in enumerate(self.sides) if s[0] == "D"]


def dissect(n: int, side_labels, chords) -> list[tuple[list[int], list]]:
    """Faces of a convex ``n``-gon cut by pairwise noncrossing chords.

    ``side_labels[i]`` labels the polygon side from vertex ``i`` to
    ``i + 1``; vertices are numbered counterclockwise.  ``chords`` is a
    sequence of ``(a, b, label)``.  Returns each internal face as a pair of
    counterclockwise vertex and side-label cycles.
    """
    nbrs: dict[int, dict[int, object]] = {v: {} for v in range(n)}
    for i in range(n):
        j = (i + 1) % n
        nbrs[i][j] = side_labels[i]
        nbrs[j][i] = side_labels[i]
    for a, b, label in chords:
        if a == b or b in nbrs[a]:
            raise ValueError(f"degenerate or repeated chord {a}-{b}")
        nbrs[a][b] = label
        nbrs[b][a] = label

    order = {v: sorted(nbrs[v], key=lambda w: (w - v) % n) for v in range(n)}

    def successor(a: int, b: int) -> int:
        # the face on the left of a->b continues along the neighbour of b
        # that comes just before a in counterclockwise order around b
        limit = (a - b) % n
        best = order[b][-1]
        for w in order[b]:
            if (w - b) % n < limit:
                best = w
            else:
                break
        return best

    seen = set()
    faces = []
    for a in range(n):
        for b in nbrs[a]:
            if (a, b) in seen:
                continue
            verts, labels = [], []
            x, y = a, b
            while (x, y) not in seen:
                seen.add((x, y))
                verts.append(x)
                labels.append(nbrs[x][y])
                x, y = y, successor(x, y)
            faces.append((verts, labels))
    # the exterior face runs clockwise along the boundary
    return [f for f in faces if (1, 0) not in zip(f[0], f[0][1:] + f[0][:1])]
