"""
Polígonos de Newton φ-ádicos relativos a um nó e produto de ramificação.

Os pontos são (s, μ(aₛ)) para os coeficientes não nulos da expansão
f = Σ aₛφˢ. O fecho inferior é calculado de forma exata no slot principal;
valores com topo ou sub não nulos ficam fora do fecho e marcam `mixed`.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Tuple

from vtree.algebra.polynomials import Poly, phi_expand
from vtree.algebra.value_group import INFINITE, INFINITY, Value, value_min
from vtree.errors import DomainError
from .chains import Chain
from .nodes import Node, coerce_value

logger = logging.getLogger(__name__)

Point = Tuple[int, Value]


@dataclass(frozen=True)
class NewtonPolygon:
    points: Tuple[Point, ...]
    hull: Tuple[Point, ...]
    slopes: Tuple[Tuple[Fraction, int], ...]
    mixed: bool = False

    def sketch(self) -> str:
        return sketch(self)


def _cross(o: Tuple[int, Fraction], a: Tuple[int, Fraction], b: Tuple[int, Fraction]):
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def lower_hull(points: List[Tuple[int, Fraction]]) -> List[Tuple[int, Fraction]]:
    """Fecho convexo inferior por cadeia monótona (pontos ordenados por s)."""
    hull: List[Tuple[int, Fraction]] = []
    for p in sorted(points):
        while len(hull) > 1 and _cross(hull[-2], hull[-1], p) <= 0:
            hull.pop()
        hull.append(p)
    return hull


def newton_polygon(mu: Node, phi: Poly, f: Poly) -> NewtonPolygon:
    """
    Polígono de Newton de f na expansão φ-ádica, com valores em μ.

    Raises:
        DomainError: Coeficiente não nulo com valor ∞ (μ com suporte)
    """
    points: List[Point] = []
    for s, a in enumerate(phi_expand(f, phi)):
        if a.is_zero:
            continue
        value = mu(a)
        if value is INFINITY:
            raise DomainError(f"Coeficiente a{s} = {a} tem valor ∞ em {mu}")
        points.append((s, value))

    rational = [(s, v.main) for s, v in points if v.is_rational]
    mixed = len(rational) < len(points)
    hull_main = lower_hull(rational)
    by_index = dict(points)
    hull = tuple((s, by_index[s]) for s, _ in hull_main)
    slopes = tuple(
        ((y1 - y0) / (x1 - x0), x1 - x0)
        for (x0, y0), (x1, y1) in zip(hull_main, hull_main[1:])
    )
    if mixed:
        logger.info(f"⚠️ [NEWTON] valores mistos fora do fecho para {f}")
    return NewtonPolygon(tuple(points), hull, slopes, mixed)


def value_from_polygon(polygon: NewtonPolygon, gamma) -> Value:
    """minₛ (μ(aₛ) + s·γ): função suporte do polígono."""
    if not polygon.points:
        return INFINITY
    rank = polygon.points[0][1].rank
    gamma = coerce_value(gamma, rank)
    return value_min(
        value if s == 0 else value + gamma.scale(s) for s, value in polygon.points
    )


def ramification_product(chain: Chain) -> int:
    """
    Produto dos índices e_rel dos nós internos da cadeia.

    Raises:
        DomainError: Nó intermediário incomensurável
    """
    nodes = [node for node in chain.nodes() if not node.is_leaf]
    product = 1
    for index, node in enumerate(nodes):
        e = node.e_rel()
        if e is INFINITE:
            if index == len(nodes) - 1:
                continue
            raise DomainError(f"Nó intermediário incomensurável: {node}")
        product *= e
    return product


def sketch(polygon: NewtonPolygon) -> str:
    """Esboço ASCII: '*' vértices do fecho, 'o' demais pontos racionais."""
    points = [(s, v.main) for s, v in polygon.points if v.is_rational]
    if not points:
        return "(sem pontos racionais)"
    vertices = {s for s, _ in polygon.hull}
    width = max(s for s, _ in points)
    levels = sorted({y for _, y in points}, reverse=True)
    labels = [str(y) for y in levels]
    pad = max(len(label) for label in labels)

    lines = []
    for label, y in zip(labels, levels):
        row = ["."] * (width + 1)
        for s, value in points:
            if value == y:
                row[s] = "*" if s in vertices else "o"
        lines.append(f"{label.rjust(pad)} | {' '.join(row)}")
    lines.append(f"{' ' * pad} +-{'--' * (width + 1)}")
    lines.append(f"{' ' * pad}   {' '.join(str(s % 10) for s in range(width + 1))}")
    return "\n".join(lines)
