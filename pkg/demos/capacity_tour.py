"""Capacities of small animals, a backbone decomposition and the sharpness example.

Run: python demos/capacity_tour.py
"""

from repgraph.capacity import (
    backbone_decompose,
    capacity_bound_15,
    capacity_exact,
    format_decomposition,
    optimality_witness,
)
from repgraph.enumeration import enumerate_connected_sets
from repgraph.graph import Animal, grid_window


def main() -> None:
    w = grid_window(4, 4)
    best: dict[tuple[int, float], int] = {}

    def visit(cur):
        a = Animal(w, frozenset(cur))
        for lam in (2.0, 3.0, 4.0):
            key = (a.order, lam)
            best[key] = max(best.get(key, 0), capacity_exact(a, lam).value)

    n = enumerate_connected_sets(w, 7, visit)
    print(f"{n} connected sets of the 4x4 grid with at most 7 vertices")
    print(" N  lambda  max C   max(1, 2N/lambda)")
    for (N, lam), c in sorted(best.items()):
        print(f"{N:2d}  {lam:6g}  {c:5d}   {capacity_bound_15(N, lam):.3f}")

    snake = Animal(w, frozenset({0, 1, 2, 3, 7, 6, 5, 9, 13}))
    print()
    print(format_decomposition(backbone_decompose(snake)), end="")

    wit = optimality_witness(100, 0.05)
    print(f"\npath of length 100, lambda = 100: C = {wit.capacity} > {wit.threshold:.3f}")


if __name__ == "__main__":
    main()
