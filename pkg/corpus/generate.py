"""Write the corpus manifests in this directory.

Run ``python3 corpus/generate.py`` after changing any geometry below.
"""

import json
from pathlib import Path

HERE = Path(__file__).resolve().parent

S3 = {"permutations": [[0, 1, 2], [1, 0, 2], [2, 1, 0], [0, 2, 1], [1, 2, 0], [2, 0, 1]],
      "labels": ["e", "(12)", "(13)", "(23)", "(123)", "(132)"]}


def cycle_edges(n):
    return [[i, (i + 1) % n] for i in range(n)]


def identity(n):
    return list(range(n))


def s3_hexagon_action():
    """S3 acting on the six rays of its three mirror lines.

    Ray ``i`` points at angle ``60 i``; line ``j`` holds rays ``j`` and
    ``j + 3``.  The reflection fixing line ``j`` sends ray ``i`` to
    ``2 j - i``; rotations add 2 or 4.  Rays are relabelled so that the two
    rays on the mirror of ``(12)`` get the smallest labels, apex first.
    """
    ray_maps = {
        0: lambda i: i,
        1: lambda i: (4 - i) % 6,   # (12) fixes line 2
        2: lambda i: (2 - i) % 6,   # (13) fixes line 1
        3: lambda i: (-i) % 6,      # (23) fixes line 0
        4: lambda i: (i + 4) % 6,   # (123): line j -> j + 1
        5: lambda i: (i + 2) % 6,   # (132): line j -> j + 2
    }
    order = [2, 5, 0, 1, 3, 4]  # ray -> vertex label 1 + position
    label = {ray: 1 + k for k, ray in enumerate(order)}
    action = {}
    for g, f in ray_maps.items():
        perm = [0] * 7
        for ray in range(6):
            perm[label[ray]] = label[f(ray)]
        action[str(g)] = perm
    hexagon = [[label[i], label[(i + 1) % 6]] for i in range(6)]
    return action, hexagon


def s3_triangle_action():
    """S3 permuting the corners of a triangle."""
    return {str(g): p for g, p in enumerate(S3["permutations"])}


def write(name, data):
    (HERE / name).write_text(json.dumps(data, indent=1, sort_keys=True) + "\n")


def main():
    square_c2 = {"0": identity(4), "1": [0, 3, 2, 1]}
    write("c2_cone.json", {
        "groups": {"C2": {"cyclic": 2}},
        "families": {"all": {"group": "C2"}},
        "complexes": {
            "square": {"group": "C2", "vertices": 4, "action": square_c2,
                       "facets": cycle_edges(4)},
            "cone": {"group": "C2", "cone_over": "square"},
        },
        "filtrations": {"skeleta": {"complex": "cone", "skeleta": True}},
        "default": {"family": "all", "complex": "cone", "filtration": "skeleta"},
        "instances": [
            {"family": "all", "complex": "cone", "filtration": "skeleta", "n": 2,
             "expect": "CONSISTENT"},
        ],
    })
    write("c2_square.json", {
        "groups": {"C2": {"cyclic": 2}},
        "families": {"all": {"group": "C2"},
                     "trivial_only": {"group": "C2", "subgroups": [[0]]},
                     "whole_only": {"group": "C2", "subgroups": [[0, 1]]}},
        "complexes": {
            "square": {"group": "C2", "vertices": 4, "action": square_c2,
                       "facets": cycle_edges(4)},
            "free_square": {"group": "C2", "vertices": 4,
                            "action": {"0": identity(4), "1": [2, 3, 0, 1]},
                            "facets": cycle_edges(4)},
            "free_cone": {"group": "C2", "cone_over": "free_square"},
            "flipped_edge": {"group": "C2", "vertices": 2, "action": {"1": [1, 0]},
                             "facets": [[0, 1]], "subdivide": True},
        },
        "filtrations": {
            "poles": {"complex": "square", "stages": [[0, 2], list(range(8))]},
            "free_skeleta": {"complex": "free_cone", "skeleta": True},
            "free_square_then_cone": {"complex": "free_cone", "from_subcomplex": "free_square"},
            "edge_skeleta": {"complex": "flipped_edge", "skeleta": True},
        },
        "default": {"family": "all", "complex": "square", "filtration": "poles"},
        "instances": [
            {"family": "all", "complex": "square", "filtration": "poles", "n": 0,
             "expect": "CONSISTENT"},
            {"family": "all", "complex": "square", "filtration": "poles", "n": 1,
             "expect": "INAPPLICABLE"},
            {"family": "all", "complex": "free_cone", "filtration": "free_skeleta", "n": 2,
             "expect": "CONSISTENT"},
            {"family": "all", "complex": "free_cone", "filtration": "free_square_then_cone",
             "n": 1, "expect": "CONSISTENT"},
            {"family": "all", "complex": "free_square", "filtration": "free_square_then_cone",
             "n": 0, "expect": "INAPPLICABLE"},
            {"family": "all", "complex": "flipped_edge", "filtration": "edge_skeleta", "n": 1,
             "expect": "CONSISTENT"},
            {"family": "trivial_only", "complex": "square", "filtration": "poles", "n": 1,
             "expect": "CONSISTENT"},
        ],
    })
    action, hexagon = s3_hexagon_action()
    write("s3_reflections.json", {
        "groups": {"S3": S3},
        "families": {"reflections": {"group": "S3", "subgroups": [[0], [0, 1]]},
                     "all": {"group": "S3"},
                     "rotations": {"group": "S3", "subgroups": [[0], [0, 4, 5]]}},
        "complexes": {
            "hexagon": {"group": "S3", "vertices": 7, "action": action, "facets": hexagon},
            "cone": {"group": "S3", "vertices": 7, "action": action,
                     "facets": [[0] + e for e in hexagon]},
            "triangle": {"group": "S3", "vertices": 3, "action": s3_triangle_action(),
                         "facets": [[0, 1, 2]], "subdivide": True},
            "triangle_boundary": {"group": "S3", "vertices": 3, "action": s3_triangle_action(),
                                  "facets": cycle_edges(3), "subdivide": True},
        },
        "filtrations": {
            "skeleta": {"complex": "cone", "skeleta": True},
            "hexagon_then_cone": {"complex": "cone", "from_subcomplex": "hexagon"},
            "triangle_skeleta": {"complex": "triangle", "skeleta": True},
        },
        "default": {"family": "reflections", "complex": "cone", "filtration": "skeleta"},
        "instances": [
            {"family": "reflections", "complex": "cone", "filtration": "skeleta", "n": 2,
             "expect": "CONSISTENT"},
            {"family": "reflections", "complex": "cone", "filtration": "hexagon_then_cone",
             "n": 1, "expect": "CONSISTENT"},
            {"family": "all", "complex": "triangle", "filtration": "triangle_skeleta", "n": 2,
             "expect": "CONSISTENT"},
        ],
    })
    write("small_groups.json", {
        "groups": {"1": {"cyclic": 1}, "C3": {"cyclic": 3}, "C4": {"cyclic": 4},
                   "C2": {"cyclic": 2}, "V4": {"product": ["C2", "C2"]}},
        "families": {
            "trivial": {"group": "1"},
            "c3": {"group": "C3"},
            "c4": {"group": "C4"},
            "v4": {"group": "V4"},
        },
        "complexes": {
            "point": {"group": "1", "vertices": 1, "facets": [[0]]},
            "edge": {"group": "1", "vertices": 2, "facets": [[0, 1]]},
            "triangle": {"group": "1", "vertices": 3, "facets": [[0, 1, 2]]},
            "circle": {"group": "1", "vertices": 3, "facets": cycle_edges(3)},
            "c3_circle": {"group": "C3", "vertices": 3,
                          "action": {"1": [1, 2, 0], "2": [2, 0, 1]},
                          "facets": cycle_edges(3)},
            "c3_cone": {"group": "C3", "cone_over": "c3_circle"},
            "c4_square": {"group": "C4", "vertices": 4,
                          "action": {"1": [1, 2, 3, 0], "2": [2, 3, 0, 1], "3": [3, 0, 1, 2]},
                          "facets": cycle_edges(4)},
            "c4_cone": {"group": "C4", "cone_over": "c4_square"},
            "v4_square": {"group": "V4", "vertices": 4,
                          "action": {"1": [2, 1, 0, 3], "2": [0, 3, 2, 1], "3": [2, 3, 0, 1]},
                          "facets": cycle_edges(4)},
            "v4_cone": {"group": "V4", "cone_over": "v4_square"},
        },
        "filtrations": {
            "triangle_skeleta": {"complex": "triangle", "skeleta": True},
            "circle_skeleta": {"complex": "circle", "skeleta": True},
            "c3_skeleta": {"complex": "c3_cone", "skeleta": True},
            "c4_skeleta": {"complex": "c4_cone", "skeleta": True},
            "v4_skeleta": {"complex": "v4_cone", "skeleta": True},
            "v4_square_then_cone": {"complex": "v4_cone", "from_subcomplex": "v4_square"},
        },
        "default": {"family": "trivial", "complex": "triangle",
                    "filtration": "triangle_skeleta"},
        "instances": [
            {"family": "trivial", "complex": "triangle", "filtration": "triangle_skeleta",
             "n": 1, "expect": "CONSISTENT"},
            {"family": "trivial", "complex": "circle", "filtration": "circle_skeleta",
             "n": 1, "expect": "CONSISTENT"},
            {"family": "trivial", "complex": "circle", "filtration": "circle_skeleta",
             "n": 2, "expect": "INAPPLICABLE"},
            {"family": "c3", "complex": "c3_cone", "filtration": "c3_skeleta", "n": 2,
             "expect": "CONSISTENT"},
            {"family": "c4", "complex": "c4_cone", "filtration": "c4_skeleta", "n": 2,
             "expect": "CONSISTENT"},
            {"family": "v4", "complex": "v4_cone", "filtration": "v4_skeleta", "n": 2,
             "expect": "CONSISTENT"},
            {"family": "v4", "complex": "v4_cone", "filtration": "v4_square_then_cone",
             "n": 1, "expect": "CONSISTENT"},
        ],
    })


if __name__ == "__main__":
    main()
