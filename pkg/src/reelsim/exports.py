"""Text artifacts: DOT graphs, CSV tables, and JSON result documents.

Everything here is a pure function of its inputs with fixed key order
and shortest round-trip float formatting, so identical runs produce
byte-identical files.
"""

from __future__ import annotations

import csv
import io
import json

import numpy as np

from .core import State
from .frames import FrameDistribution
from .reels import Reel, ReelNode


def export_state_dot(state: State, names: list[str] | None = None) -> str:
    """Directed graph of who feeds or fights whom.

    Node width grows with power; dead agents render at minimum width
    with a marker. Edges point from the allocating agent to the target,
    green for support and red for attack, pen width scaling with the
    transferred power. Self-allocations become node annotations instead
    of loops.
    """
    names = _agent_names(state.n, names)
    lines = ["digraph state {", "  rankdir=LR;", "  node [shape=circle];"]
    for index in range(state.n):
        size = float(state.sizes[index])
        label = f"{_esc(names[index])}\\ns={size:g}\\nself={float(state.tactics[index, index]):g}"
        if size == 0.0:
            label += "\\n(dead)"
        width = 0.4 + 1.2 * size
        lines.append(f'  n{index} [label="{label}", width={width:.3f}];')
    for source in range(state.n):
        for target in range(state.n):
            if source == target:
                continue
            allocation = float(state.tactics[target, source])
            if allocation == 0.0:
                continue
            color = "green" if allocation > 0.0 else "red"
            penwidth = max(0.1, 6.0 * abs(allocation) * float(state.sizes[source]))
            lines.append(
                f'  n{source} -> n{target} '
                f'[color={color}, penwidth={penwidth:.3f}, label="{allocation:g}"];'
            )
    lines.append("}")
    return "\n".join(lines) + "\n"


def export_tree_dot(tree: ReelNode) -> str:
    """Tree of future frames, edges labeled with transition probabilities."""
    lines = ["digraph reels {", "  node [shape=box];"]

    def walk(node: ReelNode, path: tuple[int, ...]) -> None:
        sizes_text = ", ".join(f"{value:.3f}" for value in node.state.sizes)
        label = f"[{sizes_text}]"
        if node.leaf_reason is not None:
            label += f"\\n{node.leaf_reason}"
        if node.dropped_mass > 0.0:
            label += f"\\ndropped={node.dropped_mass:.3f}"
        lines.append(f'  {_node_id(path)} [label="{label}"];')
        for index, edge in enumerate(node.children):
            child_path = path + (index,)
            lines.append(
                f'  {_node_id(path)} -> {_node_id(child_path)} [label="{edge.probability:.3f}"];'
            )
            walk(edge.child, child_path)

    walk(tree, ())
    lines.append("}")
    return "\n".join(lines) + "\n"


def export_sizes_csv(size_rows, names: list[str]) -> str:
    """Agent-name header, then one full-precision row per time step."""
    names = list(names)
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(names)
    for row in size_rows:
        values = [float(value) for value in row]
        if len(values) != len(names):
            raise ValueError(f"row has {len(values)} values for {len(names)} agents")
        writer.writerow([repr(value) for value in values])
    return buffer.getvalue()


def export_frames_json(distribution: FrameDistribution, names: list[str]) -> str:
    """Frame distribution as a stable JSON document."""
    diagnostics = distribution.diagnostics
    payload = {
        "agents": list(names),
        "frames": [
            {
                "probability": frame.probability,
                "support": frame.support,
                "weight": frame.weight,
                "grid": [[int(value) for value in row] for row in np.asarray(frame.key).T],
                "tactics": _matrix_rows(frame.tactics),
                "sizes": [float(value) for value in frame.sizes],
            }
            for frame in distribution.frames
        ],
        "diagnostics": {
            "lines_generated": diagnostics.lines_generated,
            "lines_retained": diagnostics.lines_retained,
            "clusters": diagnostics.clusters,
            "total_weight": diagnostics.total_weight,
            "equilibria": diagnostics.equilibria,
            "minimax": [float(value) for value in diagnostics.minimax],
            "exhaustive_game": diagnostics.exhaustive_game,
        },
    }
    return json.dumps(payload, indent=2) + "\n"


def export_reels_json(tree: ReelNode, reels: list[Reel], names: list[str]) -> str:
    """Full tree plus the ranked reel table as one JSON document."""
    payload = {
        "agents": list(names),
        "tree": _node_payload(tree),
        "reels": [
            {
                "indices": list(reel.indices),
                "probability": reel.probability,
                "steps": len(reel.indices),
                "leaf_reason": reel.leaf_reason,
                "final_sizes": [float(value) for value in reel.path[-1].sizes],
            }
            for reel in reels
        ],
    }
    return json.dumps(payload, indent=2) + "\n"


def export_reel_table_csv(reels: list[Reel], names: list[str]) -> str:
    """Ranked reel summary: probability, length, stop reason, final sizes."""
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(["rank", "probability", "steps", "leaf_reason", *names])
    for rank, reel in enumerate(reels, start=1):
        writer.writerow(
            [
                rank,
                repr(reel.probability),
                len(reel.indices),
                reel.leaf_reason or "",
                *[repr(float(value)) for value in reel.path[-1].sizes],
            ]
        )
    return buffer.getvalue()


def _node_payload(node: ReelNode) -> dict:
    return {
        "depth": node.depth,
        "sizes": [float(value) for value in node.state.sizes],
        "tactics": _matrix_rows(node.state.tactics),
        "leaf_reason": node.leaf_reason,
        "dropped_mass": node.dropped_mass,
        "children": [
            {"probability": edge.probability, "node": _node_payload(edge.child)}
            for edge in node.children
        ],
    }


def _matrix_rows(matrix: np.ndarray) -> list[list[float]]:
    """Agent-major rows (row i = agent i's outgoing column), as in scenarios."""
    return [[float(value) for value in row] for row in np.asarray(matrix).T]


def _agent_names(n: int, names: list[str] | None) -> list[str]:
    if names is None:
        return [f"a{index + 1}" for index in range(n)]
    names = list(names)
    if len(names) != n:
        raise ValueError(f"got {len(names)} names for {n} agents")
    return names


def _node_id(path: tuple[int, ...]) -> str:
    return "root" if not path else "n" + "_".join(str(index) for index in path)


def _esc(text: str) -> str:
    return text.replace("\\", "\\\\").replace('"', '\\"')
