"""Regenerate the exhaustive connected-graph corpora under data/.

Writes one graph6 token per line to data/connected_n{3..7}.g6, covering
every connected nonisomorphic graph on 3..7 vertices.  Uses networkx's
graph atlas and graph6 encoder so the fixture bytes come from an
implementation independent of this package's codec.

Usage: python tools/make_corpus.py
"""

from pathlib import Path

import networkx as nx

EXPECTED_COUNTS = {3: 2, 4: 6, 5: 21, 6: 112, 7: 853}


def main() -> None:
    out_dir = Path(__file__).resolve().parents[1] / "data"
    out_dir.mkdir(exist_ok=True)
    atlas = nx.graph_atlas_g()
    for n, expected in EXPECTED_COUNTS.items():
        graphs = [
            g for g in atlas
            if g.number_of_nodes() == n and nx.is_connected(g)
        ]
        assert len(graphs) == expected, (n, len(graphs))
        lines = [
            nx.to_graph6_bytes(g, header=False).decode("ascii").strip()
            for g in graphs
        ]
        path = out_dir / f"connected_n{n}.g6"
        path.write_text("\n".join(lines) + "\n", encoding="ascii")
        print(f"wrote {len(lines):4d} graphs to {path}")


if __name__ == "__main__":
    main()
