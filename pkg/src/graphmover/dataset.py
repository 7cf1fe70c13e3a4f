"""Graph serialization, GXL ingestion for letter drawings, and planarization.

The native format is a small JSON document::

    {"d": 2, "vertices": [[0.0, 0.0], [1.0, 0.0]], "edges": [[0, 1]]}

with 0-based edge indices, normalized to i < j. Vertex order in the document
is the vertex order of the graph. GXL files are read-only; their <node>
document order likewise defines the vertex order.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from importlib import resources
from pathlib import Path
from typing import Optional, Union
from xml.etree import ElementTree

from .geometry import GeometricGraph, segment_intersection, validate_graph

LETTER_LABELS = ("A", "E", "F", "H", "I", "K", "L", "M", "N", "T", "V", "W", "X", "Y", "Z")
DISTORTION_LEVELS = ("LOW", "MED", "HIGH")


class GraphFormatError(ValueError):
    """Malformed graph document or dataset file."""


class CollinearOverlapError(ValueError):
    """Two edges share a collinear stretch; the split is ambiguous."""


@dataclass(frozen=True)
class LetterRecord:
    """One letter drawing: its graph, class label, distortion level and file id."""

    graph: GeometricGraph
    label: str
    distortion: str
    source_id: str

    def __post_init__(self):
        if self.label not in LETTER_LABELS:
            raise ValueError(f"unknown letter label {self.label!r}")
        if self.distortion not in DISTORTION_LEVELS:
            raise ValueError(f"unknown distortion level {self.distortion!r}")


def read_json_graph(data: Union[bytes, str]) -> GeometricGraph:
    if isinstance(data, bytes):
        data = data.decode("utf-8")
    try:
        doc = json.loads(data)
    except json.JSONDecodeError as exc:
        raise GraphFormatError(f"not valid JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise GraphFormatError("document is not a JSON object")
    missing = {"d", "vertices", "edges"} - doc.keys()
    if missing:
        raise GraphFormatError(f"missing keys: {sorted(missing)}")
    dim = doc["d"]
    if not isinstance(dim, int) or dim < 1:
        raise GraphFormatError(f"'d' must be a positive integer, got {dim!r}")
    vertices = doc["vertices"]
    edges = doc["edges"]
    if not isinstance(vertices, list) or not isinstance(edges, list):
        raise GraphFormatError("'vertices' and 'edges' must be arrays")
    for v in vertices:
        if not (isinstance(v, list) and len(v) == dim
                and all(isinstance(x, (int, float)) for x in v)):
            raise GraphFormatError(f"bad vertex {v!r}")
    for e in edges:
        if not (isinstance(e, list) and len(e) == 2
                and all(isinstance(x, int) for x in e)):
            raise GraphFormatError(f"bad edge {e!r}")
    try:
        graph = GeometricGraph(dim, tuple(tuple(v) for v in vertices),
                               tuple((e[0], e[1]) for e in edges))
    except ValueError as exc:
        raise GraphFormatError(str(exc)) from exc
    problems = validate_graph(graph)
    if problems:
        raise GraphFormatError(problems[0])
    return graph


def write_json_graph(g: GeometricGraph) -> str:
    """Serialize to the native format; read_json_graph(write_json_graph(g)) == g."""
    doc = {"d": g.dim,
           "vertices": [list(v) for v in g.vertices],
           "edges": [list(e) for e in g.edges]}
    return json.dumps(doc)


def read_gxl_letter(data: Union[bytes, str]) -> GeometricGraph:
    """Parse a GXL letter drawing: 2D nodes with float attrs x, y, undirected edges."""
    try:
        root = ElementTree.fromstring(data)
    except ElementTree.ParseError as exc:
        raise GraphFormatError(f"not valid XML: {exc}") from exc
    index: dict[str, int] = {}
    points: list[tuple[float, float]] = []
    for node in root.iter("node"):
        node_id = node.get("id")
        if node_id is None:
            raise GraphFormatError("node without id")
        if node_id in index:
            raise GraphFormatError(f"duplicate node id {node_id!r}")
        coords = {}
        for attr in node.findall("attr"):
            name = attr.get("name")
            if name not in ("x", "y"):
                continue
            value = list(attr)
            if not value or value[0].text is None:
                raise GraphFormatError(f"node {node_id!r}: attribute {name!r} has no value")
            try:
                coords[name] = float(value[0].text.strip())
            except ValueError as exc:
                raise GraphFormatError(
                    f"node {node_id!r}: non-float {name!r} value {value[0].text!r}") from exc
        if "x" not in coords or "y" not in coords:
            raise GraphFormatError(f"node {node_id!r} is missing an x or y attribute")
        index[node_id] = len(points)
        points.append((coords["x"], coords["y"]))
    edges = []
    for edge in root.iter("edge"):
        src, dst = edge.get("from"), edge.get("to")
        if src not in index or dst not in index:
            raise GraphFormatError(f"edge references unknown node: {src!r} -> {dst!r}")
        i, j = index[src], index[dst]
        if i == j:
            raise GraphFormatError(f"edge from node {src!r} to itself")
        edges.append((i, j))
    try:
        graph = GeometricGraph(2, tuple(points), tuple(edges))
    except ValueError as exc:
        raise GraphFormatError(str(exc)) from exc
    problems = validate_graph(graph)
    if problems:
        raise GraphFormatError(problems[0])
    return graph


def planarize(g: GeometricGraph, eps: float = 1e-9) -> GeometricGraph:
    """Insert vertices at edge crossings so segments only meet at endpoints.

    Every interior crossing point becomes a new vertex appended after the
    original vertices (original order preserved) and the crossing edges are
    split there, leaving the drawn point set unchanged. Where an endpoint of
    one edge lies inside another edge, the other edge is split at that
    existing vertex. Crossing points within eps of each other are merged;
    collinear overlapping edges are an error.
    """
    if g.dim != 2:
        raise ValueError(f"planarize needs a 2D graph, got dim {g.dim}")
    pts = g.coords
    edges = list(g.edges)
    # events[e] maps a vertex id (existing or len(vertices)+cluster) to its
    # parameter along edge e
    events: dict[int, dict[int, float]] = {}
    clusters: list[tuple[float, float]] = []
    n = g.n_vertices

    def add_event(edge_idx: int, t: float, vertex_id: int) -> None:
        events.setdefault(edge_idx, {}).setdefault(vertex_id, t)

    def cluster_id(point: tuple[float, float]) -> int:
        for cid, (cx, cy) in enumerate(clusters):
            if (point[0] - cx) ** 2 + (point[1] - cy) ** 2 <= eps * eps:
                return cid
        clusters.append(point)
        return len(clusters) - 1

    for a in range(len(edges)):
        for b in range(a + 1, len(edges)):
            e1, e2 = edges[a], edges[b]
            kind, point, t, u = segment_intersection(
                pts[e1[0]], pts[e1[1]], pts[e2[0]], pts[e2[1]], eps=eps)
            if kind == "overlap":
                raise CollinearOverlapError(
                    f"edges {e1} and {e2} overlap along a collinear stretch")
            if kind != "point":
                continue
            end1 = _nearest_endpoint(pts, e1, point, eps)
            end2 = _nearest_endpoint(pts, e2, point, eps)
            if end1 is not None and end2 is not None:
                continue  # endpoint contact, nothing to split
            if end1 is not None:
                add_event(b, u, end1)
            elif end2 is not None:
                add_event(a, t, end2)
            else:
                cid = cluster_id(point)
                add_event(a, t, n + cid)
                add_event(b, u, n + cid)

    if not events:
        return g

    new_vertices = list(g.vertices) + [tuple(c) for c in clusters]
    new_edges: list[tuple[int, int]] = []
    for idx, (i, j) in enumerate(edges):
        stops = sorted((t, vid) for vid, t in events.get(idx, {}).items())
        chain = [i] + [vid for _, vid in stops] + [j]
        for v0, v1 in zip(chain, chain[1:]):
            if v0 != v1:
                new_edges.append((v0, v1))
    return GeometricGraph(2, tuple(new_vertices), tuple(new_edges))


def _nearest_endpoint(pts, edge, point, eps) -> Optional[int]:
    best = None
    best_d2 = eps * eps
    for k in edge:
        d2 = (pts[k][0] - point[0]) ** 2 + (pts[k][1] - point[1]) ** 2
        if d2 <= best_d2:
            best, best_d2 = k, d2
    return best


def read_class_index(data: Union[bytes, str]) -> list[tuple[str, str]]:
    """(file, class) pairs from an XML class file, in document order."""
    try:
        root = ElementTree.fromstring(data)
    except ElementTree.ParseError as exc:
        raise GraphFormatError(f"not valid XML: {exc}") from exc
    pairs = [(el.get("file"), el.get("class"))
             for el in root.iter()
             if el.get("file") is not None and el.get("class") is not None]
    if not pairs:
        raise GraphFormatError("class file lists no (file, class) entries")
    return pairs


def _read_graph_file(path: Path) -> GeometricGraph:
    data = path.read_bytes()
    if path.suffix.lower() == ".gxl":
        return read_gxl_letter(data)
    return read_json_graph(data)


def load_letter_directory(path, distortion: Optional[str] = None, *,
                          run_planarize: bool = True, eps: float = 1e-9,
                          limit: Optional[int] = None) -> list[LetterRecord]:
    """Load one distortion directory of letter drawings.

    Labels come from the directory's class files (any ``*.cxl``, concatenated
    in sorted filename order) or from a ``labels.json`` object mapping file
    names to letters. Graphs are planarized by default so that downstream
    consumers see valid geometric graphs.
    """
    root = Path(path)
    if distortion is None:
        distortion = root.name.upper()
    if distortion not in DISTORTION_LEVELS:
        raise ValueError(f"distortion must be one of {DISTORTION_LEVELS}, got {distortion!r}")
    entries: list[tuple[str, str]] = []
    labels_json = root / "labels.json"
    class_files = sorted(root.glob("*.cxl"))
    if labels_json.exists():
        mapping = json.loads(labels_json.read_text())
        entries = sorted(mapping.items())
    elif class_files:
        for cf in class_files:
            entries.extend(read_class_index(cf.read_bytes()))
    else:
        raise GraphFormatError(f"no labels.json or *.cxl class file in {root}")
    if limit is not None:
        entries = entries[:limit]
    records = []
    for fname, label in entries:
        graph = _read_graph_file(root / fname)
        if run_planarize:
            graph = planarize(graph, eps)
        records.append(LetterRecord(graph, label, distortion, Path(fname).stem))
    return records


def load_prototypes(path=None) -> dict[str, GeometricGraph]:
    """The 15 letter prototypes, keyed by letter, in alphabetical label order.

    With no argument, loads the prototypes shipped with the package; otherwise
    reads ``<LETTER>.json`` files from the given directory.
    """
    protos = {}
    for label in LETTER_LABELS:
        if path is None:
            text = (resources.files("graphmover") / "data" / "prototypes"
                    / f"{label}.json").read_text()
        else:
            target = Path(path) / f"{label}.json"
            if not target.exists():
                raise GraphFormatError(f"missing prototype for letter {label}: {target}")
            text = target.read_text()
        protos[label] = read_json_graph(text)
    return protos


def packaged_graph(name: str) -> GeometricGraph:
    """A graph fixture shipped with the package, e.g. ``figures/shared_vertices_G``."""
    text = (resources.files("graphmover") / "data" / f"{name}.json").read_text()
    return read_json_graph(text)
