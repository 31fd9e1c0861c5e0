"""Typed noncrossing planar matchings between DNA words, and their calculus.

A diagram from ``source`` to ``target`` lives in a rectangle with the
source word along the top boundary and the target word along the bottom.
Its edges come in three kinds:

* ``through`` wires ``(i, j)`` joining source position ``i`` to target
  position ``j``, carrying the same letter on both ends;
* ``source_arcs`` ``(i, j)``, ``i < j``, pairing two complementary source
  positions;
* ``target_arcs``, the same on the target side.

Every position touches at most one edge (unmatched positions are fine),
through wires are order-preserving, arcs on one boundary are mutually
noncrossing, and no through wire is anchored strictly inside an arc's
span.  Together these say exactly that the picture can be drawn in the
rectangle without crossings.  Equivalently: the arcs obtained by bending
the source up alongside the target (see :func:`bend`) form a valid
secondary structure on ``reverse_complement(source) + target``.

Composition stacks two rectangles and traces the glued paths.  Paths that
survive to the outer boundary become edges of the composite; closed loops
are erased (each one counts for nothing), as are paths trapped entirely
at the interface; a path that dead-ends at an unmatched interface
position leaves its boundary endpoint unmatched.  :class:`LoopReport`
tallies everything erased so the bond bookkeeping of a composition can be
audited.

:func:`zip_and_transfer` computes the same composite in the straightened
picture: juxtapose the two bent structures, pair the complementary
interface segments position-by-position, and trace.  This is the
combinatorial content of toehold-mediated strand displacement.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Union

from .core import (
    SecondaryStructure,
    Violation,
    canonical_word,
    complement,
    is_complementary,
    pair_class,
    reverse_complement,
    structure_violations,
)


class DiagramError(ValueError):
    """A diagram failed validation; carries every violation."""

    def __init__(self, violations: list[Violation]):
        self.violations = violations
        super().__init__("; ".join(str(v) for v in violations))


class InterfaceError(ValueError):
    """Two values were glued along boundaries that do not match."""


class DdnaFormatError(ValueError):
    """Malformed ``.ddna`` text."""


@dataclass(frozen=True)
class Diagram:
    """A morphism ``source -> target``; validated eagerly at construction."""

    source: str
    target: str
    through: frozenset[tuple[int, int]] = frozenset()
    source_arcs: frozenset[tuple[int, int]] = frozenset()
    target_arcs: frozenset[tuple[int, int]] = frozenset()

    def __post_init__(self) -> None:
        object.__setattr__(self, "source", canonical_word(self.source))
        object.__setattr__(self, "target", canonical_word(self.target))
        for field in ("through", "source_arcs", "target_arcs"):
            object.__setattr__(
                self,
                field,
                frozenset((int(i), int(j)) for i, j in getattr(self, field)),
            )
        violations = validate(self)
        if violations:
            raise DiagramError(violations)

    @classmethod
    def unchecked(
        cls,
        source: str,
        target: str,
        through: Iterable[tuple[int, int]] = (),
        source_arcs: Iterable[tuple[int, int]] = (),
        target_arcs: Iterable[tuple[int, int]] = (),
    ) -> "Diagram":
        self = object.__new__(cls)
        object.__setattr__(self, "source", source)
        object.__setattr__(self, "target", target)
        object.__setattr__(self, "through", frozenset(tuple(e) for e in through))
        object.__setattr__(self, "source_arcs", frozenset(tuple(e) for e in source_arcs))
        object.__setattr__(self, "target_arcs", frozenset(tuple(e) for e in target_arcs))
        return self


@dataclass(frozen=True)
class LoopReport:
    """What a composition erased, and the bond arithmetic it implies.

    ``bonds_before`` counts the arcs of both inputs (through wires are not
    bonds) and ``bonds_after`` the arcs of the result.
    ``interface_bonds_formed`` is the number of complementary interface
    pairings applied by :func:`zip_and_transfer` (always the full
    interface length; zero for plain :func:`compose`).

    The erased material is broken down so the count balances exactly:

    * ``closed_loop_bonds`` -- input arcs erased inside closed loops.  In
      a zip-and-transfer every closed loop alternates input arcs with
      interface pairings, so the loop also consumed the same number of
      interface bonds.
    * ``erased_path_bonds`` -- bond edges (input arcs plus interface
      pairings) erased with interior-only open paths and with dead-end
      paths.
    * ``absorbed_bonds`` -- bond edges swallowed when a surviving
      boundary-to-boundary path is rewired down to its single composite
      edge.

    For zip-and-transfer these satisfy::

        bonds_after == bonds_before + interface_bonds_formed
                       - 2 * closed_loop_bonds
                       - erased_path_bonds - absorbed_bonds

    ``loop_at_pairs``/``loop_cg_pairs`` split every erased closed-loop
    bond edge by pair type, for weighted-loop variants layered on top.
    """

    closed_loops: int = 0
    erased_open_paths: int = 0
    dangled_endpoints: int = 0
    interface_bonds_formed: int = 0
    bonds_before: int = 0
    bonds_after: int = 0
    closed_loop_bonds: int = 0
    erased_path_bonds: int = 0
    absorbed_bonds: int = 0
    loop_at_pairs: int = 0
    loop_cg_pairs: int = 0

    def is_clean(self) -> bool:
        """True when nothing was erased or left dangling."""
        return not (self.closed_loops or self.erased_open_paths or self.dangled_endpoints)


def validate(d: Diagram) -> list[Violation]:
    """Check every diagram invariant, returning all failures with indices."""
    ns, nt = len(d.source), len(d.target)
    violations = []

    def in_range(i: int, n: int) -> bool:
        return 1 <= i <= n

    for i, j in sorted(d.through):
        if not in_range(i, ns) or not in_range(j, nt):
            violations.append(Violation("index-range", f"through ({i},{j}) outside boundaries"))
    for name, arcs, n in (("source arc", d.source_arcs, ns), ("target arc", d.target_arcs, nt)):
        for i, j in sorted(arcs):
            if not in_range(i, n) or not in_range(j, n):
                violations.append(Violation("index-range", f"{name} ({i},{j}) outside 1..{n}"))
            elif i >= j:
                violations.append(Violation("arc-order", f"{name} ({i},{j}) needs i < j"))

    through = sorted(
        (i, j) for i, j in d.through if in_range(i, ns) and in_range(j, nt)
    )
    src_arcs = sorted((i, j) for i, j in d.source_arcs if 1 <= i < j <= ns)
    tgt_arcs = sorted((i, j) for i, j in d.target_arcs if 1 <= i < j <= nt)

    # Degree: each boundary position in at most one edge on its side.
    src_uses: dict[int, list[str]] = {}
    tgt_uses: dict[int, list[str]] = {}
    for i, j in through:
        src_uses.setdefault(i, []).append(f"through ({i},{j})")
        tgt_uses.setdefault(j, []).append(f"through ({i},{j})")
    for i, j in src_arcs:
        src_uses.setdefault(i, []).append(f"source arc ({i},{j})")
        src_uses.setdefault(j, []).append(f"source arc ({i},{j})")
    for i, j in tgt_arcs:
        tgt_uses.setdefault(i, []).append(f"target arc ({i},{j})")
        tgt_uses.setdefault(j, []).append(f"target arc ({i},{j})")
    for side, uses in (("source", src_uses), ("target", tgt_uses)):
        for pos in sorted(uses):
            if len(uses[pos]) > 1:
                violations.append(
                    Violation("degree", f"{side} position {pos} in {' and '.join(uses[pos])}")
                )

    for i, j in through:
        if d.source[i - 1] != d.target[j - 1]:
            violations.append(
                Violation(
                    "through-typing",
                    f"through ({i},{j}) joins {d.source[i - 1]} to {d.target[j - 1]}",
                )
            )
    for name, arcs, word in (
        ("source arc", src_arcs, d.source),
        ("target arc", tgt_arcs, d.target),
    ):
        for i, j in arcs:
            if not is_complementary(word[i - 1], word[j - 1]):
                violations.append(
                    Violation(
                        "arc-typing",
                        f"{name} ({i},{j}) pairs {word[i - 1]} with {word[j - 1]}",
                    )
                )

    for (i, j), (k, l) in zip(through, through[1:]):
        if j >= l:
            violations.append(
                Violation(
                    "through-crossing",
                    f"through wires ({i},{j}) and ({k},{l}) cross",
                )
            )
    for name, arcs, anchors in (
        ("source arc", src_arcs, [i for i, _ in through]),
        ("target arc", tgt_arcs, [j for _, j in through]),
    ):
        for i, j in arcs:
            for k in anchors:
                if i < k < j:
                    violations.append(
                        Violation(
                            "arc-wire-crossing",
                            f"{name} ({i},{j}) spans through anchor {k}",
                        )
                    )
        for a, (i, j) in enumerate(arcs):
            for k, l in arcs[a + 1 :]:
                if i < k < j < l:
                    violations.append(
                        Violation("arc-arc-crossing", f"{name}s ({i},{j}) and ({k},{l}) cross")
                    )
    return violations


def identity(word: str) -> Diagram:
    """The straight-through matching on ``word``: wire ``i -> i``, no arcs."""
    word = canonical_word(word)
    return Diagram(word, word, frozenset((i, i) for i in range(1, len(word) + 1)))


def evaluation(word: str) -> Diagram:
    """The cup ``word + dual(word) -> empty``: nested source arcs ``(i, 2n+1-i)``.

    This is the canonical duplex pairing of a word against its reverse
    complement.
    """
    word = canonical_word(word)
    n = len(word)
    return Diagram(
        word + reverse_complement(word),
        "",
        source_arcs=frozenset((i, 2 * n + 1 - i) for i in range(1, n + 1)),
    )


def coevaluation(word: str) -> Diagram:
    """The cap ``empty -> dual(word) + word``; the cup reflected vertically."""
    word = canonical_word(word)
    n = len(word)
    return Diagram(
        "",
        reverse_complement(word) + word,
        target_arcs=frozenset((i, 2 * n + 1 - i) for i in range(1, n + 1)),
    )


def tensor(f: Diagram, g: Diagram) -> Diagram:
    """Horizontal juxtaposition: ``g`` drawn to the right of ``f``."""
    ds, dt = len(f.source), len(f.target)
    return Diagram(
        f.source + g.source,
        f.target + g.target,
        through=f.through | {(i + ds, j + dt) for i, j in g.through},
        source_arcs=f.source_arcs | {(i + ds, j + ds) for i, j in g.source_arcs},
        target_arcs=f.target_arcs | {(i + dt, j + dt) for i, j in g.target_arcs},
    )


def tensor_all(diagrams: Iterable[Diagram]) -> Diagram:
    result = identity("")
    for d in diagrams:
        result = tensor(result, d)
    return result


# Gluing-graph machinery shared by compose and zip_and_transfer.  Nodes are
# (layer, position); an edge is (node, node, kind, pair_type) where kind is
# "wire", "arc" or "interface" and pair_type is "AT"/"CG" for bond edges.

_Node = tuple[int, int]
_Edge = tuple[_Node, _Node, str, str]


def _trace_components(edges: list[_Edge]) -> list[list[_Edge]]:
    adjacency: dict[_Node, list[int]] = {}
    for idx, (a, b, _, _) in enumerate(edges):
        adjacency.setdefault(a, []).append(idx)
        adjacency.setdefault(b, []).append(idx)
    for node, incident in adjacency.items():
        if len(incident) > 2:
            raise AssertionError(f"node {node} has degree {len(incident)}")

    seen = [False] * len(edges)
    components = []

    def walk(start: _Node, first: int) -> list[_Edge]:
        path = []
        node, edge_idx = start, first
        while edge_idx is not None and not seen[edge_idx]:
            seen[edge_idx] = True
            path.append(edges[edge_idx])
            a, b, _, _ = edges[edge_idx]
            node = b if node == a else a
            edge_idx = next((e for e in adjacency[node] if not seen[e]), None)
        return path

    for node in sorted(adjacency):
        if len(adjacency[node]) == 1 and not seen[adjacency[node][0]]:
            components.append(walk(node, adjacency[node][0]))
    for idx in range(len(edges)):
        if not seen[idx]:
            a = edges[idx][0]
            components.append(walk(a, idx))
    return components


def _component_ends(component: list[_Edge]) -> list[_Node]:
    """Endpoints of a path component; empty for a cycle."""
    count: dict[_Node, int] = {}
    for a, b, _, _ in component:
        count[a] = count.get(a, 0) + 1
        count[b] = count.get(b, 0) + 1
    return sorted(node for node, c in count.items() if c == 1)


@dataclass
class _Tally:
    closed_loops: int = 0
    erased_open_paths: int = 0
    dangled_endpoints: int = 0
    closed_loop_bonds: int = 0
    erased_path_bonds: int = 0
    absorbed_bonds: int = 0
    loop_at_pairs: int = 0
    loop_cg_pairs: int = 0


def _classify(
    components: list[list[_Edge]],
    boundary_layers: frozenset[int],
    emit,
    tally: _Tally,
) -> None:
    for component in components:
        ends = _component_ends(component)
        bonds = sum(1 for _, _, kind, _ in component if kind != "wire")
        input_bonds = sum(1 for _, _, kind, _ in component if kind == "arc")
        if not ends:
            tally.closed_loops += 1
            tally.closed_loop_bonds += input_bonds
            tally.loop_at_pairs += sum(
                1 for _, _, kind, pt in component if kind != "wire" and pt == "AT"
            )
            tally.loop_cg_pairs += sum(
                1 for _, _, kind, pt in component if kind != "wire" and pt == "CG"
            )
            continue
        on_boundary = [node for node in ends if node[0] in boundary_layers]
        if len(on_boundary) == 2:
            emitted_is_bond = emit(on_boundary[0], on_boundary[1])
            tally.absorbed_bonds += bonds - (1 if emitted_is_bond else 0)
        elif len(on_boundary) == 1:
            tally.dangled_endpoints += 1
            tally.erased_path_bonds += bonds
        else:
            tally.erased_open_paths += 1
            tally.erased_path_bonds += bonds


def bond_count(value: Union[Diagram, SecondaryStructure]) -> int:
    """Number of base-pair bonds: arcs only, through wires excluded."""
    if isinstance(value, Diagram):
        return len(value.source_arcs) + len(value.target_arcs)
    return len(value.arcs)


def compose(f: Diagram, g: Diagram) -> tuple[Diagram, LoopReport]:
    """Stack ``f`` on top of ``g``, gluing ``f.target`` to ``g.source``.

    Returns the composite ``f.source -> g.target`` plus the erasure
    report.  Raises :class:`InterfaceError` unless the glued boundary
    words are equal.
    """
    if f.target != g.source:
        raise InterfaceError(
            f"cannot glue: upper target {f.target or '-'!r} != lower source {g.source or '-'!r}"
        )
    X, Y, Z = 0, 1, 2
    mid = f.target

    def arc_type(word: str, i: int, j: int) -> str:
        return pair_class(word[i - 1], word[j - 1])

    edges: list[_Edge] = []
    for i, j in sorted(f.through):
        edges.append(((X, i), (Y, j), "wire", ""))
    for i, j in sorted(f.source_arcs):
        edges.append(((X, i), (X, j), "arc", arc_type(f.source, i, j)))
    for i, j in sorted(f.target_arcs):
        edges.append(((Y, i), (Y, j), "arc", arc_type(mid, i, j)))
    for i, j in sorted(g.through):
        edges.append(((Y, i), (Z, j), "wire", ""))
    for i, j in sorted(g.source_arcs):
        edges.append(((Y, i), (Y, j), "arc", arc_type(mid, i, j)))
    for i, j in sorted(g.target_arcs):
        edges.append(((Z, i), (Z, j), "arc", arc_type(g.target, i, j)))

    through: set[tuple[int, int]] = set()
    source_arcs: set[tuple[int, int]] = set()
    target_arcs: set[tuple[int, int]] = set()

    def emit(a: _Node, b: _Node) -> bool:
        (la, pa), (lb, pb) = a, b
        if la == X and lb == Z:
            through.add((pa, pb))
            return False
        if la == X and lb == X:
            source_arcs.add((min(pa, pb), max(pa, pb)))
        else:
            target_arcs.add((min(pa, pb), max(pa, pb)))
        return True

    tally = _Tally()
    _classify(_trace_components(edges), frozenset({X, Z}), emit, tally)
    result = Diagram(f.source, g.target, through, source_arcs, target_arcs)
    report = LoopReport(
        closed_loops=tally.closed_loops,
        erased_open_paths=tally.erased_open_paths,
        dangled_endpoints=tally.dangled_endpoints,
        interface_bonds_formed=0,
        bonds_before=bond_count(f) + bond_count(g),
        bonds_after=bond_count(result),
        closed_loop_bonds=tally.closed_loop_bonds,
        erased_path_bonds=tally.erased_path_bonds,
        absorbed_bonds=tally.absorbed_bonds,
        loop_at_pairs=tally.loop_at_pairs,
        loop_cg_pairs=tally.loop_cg_pairs,
    )
    return result, report


def bend(f: Diagram) -> SecondaryStructure:
    """Straighten a diagram into a structure on ``dual(source) + target``.

    Source position ``i`` lands at ``len(source) + 1 - i`` inside the
    reversed-complement prefix; target position ``j`` keeps its order at
    ``len(source) + j``.  Every edge of the diagram becomes one arc.
    """
    n = len(f.source)
    word = reverse_complement(f.source) + f.target

    def src(i: int) -> int:
        return n + 1 - i

    def tgt(j: int) -> int:
        return n + j

    arcs = (
        {(src(i), tgt(j)) for i, j in f.through}
        | {(src(j), src(i)) for i, j in f.source_arcs}
        | {(tgt(i), tgt(j)) for i, j in f.target_arcs}
    )
    return SecondaryStructure(word, frozenset(arcs))


def unbend(structure: SecondaryStructure, source_length: int) -> Diagram:
    """Invert :func:`bend`: read the first ``source_length`` positions as
    the dualized source and the rest as the target."""
    k = source_length
    if not 0 <= k <= len(structure.word):
        raise ValueError(
            f"source length {k} outside 0..{len(structure.word)}"
        )
    source = reverse_complement(structure.word[:k])
    target = structure.word[k:]
    through = set()
    source_arcs = set()
    target_arcs = set()
    for p, q in structure.arcs:
        if q <= k:
            source_arcs.add((k + 1 - q, k + 1 - p))
        elif p > k:
            target_arcs.add((p - k, q - k))
        else:
            through.add((k + 1 - p, q - k))
    return Diagram(source, target, through, source_arcs, target_arcs)


def structure_as_diagram(structure: SecondaryStructure) -> Diagram:
    """View a structure on ``w`` as the morphism ``empty -> w``."""
    return Diagram("", structure.word, target_arcs=structure.arcs)


def zip_and_transfer(
    fhat: SecondaryStructure, ghat: SecondaryStructure, interface: str
) -> tuple[SecondaryStructure, LoopReport]:
    """Compose two straightened diagrams across a complementary interface.

    ``fhat`` must end with ``interface`` and ``ghat`` must start with its
    reverse complement.  The interface segments are zipped position ``i``
    against position ``len(interface) + 1 - i``, connectivity transfers
    through the zipped pairs, and interior leftovers are erased exactly as
    in :func:`compose`.  Agrees with bending, composing, and unbending.
    """
    y = canonical_word(interface)
    ny = len(y)
    nx = len(fhat.word) - ny
    if nx < 0 or fhat.word[nx:] != y:
        raise InterfaceError(f"left word {fhat.word!r} does not end with {y!r}")
    if len(ghat.word) < ny or ghat.word[:ny] != reverse_complement(y):
        raise InterfaceError(
            f"right word {ghat.word!r} does not start with {reverse_complement(y)!r}"
        )
    nz = len(ghat.word) - ny
    P, YL, YR, S = 0, 1, 2, 3  # prefix, interface left/right, suffix

    def left_node(p: int) -> _Node:
        return (P, p) if p <= nx else (YL, p - nx)

    def right_node(p: int) -> _Node:
        return (YR, p) if p <= ny else (S, p - ny)

    edges: list[_Edge] = []
    for i, j in sorted(fhat.arcs):
        edges.append(
            (left_node(i), left_node(j), "arc", pair_class(fhat.word[i - 1], fhat.word[j - 1]))
        )
    for i, j in sorted(ghat.arcs):
        edges.append(
            (right_node(i), right_node(j), "arc", pair_class(ghat.word[i - 1], ghat.word[j - 1]))
        )
    for i in range(1, ny + 1):
        edges.append(
            ((YL, i), (YR, ny + 1 - i), "interface", pair_class(y[i - 1], complement(y[i - 1])))
        )

    arcs: set[tuple[int, int]] = set()

    def emit(a: _Node, b: _Node) -> bool:
        def out_pos(node: _Node) -> int:
            layer, p = node
            return p if layer == P else nx + p

        pa, pb = out_pos(a), out_pos(b)
        arcs.add((min(pa, pb), max(pa, pb)))
        return True

    tally = _Tally()
    _classify(_trace_components(edges), frozenset({P, S}), emit, tally)
    result = SecondaryStructure(fhat.word[:nx] + ghat.word[ny:], frozenset(arcs))
    report = LoopReport(
        closed_loops=tally.closed_loops,
        erased_open_paths=tally.erased_open_paths,
        dangled_endpoints=tally.dangled_endpoints,
        interface_bonds_formed=ny,
        bonds_before=len(fhat.arcs) + len(ghat.arcs),
        bonds_after=len(result.arcs),
        closed_loop_bonds=tally.closed_loop_bonds,
        erased_path_bonds=tally.erased_path_bonds,
        absorbed_bonds=tally.absorbed_bonds,
        loop_at_pairs=tally.loop_at_pairs,
        loop_cg_pairs=tally.loop_cg_pairs,
    )
    return result, report


# --- the .ddna text format ---------------------------------------------------
#
# Line 1: source word ("-" for the empty word).  Line 2: target word.  Then
# one edge per line: "T i j" (through), "S i j" (source arc), "A i j"
# (target arc), 1-based.  '#' starts a comment; blank lines are ignored.
# emit_ddna writes edges in T/S/A order, each block sorted, so canonical
# files round-trip byte-exactly.

_EDGE_FIELDS = {"T": "through", "S": "source_arcs", "A": "target_arcs"}


def parse_ddna(text: str) -> Diagram:
    """Parse ``.ddna`` text into a validated diagram.

    Raises :class:`DdnaFormatError` on syntax problems and
    :class:`DiagramError` (carrying the full violation list) when the
    parsed edges break a diagram invariant.
    """
    words: list[str] = []
    edges: dict[str, list[tuple[int, int]]] = {"T": [], "S": [], "A": []}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if len(words) < 2:
            words.append("" if line == "-" else line)
            continue
        parts = line.split()
        if len(parts) != 3 or parts[0] not in edges:
            raise DdnaFormatError(f"line {lineno}: expected 'T|S|A i j', got {raw!r}")
        try:
            i, j = int(parts[1]), int(parts[2])
        except ValueError:
            raise DdnaFormatError(f"line {lineno}: non-integer index in {raw!r}") from None
        edges[parts[0]].append((i, j))
    if len(words) < 2:
        raise DdnaFormatError("expected a source line and a target line")
    raw_diagram = Diagram.unchecked(
        canonical_word(words[0]),
        canonical_word(words[1]),
        edges["T"],
        edges["S"],
        edges["A"],
    )
    violations = validate(raw_diagram)
    if violations:
        raise DiagramError(violations)
    return Diagram(words[0], words[1], edges["T"], edges["S"], edges["A"])


def emit_ddna(d: Diagram) -> str:
    """Serialize a diagram canonically; round-trips through :func:`parse_ddna`."""
    lines = [d.source or "-", d.target or "-"]
    for tag, field in _EDGE_FIELDS.items():
        lines.extend(f"{tag} {i} {j}" for i, j in sorted(getattr(d, field)))
    return "\n".join(lines) + "\n"


def format_report(report: LoopReport) -> str:
    """One ``key: value`` line per field, for diagnostic printing."""
    pairs = [
        ("closed_loops", report.closed_loops),
        ("erased_open_paths", report.erased_open_paths),
        ("dangled_endpoints", report.dangled_endpoints),
        ("interface_bonds_formed", report.interface_bonds_formed),
        ("bonds_before", report.bonds_before),
        ("bonds_after", report.bonds_after),
        ("closed_loop_bonds", report.closed_loop_bonds),
        ("erased_path_bonds", report.erased_path_bonds),
        ("absorbed_bonds", report.absorbed_bonds),
        ("loop_at_pairs", report.loop_at_pairs),
        ("loop_cg_pairs", report.loop_cg_pairs),
    ]
    return "\n".join(f"{key}: {value}" for key, value in pairs) + "\n"
