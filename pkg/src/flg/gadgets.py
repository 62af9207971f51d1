"""Gadget factories for the satisfiability reduction.

The reduction compiles a 3-CNF formula into an undirected graph that is
an intersection graph exactly when the formula is satisfiable.  Its
building blocks, all produced here:

* the 5-wheel and its extension I (a wheel with two pendant branches
  and two degree-2 attachment nodes), which has exactly two preimages;
* Inv, two copies of I sharing an attachment node, whose preimages
  force opposite branch orientations at its two ends;
* per-variable chains of I copies (one copy per clause) whose uniform
  orientation encodes the truth value;
* per-clause blocks of three pendant triangles wired through two Inv
  blocks, whose preimages forbid the all-false slot configuration.

Node identities are tracked by string labels; a node carries every
label that was identified onto it.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional, Sequence

from .core import Digraph, UGraph, UnionFind
from .intersect import ArcCertificate, check_certificate
from .search import enumerate_preimages, labeled_digraph_iso


@dataclass
class CnfFormula:
    """A CNF formula with exactly three distinct variables per clause."""

    variable_count: int
    clauses: list[tuple[tuple[int, bool], ...]]

    def __post_init__(self) -> None:
        for idx, clause in enumerate(self.clauses):
            clause = tuple((int(v), bool(neg)) for v, neg in clause)
            self.clauses[idx] = clause
            if len(clause) != 3:
                raise ValueError(f"clause {idx + 1} must have exactly 3 literals")
            variables = [v for v, _ in clause]
            if len(set(variables)) != 3:
                raise ValueError(f"clause {idx + 1} repeats a variable")
            for v in variables:
                if not 1 <= v <= self.variable_count:
                    raise ValueError(f"clause {idx + 1} references unknown variable {v}")

    @property
    def clause_count(self) -> int:
        return len(self.clauses)

    def evaluate(self, assignment: Sequence[int]) -> bool:
        if len(assignment) != self.variable_count:
            raise ValueError("assignment length does not match variable count")
        values = [bool(b) for b in assignment]
        return all(
            any(values[v - 1] != neg for v, neg in clause) for clause in self.clauses
        )


def parse_dimacs_cnf(text: str) -> CnfFormula:
    """Parse DIMACS cnf: `p cnf <vars> <clauses>` then 0-terminated clauses."""
    header: Optional[tuple[int, int]] = None
    literals: list[int] = []
    for line in text.splitlines():
        line = line.strip()
        if not line or line.startswith("c"):
            continue
        if line.startswith("p"):
            parts = line.split()
            if len(parts) != 4 or parts[1] != "cnf":
                raise ValueError(f"bad DIMACS header: {line!r}")
            header = (int(parts[2]), int(parts[3]))
            continue
        if header is None:
            raise ValueError("clause data before DIMACS header")
        literals.extend(int(tok) for tok in line.split())
    if header is None:
        raise ValueError("missing DIMACS header")
    n, m = header
    clauses: list[tuple[tuple[int, bool], ...]] = []
    current: list[tuple[int, bool]] = []
    for lit in literals:
        if lit == 0:
            clauses.append(tuple(current))
            current = []
        else:
            current.append((abs(lit), lit < 0))
    if current:
        raise ValueError("last clause is not 0-terminated")
    if len(clauses) != m:
        raise ValueError(f"header claims {m} clauses, found {len(clauses)}")
    return CnfFormula(n, clauses)


@dataclass
class GadgetLabels:
    """Label-to-node map; identified nodes carry all their labels."""

    node_of: dict[str, int]

    def node(self, label: str) -> int:
        return self.node_of[label]

    def labels_of(self, v: int) -> list[str]:
        return sorted(label for label, node in self.node_of.items() if node == v)


class _GraphBuilder:
    """Incremental labeled graph with node identification."""

    def __init__(self) -> None:
        self._slot: dict[str, int] = {}
        self._order: list[str] = []
        self._merges: list[tuple[str, str]] = []
        self._edges: list[tuple[str, str]] = []

    def node(self, label: str) -> None:
        if label not in self._slot:
            self._slot[label] = len(self._order)
            self._order.append(label)

    def alias(self, label: str, other: str) -> None:
        self.node(label)
        self.node(other)
        self._merges.append((label, other))

    def edge(self, u: str, v: str) -> None:
        self.node(u)
        self.node(v)
        self._edges.append((u, v))

    def merge(self, u: str, v: str) -> None:
        self.alias(u, v)

    def build(self) -> tuple[UGraph, GadgetLabels]:
        uf = UnionFind(len(self._order))
        for u, v in self._merges:
            uf.union(self._slot[u], self._slot[v])
        compact: dict[int, int] = {}
        for label in self._order:
            root = uf.find(self._slot[label])
            if root not in compact:
                compact[root] = len(compact)
        node_of = {label: compact[uf.find(slot)] for label, slot in self._slot.items()}
        edges = set()
        for u, v in self._edges:
            a, b = node_of[u], node_of[v]
            if a == b:
                raise ValueError(f"edge {u}-{v} collapsed to a self-loop")
            edges.add((a, b))
        return UGraph(len(compact), sorted(edges)), GadgetLabels(node_of)


# Graph I: wheel hub "a", rim "b".."f", pendants "g" (on b) and "h" (on
# f), attachment nodes "i" (adjacent c,d) and "j" (adjacent d,e).
_I_NODES = ("a", "b", "c", "d", "e", "f", "g", "h", "i", "j")
_I_EDGES = (
    ("a", "b"), ("a", "c"), ("a", "d"), ("a", "e"), ("a", "f"),
    ("b", "c"), ("c", "d"), ("d", "e"), ("e", "f"), ("b", "f"),
    ("b", "g"), ("f", "h"), ("c", "i"), ("d", "i"), ("d", "j"), ("e", "j"),
)

# The two preimages of I, as label -> (tail atom, head atom).  Keyed by
# the branch orientation they realize: False = the rim arc b enters the
# pendant arc g (and h enters f); True = g enters b (and f enters h).
_I_PREIMAGES: dict[bool, dict[str, tuple[str, str]]] = {
    False: {
        "a": ("t", "y"), "b": ("t", "u"), "c": ("x", "t"), "d": ("y", "x"),
        "e": ("y", "z"), "f": ("z", "t"), "g": ("u", "v"), "h": ("q", "z"),
        "i": ("x", "w"), "j": ("p", "y"),
    },
    True: {
        "a": ("t", "y"), "b": ("x", "t"), "c": ("y", "x"), "d": ("y", "z"),
        "e": ("z", "t"), "f": ("t", "u"), "g": ("w", "x"), "h": ("u", "v"),
        "i": ("p", "y"), "j": ("z", "q"),
    },
}

# Inv node labels: one copy of I plus a second copy "a'".."i'" glued at
# the attachment node (the second copy's mirror-side attachment), so
# "j" is shared: adjacent to d,e and to c',d'.
_INV_PRIME = ("a'", "b'", "c'", "d'", "e'", "f'", "g'", "h'", "i'")

# The two preimages of Inv, transcribed arc by arc.  "outward": the
# inner arcs enter the pendant-most arcs at both ends (b enters g, b'
# enters g'); "inward": the opposite (g enters b, g' enters b').
_INV_PREIMAGES: dict[str, dict[str, tuple[str, str]]] = {
    "outward": {
        "a": ("z", "x"), "b": ("z", "q"), "c": ("t", "z"), "d": ("x", "t"),
        "e": ("x", "y"), "f": ("y", "z"), "g": ("q", "v"), "h": ("p", "y"),
        "i": ("t", "u"), "j": ("w", "x"),
        "a'": ("C", "B"), "b'": ("C", "D"), "c'": ("w", "C"), "d'": ("B", "w"),
        "e'": ("B", "E"), "f'": ("E", "C"), "g'": ("D", "G"), "h'": ("F", "E"),
        "i'": ("A", "B"),
    },
    "inward": {
        "a": ("t", "y"), "b": ("z", "t"), "c": ("y", "z"), "d": ("y", "x"),
        "e": ("x", "t"), "f": ("t", "u"), "g": ("q", "z"), "h": ("u", "v"),
        "i": ("p", "y"), "j": ("x", "w"),
        "a'": ("E", "w"), "b'": ("C", "E"), "c'": ("w", "C"), "d'": ("w", "B"),
        "e'": ("B", "E"), "f'": ("E", "F"), "g'": ("D", "C"), "h'": ("F", "G"),
        "i'": ("B", "A"),
    },
}


def build_wheel5() -> UGraph:
    """The 5-wheel: hub 0, rim 1..5."""
    return UGraph(6, [(0, i) for i in range(1, 6)]
                  + [(1, 2), (2, 3), (3, 4), (4, 5), (1, 5)])


def _add_I(b: _GraphBuilder, name: Callable[[str], str]) -> None:
    for u, v in _I_EDGES:
        b.edge(name(u), name(v))


def build_I() -> UGraph:
    """The wheel extension I: 10 nodes, 16 edges."""
    b = _GraphBuilder()
    for label in _I_NODES:
        b.node(label)
    _add_I(b, lambda x: x)
    g, _ = b.build()
    return g


def _inv_label_pairs() -> list[tuple[str, str]]:
    """Edges of the second I copy inside Inv, in primed labels."""
    mirror = {"a": "a'", "b": "b'", "c": "c'", "d": "d'", "e": "e'",
              "f": "f'", "g": "g'", "h": "h'", "i": "j", "j": "i'"}
    return [(mirror[u], mirror[v]) for u, v in _I_EDGES]


def build_Inv() -> UGraph:
    """Two copies of I sharing one attachment node: 19 nodes, 32 edges."""
    b = _GraphBuilder()
    for label in _I_NODES + _INV_PRIME:
        b.node(label)
    _add_I(b, lambda x: x)
    for u, v in _inv_label_pairs():
        b.edge(u, v)
    g, _ = b.build()
    return g


def _gad1_into(b: _GraphBuilder, i: int, m: int) -> None:
    for l in range(1, m + 1):
        def name(x: str, l: int = l) -> str:
            if x == "i":
                return f"i^{i}_{l}"
            if x == "j":
                return f"i^{i}_{l + 1}"
            return f"{x}^{i}_{l}"

        _add_I(b, name)
        b.alias(f"j^{i}_{l}", f"i^{i}_{l + 1}")


def build_gad1(i: int, m: int) -> tuple[UGraph, GadgetLabels]:
    """Variable gadget: m copies of I chained at their attachment nodes.

    Copy l of variable i carries labels a^i_l .. h^i_l; the shared
    attachment nodes are i^i_1 .. i^i_{m+1} (copy l's right attachment
    j^i_l doubles as copy l+1's left one).  9m+1 nodes, 16m edges.
    """
    if m < 1:
        raise ValueError("need at least one clause copy")
    b = _GraphBuilder()
    _gad1_into(b, i, m)
    return b.build()


# Interface aliases wiring an Inv block into a clause gadget: block "A"
# bridges the first triangle's branch a-a' to the second triangle's
# b-b'; block "B" bridges f-f' to the third triangle's e-e'.
_INV_SIDE_ALIASES = {
    "A": {"g": "a", "b": "a'", "b'": "b'", "g'": "b"},
    "B": {"g": "f", "b": "f'", "b'": "e'", "g'": "e"},
}


def _gad2_into(b: _GraphBuilder, j: int) -> None:
    def nm(x: str) -> str:
        return f"{x}_{j}"

    for u, v in (("r", "a"), ("a", "f"), ("f", "r"),
                 ("s", "b"), ("b", "c"), ("c", "s"),
                 ("t", "e"), ("e", "d"), ("d", "t"),
                 ("r", "r'"), ("s", "s'"), ("t", "t'"), ("c", "d")):
        b.edge(nm(u), nm(v))
    for side in ("A", "B"):
        aliases = _INV_SIDE_ALIASES[side]

        def name(x: str, side: str = side, aliases: dict = aliases) -> str:
            if x in aliases:
                return nm(aliases[x])
            return f"{side}.{x}_{j}"

        _add_I(b, name)
        for u, v in _inv_label_pairs():
            b.edge(name(u), name(v))
        for inv_label, target in aliases.items():
            b.alias(f"{side}.{inv_label}_{j}", nm(target))


def build_gad2(j: int) -> tuple[UGraph, GadgetLabels]:
    """Clause gadget: three pendant triangles wired through two Inv blocks.

    Triangles {r,a,f}, {s,b,c}, {t,e,d} with pendants r',s',t'; one Inv
    block joins branch a-a' to b-b', the other joins f-f' to e-e'; the
    remaining corners c,d are joined directly.  46 nodes, 77 edges.
    """
    b = _GraphBuilder()
    _gad2_into(b, j)
    return b.build()


# Clause-slot preimage catalogue.  Each entry fixes the three pendant
# relations (does r enter r', s enter s', t enter t'?) and is keyed by
# that triple; True means the triangle arc enters its pendant arc,
# which is the satisfied-literal orientation.  The all-False key is
# absent: no preimage realizes it.  Entries are transcribed skeletons
# (atoms k1..k16) completed by the two Inv block preimages.
_GAD2_SKELETONS: dict[tuple[bool, bool, bool], dict] = {
    (True, False, True): {
        "boxes": ("inward", "inward"),
        "arcs": {
            "r'": ("k2", "k1"), "r": ("k3", "k2"), "a": ("k3", "k4"),
            "f": ("k3", "k11"), "a'": ("k4", "EA"), "f'": ("k11", "WB"),
            "b'": ("k6", "WA"), "e'": ("k13", "EB"), "b": ("k7", "k6"),
            "e": ("k14", "k13"), "s": ("k8", "k7"), "t": ("k14", "k15"),
            "s'": ("k9", "k8"), "t'": ("k15", "k16"), "c": ("k7", "k10"),
            "d": ("k10", "k14"),
        },
    },
    (True, True, True): {
        "boxes": ("inward", "inward"),
        "arcs": {
            "r'": ("k2", "k1"), "r": ("k3", "k2"), "a": ("k3", "k4"),
            "f": ("k3", "k11"), "a'": ("k4", "EA"), "f'": ("k11", "WB"),
            "b'": ("k6", "WA"), "e'": ("k13", "EB"), "b": ("k7", "k6"),
            "e": ("k14", "k13"), "s": ("k7", "k8"), "t": ("k14", "k15"),
            "s'": ("k8", "k9"), "t'": ("k15", "k16"), "c": ("k7", "k10"),
            "d": ("k10", "k14"),
        },
    },
    (False, False, True): {
        "boxes": ("inward", "inward"),
        "arcs": {
            "r'": ("k1", "k2"), "r": ("k2", "k3"), "a": ("k3", "k4"),
            "f": ("k3", "k11"), "a'": ("k4", "EA"), "f'": ("k11", "WB"),
            "b'": ("k6", "WA"), "e'": ("k13", "EB"), "b": ("k7", "k6"),
            "e": ("k14", "k13"), "s": ("k8", "k7"), "t": ("k14", "k15"),
            "s'": ("k9", "k8"), "t'": ("k15", "k16"), "c": ("k7", "k10"),
            "d": ("k10", "k14"),
        },
    },
    (False, True, True): {
        "boxes": ("inward", "inward"),
        "arcs": {
            "r'": ("k1", "k2"), "r": ("k2", "k3"), "a": ("k3", "k4"),
            "f": ("k3", "k11"), "a'": ("k4", "EA"), "f'": ("k11", "WB"),
            "b'": ("k6", "WA"), "e'": ("k13", "EB"), "b": ("k7", "k6"),
            "e": ("k14", "k13"), "s": ("k7", "k8"), "t": ("k14", "k15"),
            "s'": ("k8", "k9"), "t'": ("k15", "k16"), "c": ("k7", "k10"),
            "d": ("k10", "k14"),
        },
    },
    (True, False, False): {
        "boxes": ("outward", "inward"),
        "arcs": {
            "r'": ("k2", "k1"), "r": ("k3", "k2"), "a": ("k4", "k3"),
            "f": ("k3", "k11"), "a'": ("EA", "k4"), "f'": ("k11", "WB"),
            "b'": ("WA", "k6"), "e'": ("k13", "EB"), "b": ("k6", "k10"),
            "e": ("k14", "k13"), "s": ("k7", "k6"), "t": ("k15", "k14"),
            "s'": ("k8", "k7"), "t'": ("k16", "k15"), "c": ("k10", "k7"),
            "d": ("k14", "k10"),
        },
    },
}

# Swapping the two Inv sides (second and third triangles) is a graph
# automorphism; it supplies the two slot configurations the transcribed
# entries miss.
_GAD2_MIRROR = {
    "r": "r", "r'": "r'", "a": "f", "f": "a", "a'": "f'", "f'": "a'",
    "s": "t", "t": "s", "s'": "t'", "t'": "s'", "b": "e", "e": "b",
    "b'": "e'", "e'": "b'", "c": "d", "d": "c",
}


class _ArcAssembler:
    """Digraph under construction: labeled arcs over unifiable atoms."""

    def __init__(self) -> None:
        self._parent: dict = {}
        self._arcs: dict[str, tuple] = {}

    def _find(self, x):
        root = x
        while self._parent.get(root, root) != root:
            root = self._parent[root]
        while self._parent.get(x, x) != x:
            self._parent[x], x = root, self._parent[x]
        return root

    def _union(self, x, y) -> None:
        rx, ry = self._find(x), self._find(y)
        if rx != ry:
            self._parent[ry] = rx

    def arc(self, label: str, tail, head) -> None:
        if label in self._arcs:
            t0, h0 = self._arcs[label]
            self._union(t0, tail)
            self._union(h0, head)
        else:
            self._arcs[label] = (tail, head)

    def merge(self, label: str, other: str) -> None:
        """Make two labels denote one arc (unifying their endpoints)."""
        if label in self._arcs and other in self._arcs:
            t0, h0 = self._arcs[label]
            self.arc(other, t0, h0)
        elif label in self._arcs:
            self._arcs[other] = self._arcs[label]
        else:
            self._arcs[label] = self._arcs[other]

    def materialize(self, labels_in_order: Sequence[str]) -> tuple[Digraph, ArcCertificate]:
        number: dict = {}
        arcs: list[tuple[int, int]] = []
        for label in labels_in_order:
            t, h = self._arcs[label]
            pair = []
            for atom in (t, h):
                root = self._find(atom)
                if root not in number:
                    number[root] = len(number)
                pair.append(number[root])
            arcs.append((pair[0], pair[1]))
        d = Digraph(len(number), arcs)
        return d, ArcCertificate.identity(len(arcs))


def _node_label_order(labels: GadgetLabels, n: int) -> list[str]:
    order: list[Optional[str]] = [None] * n
    for label, v in labels.node_of.items():
        if order[v] is None:
            order[v] = label
    return [label for label in order if label is not None]


def _assemble_gad2_arcs(asm: _ArcAssembler, j: int,
                        flags: tuple[bool, bool, bool]) -> None:
    """Install one clause gadget's preimage arcs for slot config flags."""
    mirrored = flags not in _GAD2_SKELETONS
    key = (flags[0], flags[2], flags[1]) if mirrored else flags
    if key not in _GAD2_SKELETONS:
        raise ValueError(f"no clause preimage for slot configuration {flags}")
    entry = _GAD2_SKELETONS[key]

    def base(x: str) -> str:
        return _GAD2_MIRROR[x] if mirrored else x

    def nm(x: str) -> str:
        return f"{base(x)}_{j}"

    def atom(x: str):
        return ("c", j, x)

    for label, (t, h) in entry["arcs"].items():
        asm.arc(nm(label), atom(t), atom(h))
    sides = ("A", "B")
    for side, box in zip(sides, entry["boxes"]):
        aliases = _INV_SIDE_ALIASES[side]
        for inv_label, (t, h) in _INV_PREIMAGES[box].items():
            if inv_label in aliases:
                target = nm(aliases[inv_label])
            else:
                out_side = _mirror_side(side) if mirrored else side
                target = f"{out_side}.{inv_label}_{j}"
            asm.arc(target, ("c", j, side, t), ("c", j, side, h))


def _mirror_side(side: str) -> str:
    return "B" if side == "A" else "A"


def gad2_preimage_catalogue(j: int = 1) -> list[tuple[tuple[bool, bool, bool], Digraph, ArcCertificate]]:
    """The transcribed clause-gadget preimages, one per realizable slot
    configuration (7 of the 8; all-False has none)."""
    g, labels = build_gad2(j)
    order = _node_label_order(labels, g.n)
    out = []
    for flags in sorted(_GAD2_SKELETONS):
        asm = _ArcAssembler()
        _assemble_gad2_arcs(asm, j, flags)
        d, cert = asm.materialize(order)
        out.append((flags, d, cert))
    for flags in sorted(_GAD2_SKELETONS):
        mirrored = (flags[0], flags[2], flags[1])
        if mirrored not in _GAD2_SKELETONS:
            asm = _ArcAssembler()
            _assemble_gad2_arcs(asm, j, mirrored)
            d, cert = asm.materialize(order)
            out.append((mirrored, d, cert))
    return out


def assemble_GF(f: CnfFormula) -> tuple[UGraph, GadgetLabels]:
    """Compile a formula into its recognition instance.

    One variable gadget per variable (with one I copy per clause), one
    clause gadget per clause; each clause slot is spliced onto its
    variable's matching branch: slot node onto the pendant (g for a
    positive literal, h for a negative one), slot pendant onto the rim
    node (b respectively f) of that variable's j-th copy.
    """
    b = _GraphBuilder()
    m = f.clause_count
    for i in range(1, f.variable_count + 1):
        _gad1_into(b, i, m)
    for j in range(1, m + 1):
        _gad2_into(b, j)
    for j, clause in enumerate(f.clauses, start=1):
        for slot, (var, neg) in zip(("r", "s", "t"), clause):
            pendant, rim = ("h", "f") if neg else ("g", "b")
            b.merge(f"{slot}_{j}", f"{pendant}^{var}_{j}")
            b.merge(f"{slot}'_{j}", f"{rim}^{var}_{j}")
    return b.build()


def witness_from_assignment(f: CnfFormula, assignment: Sequence[int]) -> tuple[Digraph, ArcCertificate]:
    """A preimage of assemble_GF(f) realizing a satisfying assignment.

    Every I copy of variable i is oriented by assignment[i-1]; every
    clause picks the catalogue entry matching its literal values.
    Raises if the assignment does not satisfy f.
    """
    if not f.evaluate(assignment):
        raise ValueError("assignment does not satisfy the formula")
    g, labels = assemble_GF(f)
    asm = _ArcAssembler()
    m = f.clause_count
    for i in range(1, f.variable_count + 1):
        arcs = _I_PREIMAGES[bool(assignment[i - 1])]
        for l in range(1, m + 1):
            for label, (t, h) in arcs.items():
                if label == "i":
                    target = f"i^{i}_{l}"
                elif label == "j":
                    target = f"i^{i}_{l + 1}"
                else:
                    target = f"{label}^{i}_{l}"
                asm.arc(target, ("v", i, l, t), ("v", i, l, h))
    for j, clause in enumerate(f.clauses, start=1):
        flags = tuple(bool(assignment[var - 1]) != neg for var, neg in clause)
        _assemble_gad2_arcs(asm, j, flags)
        for slot, (var, neg) in zip(("r", "s", "t"), clause):
            pendant, rim = ("h", "f") if neg else ("g", "b")
            asm.merge(f"{slot}_{j}", f"{pendant}^{var}_{j}")
            asm.merge(f"{slot}'_{j}", f"{rim}^{var}_{j}")
    order = _node_label_order(labels, g.n)
    d, cert = asm.materialize(order)
    if not check_certificate(g, d, cert):
        raise RuntimeError("assembled witness failed its certificate check")
    return d, cert


def _pendant_relation(pendant: "tuple[int, int]", node_arc: "tuple[int, int]") -> str:
    pt, ph = pendant
    nt, nh = node_arc
    if ph == nt and nh == pt:
        return "anti"
    if ph == nt:
        return "in"
    if nh == pt:
        return "out"
    if pt == nt:
        return "tail"
    raise ValueError("arcs are not adjacent")


def verify_gad1(m: int = 1, jobs: int = 1) -> dict:
    """Enumerate the variable gadget's preimages and check that branch
    orientations are uniform: in every preimage either b enters g and h
    enters f in all copies, or g enters b and f enters h in all copies.
    """
    g, labels = build_gad1(1, m)
    result = enumerate_preimages(g, jobs=jobs)
    if result.budget_hit:
        return {"status": "unknown", "node_budget": result.node_budget}
    counts = {"b_enters_g": 0, "g_enters_b": 0, "mixed": 0}
    for d, cert in result.members:
        forms = set()
        for l in range(1, m + 1):
            arc = {x: d.arcs[cert[labels.node(f"{x}^1_{l}")]] for x in "bgfh"}
            if (arc["b"].head == arc["g"].tail
                    and arc["h"].head == arc["f"].tail):
                forms.add("b_enters_g")
            elif (arc["g"].head == arc["b"].tail
                  and arc["f"].head == arc["h"].tail):
                forms.add("g_enters_b")
            else:
                forms.add("mixed")
        counts["mixed" if len(forms) != 1 else forms.pop()] += 1
    status = "pass" if (counts["mixed"] == 0 and counts["b_enters_g"] > 0
                        and counts["g_enters_b"] > 0) else "fail"
    return {
        "status": status,
        "copies": m,
        "preimage_count": result.count,
        "orientation_counts": counts,
    }


def verify_gad2(jobs: int = 1, node_budget: Optional[int] = None) -> dict:
    """Enumerate the clause gadget's preimages and check the slot law:
    no preimage has all three pendants entering their triangle arcs,
    and every transcribed catalogue entry is realized.
    """
    g, labels = build_gad2(1)
    result = enumerate_preimages(g, node_budget=node_budget, jobs=jobs)
    if result.budget_hit:
        return {"status": "unknown", "node_budget": result.node_budget}
    slot_nodes = [(labels.node("r'_1"), labels.node("r_1")),
                  (labels.node("s'_1"), labels.node("s_1")),
                  (labels.node("t'_1"), labels.node("t_1"))]
    config_counts: dict[str, int] = {}
    all_entering = 0
    for d, cert in result.members:
        rels = tuple(
            _pendant_relation(d.arcs[cert[p]], d.arcs[cert[n]])
            for p, n in slot_nodes
        )
        key = ",".join(rels)
        config_counts[key] = config_counts.get(key, 0) + 1
        if rels == ("in", "in", "in"):
            all_entering += 1
    catalogue = gad2_preimage_catalogue(1)
    matched = 0
    for flags, cd, ccert in catalogue:
        if any(labeled_digraph_iso(d, cd, cert, ccert) for d, cert in result.members):
            matched += 1
    status = "pass" if all_entering == 0 and matched == len(catalogue) else "fail"
    return {
        "status": status,
        "preimage_count": result.count,
        "all_pendants_entering": all_entering,
        "slot_configurations": dict(sorted(config_counts.items())),
        "catalogue_size": len(catalogue),
        "catalogue_matched": matched,
    }
