"""Long virtual knot diagrams as Gauss-style passage sequences.

A diagram is read off by walking the long knot from its free start to its
free end and recording every crossing passage in order:

    O<id><sign>   pass over classical crossing <id>
    U<id><sign>   pass under classical crossing <id>
    V<id><sense>  pass through virtual crossing <id>

Signs are local writhe numbers and must agree between the two passages of a
classical crossing.  Senses record which way the transversal strand runs at
a virtual passage (+ = left to right); the two passages of one virtual
crossing always carry opposite senses.

The decomposition machinery cuts the strand into arcs (at underpasses and
virtual passages), groups arcs into long arcs (cut at underpasses only),
assigns every arc its degree, and pairs each classical crossing with the
long arc emanating from its underpass.  The initial and final long arcs are
united into a single column owned by the crossing the final long arc
emanates from.

Planar realizability of a code is deliberately not checked: every
combinatorially valid sequence is accepted, which is exactly the setting in
which the invariants here are defined and tested.
"""

from __future__ import annotations

import re
from dataclasses import dataclass


class InvalidDiagram(ValueError):
    """Raised when an operation needs a valid code but the code is not."""


_TOKEN = re.compile(r"^([OUV])([1-9][0-9]*)([+-])$")


@dataclass(frozen=True)
class PassageToken:
    """One crossing passage: kind is 'O', 'U' or 'V'."""

    kind: str
    cid: int
    sign: int  # writhe sign for O/U, sense for V

    def render(self) -> str:
        return "%s%d%s" % (self.kind, self.cid, "+" if self.sign > 0 else "-")

    def __str__(self):
        return self.render()


class Diagram:
    """Immutable passage sequence, possibly not yet validated."""

    __slots__ = ("tokens",)

    def __init__(self, tokens):
        self.tokens = tuple(tokens)

    @classmethod
    def parse(cls, text: str) -> "Diagram":
        """Parse the token grammar; comments (# to end of line) are dropped.

        Syntax errors carry the 1-based token offset.  Validation is a
        separate step.
        """
        words = []
        for line in text.splitlines():
            body = line.split("#", 1)[0]
            words.extend(body.split())
        tokens = []
        for i, word in enumerate(words):
            m = _TOKEN.match(word)
            if not m:
                raise InvalidDiagram("syntax error at token %d: %r" % (i + 1, word))
            kind, cid, s = m.group(1), int(m.group(2)), m.group(3)
            tokens.append(PassageToken(kind, cid, 1 if s == "+" else -1))
        return cls(tokens)

    def render(self) -> str:
        return " ".join(t.render() for t in self.tokens)

    def __str__(self):
        return self.render()

    def __repr__(self):
        return "Diagram(%r)" % (self.render(),)

    def __eq__(self, other):
        if not isinstance(other, Diagram):
            return NotImplemented
        return self.tokens == other.tokens

    def __hash__(self):
        return hash(self.tokens)

    def __len__(self):
        return len(self.tokens)

    def classical_ids(self) -> list[int]:
        return sorted({t.cid for t in self.tokens if t.kind in ("O", "U")})

    def virtual_ids(self) -> list[int]:
        return sorted({t.cid for t in self.tokens if t.kind == "V"})

    @property
    def n(self) -> int:
        """Number of classical crossings."""
        return len(self.classical_ids())

    @property
    def k(self) -> int:
        """Number of virtual crossings."""
        return len(self.virtual_ids())

    def max_id(self) -> int:
        return max((t.cid for t in self.tokens), default=0)

    def validate(self) -> list[str]:
        """All invariant violations, empty when the code is a valid diagram.

        Never raises: parseable-but-wrong codes come back with the full
        list so a caller can report everything at once.
        """
        seen: dict[int, list[PassageToken]] = {}
        for t in self.tokens:
            seen.setdefault(t.cid, []).append(t)
        out = []
        for cid in sorted(seen):
            toks = seen[cid]
            kinds = sorted(t.kind for t in toks)
            if "V" in kinds and kinds != ["V", "V"]:
                out.append("crossing %d mixes virtual and classical passages" % cid)
                continue
            if len(toks) != 2:
                out.append(
                    "crossing %d has %d passages, expected 2" % (cid, len(toks))
                )
                continue
            a, b = toks
            if kinds == ["V", "V"]:
                if a.sign == b.sign:
                    out.append(
                        "virtual crossing %d has equal senses on both passages" % cid
                    )
            elif kinds == ["O", "U"]:
                if a.sign != b.sign:
                    out.append("classical crossing %d has mismatched signs" % cid)
            else:
                out.append(
                    "classical crossing %d needs one overpass and one underpass,"
                    " got %s" % (cid, "+".join(kinds))
                )
        return out

    def check(self) -> "Diagram":
        """Return self if valid, else raise InvalidDiagram with all violations."""
        problems = self.validate()
        if problems:
            raise InvalidDiagram("; ".join(problems))
        return self


def connect_sum(d1: Diagram, d2: Diagram) -> Diagram:
    """Concatenate two long diagrams, relabeling the second past the first.

    This is the product of long knots: the end of d1 is glued to the start
    of d2.  No underpass or virtual passage sits at the junction, so both
    factors keep their arc structure inside the result.
    """
    d1.check()
    d2.check()
    shift = d1.max_id()
    shifted = [PassageToken(t.kind, t.cid + shift, t.sign) for t in d2.tokens]
    return Diagram(list(d1.tokens) + shifted)


_FAMILIES = ("classical_trefoil", "classical_figure8", "virtual_kink", "virtual_kink_chain")


def generate(family: str, r: int | None = None) -> Diagram:
    """Named diagram families used by the corpus and the test bed.

    virtual_kink_chain(r) nests r virtual passages inside one classical
    kink: O1+ V2+ .. V(r+1)+ U1+ V(r+1)- .. V2-.  Its zeta polynomial is
    p - p*s^r, so the chain witnesses every virtual crossing number.
    """
    if family == "classical_trefoil":
        return Diagram.parse("O1+ U2+ O3+ U1+ O2+ U3+")
    if family == "classical_figure8":
        return Diagram.parse("O1+ U2- O3- U1+ O4+ U3- O2- U4+")
    if family == "virtual_kink":
        return Diagram.parse("O1+ V2+ U1+ V2-")
    if family == "virtual_kink_chain":
        if r is None or r < 1:
            raise ValueError("virtual_kink_chain needs a chain length r >= 1")
        ups = " ".join("V%d+" % (i + 2) for i in range(r))
        downs = " ".join("V%d-" % (r + 1 - i) for i in range(r))
        return Diagram.parse("O1+ %s U1+ %s" % (ups, downs))
    raise ValueError("unknown family %r, have %s" % (family, ", ".join(_FAMILIES)))


@dataclass(frozen=True)
class Arc:
    """Maximal run of the strand between consecutive cut tokens.

    start/end are token indices of the bounding cuts; start -1 means the
    free start of the knot, end len(tokens) the free end.  Tokens strictly
    between start and end are overpasses lying on the arc.
    """

    index: int
    start: int
    end: int
    long_arc: int
    degree: int


@dataclass(frozen=True)
class LongArc:
    """Run of arcs between consecutive underpass cuts."""

    index: int
    arcs: tuple[int, ...]
    origin: int | None  # classical id whose underpass starts it
    is_initial: bool
    is_final: bool
    increasing: int  # number of +1 virtual passages along it


@dataclass(frozen=True)
class Column:
    """Matrix column: a crossing and the long arc(s) paired with it.

    The united column carries two long arcs (initial and final); all other
    columns exactly one.  threshold is the total number of increasing
    virtual passages over the column's long arcs, which is also the largest
    degree any of its arcs can reach.
    """

    crossing: int
    long_arcs: tuple[int, ...]
    threshold: int


class Decomposition:
    """Arcs, long arcs, degrees, pairing and crossing data of a valid code."""

    __slots__ = (
        "diagram",
        "arcs",
        "long_arcs",
        "columns",
        "column_of_long_arc",
        "early",
        "sign",
        "o_pos",
        "u_pos",
    )

    def __init__(self, diagram: Diagram):
        diagram.check()
        self.diagram = diagram
        tokens = diagram.tokens

        self.o_pos: dict[int, int] = {}
        self.u_pos: dict[int, int] = {}
        for i, t in enumerate(tokens):
            if t.kind == "O":
                self.o_pos[t.cid] = i
            elif t.kind == "U":
                self.u_pos[t.cid] = i

        self.sign = {cid: tokens[pos].sign for cid, pos in self.o_pos.items()}
        # early overcrossing iff the overpass comes first along the strand
        self.early = {
            cid: ("O" if self.o_pos[cid] < self.u_pos[cid] else "U")
            for cid in self.o_pos
        }

        arcs: list[Arc] = []
        long_arcs: list[LongArc] = []
        cur_arcs: list[int] = []
        la_origin: int | None = None
        la_increasing = 0
        start = -1
        degree = 0

        def close_long_arc(final: bool):
            nonlocal cur_arcs, la_origin, la_increasing
            long_arcs.append(
                LongArc(
                    index=len(long_arcs),
                    arcs=tuple(cur_arcs),
                    origin=la_origin,
                    is_initial=not long_arcs,
                    is_final=final,
                    increasing=la_increasing,
                )
            )
            cur_arcs = []
            la_increasing = 0

        for i, t in enumerate(tokens):
            if t.kind == "O":
                continue
            arcs.append(Arc(len(arcs), start, i, len(long_arcs), degree))
            cur_arcs.append(len(arcs) - 1)
            start = i
            if t.kind == "U":
                close_long_arc(final=False)
                la_origin = t.cid
                degree = 0
            else:
                if t.sign > 0:
                    la_increasing += 1
                degree += t.sign
        arcs.append(Arc(len(arcs), start, len(tokens), len(long_arcs), degree))
        cur_arcs.append(len(arcs) - 1)
        close_long_arc(final=True)

        self.arcs = tuple(arcs)
        self.long_arcs = tuple(long_arcs)

        n = diagram.n
        assert len(long_arcs) == n + 1, "one long arc per underpass plus the initial"
        assert sum(la.increasing for la in long_arcs) == sum(
            1 for t in tokens if t.kind == "V" and t.sign > 0
        )

        columns: list[Column] = []
        self.column_of_long_arc: dict[int, int] = {}
        if n:
            final = long_arcs[-1]
            initial = long_arcs[0]
            by_origin = {la.origin: la for la in long_arcs if la.origin is not None}
            for j, cid in enumerate(diagram.classical_ids()):
                la = by_origin[cid]
                if la.is_final:
                    pair = (initial.index, la.index)
                    threshold = initial.increasing + la.increasing
                else:
                    pair = (la.index,)
                    threshold = la.increasing
                columns.append(Column(cid, pair, threshold))
                for idx in pair:
                    self.column_of_long_arc[idx] = j
            assert final.origin is not None  # n >= 1 forces a final underpass cut
        self.columns = tuple(columns)

    def arc_starting_at(self, token_pos: int) -> Arc | None:
        for a in self.arcs:
            if a.start == token_pos:
                return a
        return None

    def arc_ending_at(self, token_pos: int) -> Arc | None:
        for a in self.arcs:
            if a.end == token_pos:
                return a
        return None

    def arc_containing(self, token_pos: int) -> Arc:
        for a in self.arcs:
            if a.start < token_pos < a.end:
                return a
        raise LookupError("position %d is a cut token, not arc interior" % token_pos)


def decompose(diagram: Diagram) -> Decomposition:
    """Decomposition of a valid code; raises InvalidDiagram otherwise."""
    return Decomposition(diagram)


def read_gauss_file(path: str) -> Diagram:
    """Parse one diagram from a .gauss file (comments allowed), validated."""
    with open(path, "r", encoding="utf-8") as fh:
        return Diagram.parse(fh.read()).check()
