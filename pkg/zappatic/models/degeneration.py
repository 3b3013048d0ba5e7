"""Combinatorial model of the degenerated surface: planes, lines and vertices."""
import json
import logging
import re
from dataclasses import dataclass
from enum import Enum
from itertools import combinations
from typing import Dict, FrozenSet, List, Optional, Tuple

logger = logging.getLogger(__name__)

_PLANE_TOKEN = re.compile(r"^([TB])(\d+)$")
_ZAPPATIC_KIND = re.compile(r"^Zappatic\((\d+)\)$")


class DegenerationError(ValueError):
    """Invalid parameter or inconsistent degeneration data."""


class Side(str, Enum):
    TOP = 'T'
    BOTTOM = 'B'


@dataclass(frozen=True)
class PlaneLabel:
    side: Side
    index: int

    def __str__(self) -> str:
        return f"{self.side.value}{self.index}"

    @property
    def sort_key(self) -> Tuple[int, int]:
        # all Top planes first, then all Bottom planes
        return (0 if self.side == Side.TOP else 1, self.index)

    def __lt__(self, other: 'PlaneLabel') -> bool:
        return self.sort_key < other.sort_key

    @classmethod
    def parse(cls, token: str) -> 'PlaneLabel':
        match = _PLANE_TOKEN.match(token.strip())
        if not match:
            raise DegenerationError(f"Invalid plane label: {token!r}")
        return cls(Side(match.group(1)), int(match.group(2)))


class VertexKind(str, Enum):
    ZAPPATIC = 'Zappatic'
    FOUR_LINE = 'FourLine'
    CONIC_ENDPOINT = 'ConicEndpoint'


@dataclass(frozen=True)
class LineRecord:
    id: int
    incident_planes: FrozenSet[PlaneLabel]

    @property
    def planes(self) -> Tuple[PlaneLabel, PlaneLabel]:
        first, second = sorted(self.incident_planes)
        return first, second

    def to_dict(self) -> Dict:
        return {'id': self.id, 'planes': [str(p) for p in self.planes]}


@dataclass(frozen=True)
class VertexRecord:
    id: int
    kind: VertexKind
    lines: Tuple[int, ...]
    zappatic_type: Optional[int] = None

    @property
    def kind_label(self) -> str:
        if self.kind == VertexKind.ZAPPATIC:
            return f"Zappatic({self.zappatic_type})"
        return self.kind.value

    def to_dict(self) -> Dict:
        return {'id': self.id, 'kind': self.kind_label, 'lines': list(self.lines)}

    @classmethod
    def from_dict(cls, data: Dict) -> 'VertexRecord':
        label = str(data['kind'])
        match = _ZAPPATIC_KIND.match(label)
        try:
            if match:
                kind, k = VertexKind.ZAPPATIC, int(match.group(1))
            else:
                kind, k = VertexKind(label), None
            return cls(int(data['id']), kind, tuple(int(x) for x in data['lines']), k)
        except (KeyError, TypeError, ValueError) as e:
            raise DegenerationError(f"Invalid vertex record {data!r}: {e}")


@dataclass(frozen=True)
class Degeneration:
    """Planes, lines and vertices of the degeneration for parameter n."""
    n: int
    planes: Tuple[PlaneLabel, ...]
    lines: Tuple[LineRecord, ...]
    vertices: Tuple[VertexRecord, ...]

    def line(self, line_id: int) -> LineRecord:
        for record in self.lines:
            if record.id == line_id:
                return record
        raise DegenerationError(f"No line {line_id} in degeneration")

    def vertex(self, vertex_id: int) -> VertexRecord:
        for record in self.vertices:
            if record.id == vertex_id:
                return record
        raise DegenerationError(f"No vertex V{vertex_id} in degeneration")

    def vertices_of_kind(self, kind: VertexKind) -> List[VertexRecord]:
        return [v for v in self.vertices if v.kind == kind]

    def plane_number(self, plane: PlaneLabel) -> int:
        """1-based position of the plane in the fixed order T1..T(n+1), B1..B(n+1)."""
        return sorted(self.planes).index(plane) + 1

    @property
    def line_ids(self) -> List[int]:
        return [record.id for record in self.lines]

    def validate(self) -> 'Degeneration':
        """Check the structural invariants; returns self so calls can chain."""
        n = self.n
        if not isinstance(n, int) or n < 3:
            raise DegenerationError(f"Degeneration parameter must be an integer >= 3, got {n!r}")
        if len(set(self.planes)) != 2 * n + 2:
            raise DegenerationError(f"Expected {2 * n + 2} distinct planes, got {len(set(self.planes))}")
        for side in Side:
            indices = sorted(p.index for p in self.planes if p.side == side)
            if indices != list(range(1, n + 2)):
                raise DegenerationError(f"{side.name.title()} planes must be {side.value}1..{side.value}{n + 1}, "
                                        f"got {', '.join(f'{side.value}{i}' for i in indices) or 'none'}")
        ids = sorted(self.line_ids)
        if ids != list(range(1, 3 * n + 2)):
            raise DegenerationError(f"Line ids must be exactly 1..{3 * n + 1}")
        plane_set = set(self.planes)
        for record in self.lines:
            if len(record.incident_planes) != 2:
                raise DegenerationError(f"Line {record.id} must meet exactly two distinct planes")
            if not record.incident_planes <= plane_set:
                raise DegenerationError(f"Line {record.id} meets a plane outside the degeneration")

        counts = {kind: len(self.vertices_of_kind(kind)) for kind in VertexKind}
        expected = {VertexKind.ZAPPATIC: 2, VertexKind.CONIC_ENDPOINT: 2, VertexKind.FOUR_LINE: n}
        if counts != expected:
            raise DegenerationError(f"Unexpected vertex census: {{{', '.join(f'{k.value}: {v}' for k, v in counts.items())}}}")
        if sorted(v.id for v in self.vertices) != list(range(1, n + 5)):
            raise DegenerationError(f"Vertex ids must be exactly 1..{n + 4}")

        for vertex in self.vertices:
            arity = len(vertex.lines)
            if len(set(vertex.lines)) != arity:
                raise DegenerationError(f"V{vertex.id} repeats a line")
            if vertex.kind == VertexKind.ZAPPATIC and vertex.zappatic_type != n + 1:
                raise DegenerationError(f"V{vertex.id}: expected Zappatic({n + 1}), got {vertex.kind_label}")
            if vertex.kind == VertexKind.ZAPPATIC and arity != (vertex.zappatic_type or 0) - 1:
                raise DegenerationError(f"V{vertex.id}: Zappatic({vertex.zappatic_type}) needs {(vertex.zappatic_type or 0) - 1} lines")
            if vertex.kind == VertexKind.FOUR_LINE and arity != 4:
                raise DegenerationError(f"V{vertex.id}: FourLine needs 4 lines")
            if vertex.kind == VertexKind.CONIC_ENDPOINT and arity != 1:
                raise DegenerationError(f"V{vertex.id}: ConicEndpoint needs 1 line")
            for line_id in vertex.lines:
                if line_id not in ids:
                    raise DegenerationError(f"V{vertex.id} references unknown line {line_id}")

        covered = {line_id for v in self.vertices for line_id in v.lines}
        missing = sorted(set(ids) - covered)
        if missing:
            raise DegenerationError(f"Lines not on any vertex: {missing}")
        shared: Dict[Tuple[int, int], int] = {}
        for vertex in self.vertices:
            for pair in combinations(sorted(vertex.lines), 2):
                shared[pair] = shared.get(pair, 0) + 1
                if shared[pair] > 1:
                    raise DegenerationError(f"Lines {pair[0]} and {pair[1]} share more than one vertex")
        return self

    def to_dict(self) -> Dict:
        return {
            'n': self.n,
            'planes': [str(p) for p in sorted(self.planes)],
            'lines': [record.to_dict() for record in sorted(self.lines, key=lambda r: r.id)],
            'vertices': [v.to_dict() for v in sorted(self.vertices, key=lambda v: v.id)],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2) + '\n'

    @classmethod
    def from_dict(cls, data: Dict) -> 'Degeneration':
        """Build and validate a degeneration from its JSON document."""
        try:
            planes = tuple(PlaneLabel.parse(p) for p in data['planes'])
            lines = tuple(
                LineRecord(int(item['id']), frozenset(PlaneLabel.parse(p) for p in item['planes']))
                for item in data['lines']
            )
            vertices = tuple(VertexRecord.from_dict(item) for item in data['vertices'])
            n = data['n']
        except (KeyError, TypeError) as e:
            raise DegenerationError(f"Malformed degeneration document: {e}")
        for item in data['lines']:
            if len(item['planes']) != 2:
                raise DegenerationError(f"Line {item['id']} must list exactly two planes")
        return cls(n, planes, lines, vertices).validate()

    @classmethod
    def from_json(cls, text: str) -> 'Degeneration':
        try:
            data = json.loads(text)
        except json.JSONDecodeError as e:
            raise DegenerationError(f"Degeneration JSON is not valid: {e}")
        return cls.from_dict(data)
