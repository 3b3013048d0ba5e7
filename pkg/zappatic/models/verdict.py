from dataclasses import dataclass
from math import factorial
from typing import Dict, Optional

VERIFIED = 'verified'
FALSIFIED = 'falsified'
INCONCLUSIVE = 'inconclusive'

EXIT_CODES = {VERIFIED: 0, FALSIFIED: 1, INCONCLUSIVE: 2}


@dataclass(frozen=True)
class Verdict:
    """Outcome of the simple-connectivity check for one n.

    ``verified`` needs a complete enumeration of order (2n+2)! together with a
    surjective transposition image; then G_1 -> S(2n+2) is an isomorphism.
    """
    n: int
    group_order: Optional[int]
    image_full_symmetric: bool
    simply_connected: str
    cosets_defined_peak: int = 0
    wall_time_ms: Optional[int] = None
    strategy: str = ''
    generators: int = 0
    relators: int = 0

    @property
    def expected_order(self) -> int:
        return factorial(2 * self.n + 2)

    @property
    def exit_code(self) -> int:
        return EXIT_CODES[self.simply_connected]

    @classmethod
    def decide(cls, n: int, group_order: Optional[int], image_ok: bool, **stats) -> 'Verdict':
        if not image_ok:
            status = FALSIFIED
        elif group_order is None:
            status = INCONCLUSIVE
        elif group_order == factorial(2 * n + 2):
            status = VERIFIED
        else:
            status = FALSIFIED
        return cls(n, group_order, image_ok, status, **stats)

    def to_dict(self, timing: bool = True) -> Dict:
        data = {
            'n': self.n,
            'order': self.group_order,
            'image_full_symmetric': self.image_full_symmetric,
            'verdict': self.simply_connected,
            'cosets_defined_peak': self.cosets_defined_peak,
        }
        if timing:
            data['wall_time_ms'] = self.wall_time_ms
        return data

    def to_text(self) -> str:
        order = 'unknown' if self.group_order is None else str(self.group_order)
        return (f"n={self.n}: order={order} expected={self.expected_order} "
                f"image_full_symmetric={str(self.image_full_symmetric).lower()} "
                f"verdict={self.simply_connected}")
