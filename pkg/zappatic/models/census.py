from dataclasses import dataclass
from typing import Dict


@dataclass(frozen=True)
class SingularityCensus:
    """Degree m of the branch curve, N planes, p nodes, q cusps."""
    n: int
    m: int
    N: int
    p: int
    q: int

    def to_dict(self) -> Dict:
        return {'n': self.n, 'm': self.m, 'N': self.N, 'p': self.p, 'q': self.q}


@dataclass(frozen=True)
class ChernReport:
    n: int
    c1_sq: int
    c2: int
    tau: int

    @property
    def general_type(self) -> bool:
        return self.c1_sq > 0

    @property
    def tau_negative(self) -> bool:
        return self.tau < 0


def invariants_record(census: SingularityCensus, chern: ChernReport) -> Dict:
    """Report record with every integer as a decimal string."""
    return {
        'n': str(census.n),
        'm': str(census.m),
        'N': str(census.N),
        'p': str(census.p),
        'q': str(census.q),
        'c1_sq': str(chern.c1_sq),
        'c2': str(chern.c2),
        'tau': str(chern.tau),
        'general_type': chern.general_type,
        'tau_negative': chern.tau_negative,
    }
