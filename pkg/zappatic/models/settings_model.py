import logging
import os
import re
from dataclasses import asdict, dataclass, replace
from math import factorial
from typing import Dict, Mapping, Optional, Tuple

from dotenv import load_dotenv

logger = logging.getLogger(__name__)

STRATEGIES = ('felsch', 'hlt')
STRATEGY_ALIASES = {'hlt_with_lookahead': 'hlt'}
MODES = ('simplified', 'raw')
OUTPUTS = ('text', 'json')
EMITS = ('degeneration', 'presentation', 'gap', 'all')
COMMUTATOR_VARIANTS = ('listed', 'full')

DEFAULT_MAX_COSETS_CAP = 8_000_000

_RANGE = re.compile(r"^\s*(-?\d+)\s*(?:\.\.\s*(-?\d+)\s*)?$")


class ConfigError(ValueError):
    """Invalid configuration value from flags, environment or API parameters."""


def env_int(environ: Mapping[str, str], key: str, default: Optional[int]) -> Optional[int]:
    value = environ.get(key)
    if value is None or value == '':
        return default
    try:
        return int(value)
    except ValueError:
        raise ConfigError(f"{key} must be an integer, got {value!r}")


def _env_bool(environ: Mapping[str, str], key: str, default: bool) -> bool:
    value = environ.get(key)
    if value is None or value == '':
        return default
    if value.lower() in ('1', 'true', 'yes', 'on'):
        return True
    if value.lower() in ('0', 'false', 'no', 'off'):
        return False
    raise ConfigError(f"{key} must be a boolean, got {value!r}")


def normalize_strategy(name: str) -> str:
    name = STRATEGY_ALIASES.get(name, name)
    if name not in STRATEGIES:
        raise ConfigError(f"Unknown strategy {name!r}; expected one of {', '.join(STRATEGIES)}")
    return name


def parse_n_range(text: str) -> Tuple[int, ...]:
    """``"3"`` -> (3,), ``"3..8"`` -> (3, ..., 8), inclusive."""
    match = _RANGE.match(str(text))
    if not match:
        raise ConfigError(f"Invalid n or range: {text!r} (use N or A..B)")
    first = int(match.group(1))
    last = int(match.group(2)) if match.group(2) is not None else first
    if last < first:
        raise ConfigError(f"Empty range: {text!r}")
    return tuple(range(first, last + 1))


def default_max_cosets(n: int, cap: int = DEFAULT_MAX_COSETS_CAP) -> int:
    """Twice the expected index (2n+2)!, bounded by the memory cap."""
    return min(2 * factorial(2 * n + 2), cap)


@dataclass(frozen=True)
class EnumerationConfig:
    max_cosets: int = 1_000_000
    strategy: str = 'felsch'
    lookahead: bool = True
    compaction_ratio: float = 0.5
    max_deduction_stack: int = 500_000

    def __post_init__(self):
        object.__setattr__(self, 'strategy', normalize_strategy(self.strategy))
        if not isinstance(self.max_cosets, int) or self.max_cosets < 1:
            raise ConfigError(f"max_cosets must be a positive integer, got {self.max_cosets!r}")
        if not 0 < self.compaction_ratio < 1:
            raise ConfigError(f"compaction_ratio must lie in (0, 1), got {self.compaction_ratio!r}")

    @classmethod
    def for_degree(cls, n: int, strategy: str = 'felsch', max_cosets: Optional[int] = None,
                   cap: int = DEFAULT_MAX_COSETS_CAP) -> 'EnumerationConfig':
        return cls(max_cosets=max_cosets or default_max_cosets(n, cap), strategy=strategy)

    def to_dict(self) -> Dict:
        return asdict(self)

    @classmethod
    def from_dict(cls, data: Dict) -> 'EnumerationConfig':
        known = {k: data[k] for k in ('max_cosets', 'strategy', 'lookahead',
                                      'compaction_ratio', 'max_deduction_stack') if k in data}
        return cls(**known)


@dataclass(frozen=True)
class RunConfig:
    """Settings for one CLI invocation; flags override ``ZV_`` variables."""
    ns: Tuple[int, ...] = (3,)
    mode: str = 'simplified'
    max_cosets: Optional[int] = None
    max_cosets_cap: int = DEFAULT_MAX_COSETS_CAP
    strategy: str = 'felsch'
    output: str = 'text'
    out: Optional[str] = None
    jobs: int = 1
    emit: str = 'all'
    commutators: str = 'listed'
    timing: bool = True
    log_dir: Optional[str] = None

    def validate(self) -> 'RunConfig':
        if not self.ns:
            raise ConfigError("No n given")
        for n in self.ns:
            if n < 3:
                raise ConfigError(f"n must be >= 3, got {n}")
        if self.mode not in MODES:
            raise ConfigError(f"Unknown mode {self.mode!r}; expected one of {', '.join(MODES)}")
        if self.mode == 'raw' and any(n not in (3, 4) for n in self.ns):
            raise ConfigError("Raw mode is restricted to n in {3, 4}")
        normalize_strategy(self.strategy)
        if self.output not in OUTPUTS:
            raise ConfigError(f"Unknown output {self.output!r}; expected one of {', '.join(OUTPUTS)}")
        if self.emit not in EMITS:
            raise ConfigError(f"Unknown emit {self.emit!r}; expected one of {', '.join(EMITS)}")
        if self.commutators not in COMMUTATOR_VARIANTS:
            raise ConfigError(f"Unknown commutator variants {self.commutators!r}")
        if self.jobs < 1:
            raise ConfigError(f"jobs must be >= 1, got {self.jobs}")
        if self.max_cosets is not None and self.max_cosets < 1:
            raise ConfigError(f"max_cosets must be positive, got {self.max_cosets}")
        return self

    def enumeration(self, n: int) -> EnumerationConfig:
        return EnumerationConfig.for_degree(n, self.strategy, self.max_cosets, self.max_cosets_cap)

    def with_overrides(self, **overrides) -> 'RunConfig':
        return replace(self, **{k: v for k, v in overrides.items() if v is not None})

    def to_dict(self) -> Dict:
        data = asdict(self)
        data['ns'] = list(self.ns)
        return data

    @classmethod
    def from_env(cls, environ: Optional[Mapping[str, str]] = None) -> 'RunConfig':
        """Defaults overridden by ``ZV_*`` variables (``.env`` is loaded first)."""
        if environ is None:
            load_dotenv()
            environ = os.environ
        ns = parse_n_range(environ['ZV_N']) if environ.get('ZV_N') else cls.ns
        return cls(
            ns=ns,
            mode=environ.get('ZV_MODE') or cls.mode,
            max_cosets=env_int(environ, 'ZV_MAX_COSETS', None),
            max_cosets_cap=env_int(environ, 'ZV_MAX_COSETS_CAP', DEFAULT_MAX_COSETS_CAP),
            strategy=environ.get('ZV_STRATEGY') or cls.strategy,
            output=environ.get('ZV_OUTPUT') or cls.output,
            out=environ.get('ZV_OUT') or None,
            jobs=env_int(environ, 'ZV_JOBS', 1),
            emit=environ.get('ZV_EMIT') or cls.emit,
            commutators=environ.get('ZV_COMMUTATORS') or cls.commutators,
            timing=_env_bool(environ, 'ZV_TIMING', True),
            log_dir=environ.get('ZV_LOG_DIR') or None,
        )
