"""Command line front end: ``python -m zappatic.cli {gen,verify,invariants,report}``."""
import argparse
import json
import logging
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path
from typing import Dict, List, Optional, Sequence, Tuple

from dotenv import load_dotenv

from zappatic.coset_engine import CosetEngine
from zappatic.models.degeneration import DegenerationError
from zappatic.models.presentation import PresentationError, WordError
from zappatic.models.settings_model import ConfigError, RunConfig, parse_n_range
from zappatic.models.verdict import EXIT_CODES, FALSIFIED, INCONCLUSIVE, Verdict
from zappatic.utils import run_log
from zappatic.utils.family import build_family
from zappatic.utils.invariants import (InvariantError, census_frame, census_mismatches,
                                       invariants_for)
from zappatic.utils.relators import assemble_g1
from zappatic.utils.tietze import TietzeError

logger = logging.getLogger(__name__)

EXIT_INPUT_ERROR = 3
INPUT_ERRORS = (ConfigError, DegenerationError, WordError, PresentationError,
                TietzeError, InvariantError, OSError)


class ArgumentParser(argparse.ArgumentParser):
    """Usage errors become ConfigError so they map to exit code 3."""

    def error(self, message):
        raise ConfigError(message)


def build_parser() -> ArgumentParser:
    common = ArgumentParser(add_help=False)
    common.add_argument('--n', help="Degree n or inclusive range A..B (n >= 3)")
    common.add_argument('--mode', choices=('simplified', 'raw'), help="Relation set used for G_1")
    common.add_argument('--commutators', choices=('listed', 'full'),
                        help="Primed commutator variants at Zappatic vertices")
    common.add_argument('--json', action='store_true', help="Write JSON instead of text")
    common.add_argument('--out', help="Output file (gen: output directory)")
    common.add_argument('--log-dir', help="Directory for run and error logs")

    enumeration = ArgumentParser(add_help=False)
    enumeration.add_argument('--max-cosets', type=int, help="Bound on live cosets")
    enumeration.add_argument('--strategy', help="felsch or hlt (alias hlt_with_lookahead)")
    enumeration.add_argument('--jobs', type=int, help="Parallel worker processes, one n per job")
    enumeration.add_argument('--no-timing', action='store_true', help="Omit wall times from reports")

    parser = ArgumentParser(prog='zappatic', description="Galois cover verification for R_{n+1} u R_{n+1}")
    subparsers = parser.add_subparsers(dest='command', required=True, parser_class=ArgumentParser)

    gen = subparsers.add_parser('gen', parents=[common], help="Write degeneration and presentation files")
    gen.add_argument('--emit', choices=('degeneration', 'presentation', 'gap', 'all'),
                     help="Which artifacts to write")
    subparsers.add_parser('verify', parents=[common, enumeration], help="Decide simple connectivity per n")
    subparsers.add_parser('invariants', parents=[common], help="Singularity census and Chern numbers")
    subparsers.add_parser('report', parents=[common, enumeration], help="verify and invariants together")
    return parser


def config_from_args(args: argparse.Namespace, base: Optional[RunConfig] = None) -> RunConfig:
    base = base or RunConfig.from_env()
    overrides = {
        'ns': parse_n_range(args.n) if args.n is not None else None,
        'mode': args.mode,
        'commutators': args.commutators,
        'output': 'json' if args.json else None,
        'out': args.out,
        'log_dir': args.log_dir,
        'emit': getattr(args, 'emit', None),
        'max_cosets': getattr(args, 'max_cosets', None),
        'strategy': getattr(args, 'strategy', None),
        'jobs': getattr(args, 'jobs', None),
        'timing': False if getattr(args, 'no_timing', False) else None,
    }
    return base.with_overrides(**overrides).validate()


def _write(cfg: RunConfig, text: str) -> None:
    if cfg.out:
        Path(cfg.out).write_text(text, encoding='utf-8')
        logger.info(f"Wrote {cfg.out}")
    else:
        sys.stdout.write(text)


def _dump(payload) -> str:
    return json.dumps(payload, indent=2) + '\n'


def cmd_gen(cfg: RunConfig) -> int:
    """Degeneration JSON, presentation text and GAP files per n."""
    out_dir = Path(cfg.out) if cfg.out else None
    if out_dir:
        out_dir.mkdir(parents=True, exist_ok=True)
    chunks: List[str] = []
    for n in cfg.ns:
        d = build_family(n)
        artifacts: List[Tuple[str, str]] = []
        if cfg.emit in ('degeneration', 'all'):
            artifacts.append((f"degeneration_n{n}.json", d.to_json()))
        if cfg.emit in ('presentation', 'gap', 'all'):
            presentation = assemble_g1(d, cfg.mode, cfg.commutators)
            if cfg.emit in ('presentation', 'all'):
                artifacts.append((f"presentation_n{n}_{cfg.mode}.txt", presentation.to_text()))
            if cfg.emit in ('gap', 'all'):
                artifacts.append((f"presentation_n{n}_{cfg.mode}.g", presentation.to_gap()))
        for name, content in artifacts:
            if out_dir:
                (out_dir / name).write_text(content, encoding='utf-8')
                logger.info(f"Wrote {out_dir / name}")
            else:
                chunks.append(f"# {name}\n{content}")
    if not out_dir:
        sys.stdout.write(''.join(chunks))
    return 0


def _verify_one(job: Tuple[int, RunConfig]) -> Verdict:
    n, cfg = job
    engine = CosetEngine(cfg.enumeration(n))
    return engine.verify_simply_connected(n, cfg.mode, cfg.commutators)


def run_verdicts(cfg: RunConfig) -> List[Verdict]:
    """Verdicts in the order of cfg.ns whatever the number of jobs."""
    jobs = [(n, cfg) for n in cfg.ns]
    if cfg.jobs > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=cfg.jobs) as pool:
            verdicts = list(pool.map(_verify_one, jobs))
    else:
        verdicts = [_verify_one(job) for job in jobs]
    for verdict in verdicts:
        run_log.log_verdict(verdict)
    return verdicts


def verdict_exit_code(verdicts: Sequence[Verdict]) -> int:
    statuses = {v.simply_connected for v in verdicts}
    if FALSIFIED in statuses:
        return EXIT_CODES[FALSIFIED]
    if INCONCLUSIVE in statuses:
        return EXIT_CODES[INCONCLUSIVE]
    return 0


def cmd_verify(cfg: RunConfig) -> int:
    verdicts = run_verdicts(cfg)
    if cfg.output == 'json':
        _write(cfg, _dump([v.to_dict(cfg.timing) for v in verdicts]))
    else:
        lines = [v.to_text() + (f" time={v.wall_time_ms}ms" if cfg.timing else '') for v in verdicts]
        _write(cfg, '\n'.join(lines) + '\n')
    return verdict_exit_code(verdicts)


def invariants_records(cfg: RunConfig) -> Tuple[List[Dict], bool]:
    """Records per n and whether any combinatorial census missed its closed form."""
    records = []
    mismatch = False
    for n in cfg.ns:
        d = build_family(n)
        if census_mismatches(d):
            mismatch = True
        record = invariants_for(d)
        run_log.log_census(record)
        records.append(record)
    return records, mismatch


def cmd_invariants(cfg: RunConfig) -> int:
    records, mismatch = invariants_records(cfg)
    if cfg.output == 'json':
        _write(cfg, _dump(records))
    else:
        _write(cfg, census_frame(records).to_string(index=False) + '\n')
    return 1 if mismatch else 0


def cmd_report(cfg: RunConfig) -> int:
    verdicts = run_verdicts(cfg)
    records, mismatch = invariants_records(cfg)
    merged = []
    for verdict, record in zip(verdicts, records):
        entry = dict(record)
        entry.update({k: v for k, v in verdict.to_dict(cfg.timing).items() if k != 'n'})
        if entry['order'] is not None:
            entry['order'] = str(entry['order'])
        merged.append(entry)
    if cfg.output == 'json':
        _write(cfg, _dump(merged))
    else:
        blocks = [v.to_text() for v in verdicts]
        blocks.append(census_frame(records).to_string(index=False))
        _write(cfg, '\n'.join(blocks) + '\n')
    code = verdict_exit_code(verdicts)
    return code if code else (1 if mismatch else 0)


COMMANDS = {
    'gen': cmd_gen,
    'verify': cmd_verify,
    'invariants': cmd_invariants,
    'report': cmd_report,
}


def main(argv: Optional[Sequence[str]] = None) -> int:
    load_dotenv()
    logging.basicConfig(level=logging.INFO)
    try:
        args = build_parser().parse_args(argv)
        run_log.setup_run_logging(args.log_dir or os.getenv('ZV_LOG_DIR') or None)
        cfg = config_from_args(args)
        return COMMANDS[args.command](cfg)
    except INPUT_ERRORS as e:
        logger.error(f"{type(e).__name__}: {e}")
        run_log.log_error(type(e).__name__, str(e))
        return EXIT_INPUT_ERROR


if __name__ == '__main__':
    sys.exit(main())
