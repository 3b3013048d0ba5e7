"""File logs for verification runs: verdicts, census records and errors."""
import json
import logging
from datetime import datetime
from pathlib import Path
from typing import Dict, Optional, Union

from zappatic.models.verdict import Verdict

FORMAT = '%(asctime)s - %(levelname)s - %(message)s'

run_log = logging.getLogger('zappatic.runs')
error_log = logging.getLogger('zappatic.errors')

_log_dir: Optional[Path] = None


def setup_run_logging(log_dir: Union[str, Path, None]) -> Optional[Path]:
    """Attach file handlers under ``log_dir``; None keeps file logging off."""
    global _log_dir
    for logger in (run_log, error_log):
        for handler in list(logger.handlers):
            if isinstance(handler, logging.FileHandler):
                logger.removeHandler(handler)
                handler.close()
    if log_dir is None:
        _log_dir = None
        return None

    _log_dir = Path(log_dir)
    _log_dir.mkdir(parents=True, exist_ok=True)

    run_log.setLevel(logging.INFO)
    run_handler = logging.FileHandler(_log_dir / 'runs.log')
    run_handler.setFormatter(logging.Formatter(FORMAT))
    run_log.addHandler(run_handler)

    error_log.setLevel(logging.ERROR)
    error_handler = logging.FileHandler(_log_dir / 'errors.log')
    error_handler.setFormatter(logging.Formatter(FORMAT))
    error_log.addHandler(error_handler)
    return _log_dir


def _append_history(filename: str, record: Dict) -> None:
    if _log_dir is None:
        return
    try:
        history_file = _log_dir / filename
        if history_file.exists():
            with open(history_file, 'r') as f:
                history = json.load(f)
        else:
            history = []

        history.append(record)

        with open(history_file, 'w') as f:
            json.dump(history, f, indent=2)
    except Exception as e:
        error_log.error(f"Error saving {filename}: {e}")


def log_verdict(verdict: Verdict) -> None:
    """Log a verdict and append it to verdict_history.json"""
    record = {'timestamp': datetime.now().isoformat(), **verdict.to_dict(timing=True),
              'strategy': verdict.strategy}
    run_log.info(f"Verdict: {json.dumps(record)}")
    _append_history('verdict_history.json', record)


def log_census(record: Dict) -> None:
    run_log.info(f"Invariants: {json.dumps(record)}")


def log_error(error_type: str, error_message: str,
              additional_info: Optional[Dict] = None) -> None:
    """Log error details"""
    error_info = {
        'timestamp': datetime.now().isoformat(),
        'type': error_type,
        'message': error_message,
        'additional_info': additional_info or {},
    }
    error_log.error(f"Error occurred: {json.dumps(error_info)}")


def history(log_dir: Union[str, Path]) -> list:
    history_file = Path(log_dir) / 'verdict_history.json'
    if not history_file.exists():
        return []
    with open(history_file, 'r') as f:
        return json.load(f)
