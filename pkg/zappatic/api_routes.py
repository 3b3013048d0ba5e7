import logging

from flask import Blueprint, current_app, jsonify, request

from zappatic.coset_engine import CosetEngine
from zappatic.models.degeneration import DegenerationError
from zappatic.models.presentation import PresentationError, WordError
from zappatic.models.settings_model import (DEFAULT_MAX_COSETS_CAP, ConfigError, EnumerationConfig,
                                            MODES)
from zappatic.utils import run_log
from zappatic.utils.family import build_family, transposition_graph_connected, transposition_map
from zappatic.utils.invariants import InvariantError, census_mismatches, invariants_for
from zappatic.utils.monodromy import monodromy_consistency_check
from zappatic.utils.relators import assemble_g1

logger = logging.getLogger(__name__)

# Create API blueprint
api_blueprint = Blueprint('api', __name__)

CLIENT_ERRORS = (ConfigError, DegenerationError, WordError, PresentationError, InvariantError)


def _client_error(e: Exception):
    logger.warning(f"Rejected request {request.path}: {e}")
    return jsonify({'error': str(e)}), 400


def _server_error(e: Exception):
    logger.error(f"Error handling {request.path}: {str(e)}")
    run_log.log_error(type(e).__name__, str(e), {'path': request.path})
    return jsonify({'error': str(e)}), 500


@api_blueprint.route('/')
def api_root():
    """Root endpoint for the API"""
    return jsonify({
        'status': 'ok',
        'message': 'API is working',
    })


@api_blueprint.route('/health')
def health_check():
    """Check that the smallest family builds and passes its consistency check."""
    try:
        report = monodromy_consistency_check(build_family(3))
        if not report.ok:
            return jsonify({'status': 'unhealthy', 'error': report.reason}), 500
        return jsonify({'status': 'healthy'})
    except Exception as e:
        logger.error(f"Health check failed: {str(e)}")
        return jsonify({'status': 'unhealthy', 'error': str(e)}), 500


@api_blueprint.route('/degeneration/<int:n>')
def get_degeneration(n):
    try:
        d = build_family(n)
        data = d.to_dict()
        data['transpositions'] = {str(k): list(v) for k, v in sorted(transposition_map(d).items())}
        return jsonify(data)
    except CLIENT_ERRORS as e:
        return _client_error(e)
    except Exception as e:
        return _server_error(e)


@api_blueprint.route('/presentation/<int:n>')
def get_presentation(n):
    try:
        mode = request.args.get('mode', 'simplified')
        if mode not in MODES:
            raise ConfigError(f"Unknown mode {mode!r}")
        commutators = request.args.get('commutators', 'listed')
        presentation = assemble_g1(build_family(n), mode, commutators)
        data = presentation.to_dict()
        data.update({'n': n, 'mode': mode, 'generator_count': presentation.generator_count,
                     'total_length': presentation.total_length})
        return jsonify(data)
    except CLIENT_ERRORS as e:
        return _client_error(e)
    except Exception as e:
        return _server_error(e)


@api_blueprint.route('/invariants/<int:n>')
def get_invariants(n):
    try:
        d = build_family(n)
        record = invariants_for(d)
        record['census_matches_closed_form'] = not census_mismatches(d)
        return jsonify(record)
    except CLIENT_ERRORS as e:
        return _client_error(e)
    except Exception as e:
        return _server_error(e)


@api_blueprint.route('/verify/<int:n>')
def verify(n):
    """Run the verification pipeline; the bound is capped by the app's MAX_COSETS_CAP."""
    try:
        strategy = request.args.get('strategy', 'felsch')
        max_cosets = request.args.get('max_cosets')
        try:
            max_cosets = int(max_cosets) if max_cosets is not None else None
        except ValueError:
            raise ConfigError(f"max_cosets must be an integer, got {max_cosets!r}")
        cap = current_app.config.get('MAX_COSETS_CAP', DEFAULT_MAX_COSETS_CAP)
        if max_cosets is not None:
            max_cosets = min(max_cosets, cap)
        config = EnumerationConfig.for_degree(n, strategy, max_cosets, cap)
        verdict = CosetEngine(config).verify_simply_connected(n)
        run_log.log_verdict(verdict)
        data = verdict.to_dict(timing=True)
        data['strategy'] = verdict.strategy
        data['image_graph_connected'] = transposition_graph_connected(build_family(n))
        return jsonify(data)
    except CLIENT_ERRORS as e:
        return _client_error(e)
    except Exception as e:
        return _server_error(e)
