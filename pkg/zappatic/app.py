import logging
import os

from dotenv import load_dotenv
from flask import Flask

from zappatic.api_routes import api_blueprint
from zappatic.models.settings_model import DEFAULT_MAX_COSETS_CAP, env_int
from zappatic.utils import run_log

logger = logging.getLogger(__name__)


def create_app(config=None) -> Flask:
    """Application factory; ``config`` overrides values read from the environment."""
    load_dotenv()
    logging.basicConfig(level=logging.INFO)

    app = Flask(__name__)
    app.config['MAX_COSETS_CAP'] = env_int(os.environ, 'ZV_MAX_COSETS_CAP', DEFAULT_MAX_COSETS_CAP)
    app.config['LOG_DIR'] = os.getenv('ZV_LOG_DIR') or None
    if config:
        app.config.update(config)

    run_log.setup_run_logging(app.config['LOG_DIR'])
    app.register_blueprint(api_blueprint, url_prefix='/api')
    logger.info(f"API ready (max cosets cap {app.config['MAX_COSETS_CAP']})")
    return app


if __name__ == '__main__':
    port = int(os.getenv('PORT', 5000))
    create_app().run(host='0.0.0.0', port=port)
