import os

import pytest

from zappatic.coset_engine import CosetEngine
from zappatic.models.settings_model import EnumerationConfig
from zappatic.utils.family import build_family, transposition_map
from zappatic.utils.relators import assemble_g1


def pytest_collection_modifyitems(config, items):
    if os.getenv('ZV_RUN_SLOW', '').lower() in ('1', 'true', 'yes'):
        return
    skip_slow = pytest.mark.skip(reason="slow enumeration; set ZV_RUN_SLOW=1")
    for item in items:
        if 'slow' in item.keywords:
            item.add_marker(skip_slow)


@pytest.fixture(scope='session')
def family3():
    return build_family(3)


@pytest.fixture(scope='session')
def g1_n3(family3):
    return assemble_g1(family3)


@pytest.fixture(scope='session')
def certificate_n3(family3):
    """Subgroup chain certificate for G_1 with n = 3."""
    engine = CosetEngine(EnumerationConfig.for_degree(3))
    return engine.certify_order(engine.family_presentation(family3), transposition_map(family3))


@pytest.fixture(scope='session')
def table_n3():
    """Completed coset table of G_1 for n = 3 over the trivial subgroup."""
    engine = CosetEngine(EnumerationConfig.for_degree(3))
    presentation, table = engine.enumerate_family(3)
    assert table.complete
    return table


@pytest.fixture
def engine():
    return CosetEngine(EnumerationConfig(max_cosets=100_000))
