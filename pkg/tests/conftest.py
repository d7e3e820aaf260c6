import pytest
from django.core.cache import cache

from ait_lab import setup

setup()


@pytest.fixture(autouse=True)
def clear_program_tables():
    cache.clear()
    yield
    cache.clear()


@pytest.fixture
def dist_file(tmp_path):
    """Write a symbol,probability CSV and return its path"""

    def write(mapping, name='dist.csv'):
        path = tmp_path / name
        lines = ['symbol,probability'] + [f'{symbol},{probability}' for symbol, probability in mapping.items()]
        path.write_text('\n'.join(lines) + '\n')
        return str(path)

    return write
