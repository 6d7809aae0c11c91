import os
import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))


def dataset_dir() -> Path:
    env = os.environ.get("INTERVAL_RANK_DATA")
    if env:
        return Path(env)
    return Path(__file__).resolve().parent.parent / "data"


@pytest.fixture(scope="session")
def abalone_table():
    """The public abalone table (4177 rows), skipped when the file is absent."""
    from interval_rank import builtin_spec, prepare_tabular

    spec = builtin_spec("abalone", dataset_dir())
    if not Path(spec.path).exists():
        pytest.skip(
            f"abalone dataset not found at {spec.path}; download the public "
            f"UCI file 'abalone.data' (4177 rows, headerless) to that path "
            f"or point $INTERVAL_RANK_DATA at its directory")
    table = prepare_tabular(spec)
    assert len(table.pairs) == 4177, "unexpected abalone row count"
    return table
