import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from corpus import corpus_graphs  # noqa: E402

from trinities import trinity as trinity_mod  # noqa: E402


@pytest.fixture(scope="session")
def graphs():
    return corpus_graphs()


@pytest.fixture(scope="session")
def trinities(graphs):
    return {name: trinity_mod.build_trinity(g) for name, g in graphs.items()}
