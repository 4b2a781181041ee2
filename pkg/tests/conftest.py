import json
from pathlib import Path

import pytest
from hypothesis import HealthCheck, settings

from tensorshift.weights import WeightSequence, parse_weightspec

settings.register_profile("repo", deadline=None, max_examples=60,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("repo")

GOLDEN = Path(__file__).parent / "golden"


@pytest.fixture
def hardy():
    return WeightSequence.constant(1.0)


@pytest.fixture
def half_tail():
    # a single unit weight followed by 0.5: not regular
    return parse_weightspec("prefix:1.0;tail:0.5")


def load_golden(name):
    return json.loads((GOLDEN / name).read_text())
