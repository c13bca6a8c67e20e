import random
import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from spinekit import corpus  # noqa: E402
from spinekit.model import Edge, Region, Spine, Vertex  # noqa: E402


@pytest.fixture
def abalone():
    return corpus.load("abalone").spine


@pytest.fixture
def zero_tangency():
    return corpus.load("zero_tangency").spine


@pytest.fixture
def s1xs2():
    return corpus.load("s1xs2").spine


@pytest.fixture
def rng():
    return random.Random(20201015)


def self_paired_abalone() -> Spine:
    """Abalone regions with the pairing that sends every edge back into itself."""
    v = Vertex("v1", "L", (("in1", "out1"), ("in2", "out2")))
    edges = (Edge("e1", "arc", ("v1", "out1"), ("v1", "in1")),
             Edge("e2", "arc", ("v1", "out2"), ("v1", "in2")))
    regions = (Region("R1", ((("e1", -1),),)),
               Region("R2", ((("e2", 1), ("e1", 1), ("e2", -1), ("e1", 1), ("e2", 1)),)))
    return Spine("abalone-self-paired", (v,), edges, regions)
