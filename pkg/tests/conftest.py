"""
Shared pytest fixtures
"""
import sys
import os
parent_dir = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
sys.path.append(parent_dir)

import numpy as np
import pytest

from config import DEFAULT_SEED


@pytest.fixture
def rng():
    """Generator seeded with the project default so sampled cases are reproducible"""
    return np.random.default_rng(DEFAULT_SEED)
