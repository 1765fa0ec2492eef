# Copyright (c) 2026 The ProBench Authors.
# Licensed under the Apache License, Version 2.0. See
# http://www.apache.org/licenses/LICENSE-2.0

import os
import pathlib

import pytest

FIXTURES = pathlib.Path(
    os.environ.get("PROBENCH_FIXTURE_DIR", pathlib.Path(__file__).resolve().parents[1] / "fixtures"))


@pytest.fixture
def fixtures():
    return FIXTURES
