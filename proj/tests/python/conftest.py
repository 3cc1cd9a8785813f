import os
import pathlib
import shutil

import pytest

ROOT = pathlib.Path(__file__).resolve().parents[2]


@pytest.fixture(scope="session")
def cli():
    candidates = [os.environ.get("CRITPRM_CLI"), str(ROOT / "build" / "critprm"), shutil.which("critprm")]
    for c in candidates:
        if c and os.path.exists(c):
            return c
    pytest.skip("critprm executable not built")
