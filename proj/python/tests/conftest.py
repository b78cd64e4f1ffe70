import os
import shutil

import pytest

TOY = (
    "Most sensational news articles are sometimes hard to believe. Two plus two equals four. "
    "Mary left Paris around 2pm."
)


@pytest.fixture
def toy_text():
    return TOY


@pytest.fixture
def cli():
    path = os.environ.get("VAGUECAM_CLI") or shutil.which("vaguecam")
    if not path:
        pytest.skip("vaguecam CLI not available")
    return path
