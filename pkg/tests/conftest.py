import os
import sys
import warnings

import pytest

sys.path.insert(0, os.path.dirname(__file__))


@pytest.fixture(autouse=True)
def _quiet_guards():
    # desk-scale runs trip the asymptotic size guards by design
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", UserWarning)
        yield
