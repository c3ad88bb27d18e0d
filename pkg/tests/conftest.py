import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from tilerep import parse_rule_text

REPO_ROOT = Path(__file__).resolve().parent.parent

TM_TEXT = "letters: a b\na -> a b\nb -> b a\n"
PD_TEXT = "letters: a b\na -> b b\nb -> a b\n"
DOUBLING_TEXT = "letters: a\na -> a a\n"
BLOCKS_TEXT = "letters: a b\na -> a a\nb -> b b\n"


@pytest.fixture(scope="session")
def tm_rule():
    return parse_rule_text(TM_TEXT)


@pytest.fixture(scope="session")
def pd_rule():
    return parse_rule_text(PD_TEXT)


@pytest.fixture(scope="session")
def doubling_rule():
    return parse_rule_text(DOUBLING_TEXT)


@pytest.fixture(scope="session")
def blocks_rule():
    return parse_rule_text(BLOCKS_TEXT)


@pytest.fixture(scope="session")
def rules_dir():
    return REPO_ROOT / "rules"
