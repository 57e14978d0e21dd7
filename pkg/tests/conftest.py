import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from cyclicfoam import groupcover as gc  # noqa: E402
from cyclicfoam.corpus import basic_working_set, rich_working_set, two_color_working_set  # noqa: E402
from cyclicfoam.textio import actions_for_palette, parse_groups  # noqa: E402

DATA = Path(__file__).parent.parent / "data"

ACCEPTANCE_LINES: list[str] = []


def regular(group, colors="abc"):
    return {c: gc.regular_action(group) for c in colors}


def s3_actions():
    _, actions, colors = parse_groups((DATA / "s3.groups").read_text())
    return actions_for_palette(actions, colors, "ab")


# name -> (actions, palette, working set)
THEORIES = {
    "trivial": (lambda: regular(gc.trivial_group()), "abc", basic_working_set),
    "Z2": (lambda: regular(gc.cyclic_group(2)), "abc", rich_working_set),
    "Z3": (lambda: regular(gc.cyclic_group(3)), "abc", rich_working_set),
    "S3": (s3_actions, "ab", two_color_working_set),
}

_cache: dict = {}


def theory(name: str):
    """``(actions, palette, bundle)``, built once per session without verification."""
    if name not in _cache:
        make, palette, work = THEORIES[name]
        actions = make()
        _cache[name] = (actions, palette, gc.build_bundle(actions, work(), palette, verify=False))
    return _cache[name]


@pytest.fixture(scope="session")
def z2():
    return theory("Z2")[2]


@pytest.fixture(scope="session")
def z3():
    return theory("Z3")[2]


@pytest.fixture(scope="session")
def s3():
    return theory("S3")[2]


@pytest.fixture(scope="session")
def trivial():
    return theory("trivial")[2]


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
