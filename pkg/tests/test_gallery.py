import pytest

from ctxlab.gallery import EXAMPLES


@pytest.mark.parametrize("name", sorted(EXAMPLES))
def test_example_checks_hold(name):
    rep = EXAMPLES[name]()
    failed = [c for c in rep.checks if not c.ok]
    assert not failed, rep.text()
