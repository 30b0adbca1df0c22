import pytest

from hopspec import verify


@pytest.mark.parametrize("suite", verify.SUITE_NAMES)
def test_suite_passes(suite):
    results = verify.run_suite(suite)
    assert results
    failed = [r for r in results if not r.passed]
    assert not failed, "\n".join(f"{r.name}: {r.detail}" for r in failed)


def test_unknown_suite():
    with pytest.raises(KeyError):
        verify.run_suite("nope")
