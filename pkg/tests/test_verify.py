import pytest

from permuton_lab.verify import REGISTRY, SUITES, manifest, run_suite


def test_registry_matches_manifest():
    assert manifest() == list(REGISTRY)


def test_every_entry_documented():
    assert all(e.doc and e.suite in SUITES for e in REGISTRY.values())


def test_unknown_suite():
    with pytest.raises(ValueError):
        run_suite("nope")


@pytest.mark.parametrize("suite", ["core", "greene", "layers", "cli"])
def test_quick_suites_pass(suite):
    res = run_suite(suite, quick=True)
    assert res.ok, res.report()
