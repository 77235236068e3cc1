import pytest

from sopq.corrections import apply_golden_patches, load_corrections, stated_form_failure
from sopq.report import load_golden

CORRECTIONS = load_corrections()


def test_corrections_are_documented():
    ids = [c["id"] for c in CORRECTIONS]
    assert len(ids) == len(set(ids)) == 5
    for c in CORRECTIONS:
        assert c["stated"] and c["used"] and c["detail"]
        assert c["failed_check"] in {"membership", "eigen-identity", "index-range"}


@pytest.mark.parametrize("c", CORRECTIONS, ids=lambda c: c["id"])
def test_stated_form_fails_its_check(c):
    failure = stated_form_failure(c["id"])
    assert failure is not None
    assert failure.check == c["failed_check"]


def test_patch_requires_stated_value():
    golden = load_golden()
    patched = apply_golden_patches(golden)
    with pytest.raises(ValueError):
        apply_golden_patches(patched)


def test_patch_leaves_other_signatures_alone():
    golden = {"signature": [3, 2], "table1": {}, "table2": {}}
    assert apply_golden_patches(golden) == golden
