import pytest

from genusgauge.fixtures import FixtureError, load_fixtures, parse_fixtures, replay

REQUIRED = {
    "G(2,1)",
    "N(2,1)",
    "L(4,1) no-RP2",
    "rho=4 genus bound",
    "rho=4 genus bound with parity",
    "surgery d-table",
    "non-simple Delta e=0",
    "L(4,1) rho alpha1 e=8",
    "L(4,1) rho alpha2 e=-6",
}


def test_shipped_fixtures_all_pass():
    results = replay(load_fixtures())
    failed = [(r.fixture.name, r.fixture.expected, r.got) for r in results if not r.passed]
    assert not failed
    assert REQUIRED <= {r.fixture.name for r in results}


def test_every_fixture_is_tagged():
    for fx in load_fixtures():
        assert fx.tag in ("PUBLISHED", "ELEMENTARY", "COMPUTED")


def test_mismatch_is_reported():
    fx = parse_fixtures("bad G | G | k=1;q=1 | 1 | COMPUTED: deliberately wrong\n")
    (result,) = replay(fx)
    assert not result.passed and result.got == "1/2"


def test_errors_are_captured_per_fixture():
    fx = parse_fixtures("broken | G | k=2;q=2 | 1 | COMPUTED: q not coprime\n")
    (result,) = replay(fx)
    assert not result.passed and result.got.startswith("error:")


@pytest.mark.parametrize("text", [
    "",
    "only | three | fields\n",
    "x | nosuchop | k=1 | 1 | COMPUTED: x\n",
    "x | G | k1 | 1 | COMPUTED: x\n",
    "x | G | k=1;q=1 | 1/2 | GUESS: x\n",
    "x | G | k=1;q=1 | 1/2 | PUBLISHED\n",
])
def test_corrupt_files(text):
    with pytest.raises(FixtureError):
        parse_fixtures(text)


def test_missing_file(tmp_path):
    with pytest.raises(FixtureError):
        load_fixtures(tmp_path / "absent.txt")
