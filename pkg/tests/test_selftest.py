import pytest

from opforge import debug, selftest


def test_selftest_passes():
    results = selftest.run()
    assert sorted(results) == list(range(1, 12))
    assert all(c.ok for c in results.values()), {k: c.where for k, c in results.items() if not c.ok}


@pytest.mark.parametrize("name,criterion,where", [("cone-sign", 1, "cone"), ("tensor-sign", 1, "tensor"),
                                                  ("kappa-sign", 2, 3)])
def test_injected_faults_are_caught(name, criterion, where):
    with debug.injected(name):
        cert = selftest.run(only=[criterion])[criterion]
    assert not cert.ok and cert.where == where


def test_exterior_oracle_inside_selftest():
    assert selftest.exterior_ce_betti(3, lambda i, j: {2: 1} if (i, j) == (0, 1) else {2: -1} if (i, j) == (1, 0) else {}) == (1, 2, 2, 1)
