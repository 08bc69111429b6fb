import sys
from pathlib import Path
from types import SimpleNamespace

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from onesided.conflations import AllShortExact, AllShortExactMinus, KCPair, ProbeSet, SplitOnly, clear_caches
from onesided.quiver import Arrow, QuiverAlgebra, hom_basis


def build_a3() -> SimpleNamespace:
    alg = QuiverAlgebra(["1", "2", "3"], [Arrow("a", "2", "1"), Arrow("b", "3", "2")])
    ns = SimpleNamespace(alg=alg)
    ns.S1, ns.S2, ns.S3 = (alg.simple(v) for v in "123")
    ns.P2, ns.P3 = alg.projective("2"), alg.projective("3")
    ns.I2 = alg.injective("2")
    ns.objects = {"S1": ns.S1, "P2": ns.P2, "P3": ns.P3, "S2": ns.S2, "I2": ns.I2, "S3": ns.S3}
    ns.ind = tuple(ns.objects.values())
    ns.iota = hom_basis(ns.S2, ns.I2)[0]
    ns.pi = hom_basis(ns.I2, ns.S3)[0]
    ns.eta = KCPair(ns.iota, ns.pi)
    ns.ase = AllShortExact()
    ns.split = SplitOnly()
    ns.restricted = AllShortExactMinus((ns.eta,))
    ns.literal = AllShortExactMinus((ns.eta,), closure="literal")
    ns.probes = ProbeSet(ns.ind)
    return ns


_A3 = build_a3()


@pytest.fixture(scope="session")
def a3():
    return _A3


@pytest.fixture(autouse=True, scope="session")
def _fresh_caches():
    clear_caches()
    yield


def pytest_terminal_summary(terminalreporter):
    acceptance = sys.modules.get("test_acceptance")
    if acceptance is None or not acceptance.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for k, (ok, detail) in sorted(acceptance.RESULTS.items()):
        terminalreporter.write_line(f"criterion {k:2d}: {'PASS' if ok else 'FAIL'}  {detail}")
