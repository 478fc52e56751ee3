import os
from functools import lru_cache

import pytest
from hypothesis import HealthCheck, settings

from realenriques import catalog
from realenriques.enriques import analyze, validate_triple

settings.register_profile(
    "default", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

REFERENCE_SPEC = "u1=swap;u23=diag:-1;e8=diag:-1"


@lru_cache(maxsize=None)
def catalog_triples():
    """Validated triples for the default block-spec catalog plus the named triples."""
    tau = catalog.tau_reference()
    out = []
    for sigma in catalog.block_sigma_family(catalog.default_specs()):
        out.append(validate_triple(catalog.k3_lattice(), tau, sigma, sigma.name))
    for name in catalog.NAMED_TRIPLES:
        t, s = catalog.named_triple(name)
        out.append(validate_triple(catalog.k3_lattice(), t, s, name))
    return tuple(out)


@lru_cache(maxsize=None)
def catalog_reports():
    return tuple(analyze(t) for t in catalog_triples())


@pytest.fixture(scope="session")
def k3():
    return catalog.k3_lattice()


@pytest.fixture(scope="session")
def reference_triple():
    return validate_triple(catalog.k3_lattice(), catalog.tau_reference(), catalog.sigma_reference(), "reference")


@pytest.fixture(scope="session")
def reference_report(reference_triple):
    return analyze(reference_triple)


@pytest.fixture(scope="session")
def triples():
    return catalog_triples()


@pytest.fixture(scope="session")
def reports():
    return catalog_reports()


def pytest_terminal_summary(terminalreporter):
    import oracles

    lines = getattr(oracles, "ACCEPTANCE_LINES", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
