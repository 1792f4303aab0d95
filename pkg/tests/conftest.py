import os
import time

import pytest

from umrg.verify import (Universe, verify_biconnected_reduction,
                         verify_consistency, verify_k44, verify_k44_uniqueness,
                         verify_lemma, verify_regular, verify_tables)


@pytest.fixture(scope="session")
def universe():
    jobs = int(os.environ.get("UMRG_JOBS", "0")) or min(4, os.cpu_count() or 1)
    uni = Universe(jobs=jobs)
    t0 = time.perf_counter()
    uni.members()
    uni.build_seconds = time.perf_counter() - t0
    return uni


@pytest.fixture(scope="session")
def members(universe):
    return universe.members()


@pytest.fixture(scope="session")
def k44_report(universe):
    return verify_k44(universe)


@pytest.fixture(scope="session")
def uniqueness_report(universe):
    return verify_k44_uniqueness(universe)


@pytest.fixture(scope="session")
def regular_report(universe):
    return verify_regular(universe)


@pytest.fixture(scope="session")
def lemma2_report(universe):
    return verify_lemma(2, universe)


@pytest.fixture(scope="session")
def lemma3_report(universe):
    return verify_lemma(3, universe)


@pytest.fixture(scope="session")
def biconnected_report(universe):
    return verify_biconnected_reduction(universe)


@pytest.fixture(scope="session")
def tables_report(universe):
    return verify_tables(universe)


@pytest.fixture(scope="session")
def consistency_report(universe):
    return verify_consistency(universe)
