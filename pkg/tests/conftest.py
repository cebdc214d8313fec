import pytest

import optfolio as of


@pytest.fixture(scope="session")
def paper_instance() -> of.Instance:
    return of.load_paper_fixture()


@pytest.fixture(scope="session")
def paper_optimum() -> of.Schedule:
    return of.Schedule(period_of=(1, 2, 1, 2, 2, 3, 3))
