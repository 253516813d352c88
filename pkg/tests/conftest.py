import pytest

from homcert.search import CATALOG, corpus


def catalog_algebra(kind, name):
    for entry in CATALOG[kind]:
        if entry.name == name:
            return entry.algebra
    raise KeyError((kind, name))


@pytest.fixture(scope="session")
def dual_numbers():
    """e1 unit-like, e2 square-zero: the workhorse associative instance."""
    return catalog_algebra("hom-associative", "truncated-poly-2")


@pytest.fixture(scope="session")
def affine_lie():
    """[e1, e2] = e2 with identity twist."""
    return catalog_algebra("hom-lie", "affine-line")


@pytest.fixture(scope="session")
def assoc_corpus():
    return corpus("hom-associative", 100, 4, 11)


@pytest.fixture(scope="session")
def prelie_corpus():
    return corpus("hom-prelie", 100, 3, 23)


@pytest.fixture(scope="session")
def postlie_corpus():
    return corpus("hom-postlie", 100, 3, 37,
                  generators=("hand-catalog", "yau-twist-catalog",
                              "zero-product", "nullspace-sample"))
