import pytest

import mistrace as mt

BIRNE_SOURCE = """\
for (i = 10; i > 0; i = i - 4) {
  print("Birne", i);
}
print("Apfel");
"""

BIRNE_REFERENCE = ("Birne 10", "Birne 6", "Birne 2", "Apfel")
BIRNE_WRONG_1 = ("Birne 6", "Birne 2", "Birne -2", "Apfel")
BIRNE_WRONG_2 = ("Birne 10", "Birne 6", "Birne 2", "Birne -2", "Apfel")


@pytest.fixture(scope="session")
def registry():
    return mt.default_registry()


@pytest.fixture(scope="session")
def birne_program():
    return mt.parse(BIRNE_SOURCE)
