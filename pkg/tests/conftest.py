import pytest
from hypothesis import settings

from monhecke.charmod import MultLocalSystem
from monhecke.rootdatum import named_datum

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")


@pytest.fixture(scope="session")
def A2():
    return named_datum("A2")


@pytest.fixture(scope="session")
def B2():
    return named_datum("B2")


@pytest.fixture(scope="session")
def SL2():
    return named_datum("SL2")


@pytest.fixture(scope="session")
def PGL2():
    return named_datum("PGL2")


@pytest.fixture
def sl2_order2(SL2):
    return MultLocalSystem.cyclic(SL2, 2, [1])


# -- acceptance report ------------------------------------------------------------
# Each acceptance test records (criterion, check, ok, note); the terminal summary
# prints one line per criterion.

ACCEPTANCE: dict[int, list[tuple[str, bool, str]]] = {}
NOTES: dict[int, list[str]] = {}


def record(criterion: int, check: str, ok: bool, note: str = "") -> bool:
    ACCEPTANCE.setdefault(criterion, []).append((check, bool(ok), note))
    return ok


def note(criterion: int, text: str) -> None:
    NOTES.setdefault(criterion, []).append(text)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for crit in sorted(ACCEPTANCE):
        checks = ACCEPTANCE[crit]
        failed = [(c, n) for c, ok, n in checks if not ok]
        verdict = "PASS" if not failed else "FAIL"
        line = f"criterion {crit}: {verdict}  ({len(checks) - len(failed)}/{len(checks)} checks)"
        if failed:
            line += "  failing: " + "; ".join(f"{c} [{n}]" if n else c for c, n in failed)
        tr.write_line(line)
        for text in NOTES.get(crit, []):
            tr.write_line(f"    note: {text}")
