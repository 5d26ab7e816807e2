import random

from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from sofic.actions import FiniteAction
from sofic.words import Alphabet, Word

settings.register_profile(
    "default", deadline=None, max_examples=60, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")

AB = Alphabet(["a", "b"])


def letters(n_gens: int = 2, max_size: int = 8):
    return st.lists(st.tuples(st.integers(0, n_gens - 1), st.sampled_from([1, -1])), max_size=max_size)


def words(n_gens: int = 2, max_size: int = 6):
    return letters(n_gens, max_size).map(Word)


@st.composite
def actions(draw, alphabet=AB, max_degree: int = 6):
    n = draw(st.integers(1, max_degree))
    perms = tuple(tuple(draw(st.permutations(range(n)))) for _ in alphabet)
    return FiniteAction(alphabet, perms)


def rngs():
    return st.integers(0, 2**32 - 1).map(random.Random)


# one line per acceptance criterion at the end of the run
_CRITERIA: dict[str, tuple[str, str]] = {}


def pytest_runtest_logreport(report):
    if "test_acceptance.py::test_criterion_" not in report.nodeid:
        return
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        name = report.nodeid.split("::")[-1]
        detail = dict(report.user_properties).get("detail", "")
        _CRITERIA[name] = ("PASS" if report.outcome == "passed" else "FAIL", detail)


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for name in sorted(_CRITERIA):
        status, detail = _CRITERIA[name]
        terminalreporter.write_line(f"{status}  {name}  {detail}".rstrip())
