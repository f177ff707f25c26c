import pathlib

import pytest

from hyperzeta import ManifoldData, synth_spectrum

DATA_DIR = pathlib.Path(__file__).parent / "data"


def pytest_configure(config):
    config._criterion_lines = []


@pytest.fixture()
def criterion(request):
    """Record one PASS/FAIL line per acceptance criterion.

    The lines are echoed again in the terminal summary so they survive
    pytest's output capture.
    """

    def record(num: int, name: str, ok: bool, detail: str = "") -> None:
        line = f"{'PASS' if ok else 'FAIL'} criterion {num}: {name}"
        if detail:
            line += f" ({detail})"
        request.config._criterion_lines.append(line)
        print(line)
        assert ok, line

    return record


def pytest_terminal_summary(terminalreporter):
    lines = getattr(terminalreporter.config, "_criterion_lines", [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(lines):
            terminalreporter.write_line(line)


@pytest.fixture(scope="session")
def conformance_path() -> pathlib.Path:
    return DATA_DIR / "manifold_conformance.json"


@pytest.fixture(scope="session")
def small_spectrum() -> ManifoldData:
    """Seed-fixed synthetic spectrum shared by the hyperbolic-sum tests."""
    geos = synth_spectrum(seed=11, count=4, min_length=1.0, max_power=3, n=4)
    return ManifoldData(
        dimension=4, volume=1.0, betti=(1, 0, 0, 0, 1), geodesics=tuple(geos)
    )


@pytest.fixture(scope="session")
def flat_spectrum_2d() -> ManifoldData:
    """Single unit-power geodesic in n=2 with an explicit C weight."""
    from hyperzeta import GeodesicClass

    geo = GeodesicClass(length=1.0, power=1, c_value=0.5)
    return ManifoldData(dimension=2, volume=1.0, betti=(1, 0, 1), geodesics=(geo,))
