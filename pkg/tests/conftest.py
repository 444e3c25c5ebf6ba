import numpy as np
import pytest

from noise_eater import SystemParams, TapOffSpec


def sample_outputs(params: SystemParams, n: int, seed: int = 0, chunk: int = 1_000_000):
    """Sample second moments using the block-matrix form of the device.

    out = F @ M @ [x_s, x_m, x_v] + L @ [x_vs, x_vm], with F the feedforward
    and detection matrix and L the loss-vacuum matrix. Independent of both the
    coefficient-vector path and the package's stage-by-stage sampler.
    Returns (means, stderrs) for (V_s, V_m, Cov).
    """
    rng = np.random.default_rng(seed)
    g, es, em = params.gain, params.eta_s, params.eta_m
    F = np.array([[np.sqrt(es), g * np.sqrt(es * em)], [0.0, np.sqrt(em)]])
    L = np.array([[np.sqrt(1 - es), g * np.sqrt(es * (1 - em))], [0.0, np.sqrt(1 - em)]])
    M = params.tapoff.matrix().as_array()
    FM = F @ M
    scale = np.array([np.sqrt(params.v_in), 1.0, 1.0])[:, None]

    s1 = np.zeros(3)
    s2 = np.zeros(3)
    done = 0
    while done < n:
        k = min(chunk, n - done)
        x = rng.standard_normal((3, k)) * scale
        v = rng.standard_normal((2, k))
        out = FM @ x + L @ v
        prods = np.stack([out[0] ** 2, out[1] ** 2, out[0] * out[1]])
        s1 += prods.sum(axis=1)
        s2 += (prods ** 2).sum(axis=1)
        done += k
    mean = s1 / n
    stderr = np.sqrt((s2 / n - mean ** 2) / n)
    return mean, stderr


@pytest.fixture
def lossless_bs_09():
    return SystemParams(TapOffSpec.beamsplitter(0.9), v_in=10.0)


@pytest.fixture
def tapoff_grid():
    return np.linspace(0.005, 0.995, 200)


_criteria: list[str] = []


class _Criterion:
    def __init__(self, label):
        self.label = label
        self.details = []

    def note(self, text):
        self.details.append(text)


@pytest.fixture
def criterion(request):
    """Record a PASS/FAIL line for an acceptance criterion."""
    marker = request.node.get_closest_marker("criterion")
    c = _Criterion(marker.args[0] if marker else request.node.name)
    yield c
    report = getattr(request.node, "rep_call", None)
    ok = report is not None and report.passed
    detail = "; ".join(c.details)
    _criteria.append(f"{'PASS' if ok else 'FAIL'}  {c.label}" + (f"  ({detail})" if detail else ""))


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    if rep.when == "call":
        item.rep_call = rep


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(label): acceptance criterion label")


def pytest_terminal_summary(terminalreporter):
    if _criteria:
        terminalreporter.section("acceptance criteria")
        for line in _criteria:
            terminalreporter.write_line(line)
