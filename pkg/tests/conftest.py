"""Independent oracles shared across the test modules.

These work on binary strings straight from the three edge-class membership
tests, sharing nothing with the bit-mask construction in ehconn.topology.
"""

import itertools

import pytest


def labels(s, t):
    return ["".join(bits) for bits in itertools.product("01", repeat=s + t + 1)]


def hamming(x, y):
    return sum(a != b for a, b in zip(x, y))


def classify(u, v, s, t):
    """Which of E1/E2/E3 the pair (u, v) belongs to, or None.

    Strings are written u_{s+t} ... u_1 u_0: the s-block is u[:s], the
    t-block u[s:s+t] and the last bit u[-1].
    """
    us, ut, u0 = u[:s], u[s:s + t], u[-1]
    vs, vt, v0 = v[:s], v[s:s + t], v[-1]
    hits = []
    if us + ut == vs + vt and u0 != v0:
        hits.append("E1")
    if us == vs and hamming(ut, vt) == 1 and u0 == v0 == "1":
        hits.append("E2")
    if ut == vt and hamming(us, vs) == 1 and u0 == v0 == "0":
        hits.append("E3")
    assert len(hits) <= 1, (u, v, hits)
    return hits[0] if hits else None


def definition_edges(s, t):
    """Edge set of EH(s, t) by brute force over all vertex pairs, as label pairs."""
    out = {}
    for u, v in itertools.combinations(labels(s, t), 2):
        kind = classify(u, v, s, t)
        if kind:
            out[frozenset((u, v))] = kind
    return out


@pytest.fixture
def oracle_edges():
    return definition_edges


# -- acceptance reporting ------------------------------------------------------

_CRITERIA = {}


def pytest_runtest_makereport(item, call):
    marker = item.get_closest_marker("criterion")
    if marker is None or call.when != "call":
        return
    number, text = marker.args
    ok = call.excinfo is None
    prev = _CRITERIA.get(number, (text, True, 0.0))
    _CRITERIA[number] = (text, prev[1] and ok, prev[2] + call.duration)


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_CRITERIA, key=int):
        text, ok, seconds = _CRITERIA[number]
        terminalreporter.write_line(f"criterion {number}: {'PASS' if ok else 'FAIL'}  {text}  ({seconds:.1f}s)")
