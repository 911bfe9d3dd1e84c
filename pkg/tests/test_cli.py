import cmath
import json
import subprocess
import sys
from pathlib import Path

import pytest
from hypothesis import given
from hypothesis import strategies as st

from ncspectral import FockRing, Quaternion, QuaternionRing, RationalRing, matrix_element
from ncspectral.cli import JobSpec, dumps_report, main, make_ring, parse_entry, run, serialize
from ncspectral.fock import band_equal
from ncspectral.ring import ComplexRing

DATA = Path(__file__).parent / "data"
OSC = [["0", "sqrt(2)*a", "0"], ["sqrt(2)*ad", "0", "sqrt(2)*a"], ["0", "sqrt(2)*ad", "0"]]


def _run(doc, **kw):
    return run(JobSpec.from_dict(doc), **kw)


@pytest.mark.parametrize("name", ["quaternion_inverse", "quaternion_spectral"])
def test_golden_exact_reports(name):
    job = json.loads((DATA / "jobs" / f"{name}.json").read_text())
    assert dumps_report(_run(job)) == (DATA / "golden" / f"{name}.json").read_text()


def test_golden_oscillator_report():
    # results are compared byte for byte; floating residuals only need to stay small
    job = json.loads((DATA / "jobs" / "oscillator_spectral.json").read_text())
    got = json.loads(dumps_report(_run(job)))
    want = json.loads((DATA / "golden" / "oscillator_spectral.json").read_text())
    assert json.dumps(got["results"], sort_keys=True) == json.dumps(want["results"], sort_keys=True)
    assert got["status"] == want["status"] and set(got["residuals"]) == set(want["residuals"])
    assert max(got["residuals"][k] for k in ("idempotence", "orthogonality", "completeness")) < 1e-9


def test_qdet_of_quaternion_example():
    rep = _run({"ring": "quaternion-exact", "command": "qdet", "matrix": [["1", "i"], ["j", "k"]], "options": {"i": 1, "j": 1}})
    assert rep.status == "ok" and rep.results["qdet"] == ["2", "0", "0", "0"]


def test_funcmat_matches_closed_form():
    rep = _run({"ring": "quaternion-exact", "command": "funcmat", "matrix": [["i", "j"], ["j", "-i"]],
                "options": {"func": "exp", "scale": 0.5}})
    t = 0.5
    E = rep.results["matrix"]
    a = cmath.exp(1j * t) * cmath.cos(t)
    b = cmath.exp(1j * t) * cmath.sin(t)
    # w + x i + y j + z k with (w + x i) + (y + z i) j
    assert E[0][0][0] == pytest.approx(a.real, abs=1e-12) and E[0][0][1] == pytest.approx(a.imag, abs=1e-12)
    assert E[0][1][2] == pytest.approx(b.real, abs=1e-12) and E[0][1][3] == pytest.approx(b.imag, abs=1e-12)


def test_charpoly_degenerate_exit_code():
    rep = _run({"ring": "fock", "command": "charpoly", "matrix": OSC})
    assert rep.status == "degenerate" and rep.exit_code == 2
    assert [p["degenerate"] for p in rep.results["polynomials"]] == [False, True, False]


def test_undefined_exit_code():
    rep = _run({"ring": "rational", "command": "qdet", "matrix": [["1", "2"], ["3", "0"]], "options": {"i": 1, "j": 1}})
    assert rep.status == "undefined" and rep.exit_code == 2


def test_parse_error_report():
    rep = _run({"ring": "fock", "command": "charpoly", "matrix": [["a +"]]})
    assert rep.status == "error" and rep.exit_code == 1
    assert rep.results["parse_error"]["position"] == 3


def test_bad_ring_and_command():
    assert _run({"ring": "octonion", "command": "inverse", "matrix": [["1"]]}).exit_code == 1
    assert _run({"ring": "rational", "command": "explode", "matrix": [["1"]]}).exit_code == 1


def test_ch_verify_and_identities():
    rep = _run({"ring": "quaternion-exact", "command": "ch-verify", "matrix": [["i", "j"], ["j", "-i"]]})
    assert rep.results["divergence"] is True and rep.residuals["cayley_hamilton"] == 0
    m = [["1", "i", "j"], ["k", "2", "1 + i"], ["j", "0", "3"]]
    for which in ("homological", "sylvester", "scaling"):
        rep = _run({"ring": "quaternion-exact", "command": "identities", "matrix": m, "options": {"which": which}})
        assert rep.status == "ok" and rep.residuals[which] == 0
    rep = _run({"ring": "quaternion-exact", "command": "identities",
                "options": {"which": "main", "xs": ["1 + i", "j - k"], "z": "2 + 3k"}})
    assert rep.status == "ok" and rep.residuals["main_identity"] == 0
    rep = _run({"ring": "quaternion-exact", "command": "identities",
                "options": {"which": "interpolation", "xs": ["1 + i", "j - k", "2"], "z": "k"}})
    assert rep.residuals["kronecker"] == 0 and rep.residuals["power_sums"] == 0


def test_main_entry_point(tmp_path, capsys):
    job = tmp_path / "job.json"
    job.write_text(json.dumps({"ring": "rational", "command": "inverse", "matrix": [["2", "0"], ["0", "4"]]}))
    # the quasideterminant route needs every |A|_ji, which a diagonal matrix lacks
    assert main(["--in", str(job)]) == 2
    out = json.loads(capsys.readouterr().out)
    assert out["status"] == "undefined"
    assert out["results"]["elimination"] == [["1/2", "0"], ["0", "1/4"]]
    job.write_text(json.dumps({"ring": "rational", "command": "inverse", "matrix": [["2", "1"], ["1", "4"]]}))
    assert main(["--in", str(job), "--ring", "complex", "--pretty"]) == 0
    capsys.readouterr()
    job.write_text("not json")
    assert main(["--in", str(job)]) == 1


def test_module_invocation():
    doc = json.dumps({"ring": "quaternion-exact", "command": "inverse", "matrix": [["1", "i"], ["j", "k"]]})
    proc = subprocess.run([sys.executable, "-m", "ncspectral"], input=doc, capture_output=True, text=True)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["results"]["quasideterminant"] == [
        [["1/2", "0", "0", "0"], ["0", "0", "-1/2", "0"]],
        [["0", "-1/2", "0", "0"], ["0", "0", "0", "-1/2"]],
    ]


def test_entry_examples():
    assert band_equal(parse_entry("a*ad - ad*a", FockRing()), FockRing().one)
    assert parse_entry("[0,1,0,0]", QuaternionRing()) == Quaternion(0, 1)
    X = parse_entry("sqrt(2)*a", FockRing())
    assert X.shifts == (-1,) and matrix_element(X, 2, 3) == pytest.approx(6 ** 0.5)


fracs = st.fractions(min_value=-20, max_value=20, max_denominator=9)


@given(fracs)
def test_rational_round_trip(x):
    R = RationalRing()
    assert parse_entry(serialize(x, R), R) == x


@given(st.tuples(fracs, fracs, fracs, fracs))
def test_quaternion_round_trip(c):
    R = QuaternionRing()
    q = Quaternion(*c)
    assert parse_entry(serialize(q, R), R) == q
    assert parse_entry(serialize(q, R, pretty=True), R) == q


@given(st.tuples(st.integers(-5, 5), st.integers(-5, 5), st.integers(-5, 5), st.integers(-5, 5)))
def test_float_quaternion_round_trip(c):
    R = QuaternionRing(exact=False)
    q = Quaternion(*(v / 4 for v in c), exact=False)
    assert parse_entry(serialize(q, R), R) == q


@given(st.complex_numbers(max_magnitude=1e3, allow_nan=False, allow_infinity=False))
def test_complex_round_trip(z):
    R = ComplexRing()
    assert abs(parse_entry(serialize(z, R), R) - z) <= 1e-10 * max(1, abs(z))


@given(st.sampled_from(["a", "ad", "N + 1", "sqrt(2)*a*ad", "a^2 - 3*N", "ad^2*a"]))
def test_fock_round_trip(text):
    R = FockRing()
    X = parse_entry(text, R)
    assert band_equal(parse_entry(serialize(X, R), R), X)


def test_make_ring_names():
    for name in ("rational", "complex", "quaternion-exact", "quaternion-float", "fock"):
        make_ring(name)
    with pytest.raises(ValueError):
        make_ring("octonion")
