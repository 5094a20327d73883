"""Text formats, round trips, CLI exit codes, and trace verification."""

import random
from fractions import Fraction as F

import pytest

from urylab import io
from urylab.bilip import Ball, extend_dense, kn_admissible
from urylab.cli import main, verify_trace_lines
from urylab.core import PartialMap
from urylab.errors import ParseError
from urylab.gen import random_compliant_instance, random_point_in_ball, \
    random_space
from urylab.moduli import PLFunction

VIOLATION_UMS = """\
points 3
labels a b c
row 0 1 3
row 1 0 1
row 3 1 0
"""

WORKED_UMS = """\
# center and one point at distance 1
points 2
labels x1 x
row 0 1
row 1 0
"""

WORKED_MAP = "pair x1 x1\n"


def test_space_round_trip():
    space = random_space(random.Random(3), 5)
    assert io.parse_space(io.format_space(space)) == space


def test_space_parse_errors():
    with pytest.raises(ParseError):
        io.parse_space("points 2\nlabels a b\nrow 0 1\n")
    with pytest.raises(ParseError):
        io.parse_space("labels a\nrow 0\n")
    with pytest.raises(ParseError):
        io.parse_space("points 1\nlabels a\nrow x\n")


def test_map_round_trip():
    space = random_space(random.Random(4), 5)
    f = PartialMap((0, 2), (3, 4))
    assert io.parse_map(io.format_map(f, space), space) == f


def test_modulus_round_trip():
    m = PLFunction.from_points([(0, 0), (1, 1), (3, 2)], F(1, 3))
    assert io.parse_modulus(io.format_modulus(m)) == m


def test_trace_round_trip_text():
    space = io.parse_space(WORKED_UMS)
    f = io.parse_map(WORKED_MAP, space)
    ball, kn = Ball(0, F(10)), kn_admissible(2, 4)
    _, _, trace = extend_dense(f, ball, kn, [1], space)
    text = io.format_trace(trace)
    lines = io.parse_trace(text)
    assert len(lines) == 3  # 1 solve on the domain side, 2 on the range side
    ok, msg = verify_trace_lines(space, f, ball, kn, [1], lines)
    assert ok, msg


def test_verify_accepts_every_emitted_trace():
    rng = random.Random(99)
    for _ in range(5):
        space, f, ball, kn = random_compliant_instance(rng, grow=2)
        targets = []
        for _ in range(2):
            space, x = random_point_in_ball(rng, space, ball)
            targets.append(x)
        _, _, trace = extend_dense(f, ball, kn, targets, space,
                                   policy=rng.choice(("midpoint", "minimal",
                                                      "maximal")))
        lines = io.parse_trace(io.format_trace(trace))
        ok, msg = verify_trace_lines(space, f, ball, kn, targets, lines)
        assert ok, msg


def test_verify_rejects_out_of_interval_perturbation():
    space = io.parse_space(WORKED_UMS)
    f = io.parse_map(WORKED_MAP, space)
    ball, kn = Ball(0, F(10)), kn_admissible(2, 4)
    _, _, trace = extend_dense(f, ball, kn, [1], space)
    lines = io.parse_trace(io.format_trace(trace))
    for k, ln in enumerate(lines):
        bad = list(lines)
        bad[k] = io.TraceLine(ln.m, ln.side, ln.lo, ln.hi,
                              ln.hi * 2 + 1, ln.s, ln.point)
        ok, _ = verify_trace_lines(space, f, ball, kn, [1], bad)
        assert not ok


def test_verify_rejects_any_single_field_perturbation():
    space = io.parse_space(WORKED_UMS)
    f = io.parse_map(WORKED_MAP, space)
    ball, kn = Ball(0, F(10)), kn_admissible(2, 4)
    _, _, trace = extend_dense(f, ball, kn, [1], space)
    lines = io.parse_trace(io.format_trace(trace))
    nudge = F(1, 1024)
    for k, ln in enumerate(lines):
        for field in ("lo", "hi", "e", "s"):
            bad = list(lines)
            kw = dict(m=ln.m, side=ln.side, lo=ln.lo, hi=ln.hi, e=ln.e,
                      s=ln.s, point=ln.point)
            kw[field] = kw[field] + nudge
            bad[k] = io.TraceLine(**kw)
            ok, _ = verify_trace_lines(space, f, ball, kn, [1], bad)
            assert not ok, f"perturbed {field} on line {k} accepted"


def run_cli(tmp_path, *argv):
    return main([str(a) for a in argv])


def test_cli_validate_exit_codes(tmp_path, capsys):
    good = tmp_path / "good.ums"
    good.write_text(WORKED_UMS)
    bad = tmp_path / "bad.ums"
    bad.write_text(VIOLATION_UMS)
    assert run_cli(tmp_path, "validate", good) == 0
    assert run_cli(tmp_path, "validate", bad) == 1
    out = capsys.readouterr().out
    assert "violation triangle a b c" in out
    junk = tmp_path / "junk.ums"
    junk.write_text("points zzz\n")
    assert run_cli(tmp_path, "validate", junk) == 3


def test_cli_extend_and_verify_round_trip(tmp_path, capsys):
    space = tmp_path / "s.ums"
    space.write_text(WORKED_UMS)
    fmap = tmp_path / "f.map"
    fmap.write_text(WORKED_MAP)
    trace = tmp_path / "t.trace"
    rc = run_cli(tmp_path, "extend-bilip", space, fmap, "--center", "x1",
                 "--radius", "10", "--K", "2", "--N", "4", "--target", "x",
                 "--out", trace)
    assert rc == 0
    text = trace.read_text()
    assert "step 1 side=d interval=[1/2,2] e=5/4 s=35/16" in text
    capsys.readouterr()
    rc = run_cli(tmp_path, "verify-trace", trace, space, fmap, "--center",
                 "x1", "--radius", "10", "--K", "2", "--N", "4",
                 "--target", "x")
    assert rc == 0
    # perturb one rational in the trace -> exit 1
    trace.write_text(text.replace("e=5/4", "e=9/4"))
    rc = run_cli(tmp_path, "verify-trace", trace, space, fmap, "--center",
                 "x1", "--radius", "10", "--K", "2", "--N", "4",
                 "--target", "x")
    assert rc == 1


def test_cli_infeasible_precondition_exit(tmp_path):
    space = tmp_path / "s.ums"
    space.write_text(WORKED_UMS)
    fmap = tmp_path / "f.map"
    fmap.write_text(WORKED_MAP)
    rc = run_cli(tmp_path, "extend-bilip", space, fmap, "--center", "x1",
                 "--radius", "10", "--K", "3/2", "--N", "4",
                 "--target", "x")
    assert rc == 2  # (3/2, 4) is not admissible


def test_cli_counterexample_report(tmp_path, capsys):
    alpha = tmp_path / "alpha.mc"
    alpha.write_text("mc\nbp 0 0\nbp 1 1\ntail 1/2\n")
    ident = tmp_path / "id.mc"
    ident.write_text("mc\nbp 0 0\ntail 1\n")
    rc = run_cli(tmp_path, "counterexample", "--alpha", alpha, "--beta",
                 ident, "--s", "1", "--t", "1")
    assert rc == 0
    out = capsys.readouterr().out
    assert "alpha_inv(s+t)=3 > beta(t)+alpha_inv(s)=2" in out
    rc = run_cli(tmp_path, "counterexample", "--alpha", ident, "--beta",
                 ident, "--s", "1", "--t", "1")
    assert rc == 2  # the condition holds for the identity pair


def test_cli_group_dist(tmp_path, capsys):
    space = tmp_path / "s.ums"
    space.write_text("points 3\nlabels a b c\n"
                     "row 0 1/2 3\nrow 1/2 0 3\nrow 3 3 0\n")
    f = tmp_path / "f.map"
    f.write_text("pair a a\npair b b\npair c c\n")
    g = tmp_path / "g.map"
    g.write_text("pair c c\npair a b\npair b a\n")  # out of index order
    rc = run_cli(tmp_path, "group-dist", space, f, g, "--basepoint", "a")
    assert rc == 0
    out = capsys.readouterr().out
    assert "lip " in out and "dS " in out and "zero false" in out
    partial = tmp_path / "p.map"
    partial.write_text("pair a b\npair b a\n")
    assert run_cli(tmp_path, "group-dist", space, f, partial) == 2


def test_cli_fuzz_deterministic(tmp_path, capsys):
    assert run_cli(tmp_path, "fuzz", "--suite", "bilip", "--count", "3",
                   "--seed", "12") == 0
    first = capsys.readouterr().out
    assert run_cli(tmp_path, "fuzz", "--suite", "bilip", "--count", "3",
                   "--seed", "12") == 0
    second = capsys.readouterr().out
    assert first == second and "all passed" in first


def test_cli_amalgamate_midpoint(tmp_path, capsys):
    a = tmp_path / "a.ums"
    a.write_text("points 2\nlabels p0 z\nrow 0 3\nrow 3 0\n")
    b = tmp_path / "b.ums"
    b.write_text("points 2\nlabels z p1\nrow 0 1\nrow 1 0\n")
    assert run_cli(tmp_path, "amalgamate", a, b, "--policy", "midpoint") == 0
    out = capsys.readouterr().out
    merged = io.parse_space("\n".join(
        ln for ln in out.splitlines() if not ln.startswith("#")))
    assert merged.d(merged.index("p0"), merged.index("p1")) == 3


def test_cli_extend_mc(tmp_path, capsys):
    sx = tmp_path / "x.ums"
    sx.write_text("points 2\nlabels x0 p\nrow 0 1\nrow 1 0\n")
    sy = tmp_path / "y.ums"
    sy.write_text("points 1\nlabels y0\nrow 0\n")
    fmap = tmp_path / "f.map"
    fmap.write_text("pair x0 y0\n")
    two = tmp_path / "two.mc"
    two.write_text("mc\nbp 0 0\ntail 2\n")
    rc = run_cli(tmp_path, "extend-mc", sx, sy, fmap, "--alpha", two,
                 "--beta", two, "--point", "p")
    assert rc == 0
    out = capsys.readouterr().out
    assert "realized q1" in out and "dist y0 2" in out


def test_cli_witness(tmp_path, capsys):
    gamma = tmp_path / "gamma.mc"
    gamma.write_text("mc\nbp 0 0\nbp 1/256 1/16\nbp 1/64 1/8\nbp 1/16 1/4\n"
                     "bp 1/4 1/2\nbp 1 1\ntail 1/2\n")
    d3 = tmp_path / "d3.mc"
    d3.write_text("mc\nbp 0 0\ntail 3\n")
    rc = run_cli(tmp_path, "witness", "--gamma", gamma, "--delta", d3,
                 "--depth", "2")
    assert rc == 0
    out = capsys.readouterr().out
    assert "exceeds=true" in out and "bicontinuity(2*gamma) ok=true" in out
