import json
import math
import subprocess
import sys
import xml.etree.ElementTree as ET
from pathlib import Path

import numpy as np
import pytest

from mirrorwords import cli, orthon, plane, sampling, so3, sphere
from mirrorwords.cli import (
    DimensionMismatch,
    ExpressionSyntaxError,
    Expression,
    parse_expression,
    pretty,
)
from mirrorwords.moves import Move
from mirrorwords.numerics import DegenerateInput

GOLDEN = Path(__file__).parent / "golden"


def run_cli(*args):
    return subprocess.run(
        [sys.executable, "-m", "mirrorwords", *args],
        capture_output=True,
        text=True,
    )


# ---------------------------------------------------------------- parser


def test_parse_two_mirror_expression():
    expr = parse_expression("E2: refl(line(1,0,2)) * refl(line(1,0,0))")
    assert expr.group == "e2"
    assert len(expr.word) == 2
    # rightmost term acts first: x = 0 before x = 2
    assert expr.word[0] == plane.Line((1, 0), 0)
    assert expr.word[1] == plane.Line((1, 0), 2)


def test_parse_single_axis():
    expr = parse_expression("SO3: refl(axis(0,0,1))")
    assert expr.group == "so3"
    assert expr.word == [so3.Axis((0, 0, 1))]


def test_parse_rejects_zero_normal():
    with pytest.raises(DegenerateInput):
        parse_expression("E2: refl(line(0,0,0))")


def test_parse_syntax_error_position():
    with pytest.raises(ExpressionSyntaxError) as err:
        parse_expression("E2: refl[line(1,0,0)]")
    assert err.value.position == 8


def test_parse_rejects_wrong_mirror_kind():
    with pytest.raises(ExpressionSyntaxError):
        parse_expression("E2: refl(axis(0,0,1))")


def test_parse_rejects_mixed_dimensions():
    with pytest.raises(DimensionMismatch):
        parse_expression("ON: refl(hyper(1,0,0)) * refl(hyper(1,0))")
    with pytest.raises(DimensionMismatch):
        parse_expression("ON(4): refl(hyper(1,0,0))")
    with pytest.raises(DimensionMismatch):
        parse_expression("ON: id")


def test_parse_empty_words():
    assert parse_expression("E2: id").word == []
    assert parse_expression("ON(3): id").dim == 3
    assert parse_expression("ON: id", default_dim=5).dim == 5


def test_parse_is_whitespace_insensitive():
    a = parse_expression("S2:refl(circle(1,0,0))*refl(circle(0,1,0))")
    b = parse_expression("  S2 :  refl( circle( 1 , 0 , 0 ) ) * refl(circle(0,1,0))")
    assert a.word == b.word


def _random_expression(rng):
    group = ["e2", "s2", "so3", "on"][int(rng.integers(0, 4))]
    dim = int(rng.integers(2, 6)) if group == "on" else None
    word = sampling.random_word(rng, group, int(rng.integers(0, 5)), dim=dim or 3)
    if group == "on" and not word:
        dim = 3
    return Expression(group, word, dim)


def test_pretty_parse_round_trip_is_fixed_point():
    rng = np.random.default_rng(70)
    for _ in range(200):
        expr = _random_expression(rng)
        text = pretty(expr)
        again = parse_expression(text)
        assert pretty(again) == text
        assert again.group == expr.group
        assert len(again.word) == len(expr.word)
        for a, b in zip(again.word, expr.word):
            assert a == b


# ---------------------------------------------------------------- goldens


@pytest.mark.parametrize(
    "name,args",
    [
        ("normalize_involution", ["normalize", "E2: refl(line(0,1,0)) * refl(line(0,1,0))", "--trace"]),
        ("normalize_involution_json", ["normalize", "E2: refl(line(0,1,0)) * refl(line(0,1,0))", "--json"]),
        ("classify_translation", ["classify", "E2: refl(line(1,0,1)) * refl(line(1,0,0))"]),
        ("classify_glide_json", ["classify", "E2: refl(line(1,0,3)) * refl(line(1,-1,0)) * refl(line(0,1,0))", "--json"]),
        ("verify_so3_seed42", ["verify", "--group", "so3", "--count", "1000", "--max-len", "7", "--seed", "42"]),
        ("verify_e2_json", ["verify", "--group", "e2", "--count", "200", "--max-len", "8", "--seed", "7", "--json"]),
        ("compose_parallel", ["compose", "E2: refl(line(1,0,1))", "E2: refl(line(1,0,0))"]),
        ("arc_half_turn", ["arc", "SO3: refl(axis(0,1,0)) * refl(axis(1,0,0))"]),
        ("reduce_on2", ["reduce", "ON: refl(hyper(0,1)) * refl(hyper(1,1)) * refl(hyper(1,0))"]),
        ("normalize_sphere_antipodal", ["normalize", "S2: refl(circle(1,0,0)) * refl(circle(0,1,0)) * refl(circle(0,0,1))", "--trace"]),
    ],
)
def test_golden_outputs(name, args):
    result = run_cli(*args)
    assert result.returncode == 0, result.stderr
    expected = (GOLDEN / f"{name}.txt").read_text()
    assert result.stdout == expected


def test_verify_is_byte_reproducible():
    args = ["verify", "--group", "so3", "--count", "1000", "--max-len", "7", "--seed", "42"]
    first = run_cli(*args)
    second = run_cli(*args)
    assert first.returncode == 0 and second.returncode == 0
    assert first.stdout == second.stdout
    residual = float(first.stdout.splitlines()[1].split(":")[1])
    assert residual <= 1e-8


# ---------------------------------------------------------------- behavior


def test_exit_code_parse_error():
    result = run_cli("normalize", "E2: refl(line(1,0")
    assert result.returncode == 2
    err = json.loads(result.stderr)
    assert err["status"] == "error"
    assert err["error"] == "ExpressionSyntaxError"


def test_exit_code_verification_failure():
    result = run_cli(
        "normalize",
        "E2: refl(line(1,0,1)) * refl(line(0,1,3)) * refl(line(1,1,0)) * refl(line(1,2,1)) * refl(line(3,1,0))",
        "--tol", "1e-300", "--json",
    )
    assert result.returncode == 1
    payload = json.loads(result.stdout)
    assert payload["status"] == "residual-exceeded"


def test_arc_rejects_other_groups():
    result = run_cli("arc", "E2: refl(line(1,0,0))")
    assert result.returncode == 2


def test_reduce_rejects_wrong_length():
    result = run_cli("reduce", "ON: refl(hyper(1,0)) * refl(hyper(0,1))")
    assert result.returncode == 2
    err = json.loads(result.stderr)
    assert err["error"] == "WrongLength"


def test_arc_svg_output(tmp_path):
    path = tmp_path / "arc.svg"
    result = run_cli("arc", "SO3: refl(axis(0,1,0)) * refl(axis(1,0,0))", "--svg", str(path))
    assert result.returncode == 0
    root = ET.parse(path).getroot()
    assert root.tag.endswith("svg")


def test_compose_mixed_groups_rejected():
    result = run_cli("compose", "E2: refl(line(1,0,0))", "S2: refl(circle(1,0,0))")
    assert result.returncode == 2


def test_compose_applies_right_first():
    # rotation by +90 about origin composed with itself: half turn
    result = run_cli(
        "compose",
        "E2: refl(line(1,-1,0)) * refl(line(0,1,0))",
        "E2: refl(line(1,-1,0)) * refl(line(0,1,0))",
        "--json",
    )
    payload = json.loads(result.stdout)
    assert payload["classification"]["kind"] == "rotation"
    assert payload["classification"]["angle"] == pytest.approx(math.pi, abs=1e-9)


# --------------------------------------------------- trace as an interface


def _mirror_from_json(group, payload, dim=None):
    if group == "e2":
        return plane.Line(payload["normal"], payload["offset"])
    if group == "s2":
        return sphere.GreatCircle(payload["pole"])
    if group == "so3":
        return so3.Axis(payload["direction"])
    return orthon.Hyperplane(payload["normal"])


@pytest.mark.parametrize(
    "expression,group,replayer",
    [
        (
            "E2: refl(line(1,1,2)) * refl(line(0,1,3)) * refl(line(1,3,1)) * refl(line(1,0,1)) * refl(line(2,1,0))",
            "e2",
            plane.replay_moves,
        ),
        (
            "SO3: refl(axis(1,1,2)) * refl(axis(0,1,3)) * refl(axis(1,3,1)) * refl(axis(1,0,1))",
            "so3",
            so3.replay_moves,
        ),
        (
            "S2: refl(circle(1,1,2)) * refl(circle(0,1,3)) * refl(circle(1,3,1)) * refl(circle(1,0,1)) * refl(circle(2,1,1))",
            "s2",
            sphere.replay_moves,
        ),
        (
            "ON: refl(hyper(1,1,2,0)) * refl(hyper(0,1,3,1)) * refl(hyper(1,3,1,1)) * refl(hyper(1,0,1,2)) * refl(hyper(2,1,1,0)) * refl(hyper(1,2,0,1))",
            "on",
            orthon.replay_moves,
        ),
    ],
)
def test_json_trace_replays_to_normal_form(expression, group, replayer):
    result = run_cli("normalize", expression, "--json")
    assert result.returncode == 0
    payload = json.loads(result.stdout)
    expr = parse_expression(expression)
    moves = [
        Move(m["move"], m["index"], tuple(_mirror_from_json(group, p) for p in m["mirrors"]))
        for m in payload["trace"]
    ]
    final = replayer(expr.word, moves)[-1]
    reported = [
        _mirror_from_json(group, p) for p in payload["normalized"]["mirrors"]
    ]
    assert len(final) == len(reported)
    for a, b in zip(final, reported):
        assert a == b
