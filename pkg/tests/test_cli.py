import json
import subprocess
import sys

import pytest
from hypothesis import given, settings, strategies as st

from rayorder.cli import COMMANDS, emit, main, parse_request, run
from rayorder.errors import ParseError


def _json(argv):
    return json.loads(emit(run(parse_request(argv)), "json"))


def test_parse_example_request():
    req = parse_request('rayclass --field "x^2-2" --order "quad-conductor:1" --modulus "(7)inf2"')
    assert req.command == "rayclass"
    assert req.arg("modulus") == "(7)inf2"
    assert parse_request(req.to_text()) == req


@pytest.mark.parametrize("line", [
    'rayclass --field "x^2-2" --modulus "(7)inf2" --format json',
    'ideal-op --field "x^2+1" --order "quad-conductor: 2" --ideal "gens: 2, 2*a" --op pow --exp 2',
    'ideal-op --field "x^2+1" --ideal "hnf: 1; 2 0; 0 1" --ideal2 "gens: 3" --op colon',
    'contract --field "x^2-2" --order "gens: 1, 5*a" --ideal "gens: 7" --mode integral',
    'exactseq --field "x^2-2" --order "quad-conductor:2" --modulus "(7)inf2" --aux "gens: 14, 14*a"',
    'split --field "x^2-2" --modulus "(7)inf1inf2" --prime-bound 100 --residue-bound 5000',
    'norm --field "x^3-2" --assume-irreducible --order equation --ideal "gens: 2"',
])
def test_round_trip(line):
    req = parse_request(line)
    assert parse_request(req.to_argv()) == req
    assert parse_request(req.to_text()) == req


_tokens = st.sampled_from(["rayclass", "--field", "x^2-2", "--modulus", "(7)inf2", "(1)", "--order",
                           "maximal", "gens: 1, 2*a", "--format", "json", "--prime-bound", "50"])


@settings(max_examples=60)
@given(st.lists(_tokens, max_size=8))
def test_round_trip_or_parse_error(tokens):
    try:
        req = parse_request(tokens)
    except ParseError:
        return
    assert parse_request(req.to_argv()) == req


def test_parse_errors_carry_position():
    with pytest.raises(ParseError) as info:
        parse_request(["rayclass", "--field", "x^2-2", "--modulus", "(7)inf9"])
    assert info.value.pos == 6
    with pytest.raises(ParseError):
        parse_request(["rayclass", "--field", "x^2-2", "--modulus", "(7, 3+)"])
    with pytest.raises(ParseError):
        parse_request(["frobnicate", "--field", "x^2-2"])
    with pytest.raises(ParseError):
        parse_request(["rayclass", "--field", "x^2-2"])


def test_exit_codes(capsys):
    assert main(["rayclass", "--field", "x^2-2", "--modulus", "(7)inf9"]) == 2
    assert main(["unitgroup", "--field", "x^3-2", "--order", "equation"]) == 3
    assert main(["rayclass", "--field", "x^2-2", "--modulus", "(7)inf2", "--residue-bound", "10"]) == 4
    assert main(["rayclass", "--field", "x^2-2", "--modulus", "(7)inf2"]) == 0
    capsys.readouterr()


def test_trivial_modulus():
    out = _json(["rayclass", "--field", "x^2-2", "--modulus", "(1)"])
    assert out["cardinality"] == 1 and out["invariant_factors"] == []


def test_json_goldens():
    out = _json(["rayclass", "--field", "x^2-2", "--modulus", "(7)inf2"])
    assert out["schema"] == 1 and out["invariant_factors"] == [6]
    out = _json(["rayclass", "--field", "x^2-2", "--order", "quad-conductor:2", "--modulus", "(7)inf2"])
    assert out["cardinality"] == 12 and out["invariant_factors"] == [2, 6]
    out = _json(["exactseq", "--field", "x^2-2", "--order", "quad-conductor:2", "--modulus", "(7)inf2"])
    assert out["invariant_factors"] == [2, 6] and out["ok"] and out["aux"] == "hnf: 1; 14 0; 0 14"
    out = _json(["rayclass", "--field", "x^2-2", "--order", "quad-conductor:5", "--modulus", "(7)inf2"])
    assert out["cardinality"] == 36 and "invariant_factors" not in out
    assert out["pieces"]["ring_class"] == [2] and out["pieces"]["cokernel"] == [3, 6]
    out = _json(["formula", "--field", "x^2-2", "--order", "quad-conductor:5", "--modulus", "(7)inf2"])
    assert out["cardinality"] == 36 and out["agrees"]


def test_text_output():
    req = parse_request(["rayclass", "--field", "x^2-2", "--order", "quad-conductor:2", "--modulus", "(7)inf2"])
    assert emit(run(req)).splitlines()[0] == "Cl_(7)inf2(Z[2*sqrt2]) = Z/6 x Z/2"
    req = parse_request(["rayclass", "--field", "x^2-2", "--modulus", "(1)"])
    assert emit(run(req)).splitlines()[0] == "Cl_(1)(Z[sqrt2]) = 1"


def test_ideal_commands():
    out = _json(["ideal-op", "--field", "x^2+1", "--order", "quad-conductor:2", "--ideal", "gens: 2, 2*a",
                 "--op", "pow", "--exp", "2"])
    assert out["norm"] == 8
    out = _json(["ideal-op", "--field", "x^2+1", "--order", "quad-conductor:2", "--ideal", "gens: 2, 2*a",
                 "--op", "is-invertible"])
    assert out["invertible"] is False
    out = _json(["conductor", "--field", "x^2+1", "--order", "quad-conductor:2"])
    assert out["conductor"] == "hnf: 1; 2 0; 0 2" and out["index"] == 2
    out = _json(["primary", "--field", "x^2-2", "--ideal", "gens: 14"])
    assert sorted(c["norm"] for c in out["components"]) == [4, 7, 7]
    out = _json(["unitgroup", "--field", "x^2-2", "--ideal", "gens: 7"])
    assert out["invariant_factors"] == [6, 6] and out["cardinality"] == 36
    out = _json(["classgroup", "--field", "x^2+21"])
    assert out["invariant_factors"] == [2, 2]


def test_psi_and_split_commands():
    out = _json(["psi", "--field", "x^2-2", "--modulus", "(7)inf2", "--prime-bound", "300"])
    assert out["surjective"] and out["classes_reached"] == 6
    out = _json(["split", "--field", "x^2-2", "--modulus", "(7)inf2", "--ideal", "gens: 3+a"])
    assert out["splits"] == "excluded"


def test_deterministic_json():
    argv = ["exactseq", "--field", "x^2-2", "--order", "quad-conductor:2", "--modulus", "(7)inf2", "--format", "json"]
    runs = [subprocess.run([sys.executable, "-m", "rayorder", *argv], capture_output=True, check=True).stdout
            for _ in range(2)]
    assert runs[0] == runs[1]
    assert json.loads(runs[0])["schema"] == 1


def test_every_command_has_a_handler():
    from rayorder.cli import HANDLERS

    assert set(HANDLERS) == set(COMMANDS)
