import sys
import os
import json

# Add the project root to the Python path
sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), '..')))

from tests.utils import run_tests
from vankampen import cli


def test_pi1_prints_the_vertex_group(capsys):
    assert cli.main(['pi1', 'klein.cx2', '--group']) == 0
    assert "⟨a, b | a b a^-1 b⟩" in capsys.readouterr().out


def test_pi1_json(capsys):
    assert cli.main(['pi1', 'annulus.cx2', '--base', 'v0', '--json']) == 0
    data = json.loads(capsys.readouterr().out)
    assert data['objects'] == ['v0']
    assert [e['name'] for e in data['edges']] == ['a', 'b']


def test_pi1_dot(capsys):
    assert cli.main(['pi1', 'circle.cx2', '--dot']) == 0
    assert capsys.readouterr().out.startswith('digraph')


def test_cover_and_kernel_commands(capsys):
    assert cli.main(['pi1-cover', 'circle3.cx2', '--probes', 'Z2,Z3']) == 0
    capsys.readouterr()
    assert cli.main(['pi2', 'sphere2.cx2', '--support', '3', '--coeff', '3']) == 0
    assert "6 kernel vectors; basis candidate (1, -1)" in capsys.readouterr().out


def test_crossed_module_commands(capsys):
    assert cli.main(['check-xmod', 'id(S3)']) == 0
    assert "id(S3): ok" in capsys.readouterr().out
    assert cli.main(['roundtrip', 'id(Z2)']) == 0
    out = capsys.readouterr().out
    assert 'FAILED' not in out
    assert len(out.strip().splitlines()) == 2


def test_check_triple(capsys):
    assert cli.main(['check-triple', 'two_circles.cx2', '--sub', 'left']) == 0
    out = capsys.readouterr().out
    assert "full: no [bounded, combinatorial reading]" in out
    assert "witness: b is outside the image under Z2" in out


def test_exit_codes(capsys):
    assert cli.main(['check-triple', 'annulus.cx2', '--sub', 'nowhere']) == 1
    assert "error:" in capsys.readouterr().err
    assert cli.main(['pi1', 'no-such-file.cx2']) == 1
    assert cli.main(['check-triple', 'annulus.cx2']) == 2
    assert "--sub" in capsys.readouterr().err
    assert cli.main([]) == 2
    assert cli.main(['pi1']) == 2
    assert cli.main(['no-such-command']) == 2


def test_law_suite_refuses_without_a_sample(capsys):
    assert cli.main(['dg-laws', 'Z3<S3']) == 1
    assert "law_cap" in capsys.readouterr().err
    assert cli.main(['dg-laws', 'Z3<S3', '--laws', 'cancellation', 'transport']) == 0
    assert "Z3<S3" in capsys.readouterr().out


def main():
    return run_tests(globals())


if __name__ == '__main__':
    sys.exit(main())
