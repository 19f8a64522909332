import json

import pytest

from torelli import catalogue, cli
from torelli.freegroup import format_automorphism
from torelli.johnson import psi, rank_h1, tau1
from torelli.theta import theta_translation


@pytest.fixture(scope="module")
def bp1_file(tmp_path_factory):
    entry = next(e for e in catalogue.load(3) if e.name == "bp-1")
    path = tmp_path_factory.mktemp("aut") / "bp1.aut"
    path.write_text(format_automorphism(entry.automorphism))
    return path, entry.automorphism


def run_cli(capsys, argv):
    code = cli.main(argv)
    out = capsys.readouterr().out
    return code, out


class TestCommands:
    def test_tau_matches_library_bytes(self, capsys, bp1_file):
        path, aut = bp1_file
        code, out = run_cli(capsys, ["tau", "--genus", "3", "--aut", f"@{path}"])
        assert code == 0
        expected = cli.to_json(
            cli.envelope("tau", 3, cli.johnson_result(aut))
        )
        assert out == expected
        assert json.loads(out)["result"]["bounded"] == "-a1^b1^a2"

    def test_psi(self, capsys, bp1_file):
        path, aut = bp1_file
        code, out = run_cli(capsys, ["psi", "--genus", "3", "--aut", f"@{path}"])
        assert code == 0
        assert json.loads(out)["result"]["coords"] == list(psi(aut).coords)

    def test_theta_zero_for_two(self, capsys, bp1_file):
        path, _ = bp1_file
        code, out = run_cli(
            capsys, ["theta", "--genus", "3", "--n", "2", "--aut", f"@{path}"]
        )
        assert code == 0
        assert json.loads(out)["result"]["translation"] == [0] * 6

    def test_theta_four(self, capsys, bp1_file):
        path, aut = bp1_file
        code, out = run_cli(
            capsys, ["theta", "--genus", "3", "--n", "4", "--aut", f"@{path}"]
        )
        assert code == 0
        assert json.loads(out)["result"]["translation"] == list(
            theta_translation(aut, 4)
        )

    def test_ranktable(self, capsys):
        code, out = run_cli(
            capsys, ["ranktable", "--lambda", "lambda1", "--r", "2", "--n", "1"]
        )
        assert code == 0
        data = json.loads(out)
        assert data["result"]["rank"] == 3 == rank_h1("lambda1", 2, 1)

    def test_decompose_fractions(self, capsys):
        code, out = run_cli(
            capsys, ["decompose", "--genus", "3", "--wedge3", "a1^b1^a2"]
        )
        assert code == 0
        result = json.loads(out)["result"]
        assert "1/2" in result["part1"]

    def test_ring_roundtrip(self, capsys, bp1_file):
        path, aut = bp1_file
        code, out = run_cli(capsys, ["ring", "--genus", "3", "--aut", f"@{path}"])
        assert code == 0
        result = json.loads(out)["result"]
        assert result["verify"] == []
        assert result["tau"] == str(tau1(aut).bounded)

    def test_ring_inline_tau(self, capsys):
        code, out = run_cli(capsys, ["ring", "--genus", "2", "--tau=-a1^b1^a2"])
        assert code == 0
        assert json.loads(out)["result"]["verify"] == []

    def test_catalogue_listing(self, capsys):
        code, out = run_cli(capsys, ["catalogue", "--genus", "2"])
        assert code == 0
        entries = json.loads(out)["result"]["entries"]
        names = {e["name"] for e in entries}
        assert "twist-a1" in names and "bp-1" in names
        assert all(e["valid"] for e in entries)

    def test_pool_deterministic(self, capsys):
        code1, out1 = run_cli(capsys, ["pool", "--genus", "2", "--size", "4"])
        code2, out2 = run_cli(capsys, ["pool", "--genus", "2", "--size", "4"])
        assert code1 == code2 == 0
        assert out1 == out2

    def test_inline_automorphism(self, capsys, bp1_file):
        path, aut = bp1_file
        inline = format_automorphism(aut)
        code, out = run_cli(capsys, ["tau", "--genus", "3", "--aut", inline])
        assert code == 0
        assert json.loads(out)["result"]["bounded"] == "-a1^b1^a2"


class TestErrors:
    def test_domain_error_named(self, capsys, bp1_file):
        path, _ = bp1_file
        code, out = run_cli(
            capsys, ["theta", "--genus", "3", "--n", "3", "--aut", f"@{path}"]
        )
        assert code == 1
        assert json.loads(out)["error"]["name"] == "InvalidModulus"

    def test_not_torelli_named(self, capsys, tmp_path):
        entry = next(e for e in catalogue.load(3) if e.name == "twist-a1")
        path = tmp_path / "twist.aut"
        path.write_text(format_automorphism(entry.automorphism))
        code, out = run_cli(capsys, ["tau", "--genus", "3", "--aut", f"@{path}"])
        assert code == 1
        assert json.loads(out)["error"]["name"] == "NotTorelli"

    def test_genus_mismatch(self, capsys, bp1_file):
        path, _ = bp1_file
        code, out = run_cli(capsys, ["tau", "--genus", "2", "--aut", f"@{path}"])
        assert code == 1
        assert json.loads(out)["error"]["name"] == "GenusMismatch"

    def test_unsupported_genus(self, capsys):
        code, out = run_cli(capsys, ["catalogue", "--genus", "9"])
        assert code == 1
        assert json.loads(out)["error"]["name"] == "UnsupportedGenus"

    def test_missing_file(self, capsys):
        code, out = run_cli(capsys, ["tau", "--genus", "3", "--aut", "@/nonexistent"])
        assert code == 1
        assert json.loads(out)["error"]["name"] == "IOError"

    def test_usage_error_exits_two(self, capsys):
        with pytest.raises(SystemExit) as err:
            cli.main(["nonsense"])
        assert err.value.code == 2
