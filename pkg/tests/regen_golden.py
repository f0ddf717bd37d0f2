"""Rewrite tests/golden/*.txt from the current CLI output."""

from pathlib import Path

from click.testing import CliRunner

from artifact.cli import main
from golden_cases import CASES

HERE = Path(__file__).parent

if __name__ == "__main__":
    runner = CliRunner()
    for name, (args, code) in CASES.items():
        args = [a.format(fx="tests/fixtures") for a in args]
        r = runner.invoke(main, args)
        assert r.exit_code == code, (name, r.exit_code, r.output)
        (HERE / "golden" / f"{name}.txt").write_text(r.stdout)
