import json
import math
from collections.abc import Callable
from pathlib import Path
from typing import Any, NamedTuple

import pytest

from main import main
from src.lambertw import lambert_w0

# (W(e/2) - 1)^2 / W(e/2), the radius at ab = 1
W_HALF_E = lambert_w0(math.e / 2)
UNIT_RADIUS = (W_HALF_E - 1.0) ** 2 / W_HALF_E


class CliResult(NamedTuple):
    code: int
    out: str
    err: str

    def json(self) -> Any:
        return json.loads(self.out)


@pytest.fixture
def unit_radius() -> float:
    return UNIT_RADIUS


@pytest.fixture
def write_file(tmp_path: Path) -> Callable[[str, str], str]:
    """Write `content` to tmp_path/name and return the path as a string."""

    def _write(name: str, content: str) -> str:
        path = tmp_path / name
        path.write_text(content, encoding="utf-8")
        return str(path)

    return _write


@pytest.fixture
def run_cli(capsys: pytest.CaptureFixture[str]) -> Callable[..., CliResult]:
    def _run(*argv: str) -> CliResult:
        code = main(list(argv))
        captured = capsys.readouterr()
        return CliResult(code, captured.out, captured.err)

    return _run


@pytest.fixture
def hard_sphere_json() -> str:
    return json.dumps({"dim": 3, "core_radius": 1.0, "tail": {"type": "none"}, "B": 0.0})


@pytest.fixture
def square_well_json() -> str:
    return json.dumps(
        {"dim": 3, "core_radius": 1.0, "tail": {"type": "square_well", "epsilon": 1.0, "lambda": 1.5}, "B": 1.0}
    )
