from __future__ import annotations

import math
from collections.abc import Callable
from pathlib import Path

import pytest

from app.core.config import Settings
from app.core.container import AppContainer
from app.services.kernel.kernel_service import KernelService
from app.services.semantics.amplitudes import Basis, QubitState

GOLDEN_DIR = Path(__file__).parent / "golden"

SUPERPOSITION_SCRIPT = """\
# two graded assertions and their superposition
basis: p0 p1
a: |-[0.6] p0
b: |-[0.8i] p1
c: |- (p0 [0.6, 0.8i]& p1)
"""


@pytest.fixture
def settings() -> Settings:
    return Settings()


@pytest.fixture
def container(settings: Settings) -> AppContainer:
    return AppContainer(settings=settings)


@pytest.fixture
def kernel(container: AppContainer) -> KernelService:
    return container.create_kernel_service()


@pytest.fixture
def write_script(tmp_path: Path) -> Callable[[str], Path]:
    counter = 0

    def write(text: str) -> Path:
        nonlocal counter
        counter += 1
        path = tmp_path / f"script_{counter}.qm"
        path.write_text(text, encoding="utf-8")
        return path

    return write


@pytest.fixture
def biased_state() -> QubitState:
    return QubitState(Basis(("p0", "p1")), (complex(math.sqrt(0.3), 0.0), complex(math.sqrt(0.7), 0.0)))


@pytest.fixture
def golden() -> Callable[[str], str]:
    def read(name: str) -> str:
        return (GOLDEN_DIR / name).read_text(encoding="utf-8")

    return read


@pytest.fixture
def superposition_script(write_script: Callable[[str], Path]) -> Path:
    return write_script(SUPERPOSITION_SCRIPT)
