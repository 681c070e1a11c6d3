from __future__ import annotations

from dataclasses import dataclass

from app.core.config import Settings
from app.services.exports.export_service import ExportService
from app.services.kernel.kernel_service import KernelService
from app.services.kernel.script_check_service import ScriptCheckService
from app.services.truth.derivations import TraceVerifier


@dataclass(slots=True)
class AppContainer:
    settings: Settings

    def create_script_check_service(self) -> ScriptCheckService:
        return ScriptCheckService(tolerance=self.settings.input_tolerance)

    def create_kernel_service(self) -> KernelService:
        return KernelService(
            checker=self.create_script_check_service(),
            verifier=TraceVerifier(),
            input_tolerance=self.settings.input_tolerance,
        )

    def create_export_service(self, *, json_output: bool) -> ExportService:
        return ExportService(json_output=json_output)
