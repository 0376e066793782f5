from typing import Optional


class HarnessError(Exception):
    """Tüm harness hatalarının tabanı; exit_code CLI çıkış kodudur."""

    exit_code = 1

    def __init__(self, detail: str):
        super().__init__(detail)
        self.detail = detail


class ConfigError(HarnessError):
    exit_code = 2

    def __init__(self, detail: str = "Senaryo dosyası geçersiz"):
        super().__init__(detail)


class GeometryError(HarnessError):
    def __init__(self, detail: str = "Geometri parametreleri geçersiz"):
        super().__init__(detail)


class GridMismatchError(GeometryError):
    def __init__(self, detail: str = "Alan ile geometri farklı ızgaralarda"):
        super().__init__(detail)


class PoleRegularityError(GeometryError):
    def __init__(self, detail: str = "Konformal faktör kutuplarda düzenli değil"):
        super().__init__(detail)


class UnsupportedOperationError(HarnessError):
    def __init__(self, detail: str = "Bu işlem seçilen arka uç için desteklenmiyor"):
        super().__init__(detail)


class EmptyRegionError(HarnessError):
    def __init__(self, detail: str = "Bölge hiçbir düğüm içermiyor"):
        super().__init__(detail)


class RicciFlowBlowUpError(HarnessError):
    def __init__(self, time: float, detail: Optional[str] = None):
        super().__init__(detail or f"Ricci akışı t={time!r} anında sonlu olmaktan çıktı")
        self.time = time


class PositivityLossError(HarnessError):
    def __init__(self, node: int, time: float, value: float):
        super().__init__(
            f"Pozitiflik kaybı: düğüm {node}, t={time!r}, u={value!r}"
        )
        self.node = node
        self.time = time
        self.value = value


class LinearSolveError(HarnessError):
    def __init__(self, detail: str = "Doğrusal sistem çözülemedi"):
        super().__init__(detail)


class NormalizationError(HarnessError):
    def __init__(self, detail: str = "Toplam kütle 1 değil"):
        super().__init__(detail)


class RefinementError(HarnessError):
    def __init__(self, detail: str = "Çözünürlükler iç içe geçmiyor"):
        super().__init__(detail)


class CheckError(HarnessError):
    def __init__(self, detail: str = "Kontrol çalıştırılamadı"):
        super().__init__(detail)


class StorageError(HarnessError):
    def __init__(self, detail: str = "Rapor dosyaları yazılamadı"):
        super().__init__(detail)
