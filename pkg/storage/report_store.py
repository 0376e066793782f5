from typing import Any, Dict, List, Optional
import csv
import json
import logging
import os

from exceptions import StorageError
from models.report import RunReport
from utils import format_float, to_jsonable

logger = logging.getLogger(__name__)

REPORT_FILE = "report.json"
METADATA_FILE = "metadata.json"
TABLES_DIR = "tables"
PLOTS_DIR = "plots"


class ReportStore:
    """
    <out>/<senaryo>/ altındaki rapor dizini.

    report.json yalnızca veriden üretilir (duvar saati yok); süreler
    metadata.json dosyasına yazılır.
    """

    def __init__(self, root: str, scenario: Optional[str] = None):
        self.directory = os.path.join(root, scenario) if scenario else root

    @property
    def tables_dir(self) -> str:
        return os.path.join(self.directory, TABLES_DIR)

    @property
    def plots_dir(self) -> str:
        return os.path.join(self.directory, PLOTS_DIR)

    def _ensure(self, path: str) -> None:
        try:
            os.makedirs(path, exist_ok=True)
        except OSError as e:
            raise StorageError(f"Dizin oluşturulamadı: {str(e)}")

    def _write_json(self, name: str, data: Dict[str, Any]) -> str:
        path = os.path.join(self.directory, name)
        try:
            with open(path, "w", encoding="utf-8") as fh:
                json.dump(to_jsonable(data), fh, indent=2, ensure_ascii=False)
                fh.write("\n")
        except (OSError, TypeError) as e:
            raise StorageError(f"{name} yazılamadı: {str(e)}")
        return path

    def write_table(self, name: str, columns: List[str], rows: List[Dict[str, Any]]) -> str:
        self._ensure(self.tables_dir)
        path = os.path.join(self.tables_dir, f"{name}.csv")
        try:
            with open(path, "w", encoding="utf-8", newline="") as fh:
                writer = csv.writer(fh, lineterminator="\n")
                writer.writerow(columns)
                for row in rows:
                    writer.writerow([self._cell(row.get(column)) for column in columns])
        except OSError as e:
            raise StorageError(f"{name}.csv yazılamadı: {str(e)}")
        return path

    @staticmethod
    def _cell(value: Any) -> str:
        if value is None or isinstance(value, str):
            return value or ""
        return format_float(value)

    def save(self, report: RunReport, tables: Dict[str, dict],
             metadata: Optional[Dict[str, Any]] = None) -> str:
        self._ensure(self.directory)
        self._write_json(REPORT_FILE, report.model_dump(exclude={"timings"}))
        self._write_json(METADATA_FILE, dict(metadata or {}, timings=report.timings))
        for name in sorted(tables):
            self.write_table(name, tables[name]["columns"], tables[name]["rows"])
        logger.info("Rapor yazıldı: %s (%d tablo)", self.directory, len(tables))
        return self.directory

    def load_report(self) -> Dict[str, Any]:
        path = os.path.join(self.directory, REPORT_FILE)
        try:
            with open(path, encoding="utf-8") as fh:
                return json.load(fh)
        except (OSError, json.JSONDecodeError) as e:
            raise StorageError(f"Rapor okunamadı: {str(e)}")

    def list_tables(self) -> List[str]:
        if not os.path.isdir(self.tables_dir):
            return []
        return sorted(name[:-4] for name in os.listdir(self.tables_dir) if name.endswith(".csv"))

    def load_table(self, name: str) -> List[Dict[str, Optional[float]]]:
        """CSV tablosunu okur; sayısal sütunlar float, boş hücreler None olur."""
        path = os.path.join(self.tables_dir, f"{name}.csv")
        try:
            with open(path, encoding="utf-8", newline="") as fh:
                return [{key: self._parse(value) for key, value in row.items()}
                        for row in csv.DictReader(fh)]
        except OSError as e:
            raise StorageError(f"{name}.csv okunamadı: {str(e)}")

    @staticmethod
    def _parse(value: str):
        if value == "":
            return None
        try:
            return float(value)
        except ValueError:
            return value
