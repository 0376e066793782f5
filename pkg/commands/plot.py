from typing import Dict, List
import logging
import os

from exceptions import HarnessError, StorageError
from storage import ReportStore

logger = logging.getLogger(__name__)

# tablo adı → (x sütunu, y sütunları)
ENTROPY_AXES = ("t", ["W", "dW_dt", "production"])
BOUND_AXES = ("t", ["sup", "bound"])
ORDER_AXES = ("spacing", ["error"])


def _axes(name: str):
    if name.endswith("entropy"):
        return ENTROPY_AXES
    if name == "orders":
        return ORDER_AXES
    return BOUND_AXES


def _series(rows: List[dict], groups: List[str]) -> Dict[str, List[dict]]:
    grouped: Dict[str, List[dict]] = {}
    for row in rows:
        label = "/".join(str(row.get(group) or "-") for group in groups)
        grouped.setdefault(label, []).append(row)
    return grouped


def plot_tables(report_dir: str) -> List[str]:
    """
    Rapor dizinindeki her CSV tablosu için bir PNG çizer.

    Raises:
        StorageError: dizinde tablo yoksa
        HarnessError: matplotlib kurulu değilse
    """
    try:
        import matplotlib
        matplotlib.use("Agg")
        import matplotlib.pyplot as plt
    except ImportError as e:
        raise HarnessError(f"plot için matplotlib gerekli: {str(e)}")

    store = ReportStore(report_dir)
    names = store.list_tables()
    if not names:
        raise StorageError(f"{report_dir} altında tablo bulunamadı")
    os.makedirs(store.plots_dir, exist_ok=True)
    written = []
    for name in names:
        rows = store.load_table(name)
        x_key, y_keys = _axes(name)
        groups = ["check", "quantity"] if name == "orders" else ["quantity"]
        fig, ax = plt.subplots(figsize=(7, 4.5))
        for label, series in sorted(_series(rows, groups).items()):
            for y_key in y_keys:
                points = [(row[x_key], row[y_key]) for row in series
                          if isinstance(row.get(x_key), float) and isinstance(row.get(y_key), float)]
                if not points:
                    continue
                xs, ys = zip(*sorted(points))
                ax.plot(xs, ys, marker=".", label=f"{label} {y_key}" if len(y_keys) > 1 else label)
        if name == "orders":
            ax.set_xscale("log")
            ax.set_yscale("log")
        ax.set_xlabel(x_key)
        ax.set_title(name)
        if ax.get_legend_handles_labels()[0]:
            ax.legend(fontsize="small")
        path = os.path.join(store.plots_dir, f"{name}.png")
        fig.savefig(path, dpi=120, bbox_inches="tight")
        plt.close(fig)
        written.append(path)
    logger.info("%d grafik yazıldı: %s", len(written), store.plots_dir)
    return written
