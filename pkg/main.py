import argparse
import logging
import signal
import sys

from dotenv import load_dotenv

# .env dosyasını ayarlardan önce yükle
load_dotenv()

import settings  # noqa: E402
from commands import list_checks, plot_tables, run_scenario, run_study  # noqa: E402
from error_handler import handle_exception  # noqa: E402

logger = logging.getLogger("ricci_harness")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ricci-harness",
        description="Ricci akışı boyunca eşlenik ısı denklemi için sayısal doğrulama düzeneği",
    )
    parser.add_argument("--log-level", default=settings.LOG_LEVEL,
                        help="DEBUG, INFO, WARNING ya da ERROR")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_run_flags(p):
        p.add_argument("config", help="senaryo dosyası (JSON)")
        p.add_argument("--out", default=None, help="rapor kök dizini")
        p.add_argument("--strict-normalization", action="store_true",
                       help="son veriyi ölçekleme; ∫u dg ≠ 1 ise hata ver")
        p.add_argument("--threads", type=int, default=None, help="paralel çalışma yuvası sayısı")

    add_run_flags(sub.add_parser("run", help="senaryoyu çalıştır"))
    study = sub.add_parser("study", help="iç içe inceltme çalışması")
    add_run_flags(study)
    study.add_argument("--levels", type=int, default=None, help="seviye sayısı (en az 3)")
    plot = sub.add_parser("plot", help="rapor tablolarından grafik üret")
    plot.add_argument("report_dir")
    sub.add_parser("list-checks", help="kayıtlı kontrolleri listele")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=args.log_level.upper(),
                        format="%(asctime)s %(levelname)s %(name)s: %(message)s")
    try:
        if args.command == "run":
            return run_scenario(args.config, args.out, args.strict_normalization, args.threads)
        if args.command == "study":
            return run_study(args.config, args.levels, args.out, args.strict_normalization,
                             args.threads)
        if args.command == "plot":
            for path in plot_tables(args.report_dir):
                print(path)
            return 0
        for spec in list_checks():
            target = "-" if spec.target_order is None else f"{spec.target_order:g}"
            print(f"{spec.name:<20} mertebe {target:<4} {', '.join(spec.backends)}")
            print(f"{'':<20} {spec.description}")
        return 0
    except Exception as e:
        payload = handle_exception(e)
        logger.error(payload["message"])
        return payload["exit_code"]


# Sinyal gelince temiz çıkış
def signal_handler(sig, frame):
    logger.warning("Kesildi, çıkılıyor...")
    sys.exit(130)


signal.signal(signal.SIGINT, signal_handler)
signal.signal(signal.SIGTERM, signal_handler)

if __name__ == "__main__":
    sys.exit(main())
