from decouple import config

# Ortam değişkenleri (.env dosyası main.py içinde yüklenir)
OUTPUT_DIR = config("RICCI_HARNESS_OUT", default="reports")
THREADS = config("RICCI_HARNESS_THREADS", default=1, cast=int)
LOG_LEVEL = config("RICCI_HARNESS_LOG_LEVEL", default="INFO")

# Güven maskesi eşiği ve A şişirme katsayısı
TRUST_THRESHOLD = config("RICCI_HARNESS_TRUST_THRESHOLD", default=1e-12, cast=float)
AMPLITUDE_INFLATION = 1.01
CURVATURE_SAFETY_FACTOR = 1.05
