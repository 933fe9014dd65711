"""
Configuration settings for the bandwidth coloring solver
"""
import os
from pathlib import Path
from dotenv import load_dotenv

load_dotenv()

# Base paths
BASE_DIR = Path(__file__).resolve().parent.parent
STORAGE_DIR = os.getenv("STORAGE_DIR", os.path.join(BASE_DIR, "storage"))
CACHE_DIR = os.getenv("CACHE_DIR", os.path.join(STORAGE_DIR, "cache"))

# Search parameters
KMIN = int(os.getenv("KMIN", "2"))
KMAX = int(os.getenv("KMAX", "20"))
PMOVE = float(os.getenv("PMOVE", "0.5"))
CRITERIA = os.getenv("CRITERIA", "111")
GREEDY_ORDER = os.getenv("GREEDY_ORDER", "id")
TIME_LIMIT = float(os.getenv("TIME_LIMIT", "60"))  # seconds per run
LOOP_DEFAULT = int(os.getenv("LOOP_DEFAULT", "1"))

# Benchmark protocol
RUNS = int(os.getenv("RUNS", "30"))
BASE_SEED = int(os.getenv("BASE_SEED", "1"))
ORACLE_MAX_VERTICES = int(os.getenv("ORACLE_MAX_VERTICES", "10"))

# Performance Settings
MAX_CONCURRENT = int(os.getenv("MAX_CONCURRENT", "3"))
CACHE_ENABLED = os.getenv("CACHE_ENABLED", "true").lower() == "true"
CACHE_TTL = int(os.getenv("CACHE_TTL", str(30 * 86400)))  # 30 days (in seconds)

LOG_LEVEL = os.getenv("LOG_LEVEL", "INFO")
