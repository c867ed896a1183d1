"""
actkit 中心配置文件 (Central Configuration)
包含所有环境变量读取、默认边界 (bound)、缓存目录与自检 (selftest) 参数。
"""

import logging
import os

from dotenv import load_dotenv

load_dotenv()
logger = logging.getLogger(__name__)


def _int_env(name: str, default: int) -> int:
    raw = os.getenv(name, "")
    if not raw.strip():
        return default
    try:
        return int(raw)
    except ValueError:
        logger.warning("[CONFIG] %s=%r is not an integer, using %s", name, raw, default)
        return default


# --- Search Bounds (搜索边界) ---
# --------------------------------
# 默认 universe 大小上限 (Default carrier-size bound for bounded quantifiers)
DEFAULT_BOUND = _int_env("ACTKIT_DEFAULT_BOUND", 3)

# 默认随机种子 (Seed for randomized sweeps such as congruence quotients)
DEFAULT_SEED = _int_env("ACTKIT_SEED", 0)

# --- Cache (缓存) ---
# --------------------
# Universe 缓存目录；为空则只使用进程内缓存
CACHE_DIR = os.getenv("ACTKIT_CACHE_DIR", "")

# --- Selftest (自检参数) ---
# --------------------------
MAX_WORKERS = max(1, _int_env("ACTKIT_MAX_WORKERS", 4))
QUOTIENT_SAMPLES = max(0, _int_env("ACTKIT_QUOTIENT_SAMPLES", 50))
MAX_MONOID_ORDER = max(1, _int_env("ACTKIT_MAX_MONOID_ORDER", 3))
MAX_INDEC_SIZE = max(1, _int_env("ACTKIT_MAX_INDEC_SIZE", 4))

COMMANDS = ("validate", "classify", "star", "morita", "cellular", "universe", "selftest")

PROPERTIES = (
    "delta-reflexive",
    "eta-reflexive",
    "a-generated",
    "a-cogenerated",
    "colocal",
    "local",
    "indecomposable",
    "weak-self-projective",
    "pullback-flat",
    "wstarob",
    "starob",
    "tensor-fully-faithful",
    "sisc",
)

# 需要至少一个元素的扫描 (Sweeps that need bound >= 1)
EPI_SWEEPS = ("weak-self-projective", "pullback-flat")


def validate_config(command: str, bound: int, prop: str | None = None) -> tuple[bool, list[str]]:
    """
    验证运行时配置 (Validate Runtime Config).

    Args:
        command: CLI 子命令 (one of COMMANDS)
        bound: universe 边界
        prop: classify 的 --property (optional)

    Returns:
        (bool, list[str]): 验证是否通过, 以及错误信息列表
    """
    errors: list[str] = []

    if command not in COMMANDS:
        errors.append(f"Unknown command '{command}' (expected one of {', '.join(COMMANDS)})")

    if bound < 0:
        errors.append(f"--bound must be >= 0, got {bound}")
    elif bound < 1 and (command == "star" or (command == "classify" and prop in EPI_SWEEPS)):
        errors.append(f"--bound must be >= 1 for {prop or command}, got {bound}")

    if CACHE_DIR:
        if os.path.exists(CACHE_DIR) and not os.path.isdir(CACHE_DIR):
            errors.append(f"ACTKIT_CACHE_DIR is not a directory: {CACHE_DIR}")
        elif os.path.isdir(CACHE_DIR) and not os.access(CACHE_DIR, os.W_OK):
            errors.append(f"ACTKIT_CACHE_DIR is not writable: {CACHE_DIR}")

    logger.debug(
        "[CONFIG] command=%s bound=%s cache_dir=%s workers=%s",
        command,
        bound,
        CACHE_DIR or "-",
        MAX_WORKERS,
    )
    return (len(errors) == 0, errors)
