import os
from dotenv import load_dotenv

load_dotenv()

DEFAULT_SEED = 20240601
DEFAULT_DIAGNOSTIC_LIMIT = 24
DEFAULT_WORKERS = 1


def _read_int(name: str, default: int, minimum: int = 0) -> int:
    """读取整数型环境变量，未设置时返回默认值"""
    raw = os.getenv(name)
    if raw is None or raw.strip() == "":
        return default
    try:
        value = int(raw)
    except ValueError:
        raise ValueError(f"环境变量 {name} 必须是整数，当前值: {raw!r}")
    if value < minimum:
        raise ValueError(f"环境变量 {name} 不能小于 {minimum}，当前值: {value}")
    return value


def get_output_dir() -> str:
    """默认输出目录（CYCLO_OUTPUT_DIR），未设置时为当前目录"""
    return os.getenv("CYCLO_OUTPUT_DIR", "").strip() or os.getcwd()


def get_default_seed() -> int:
    """扩域随机元素抽取使用的默认种子"""
    return _read_int("CYCLO_SEED", DEFAULT_SEED)


def get_diagnostic_limit() -> int:
    """根诊断允许的最大扩域次数"""
    return _read_int("CYCLO_DIAGNOSTIC_LIMIT", DEFAULT_DIAGNOSTIC_LIMIT, minimum=1)


def get_default_workers() -> int:
    """survey 默认并行进程数"""
    return _read_int("CYCLO_WORKERS", DEFAULT_WORKERS, minimum=1)


def resolve_output_path(path: str) -> str:
    """
    解析输出文件路径

    只给出文件名时放到默认输出目录下；带目录或绝对路径时原样返回。

    Args:
        path: 命令行给出的输出路径

    Returns:
        str: 实际写入的路径
    """
    if os.path.isabs(path) or os.path.dirname(path):
        return path
    return os.path.join(get_output_dir(), path)
