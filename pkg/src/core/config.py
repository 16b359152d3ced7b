"""
YAML 配置读取：键名必须完全匹配，未知键直接报错（科学配置中的拼写错误要尽早暴露）
"""
from pathlib import Path
from typing import Any, Dict, Iterable, Mapping

import yaml

from core.errors import ConfigError


def load_yaml_mapping(path) -> Dict[str, Any]:
    """读取一个顶层为映射的 YAML 文件"""
    path = Path(path)
    if not path.exists():
        raise ConfigError(f"配置文件不存在: {path}")
    try:
        with open(path, "r", encoding="utf-8") as f:
            data = yaml.safe_load(f)
    except yaml.YAMLError as e:
        raise ConfigError(f"配置文件 {path} 解析失败: {e}") from e
    except OSError as e:
        raise ConfigError(f"无法读取配置文件 {path}: {e}") from e

    if not isinstance(data, dict):
        raise ConfigError(f"配置文件 {path} 顶层必须是键值映射")
    return data


def check_keys(section: str, data: Mapping[str, Any], required: Iterable[str], optional: Iterable[str] = ()):
    """校验键集合：缺少必需键或出现未知键都抛 ConfigError"""
    if not isinstance(data, Mapping):
        raise ConfigError(f"{section} 必须是键值映射，实际是 {type(data).__name__}")

    required = set(required)
    allowed = required | set(optional)
    unknown = sorted(set(data) - allowed)
    if unknown:
        raise ConfigError(f"{section} 中出现未知键: {', '.join(map(str, unknown))}")
    missing = sorted(required - set(data))
    if missing:
        raise ConfigError(f"{section} 缺少必需键: {', '.join(missing)}")
