"""
终端状态输出（彩色 + emoji），统一写到 stderr，stdout 只留给数据
"""
import sys

from colorama import Fore, Style, init as colorama_init

colorama_init()

_quiet = False


def set_quiet(quiet: bool):
    global _quiet
    _quiet = quiet


def _emit(color: str, icon: str, message: str):
    if _quiet:
        return
    print(f"{color}{icon} {message}{Style.RESET_ALL}", file=sys.stderr)


def info(message: str):
    _emit(Fore.CYAN, "🔍", message)


def success(message: str):
    _emit(Fore.GREEN, "✅", message)


def warn(message: str):
    _emit(Fore.YELLOW, "⚠️ ", message)


def error(message: str):
    # 错误信息即使在 quiet 模式下也要输出
    print(f"{Fore.RED}❌ {message}{Style.RESET_ALL}", file=sys.stderr)


def header(text: str):
    if _quiet:
        return
    print("\n" + "=" * 50, file=sys.stderr)
    print(f"{Style.BRIGHT}📌 {text}{Style.RESET_ALL}", file=sys.stderr)
    print("=" * 50, file=sys.stderr)
