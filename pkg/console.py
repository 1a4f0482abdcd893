"""
Console logging for the command-line tools.

Library packages never print; the CLI and the suite runner report progress
through Logger. Logger.quiet silences everything, and colors are disabled
when NO_COLOR is set.
"""

import os


class Logger:
    """Simple structured logger for CI/CD-friendly output."""

    # ANSI color codes
    BLUE = '\033[94m'
    GREEN = '\033[92m'
    YELLOW = '\033[93m'
    RED = '\033[91m'
    CYAN = '\033[96m'
    BOLD = '\033[1m'
    RESET = '\033[0m'

    quiet = False
    color = 'NO_COLOR' not in os.environ

    @staticmethod
    def configure(quiet=False, color=None):
        Logger.quiet = quiet
        if color is not None:
            Logger.color = color

    @staticmethod
    def _c(code):
        return code if Logger.color else ''

    @staticmethod
    def _print(text):
        if not Logger.quiet:
            print(text)

    @staticmethod
    def _format(message, prefix='', color=''):
        """Format message with optional prefix and color."""
        if prefix:
            return f"{Logger._c(color)}{prefix}{Logger._c(Logger.RESET)} {message}"
        return f"{Logger._c(color)}{message}{Logger._c(Logger.RESET)}"

    @staticmethod
    def banner(title):
        bold, blue, reset = Logger._c(Logger.BOLD), Logger._c(Logger.BLUE), Logger._c(Logger.RESET)
        Logger._print(f"\n{bold}{blue}╔{'═' * 58}╗{reset}")
        Logger._print(f"{bold}{blue}║{reset}{bold}{title.center(58)}{reset}{bold}{blue}║{reset}")
        Logger._print(f"{bold}{blue}╚{'═' * 58}╝{reset}")

    @staticmethod
    def header(message):
        """Print a major section header."""
        bold, blue, reset = Logger._c(Logger.BOLD), Logger._c(Logger.BLUE), Logger._c(Logger.RESET)
        bar = '═' * 60
        Logger._print(f"\n{bold}{blue}{bar}{reset}")
        Logger._print(f"{bold}{blue}▶ {message}{reset}")
        Logger._print(f"{bold}{blue}{bar}{reset}")

    @staticmethod
    def section(message):
        """Print a subsection header."""
        Logger._print(f"\n{Logger._c(Logger.BOLD)}{Logger._c(Logger.CYAN)}┌─ {message}{Logger._c(Logger.RESET)}")

    @staticmethod
    def info(message, indent=False):
        prefix = '  │' if indent else '│'
        Logger._print(Logger._format(message, prefix, Logger.CYAN))

    @staticmethod
    def success(message, indent=False):
        prefix = '  ✓' if indent else '✓'
        Logger._print(Logger._format(message, prefix, Logger.GREEN))

    @staticmethod
    def warn(message, indent=False):
        prefix = '  !' if indent else '!'
        Logger._print(Logger._format(message, prefix, Logger.YELLOW))

    @staticmethod
    def error(message, indent=False):
        prefix = '  ✗' if indent else '✗'
        Logger._print(Logger._format(message, prefix, Logger.RED))

    @staticmethod
    def detail(key, value, indent=False):
        """Print a key-value detail."""
        prefix = '  │' if indent else '│'
        cyan, bold, reset = Logger._c(Logger.CYAN), Logger._c(Logger.BOLD), Logger._c(Logger.RESET)
        Logger._print(f"{cyan}{prefix} {bold}{key}:{reset} {value}")

    @staticmethod
    def summary(items_dict):
        """Print a summary box with key metrics."""
        bold, cyan, green, reset = (Logger._c(c) for c in (Logger.BOLD, Logger.CYAN, Logger.GREEN, Logger.RESET))
        Logger._print(f"{bold}{cyan}└─ Summary{reset}")
        for key, value in items_dict.items():
            Logger._print(f"  {bold}{key}:{reset} {green}{value}{reset}")

    @staticmethod
    def table(lines):
        for line in lines:
            Logger._print(line)
