import inspect
import os
import sys
import traceback
from typing import Any, Dict

from rich.console import Console
from rich.panel import Panel
from rich.rule import Rule
from rich.style import Style
from rich.table import Table
from rich.text import Text

# Add the project root to the Python path
sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), '..')))

from vankampen import Event

# --- Define a Theme for Consistency ---
STYLES = {
    "laws": Style(color="magenta", bold=True),
    "xmod": Style(color="cyan", bold=True),
    "other": Style(color="green", bold=True),
    "violation": Style(color="yellow"),
    "error": Style(color="red", bold=True),
    "result": Style(color="default", bold=True),
}


def print_event(event: Event, console: Console):
    """
    Renders a suite event to the console.

    Args:
        event (Event): The event object to print.
        console (Console): The rich Console instance to use for printing.
    """
    source_name = event.subject
    if event.source.startswith("Laws"):
        base_style = STYLES["laws"]
    elif event.source.startswith("XMod") or event.source.startswith("CrossedComplex"):
        base_style = STYLES["xmod"]
    else:
        base_style = STYLES["other"]

    if event.type == "start":
        table = Table.grid(padding=(0, 1))
        table.add_column(style="bold")
        table.add_column()
        for key, value in event.payload.items():
            table.add_row(f"{key}:", str(value))
        console.print(Panel(table, title=f"[bold]{source_name} started[/]", border_style=base_style, expand=False))
    elif event.type == "progress":
        console.print(Text(', '.join(f"{k}={v}" for k, v in event.payload.items()), style=base_style))
    elif event.type == "violation":
        console.print(Text(f"{event.payload.get('law')}: {event.payload.get('witness')}", style=STYLES["violation"]))
    elif event.type == "end":
        result = event.payload.get("result")
        console.print(Panel(Text(str(getattr(result, 'to_dict', lambda: result)())), title=f"{source_name} finished",
                            border_style=STYLES["result"]))
    elif event.type == "error":
        console.print(Panel(Text(event.payload.get("message", "An unknown error occurred.")),
                            title=f"ERROR in {source_name}", border_style=STYLES["error"]))
    else:
        console.rule(f"Unknown Event: {event.type}", style="red")
        console.print(event.payload)


def run_tests(namespace: Dict[str, Any]) -> int:
    """
    Runs every `test_*` function of a test module without pytest, printing a
    rule per test. Tests that need pytest fixtures are skipped.

    Returns:
        int: The number of failed tests.
    """
    console = Console()
    failed = 0
    for name, func in list(namespace.items()):
        if not name.startswith('test_') or not callable(func):
            continue
        if getattr(func, 'hypothesis', None) is None and inspect.signature(func).parameters:
            console.print(Rule(f"{name} (skipped: needs fixtures)", style="grey50"))
            continue
        console.print(Rule(name, style="cyan"))
        try:
            func()
            console.print(Text("passed", style="green"))
        except Exception:
            failed += 1
            console.print(Text(traceback.format_exc(), style="red"))
    console.print(Rule(f"{failed} failed", style="red" if failed else "green"))
    return failed
