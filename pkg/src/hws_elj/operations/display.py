"""Table emission shared by all commands.

Machine output is CSV written byte-for-byte through ``typer.echo`` or to the
``--out`` file. ``--format text`` renders the same rows as a Rich table for
people reading a terminal.
"""

from collections.abc import Sequence
from pathlib import Path

import pandas as pd
import typer
from rich.markup import escape
from rich.table import Table

from ..console import get_console
from ..constants import OutputFormat, format_float

console = get_console()
err_console = get_console(stderr=True)


def fmt(value: float | None) -> str:
    """Round-trip float text, or an empty cell for missing values."""
    return "" if value is None else format_float(value)


def render_csv(columns: Sequence[str], rows: Sequence[Sequence[str]]) -> str:
    """CSV text with a header line and ``\\n`` line endings."""
    frame = pd.DataFrame(list(rows), columns=list(columns), dtype=str)
    return str(frame.to_csv(index=False, lineterminator="\n"))


def emit_table(
    columns: Sequence[str],
    rows: Sequence[Sequence[str]],
    out: Path | None = None,
    output_format: OutputFormat = OutputFormat.CSV,
    title: str | None = None,
) -> None:
    """Write pre-formatted rows as CSV (stdout or ``out``) or as a Rich table.

    Args:
        columns: Header names
        rows: Cells, already formatted as strings
        out: File to write instead of standard output (CSV only)
        output_format: csv or text
        title: Table title for text output
    """
    if output_format == OutputFormat.TEXT and out is None:
        table = Table(title=title, show_lines=False)
        for column in columns:
            table.add_column(column, justify="right")
        for row in rows:
            table.add_row(*row)
        console.print(table)
        return

    text = render_csv(columns, rows)
    if out is not None:
        out.write_text(text, encoding="utf-8")
        err_console.print(f"[dim]Wrote {len(rows)} row(s) to {out}[/dim]")
    else:
        typer.echo(text, nl=False)


def emit_report(
    fields: Sequence[tuple[str, str]],
    out: Path | None = None,
    output_format: OutputFormat = OutputFormat.CSV,
    title: str | None = None,
) -> None:
    """Key/value report as a two-column ``quantity,value`` table."""
    emit_table(("quantity", "value"), list(fields), out, output_format, title)


def warn(message: str) -> None:
    """Non-fatal notice on standard error."""
    err_console.print(f"[yellow]Warning:[/yellow] {escape(message)}", highlight=False)
