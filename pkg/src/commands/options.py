from ..errors import ValidationError
from ..export import csv_text, plain, to_json, write_output
from ..numerics import MultiIndex
from ..utils import info

# help functions shared by the subcommands


def multi_index(text, m=None):
    """Parses a comma-separated flag, broadcasting a single value to `m` entries."""
    return MultiIndex.parse(text, m)


def criteria_count(args):
    """Number of criteria implied by the --n flag (or --m when broadcasting)."""
    return args.m if getattr(args, "m", None) else len(multi_index(args.n))


def int_range(text):
    """
    Parses "a:b" (inclusive), "a:b:step" or a comma-separated list into ints.
    """
    text = str(text).strip()
    try:
        if ":" in text:
            parts = [int(p) for p in text.split(":")]
            if len(parts) not in (2, 3):
                raise ValueError
            start, stop = parts[0], parts[1]
            step = parts[2] if len(parts) == 3 else 1
            if step < 1 or stop < start:
                raise ValueError
            return list(range(start, stop + 1, step))
        return [int(p) for p in text.split(",") if p.strip()]
    except ValueError as err:
        raise ValidationError(f"not an integer range: {text!r}") from err


def add_output(parser, formats=("json",), default=None):
    """Adds --out (and --format when more than one format applies)."""
    parser.add_argument(
        "--out", "-o", default=None,
        help="Write to this file instead of stdout (relative to $SCENARIORISK_OUTPUT_DIR when set)",
    )
    if len(formats) > 1:
        parser.add_argument(
            "--format", "-f", choices=formats, default=default or formats[0], help="Output format"
        )


def emit_json(args, payload):
    path = write_output(to_json(payload), args.out)
    path and info(f"written: {path}")


def emit_table(args, header, rows):
    """Writes rows as CSV, or as a JSON list of records with --format json."""
    rows = [list(r) for r in rows]
    if getattr(args, "format", "csv") == "json":
        text = to_json([plain(dict(zip(header, r))) for r in rows])
    else:
        text = csv_text(header, rows)
    path = write_output(text, args.out)
    path and info(f"written: {path}")
