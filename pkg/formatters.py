"""Formatting helpers for text reports."""

from algebra import series_str
from grading import parity


def fmt_degree(d) -> str:
    return f"{d} {parity(d).value}"


def fmt_chain(chain) -> list[str]:
    lines = [f"Z_2^{chain.n}: q = {chain.q}, {chain.even_count()} even / "
             f"{len(chain) - chain.even_count()} odd"]
    for i, d in enumerate(chain):
        lines.append(f"  γ{i} = {fmt_degree(d)}")
    return lines


def fmt_series(f) -> str:
    return series_str(f)


def fmt_matrix(a, indent: str = "  ") -> list[str]:
    """One line per row, '|' between column blocks, a rule between row blocks."""
    cells = [[fmt_series(e) for e in row] for row in a.entries]
    width = max((len(c) for row in cells for c in row), default=1)
    col_breaks = set(a.col_dims.offsets[1:])
    row_breaks = set(a.row_dims.offsets[1:])
    lines = []
    for r, row in enumerate(cells):
        if r in row_breaks and r:
            lines.append(indent + "-" * min(120, (width + 3) * len(row)))
        parts = []
        for c, text in enumerate(row):
            if c in col_breaks and c:
                parts.append("|")
            parts.append(text.rjust(width))
        lines.append(indent + " ".join(parts))
    return lines


def fmt_status(passed: bool, skipped: bool = False) -> str:
    if skipped:
        return "SKIP"
    return "PASS" if passed else "FAIL"


def fmt_case_key(key) -> str:
    if isinstance(key, list):
        if key and all(isinstance(p, list) and all(isinstance(x, int) for x in p) for p in key):
            return "/".join(",".join(map(str, p)) or "-" for p in key)
        return " ".join(fmt_case_key(k) for k in key)
    return str(key)


def fmt_report(report) -> list[str]:
    header = " ".join(f"{k}={v}" for k, v in report.params.items() if v is not None)
    lines = [f"suite {report.suite}  {header}"]
    for case in report.cases:
        line = f"  [{fmt_status(case.passed, case.skipped)}] {fmt_case_key(case.key)}"
        if case.error:
            line += f"  error: {case.error}"
        elif not case.passed:
            residual = case.detail.get("residual", "")
            line += f"  at {case.generator}: residual {residual}"
        lines.append(line)
    lines.append(f"{'PASS' if report.passed else 'FAIL'}: {report.summary()}")
    return lines
