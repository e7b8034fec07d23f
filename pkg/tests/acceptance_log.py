"""Collects one verdict line per acceptance criterion for the terminal summary."""

LINES: list[str] = []


def record(number: int, title: str, ok: bool, detail: str = "") -> None:
    status = "PASS" if ok else "FAIL"
    line = f"[{status}] criterion {number:2d}: {title}"
    if detail:
        line += f" ({detail})"
    LINES.append(line)
    print(line)
