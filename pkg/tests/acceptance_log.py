"""Collects one line per acceptance criterion for the terminal summary."""

LINES: dict[int, str] = {}


def record(n: int, title: str, ok: bool, detail: str) -> None:
    line = f"[{'PASS' if ok else 'FAIL'}] criterion {n:2d}: {title}: {detail}"
    LINES[n] = line
    print(line)
