"""Collects one status line per acceptance criterion for the terminal summary."""

LINES: list[str] = []


def record(n: int, ok: bool, seconds: float, detail: str) -> None:
    line = f"criterion {n}: {'PASS' if ok else 'FAIL'} ({seconds:.2f}s) {detail}"
    LINES.append(line)
    print(line)
