"""Per-coset and total cluster counts for the doubly extended catalog."""

from __future__ import annotations

from tnw.tables import build_table


def main() -> None:
    for name in ("dbl-clusters", "dbl-codim", "dbl-groups"):
        t = build_table(name)
        print(f"== {name} ({t.mismatches} mismatches)")
        print(t.text())


if __name__ == "__main__":
    main()
