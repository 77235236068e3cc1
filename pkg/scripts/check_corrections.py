"""Rerun the check behind every entry of the formula-corrections file."""

from sopq.corrections import load_corrections, stated_form_failure


def main() -> None:
    for c in load_corrections():
        f = stated_form_failure(c["id"])
        status = "confirmed" if f is not None and f.check == c["failed_check"] else "NOT CONFIRMED"
        print(f"{c['id']}: {status}")
        print(f"  stated: {c['stated']}")
        print(f"  used:   {c['used']}")
        print(f"  check:  {f}")


if __name__ == "__main__":
    main()
