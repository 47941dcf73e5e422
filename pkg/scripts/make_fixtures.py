#!/usr/bin/env python3
"""Regenerate the committed fixture corpus under tests/fixtures/.

Covers the named constructions at reference sizes, the covering-number-
dropping shift witness, and the maximizing classes of the two-cover
pairing score, so regressions in any of those show up as fixture diffs.
"""
import json
from pathlib import Path

from kfam.constructions import c3, t2
from kfam.covers import covering_number
from kfam.fileio import write_family_file
from kfam.search import find_tau_dropping_shift, lemmin_oracle
from kfam.shifting import shift_family

OUT = Path(__file__).resolve().parent.parent / "tests" / "fixtures"


def main() -> None:
    OUT.mkdir(parents=True, exist_ok=True)
    (OUT / "lemmin_argmax").mkdir(exist_ok=True)

    for k in (3, 4, 5, 6):
        write_family_file(t2(k), OUT / f"t2_k{k}.fam")
    for n, k in [(7, 3), (9, 4), (10, 4), (12, 5)]:
        write_family_file(c3(n, k), OUT / f"c3_n{n}_k{k}.fam")

    hit = find_tau_dropping_shift(7, 3)
    assert hit is not None, "expected a covering-number-dropping shift at n=7, k=3"
    fam, i, j = hit
    payload = {
        "n": fam.n,
        "members": [list(t) for t in fam.sets()],
        "i": i,
        "j": j,
        "tau_before": covering_number(fam).tau,
        "tau_after": covering_number(shift_family(fam, i, j)).tau,
    }
    (OUT / "shift_drop_witness.json").write_text(json.dumps(payload, indent=2) + "\n")

    for s, k in [(3, 4), (3, 5), (4, 4), (4, 5)]:
        for m in range(k + s, k + s + 3):
            best, classes = lemmin_oracle(m, s, k)
            assert len(classes) == 1
            write_family_file(classes[0], OUT / "lemmin_argmax" / f"free_m{m}_s{s}_k{k}.fam")
    for m in (8, 9, 10):
        best, classes = lemmin_oracle(m, 4, 4, intersecting_only=True)
        assert len(classes) == 1
        write_family_file(classes[0], OUT / "lemmin_argmax" / f"intersecting_m{m}_s4_k4.fam")

    print(f"fixtures written under {OUT}")


if __name__ == "__main__":
    main()
