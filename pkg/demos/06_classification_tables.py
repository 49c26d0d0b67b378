"""Regenerating the low-dimensional classification tables.

Walks the two classification lists (algebras admitting Killing 2-forms up
to dimension 8, and Killing 3-forms up to dimension 6), computes the
dimension of the Killing space for every buildable entry, and compares with
the expected values.  Entries whose construction the literature leaves to
an external isomorphism list are marked skipped.
"""
from nilkilling import classification_lists, killing_dimensions

list2, list3 = classification_lists()
for degree, entries in ((2, list2), (3, list3)):
    print(f"\nalgebras with non-trivial Killing {degree}-forms:")
    for entry in entries:
        if not entry.buildable:
            print(f"  {entry.name:<14} dim {entry.dim}   "
                  "[skipped: external construction]")
            continue
        dims = killing_dimensions(entry.build())[:2]
        got = dims[degree - 2]
        want = entry.expected[degree - 2]
        flag = "ok" if got == want else "MISMATCH"
        print(f"  {entry.name:<14} dim {entry.dim}   "
              f"dim K{degree} = {got} (expected {want})  {flag}")
