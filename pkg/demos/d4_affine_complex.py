"""Enumerate the special-framed exchange graph of D~_4 and compare face counts
with the facet recursion."""

from __future__ import annotations

from tnw.counting import affine_piece, face_table, face_totals
from tnw.explorer import enumerate_exchange, face_counts
from tnw.families import affine_signature, build_special_framing


def main() -> None:
    sig = affine_signature("D", 4)
    ec = enumerate_exchange(build_special_framing(sig))
    enumerated = face_counts(ec)
    totals = face_totals(face_table(affine_piece(sig)))
    rank = len(totals) - 1
    print(f"{ec.vertex_count} clusters, {ec.variable_count()} variables ({ec.status})")
    print("size\tenumerated\trecursion")
    for k, c in enumerated.items():
        print(f"{k}\t{c}\t{totals[rank - k]}")


if __name__ == "__main__":
    main()
