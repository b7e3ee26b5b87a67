"""Deciding normality of the roots of an irreducible polynomial over F_q.

The exact test uses the circulant determinant of the conjugates; the
criterion evaluates h at the coefficients and certifies normality when the
value is nonzero.
"""

from normcrit.gfkit import check_criterion, conjugates, field_of_order, parse_poly

F2, F4 = field_of_order(2), field_of_order(4)
for text, F in (("x^4+x^3+1", F2), ("x^4+x+1", F2), ("x^6+x^5+x^4+x^2+1", F2), ("x^2+x+2", F4)):
    f = parse_poly(text, F)
    v = check_criterion(f)
    print(f"{str(f):22s} over F_{F.q}: irreducible={v.irreducible} exact_normal={v.exact_normal} "
          f"criterion={v.criterion} h={v.h_value}")

f = parse_poly("x^4+x^3+1", F2)
print("\nconjugates of a root of", f, "as coordinate tuples:")
for c in conjugates(f):
    print("  ", c)
