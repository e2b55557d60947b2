"""
Permutations, orders and tilings
================================

Words, inversions, the two orders on S_{n+1}, the vee product and
Elnitsky tilings.
"""

from bruhatspin.coxeter import (
    Permutation,
    bruhat_leq,
    canonical_word,
    covers_below,
    elnitsky_tiling,
    inv,
    mult_vector,
    reduced_words,
    tiling_to_ascii,
    tiling_to_svg,
    vee,
)

P = Permutation.parse

eta = Permutation.top(3)
print("eta =", eta, " inv =", inv(eta), " mult =", mult_vector(eta))

# generators act on the right
a1, a2 = Permutation.generator(2, 1), Permutation.generator(2, 2)
print("a1 a2 =", a1 * a2)

s = P("3412")
print(s, "has", len(list(reduced_words(s))), "reduced words; canonical:", canonical_word(s))
print("covered by", s, ":", [str(c) for c in covers_below(s)])
print("2143 <= 3412 ?", bruhat_leq(P("2143"), s))

# vee is not the join of either order: a permutation with itself can grow
print("vee(231, 231) =", vee(P("231"), P("231")))
print("vee(2413, 2431) =", vee(P("2413"), P("2431")))

t = elnitsky_tiling(P("429681735"))
print(tiling_to_ascii(t))
with open("tiling_429681735.svg", "w") as fh:
    fh.write(tiling_to_svg(t))
print("wrote tiling_429681735.svg")
