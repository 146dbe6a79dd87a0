"""
Reduced words and braid moves
=============================

Build the canonical reduced word of the longest representative, list the
coroots it adds one letter at a time, then rewrite it at random.
"""

from parapoles.words import (canonical_w0_word, certify_swap_rules, coroot_sequence,
                           epsilon_label, random_rewrites)

# B3, node 2: seven letters, seven nilradical coroots
w = canonical_w0_word("B3", 2)
print("word:", w)
for v in coroot_sequence(w):
    print(v, "label", epsilon_label(w.cartan, w.node, v))

# every random move is checked against its expected effect on the sequence
print(random_rewrites(w, steps=10_000, seed=0))

# exhaustive check of which adjacent coroots can trade places
rep = certify_swap_rules("B3", 2)
print(rep.status, rep.detail["reduced_words"], "reduced words")
