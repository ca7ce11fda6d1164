"""
Descent and projection certificates
===================================

Squaring an element with odd b-exponent stabilizes the first level, and its
sections stay in controlled congruence classes with non-increasing norms.
Iterating square-then-project therefore descends to the concrete elements
ab and b^-1 a, and chaining the descents produces a replayable certificate
that a subgroup's projection at some vertex is the whole group.
"""

from basilica import basilica
from basilica.descent import (
    FailureReport,
    find_ab,
    find_b_inv_a,
    parse_certificate,
    persist_ab,
    prodense_projection_search,
    verify_certificate,
)
from basilica.permgrp import SubgroupHandle

B = basilica()

# descend ba: its square is (ba, ab), so one squaring reaches ab at vertex 1
cert = find_ab(B.element("ba"))
print(f"ba: vertex={cert.vertex} exponent=2^{cert.exponent_log} replay={cert.replay()}")

# a longer input: the certificate records the child path and the 2-power
g = B.element("ab") * B.element("ABab")  # ab times [a,b]
cert = find_ab(g)
print(f"ab[a,b]: vertex={cert.vertex} exponent=2^{cert.exponent_log} replay={cert.replay()}")

# the mirrored descent reaches b^-1 a through the alternating classes
cert = find_b_inv_a(B.element("aB"))
print(f"aB: vertex={cert.vertex} exponent=2^{cert.exponent_log} replay={cert.replay()}")

# ab persists down the tree: (ab)^2 = (ba,ba) and (ba)^2 = (ba,ab)
k, final = persist_ab(B.element("ab"), "0110")
print(f"persisting ab down 0110: 2^{k} gives {final}")

# the full pipeline on a subgroup: solve the right cosets, descend twice,
# persist, and assemble expressions whose sections are a and b
H = SubgroupHandle.from_words(B, ["ba", "bb"])
result = prodense_projection_search(H)
print()
print(result.serialize())
print("independent replay:", verify_certificate(H, result))

# serialization round-trips byte-identically
assert parse_certificate(result.serialize()) == result

# a cyclic subgroup cannot reach the (1,-1) coset: honest failure report
result = prodense_projection_search(SubgroupHandle.from_words(B, ["ab"]))
assert isinstance(result, FailureReport)
print("search on <ab>:", result.describe())
