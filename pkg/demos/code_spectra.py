# coding: utf-8

# # Concurrence spectra of the Shor and Steane code words
#
# Each code word is probed with every even-size qubit sector.

from qconcur import verify_code

# The Steane |0_L>: pairs and six-qubit sectors carry nothing, while exactly
# seven of the 35 four-qubit sectors reach 1.

steane = verify_code("steane0", [2, 4, 6])
for row in steane.summary:
    print(row)
print("unit sectors:", steane.per_k[4].sectors_where(lambda v: abs(v - 1) < 1e-10))

# Both Shor code words vanish on every even sector.

for name in ("shor0", "shor1"):
    rep = verify_code(name, [2, 4, 6, 8])
    print(name, [(r.k, r.num_zero_sectors) for r in rep.summary])
