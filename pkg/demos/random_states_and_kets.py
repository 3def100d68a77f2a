# coding: utf-8

# # Random states, ket notation and the C_R vs C_W comparison

from qconcur import format_ket, parse_ket
from qconcur.experiments import histogram_lines, run_compare, run_spectrum, summarize_comparison

# Kets accept arithmetic coefficients, and format back to a parseable form.

psi = parse_ket("1/sqrt(3)|0101> + (1+i)/sqrt(3)|1010>")
print(format_ket(psi))

# A small seeded comparison run on 4-qubit states (all six pairs per sample).

rows = run_compare(4, samples=500, seed=1)
print("\n".join(summarize_comparison(rows).lines()))

# Distribution of the four-qubit sector values of random 6-qubit states.

sectors, values = run_spectrum(6, 4, samples=200, seed=1)
print("\n".join(histogram_lines(values)))
