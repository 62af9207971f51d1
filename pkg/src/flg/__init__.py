"""Facility-location intersection graphs.

Library and CLI for building intersection graphs of digraphs,
recognizing triangle-free facility-location graphs with preimage
certificates, enumerating preimages of small graphs, compiling
hardness gadgets, and cross-checking the facility-location /
weighted-stable-set equivalence with exact desk-scale solvers.
"""

__version__ = "0.1.0"
