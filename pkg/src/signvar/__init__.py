"""Sign-variation posets, their order complexes, and a partition of their faces
into Boolean intervals indexed by even signed permutations."""

from .signvec import SignVector, bar, enumerate_pv, leq, parse, var, wt
from .sperm import (
    SignedPerm,
    bottom_chain,
    chain_of_perm,
    descent_data,
    enumerate_sdn,
    eulerian_d,
    is_even_signed,
    parse_window,
)
from .poset import build_pnm, is_boolean
from .ordercomplex import (
    build_complex,
    f_vector,
    flag_vectors,
    h_vector,
    homology_ranks,
    reduced_euler,
)
from .partition import check_removal, check_subset_removal, partition, phi

__version__ = "0.1.0"
