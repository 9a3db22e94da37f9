"""Pop stack sorting with a bypass, its preimages, compositions and the
two-stack parallel machine, with exhaustive checks at small sizes.
"""
from .analysis import gf_expand, sortable_table
from .classes import closure_witness, preimage_basis, verify_class_equality
from .machines import (
    MachineKind,
    MachineOp,
    MachineTrace,
    SortingFailure,
    bubble_pass,
    compose,
    nd_sortable,
    parallel_psb,
    popstack_classic,
    psb,
    psb_trace,
    queuesort,
    stacksort,
)
from .perms import (
    BarredPattern,
    all_permutations,
    avoids_all,
    contains,
    contains_barred,
    inverse,
    is_simple,
    ltr_maxima,
    reduce,
    shuffles,
)
from .paths import count_restricted, gen_restricted
from .preimage import census, fiber_bruteforce, preimages
from .verification import verify_proposition

__version__ = "0.1.0"
