"""Rainbow Ramsey experiments on finite simple binary relational structures."""

from .arrows import ArrowCertificate, ArrowQuery, BudgetExceeded, enumerate_colourings_canonical, min_host_search, verify_arrow
from .colourings import (
    Colouring,
    DeltaSystem,
    is_k_bounded,
    is_k_delta,
    maximal_delta_systems,
    rainbow_copy_search,
    reduce_colouring,
)
from .encoding import EncodingParams, decode, extension_property_check
from .gluing import Triple, enumerate_triples, signature, stretch_variants, triple_equiv
from .sequences import (
    SeqSet,
    StrongDiagonalization,
    check_map_property,
    classify_set,
    is_strong_subtree,
    meet,
    passing_number,
    prec,
    strong_diagonalization,
    strong_similarity_map,
)
from .structures import (
    CopySet,
    Label,
    SimpleBinaryStructure,
    enumerate_copies,
    generate_random,
    induced,
    isomorphic,
    validate,
)

__version__ = "0.1.0"
