"""Second-layer links between prime ideals of finite rings, and their behaviour
under a ring automorphism."""

__version__ = "0.1.0"

from .errors import *  # noqa: E402,F401,F403
from .ring import FiniteRing, RingSpec, add, construct_ring, mul, neg, validate_ring  # noqa: E402
from .ideals import (Ideal, components_of_semiprime, enumerate_ideals,  # noqa: E402
                     ideal_closure, ideal_intersect, ideal_product, ideal_sum, is_prime,
                     is_semiprime, krull_dim_chain, minimal_primes_over, regular_mod)
from .links import (LinkGraph, LinkWitness, build_link_graph,  # noqa: E402
                    enumerate_linking_ideals, is_linking_ideal, link_exists,
                    minimal_linking_ideal)
from .sigma import (Automorphism, TheoremReport, apply_to_ideal, common_period,  # noqa: E402
                    invariant_part, period_of, theorem8_pipeline, theorem9_search,
                    validate_automorphism, verify_prop6, verify_prop7)
