"""Finite module-theory engine.

Explicit finite rings and left modules, the submodule product and its
annihilator calculus, prime spectra, injective hulls, Goldie structure, and a
verification harness that checks the structure theorems on fixtures and on
randomly generated instances whenever the hypotheses hold.
"""

from .caps import Caps, DEFAULT_CAPS
from .errors import (AxiomViolation, CapExceeded, ModTheoryError,
                     NotFullyInvariant, NotProper, ParseError, ResolutionError,
                     SigmaMembershipUnverified, UnknownStatementId,
                     ValidationError, VerificationFailure)
from .rings import (FiniteRing, Ideal, ideals, ring_cyclic, ring_product,
                    ring_quotient, ring_trivial_extension, validate_ring)
from .modules import (FiniteModule, Homomorphism, Submodule, Witnessed,
                      all_submodules, are_isomorphic, direct_sum,
                      find_embedding, hom_set, is_essential,
                      is_fully_invariant, is_retractable, is_self_projective,
                      is_uniform, quotient, regular_module, socle,
                      submodule_generate, submodule_module, uniform_dimension,
                      validate_module)
from .products import (AnnihilatorSet, ProductResult, ann_left, ann_right,
                       annihilator_set, is_annihilator_submodule,
                       is_nilpotent_submodule, is_tm_nilpotent, power, product)
from .analysis import Analysis
from .spectrum import (PrimeWitness, SpectrumReport, ass_of, is_prime_in,
                       is_semiprime_in, spec_min, verify_semiprime_structure)
from .injectives import (BoundedSingular, InjectiveHull, TorsionProfile,
                         UniformHullClasses, character_module,
                         cogenerated_theories_equal, indecomposable_injectives,
                         injective_hull, k_singular_submodule,
                         m_injective_hull, m_singular_submodule_bounded,
                         reject, torsion_profile, verify_goldie_structure)
from .endo import (ContinuityResult, EndoRing, GoldieReport, delta_ideal,
                   endomorphism_ring, goldie_report, is_continuous,
                   is_k_nonsingular, jacobson_radical, right_singular_ideal)
from .reporting import Finding, Report
from .descriptors import AlgebraSpec, build_spec, load_spec, tables_doc
from .fixtures import FIXTURE_NAMES, fixture_doc, fixture_module, fixture_spec
from .registry import run_suite
from .fuzz import FuzzConfig, replay_counterexample, run_fuzz

__version__ = "0.1.0"
