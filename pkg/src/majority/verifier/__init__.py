from .bm import BMCertificate, is_sufficient_bm, verify_bm
from .deterministic import Certificate, FailureWitness, is_sufficient, verify_deterministic
from .oracle import cross_check_class_verifier, random_query_sets, run_crosscheck
from .exact import ExactResult, exact_n
