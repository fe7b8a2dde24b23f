"""Exact refined binomial distribution of successes and inversions.

Counting successes ``Y`` in ``n`` Bernoulli trials loses where they fell.
Keeping the number of success-before-failure pairs ``T`` as the exponent of
a formal variable ``q`` refines ``Bin(n, pi)`` into a joint law of
``(Y, T)``, with Gaussian polynomials as its generating functions.
"""

from .distribution import (
    ExperimentParams,
    JointPmfTable,
    MomentSummary,
    conditional_T_given_Y,
    conditional_T_moments,
    conditional_Y_given_T,
    conditional_Y_moment,
    joint_pmf,
    joint_pmf_table,
    lemma_sums,
    marginal_T,
    marginal_Y,
    moments,
    moments_from_table,
    q_generalized_pmf,
    referee_normalized_pmf,
)
from .errors import CapExceededError, ConsistencyError, ZeroProbabilityError
from .oracle import OutcomeRecord, enumerate_outcomes, oracle_joint_pmf, oracle_moment
from .partitions import (
    BoundedPartition,
    enumerate_partitions,
    gaussian_polynomial,
    partition_count,
    rogers_szego_eval,
)
from .poly import QPolynomial
from .sampler import (
    HomogeneityReport,
    SampleBatch,
    homogeneity_report,
    run_batch,
    sample_sequence,
)
from .words import (
    Transposition,
    Word,
    apply_qlambda,
    expand_noncommutative,
    inversions,
    word_to_partition,
)

__version__ = "0.1.0"
