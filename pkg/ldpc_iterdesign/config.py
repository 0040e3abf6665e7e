# -*- coding: utf-8 -*-
#
# Copyright (C) 2025 Cottage Labs.
#
# ldpc-iterdesign is free software; you can redistribute it and/or modify it
# under the terms of the MIT License; see LICENSE file for more details.

"""Default configuration for ensemble design and analysis."""

ITERDESIGN_NORMALIZATION_TOL = 1e-9
"""Allowed deviation of sum(lambda) and sum(rho) from one."""

ITERDESIGN_PRUNE_BELOW = 1e-12
"""Edge fractions below this value are dropped from a distribution."""

# EXIT analysis
ITERDESIGN_XI_BEC = 0.9999
"""Default convergence target on the binary erasure channel."""

ITERDESIGN_XI_AWGN = 0.999
"""Default convergence target on the BI-AWGN channel."""

ITERDESIGN_TOL_BEC = 1e-6
"""Bisection tolerance on the erasure probability."""

ITERDESIGN_TOL_AWGN_DB = 1e-3
"""Bisection tolerance on Eb/N0 in dB."""

ITERDESIGN_BISECTION_STEPS = 40
"""Maximum number of bisection steps in a threshold search."""

ITERDESIGN_EBN0_BRACKET_DB = (-2.0, 10.0)
"""Eb/N0 search bracket in dB."""

ITERDESIGN_UNLIMITED_ITERATIONS = 5000
"""Iteration cap used when an unconstrained threshold is requested."""

ITERDESIGN_EXIT_GRID_BITS = 12
"""Check-node EXIT tables are sampled on a grid of 2**-bits spacing."""

ITERDESIGN_J_TABLE_SIGMA_MAX = 20.0
"""Upper end of the tabulated J(sigma) curve."""

ITERDESIGN_J_TABLE_POINTS = 8001
"""Number of samples in the tabulated J(sigma) curve."""

# Differential evolution
ITERDESIGN_DE_POPULATION = 70
"""Population size."""

ITERDESIGN_DE_F = 0.5
"""Mutation weight."""

ITERDESIGN_DE_ETA = 0.8
"""Crossover rate."""

ITERDESIGN_DE_GENERATIONS = 500
"""Maximum number of generations."""

ITERDESIGN_DE_STALL_GENERATIONS = 50
"""Stop after this many generations without a significant improvement."""

ITERDESIGN_DE_STALL_IMPROVEMENT = 1e-4
"""Smallest improvement of the best threshold that resets the stall counter."""

ITERDESIGN_DE_RETRY_CAP = 20
"""Trial regenerations per member and generation before giving up."""

ITERDESIGN_DE_INIT_SUPPORT = 4
"""Largest number of non-zero entries per side in an initial member."""

ITERDESIGN_DE_INIT_ATTEMPTS = 1000
"""Sampling attempts per initial member before the supports are declared infeasible."""

ITERDESIGN_DE_RATE_TOL = 1e-6
"""Tolerance on the design rate of a repaired vector."""

# Growth rate
ITERDESIGN_GROWTH_POINTS = 200
"""Number of log-spaced samples on (0, 0.5] for a growth-rate curve."""

ITERDESIGN_GROWTH_ALPHA_MIN = 1e-4
"""Smallest normalized weight on a growth-rate curve."""

ITERDESIGN_GROWTH_ALPHA_TOL = 1e-6
"""Bisection tolerance for the zero crossing of the growth rate."""

# Construction
ITERDESIGN_SWAP_FACTOR = 10
"""Duplicate-edge swap attempts per edge before resampling a graph."""

ITERDESIGN_RESAMPLE_LIMIT = 20
"""Full resamples before random construction gives up."""

ITERDESIGN_MAX_ENUM_DIMENSION = 25
"""Largest code dimension for exhaustive minimum-distance search."""

# Simulation
ITERDESIGN_TARGET_ERRORS = 200
"""Bit errors collected per simulation point."""

ITERDESIGN_MAX_WORDS = 1_000_000
"""Codewords simulated per point at most."""

ITERDESIGN_WORDS_PER_BATCH = 64
"""Codewords decoded per random substream."""

ITERDESIGN_BATCHES_PER_ROUND = 16
"""Batches dispatched together before the stopping rule is checked."""

ITERDESIGN_LLR_CLAMP = 30.0
"""Magnitude clamp for check-node messages."""

# Runtime
ITERDESIGN_THREADS = 1
"""Default number of worker processes."""

ITERDESIGN_OUTPUT_DIR = "."
"""Default directory for written artifacts."""

ITERDESIGN_OUTPUT_DIR_ENV = "ITERDESIGN_OUTPUT_DIR"
"""Environment variable overriding the output directory."""

ITERDESIGN_SEED = 0
"""Default global seed."""
