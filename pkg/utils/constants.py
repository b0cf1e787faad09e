ERROR_PROBABILITY_RANGE = "Probability must lie strictly between 0 and 1"
ERROR_UNIT_SQUARE = "Copula arguments must lie in the unit square [0, 1] x [0, 1]"
ERROR_CONDITIONING_RANGE = "Conditioning percentile must lie strictly between 0 and 1"
ERROR_BOUNDARY_RANGE = "Boundary conditional CDF argument must lie in (0, 1]"
ERROR_OMEGA_RANGE = "omega must lie strictly between 0 and pi/2"
ERROR_NEGATIVE_ARGUMENT = "Q-function bounds are only defined for x >= 0"
ERROR_NEGATIVE_NOISE = "Noise-to-signal ratio must be non-negative"
ERROR_ALPHA_RANGE = "alpha must lie in (0, 1]"
ERROR_RHO_RANGE = "rho must lie in (0, 1] for the Gaussian lower bound"
ERROR_DELTA_RANGE = "delta must lie in (0, 1]"
ERROR_SELECTION_SIZE = "Selection size must satisfy 1 <= m <= n"
ERROR_NC1_TOO_SMALL = "n * c1 must exceed 1 for the dominating Gaussian to exist"
ERROR_DEGENERATE_POLYNOMIAL = "All polynomial coefficients are zero"
ERROR_QUADRATURE_FAMILY = "Quadrature requires a continuous conditional CDF; use the closed form for the comonotonic copula"
ERROR_BRUTEFORCE_FAMILY = "Brute-force integration requires a continuous conditional CDF"
ERROR_BRUTEFORCE_DIMENSION = "Brute-force integration supports m <= 3 only"
ERROR_BRUTEFORCE_GRID = "Brute-force grid must have at least 50 nodes"
ERROR_NO_CLOSED_FORM = "No closed form is available for this copula and problem"
ERROR_RANK_SUBSET = "Ranks must be m distinct integers in 1..n"
ERROR_GRID_SIZE = "Grid size is below the supported minimum"
ERROR_REPLICATIONS = "Monte Carlo replications must be at least 1"
ERROR_CERTIFICATION_FAILED = "Stochastic-dominance certificate failed for the supplied omega"
ERROR_INFEASIBLE_INVERSION = "No omega yields a certified finite sample size"
ERROR_THREADS = "ORDSEL_THREADS must be a positive integer"
ERROR_BAD_SETTING = "Invalid value for environment variable"
ERROR_SWEEP_RANGE = "Sweep range is malformed"
