"""Non-adaptive query strategies for the two-colour majority problem.

Four answer models are supported: Output (OM), Counting (CM), General (GM)
and Borzyszkowski's model (BM). The package builds the known strategies,
decides exactly whether a query set suffices, computes the optimal number of
queries for tiny instances, and evaluates the lower-bound formulas.
"""

__version__ = "0.1.0"
