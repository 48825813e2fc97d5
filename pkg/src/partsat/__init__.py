"""Sum-satisfiability analysis of CNF formulas and PART-SAT decisions at sigma extremes."""

from .cnf import (ClassFlags, Formula, Literal, OccurrenceStats, ParseError, classify, load, parse_dimacs,
                  parse_matrix, stats, write_dimacs, write_matrix)
from .decider import (BudgetExceeded, ClauseProfile, Decision, Partition, clause_profile, decide, decide_l_in_k,
                     nae_sweep, target_total)
from .sigma_analysis import (SigmaExtremes, achievers, char_function, sigma, sigma_extremes, sigma_histogram,
                    sigma_per_clause)

__version__ = "0.1.0"
