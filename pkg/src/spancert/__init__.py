"""spancert: exact-arithmetic certification of spannedness numerics.

Re-verifies, in exact rational arithmetic, every integral, rational-function
supremum, cohomology dimension bound, blow-up-chain recursion and case
inequality needed for the positivity threshold 51, and emits a machine
readable certificate.
"""

__version__ = "0.1.0"
