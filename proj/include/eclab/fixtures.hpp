#pragma once

#include "eclab/rtm.hpp"

namespace eclab::fixtures {

/// Shift-register sweeper over {0,1}: scans the whole input (carrying each
/// symbol one cell to the right) and always accepts. Reversible; running
/// time on input x is |x|+1 steps.
TuringMachine sweep(int tape_length = 4);

/// Shift-register parity checker: accepts iff the input holds an even
/// number of 1s. Reversible.
TuringMachine parity(int tape_length = 4);

/// Evaluator for one-quantifier Boolean formulas encoded as three input
/// bits [q, t0, t1]: q=0 means AND of the truth table (t0,t1), q=1 means
/// OR. Accepts iff the folded value is 1. Reversible; needs tape length 5.
TuringMachine qbf1(int tape_length = 5);

}  // namespace eclab::fixtures
