#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace eclab {

enum class RuleForm { Standard, Reverse };
enum class Move : int { Left = -1, Stay = 0, Right = 1 };

/// One transition rule. Standard form (q, x, q', x', s): read/write at the
/// cell right of the head site, then move. Reverse form (q, s, x, q', x'):
/// move first, then read/write. Stay rules are always normalized to
/// standard form.
struct TransitionRule {
    RuleForm form = RuleForm::Standard;
    int state_in = 0;
    int symbol_in = 0;
    int state_out = 0;
    int symbol_out = 0;
    Move move = Move::Stay;

    bool operator==(const TransitionRule&) const = default;
};

enum class StateFlavor : std::uint8_t { Plain, Accept, Reject };

/// A Turing machine with fixed-size circular tape. Configurations are
/// embedded in a ring of tape_length+1 sites, one of which carries the
/// head state; the head slot therefore ranges over tape_length+1 positions.
struct TuringMachine {
    std::vector<std::string> symbol_names;  // index = symbol id
    int blank = 0;
    std::vector<std::string> state_names;  // index = state id
    int initial = 0;
    int accept = 0;  // q_a of the underlying machine
    int reject = 0;  // q_r of the underlying machine
    std::vector<int> halting;  // global halting states ({q_a,q_r}, or {q0^a,q0^r} after duplication)
    std::vector<TransitionRule> rules;
    int tape_length = 1;

    bool duplicated = false;
    std::vector<StateFlavor> flavor;  // per state; all Plain unless duplicated
    std::vector<int> base_state;      // duplicated -> original state id

    int num_symbols() const { return int(symbol_names.size()); }
    int num_states() const { return int(state_names.size()); }
    int chain_sites() const { return tape_length + 1; }
    bool is_halting(int q) const;
    StateFlavor state_flavor(int q) const { return flavor.empty() ? StateFlavor::Plain : flavor[q]; }

    TuringMachine with_tape_length(int L) const {
        TuringMachine m = *this;
        m.tape_length = L;
        return m;
    }
};

/// Tape + head-slot + state snapshot. head is the ring slot of the state
/// site in [0, tape_length]; tape[c] is the symbol of the c-th non-head
/// ring site in increasing site order.
struct Configuration {
    int state = 0;
    int head = 0;
    std::vector<std::uint8_t> tape;

    bool operator==(const Configuration&) const = default;
};

/// Ring encoding: entry i is a symbol id, or num_symbols+state id at the
/// head slot. This is also the per-site basis labeling of the Hamiltonian.
using Chain = std::vector<std::uint8_t>;

Chain to_chain(const TuringMachine& tm, const Configuration& c);
Configuration from_chain(const TuringMachine& tm, const Chain& chain);

enum class StepStatus { Ok, Halted, Stuck };

struct StepResult {
    StepStatus status = StepStatus::Ok;
    Configuration next;  // valid when status == Ok
};

/// Applies the unique applicable rule. Halted if the state is a global
/// halting state, Stuck if no rule matches.
StepResult successor(const TuringMachine& tm, const Configuration& c);

/// In-place chain step; same semantics as successor().
StepStatus successor_chain(const TuringMachine& tm, Chain& chain);

struct RuleViolation {
    std::string kind;  // "unidirection", "injectivity", "determinism", "validation"
    int rule_a = -1;
    int rule_b = -1;
    std::string message;
};

struct ReversibilityReport {
    bool ok = false;
    std::vector<RuleViolation> violations;
};

/// Structural validation: every rule references known states/symbols,
/// never leaves a halting state, never re-enters the initial state.
/// Throws std::invalid_argument naming the offending rule.
void validate_machine(const TuringMachine& tm);

/// True iff every configuration has at most one predecessor (and the
/// machine is deterministic). Works for machines mixing standard and
/// reverse rule forms by pairwise overlap analysis of the local patterns.
ReversibilityReport check_reversible(const TuringMachine& tm);

/// Doubled machine: on reaching q_a/q_r it switches to a relabeled state
/// set and runs the inverse rules until the relabeled initial state.
TuringMachine duplicate(const TuringMachine& tm);

/// Head slot 0, state q0, input at the leading cells, blanks elsewhere.
Configuration input_configuration(const TuringMachine& tm, const std::vector<int>& input);

std::string format_rule(const TuringMachine& tm, const TransitionRule& r);

}  // namespace eclab
