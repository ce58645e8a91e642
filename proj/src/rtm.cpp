#include "eclab/rtm.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

namespace eclab {

namespace {

constexpr int kWild = -1;   // symbol wildcard shared between pred and result
constexpr int kFree = -2;   // unconstrained position
constexpr int kStateBase = 1 << 20;

inline int enc_state(int q) { return kStateBase + q; }
inline bool is_state_val(int v) { return v >= kStateBase; }

/// Local window patterns of one rule realization, anchored at position 0..2.
/// pred/result map window positions to required cell values.
struct RulePattern {
    int span = 2;
    int pred[3] = {kFree, kFree, kFree};
    int result[3] = {kFree, kFree, kFree};
    int pred_anchor = 0;    // window position of state_in
    int result_anchor = 0;  // window position of state_out
    int wild_result_pos = -1;
    int wild_pred_pos = -1;
};

RulePattern pattern_of(const TransitionRule& r) {
    RulePattern p;
    if (r.form == RuleForm::Standard) {
        switch (r.move) {
            case Move::Right:
                p.span = 2;
                p.pred[0] = enc_state(r.state_in);
                p.pred[1] = r.symbol_in;
                p.result[0] = r.symbol_out;
                p.result[1] = enc_state(r.state_out);
                p.pred_anchor = 0;
                p.result_anchor = 1;
                break;
            case Move::Stay:
                p.span = 2;
                p.pred[0] = enc_state(r.state_in);
                p.pred[1] = r.symbol_in;
                p.result[0] = enc_state(r.state_out);
                p.result[1] = r.symbol_out;
                p.pred_anchor = 0;
                p.result_anchor = 0;
                break;
            case Move::Left:
                p.span = 3;
                p.pred[0] = kWild;
                p.pred[1] = enc_state(r.state_in);
                p.pred[2] = r.symbol_in;
                p.result[0] = enc_state(r.state_out);
                p.result[1] = kWild;
                p.result[2] = r.symbol_out;
                p.pred_anchor = 1;
                p.result_anchor = 0;
                p.wild_pred_pos = 0;
                p.wild_result_pos = 1;
                break;
        }
    } else {
        switch (r.move) {
            case Move::Right:
                p.span = 3;
                p.pred[0] = enc_state(r.state_in);
                p.pred[1] = kWild;
                p.pred[2] = r.symbol_in;
                p.result[0] = kWild;
                p.result[1] = enc_state(r.state_out);
                p.result[2] = r.symbol_out;
                p.pred_anchor = 0;
                p.result_anchor = 1;
                p.wild_pred_pos = 1;
                p.wild_result_pos = 0;
                break;
            case Move::Left:
                p.span = 2;
                p.pred[0] = r.symbol_in;
                p.pred[1] = enc_state(r.state_in);
                p.result[0] = enc_state(r.state_out);
                p.result[1] = r.symbol_out;
                p.pred_anchor = 1;
                p.result_anchor = 0;
                break;
            case Move::Stay:
                throw std::logic_error("reverse rule with Stay must be normalized to standard form");
        }
    }
    return p;
}

/// Can two aligned patterns describe the same configuration window while
/// the other side (pred for reversibility, result for determinism) differs
/// somewhere? Enumerates symbol assignments over the small union window.
bool patterns_conflict(const RulePattern& a, const RulePattern& b, int num_symbols,
                       bool align_result) {
    const int* fa = align_result ? a.result : a.pred;
    const int* fb = align_result ? b.result : b.pred;
    const int* ga = align_result ? a.pred : a.result;
    const int* gb = align_result ? b.pred : b.result;
    int anchor_a = align_result ? a.result_anchor : a.pred_anchor;
    int anchor_b = align_result ? b.result_anchor : b.pred_anchor;

    // Window offsets relative to the shared state position.
    int lo = std::min(-anchor_a, -anchor_b);
    int hi = std::max(a.span - 1 - anchor_a, b.span - 1 - anchor_b);
    int width = hi - lo + 1;
    if (width > 5) throw std::logic_error("pattern window too wide");

    auto front_at = [&](const int* f, int anchor, int span, int off) {
        int p = off + anchor;
        return (p >= 0 && p < span) ? f[p] : kFree;
    };

    // Fixed-value compatibility scan.
    std::vector<int> fixed(width, kFree);
    for (int off = lo; off <= hi; ++off) {
        int va = front_at(fa, anchor_a, a.span, off);
        int vb = front_at(fb, anchor_b, b.span, off);
        for (int v : {va, vb}) {
            if (v == kFree || v == kWild) continue;
            int& slot = fixed[off - lo];
            if (slot == kFree) slot = v;
            else if (slot != v) return false;  // incompatible, no shared window
        }
        // Wildcards range over symbols only.
        if ((va == kWild || vb == kWild) && fixed[off - lo] != kFree &&
            is_state_val(fixed[off - lo]))
            return false;
    }

    // Enumerate free cells over the symbol alphabet.
    std::vector<int> free_pos;
    for (int i = 0; i < width; ++i)
        if (fixed[i] == kFree) free_pos.push_back(i);
    std::size_t combos = 1;
    for (std::size_t i = 0; i < free_pos.size(); ++i) combos *= num_symbols;

    std::vector<int> window(width);
    for (std::size_t c = 0; c < combos; ++c) {
        std::size_t t = c;
        for (int i = 0; i < width; ++i) window[i] = fixed[i];
        for (int fp : free_pos) {
            window[fp] = int(t % num_symbols);
            t /= num_symbols;
        }
        // Wildcard positions must hold symbols (already ensured).
        auto other_side = [&](const RulePattern& r, const int* back, int anchor,
                              std::vector<int>& out) {
            out = window;
            int wild_val = -1;
            if (align_result ? (r.wild_result_pos >= 0) : (r.wild_pred_pos >= 0)) {
                int wp = align_result ? r.wild_result_pos : r.wild_pred_pos;
                wild_val = window[wp - anchor - lo];
            }
            for (int p = 0; p < r.span; ++p) {
                int off = p - anchor - lo;
                int v = back[p];
                if (v == kWild) v = wild_val;
                out[off] = v;
            }
        };
        std::vector<int> side_a, side_b;
        other_side(a, ga, anchor_a, side_a);
        other_side(b, gb, anchor_b, side_b);
        if (side_a != side_b) return true;
    }
    return false;
}

}  // namespace

bool TuringMachine::is_halting(int q) const {
    return std::find(halting.begin(), halting.end(), q) != halting.end();
}

Chain to_chain(const TuringMachine& tm, const Configuration& c) {
    const int n = tm.chain_sites();
    Chain chain(n);
    for (int i = 0; i < n; ++i) {
        if (i == c.head) chain[i] = std::uint8_t(tm.num_symbols() + c.state);
        else chain[i] = c.tape[i < c.head ? i : i - 1];
    }
    return chain;
}

Configuration from_chain(const TuringMachine& tm, const Chain& chain) {
    Configuration c;
    c.tape.reserve(tm.tape_length);
    int head = -1;
    for (int i = 0; i < int(chain.size()); ++i) {
        if (chain[i] >= tm.num_symbols()) {
            if (head >= 0) throw std::invalid_argument("chain has multiple state sites");
            head = i;
            c.state = chain[i] - tm.num_symbols();
        } else {
            c.tape.push_back(chain[i]);
        }
    }
    if (head < 0) throw std::invalid_argument("chain has no state site");
    c.head = head;
    return c;
}

StepStatus successor_chain(const TuringMachine& tm, Chain& chain) {
    const int n = int(chain.size());
    int h = -1;
    for (int i = 0; i < n; ++i)
        if (chain[i] >= tm.num_symbols()) { h = i; break; }
    if (h < 0) throw std::invalid_argument("chain has no state site");
    const int q = chain[h] - tm.num_symbols();
    if (tm.is_halting(q)) return StepStatus::Halted;

    auto at = [&](int i) { return chain[((i % n) + n) % n]; };
    auto put = [&](int i, int v) { chain[((i % n) + n) % n] = std::uint8_t(v); };
    const int S = tm.num_symbols();

    for (const auto& r : tm.rules) {
        if (r.state_in != q) continue;
        if (r.form == RuleForm::Standard) {
            if (at(h + 1) != r.symbol_in) continue;
            switch (r.move) {
                case Move::Right:
                    put(h, r.symbol_out);
                    put(h + 1, S + r.state_out);
                    return StepStatus::Ok;
                case Move::Stay:
                    put(h, S + r.state_out);
                    put(h + 1, r.symbol_out);
                    return StepStatus::Ok;
                case Move::Left: {
                    int y = at(h - 1);
                    put(h - 1, S + r.state_out);
                    put(h, y);
                    put(h + 1, r.symbol_out);
                    return StepStatus::Ok;
                }
            }
        } else {
            if (r.move == Move::Right) {
                if (at(h + 2) != r.symbol_in) continue;
                int y = at(h + 1);
                put(h, y);
                put(h + 1, S + r.state_out);
                put(h + 2, r.symbol_out);
                return StepStatus::Ok;
            } else {  // Left
                if (at(h - 1) != r.symbol_in) continue;
                put(h - 1, S + r.state_out);
                put(h, r.symbol_out);
                return StepStatus::Ok;
            }
        }
    }
    return StepStatus::Stuck;
}

StepResult successor(const TuringMachine& tm, const Configuration& c) {
    Chain chain = to_chain(tm, c);
    StepResult res;
    res.status = successor_chain(tm, chain);
    if (res.status == StepStatus::Ok) res.next = from_chain(tm, chain);
    return res;
}

void validate_machine(const TuringMachine& tm) {
    auto bad = [&](int i, const std::string& why) {
        throw std::invalid_argument("rule " + std::to_string(i) + " (" +
                                    format_rule(tm, tm.rules[i]) + "): " + why);
    };
    if (tm.tape_length < 1) throw std::invalid_argument("tape_length must be positive");
    for (int i = 0; i < int(tm.rules.size()); ++i) {
        const auto& r = tm.rules[i];
        if (r.state_in < 0 || r.state_in >= tm.num_states()) bad(i, "unknown input state");
        if (r.state_out < 0 || r.state_out >= tm.num_states()) bad(i, "unknown output state");
        if (r.symbol_in < 0 || r.symbol_in >= tm.num_symbols()) bad(i, "unknown input symbol");
        if (r.symbol_out < 0 || r.symbol_out >= tm.num_symbols()) bad(i, "unknown output symbol");
        if (r.form == RuleForm::Reverse && r.move == Move::Stay)
            bad(i, "reverse rule with Stay move must be written in standard form");
        if (tm.is_halting(r.state_in)) bad(i, "halting state has an outgoing rule");
        if (r.state_out == tm.initial) bad(i, "rule re-enters the initial state");
    }
    // Determinism: no two rules applicable to one configuration with
    // different outcomes.
    std::vector<RulePattern> pats;
    pats.reserve(tm.rules.size());
    for (const auto& r : tm.rules) pats.push_back(pattern_of(r));
    for (int i = 0; i < int(tm.rules.size()); ++i)
        for (int j = i + 1; j < int(tm.rules.size()); ++j) {
            if (tm.rules[i].state_in != tm.rules[j].state_in) continue;
            if (patterns_conflict(pats[i], pats[j], tm.num_symbols(), /*align_result=*/false))
                bad(j, "nondeterministic: overlaps rule " + std::to_string(i));
        }
}

ReversibilityReport check_reversible(const TuringMachine& tm) {
    validate_machine(tm);
    ReversibilityReport rep;
    std::vector<RulePattern> pats;
    pats.reserve(tm.rules.size());
    for (const auto& r : tm.rules) pats.push_back(pattern_of(r));

    for (int i = 0; i < int(tm.rules.size()); ++i) {
        for (int j = i + 1; j < int(tm.rules.size()); ++j) {
            const auto& a = tm.rules[i];
            const auto& b = tm.rules[j];
            if (a.state_out != b.state_out) continue;
            if (!patterns_conflict(pats[i], pats[j], tm.num_symbols(), /*align_result=*/true))
                continue;
            RuleViolation v;
            v.rule_a = i;
            v.rule_b = j;
            bool both_std = a.form == RuleForm::Standard && b.form == RuleForm::Standard;
            if (both_std && a.move != b.move) {
                v.kind = "unidirection";
                v.message = "state " + tm.state_names[a.state_out] +
                            " reached with two different moves";
            } else if (both_std && a.symbol_out == b.symbol_out) {
                v.kind = "injectivity";
                v.message = "rules map distinct (state,symbol) pairs to (" +
                            tm.state_names[a.state_out] + "," +
                            tm.symbol_names[a.symbol_out] + ")";
            } else {
                v.kind = "reversibility";
                v.message = "some configuration gains two predecessors";
            }
            rep.violations.push_back(v);
        }
    }
    rep.ok = rep.violations.empty();
    return rep;
}

TuringMachine duplicate(const TuringMachine& tm) {
    auto rev = check_reversible(tm);
    if (!rev.ok) throw std::invalid_argument("duplicate: machine is not reversible");
    for (const auto& r : tm.rules)
        if (r.form != RuleForm::Standard)
            throw std::invalid_argument("duplicate: all rules must be in standard form");

    TuringMachine d;
    d.symbol_names = tm.symbol_names;
    d.blank = tm.blank;
    const int nq = tm.num_states();
    d.state_names.reserve(3 * nq);
    d.flavor.reserve(3 * nq);
    d.base_state.reserve(3 * nq);
    for (int q = 0; q < nq; ++q) {
        d.state_names.push_back(tm.state_names[q]);
        d.flavor.push_back(StateFlavor::Plain);
        d.base_state.push_back(q);
    }
    for (int q = 0; q < nq; ++q) {
        d.state_names.push_back(tm.state_names[q] + "^a");
        d.flavor.push_back(StateFlavor::Accept);
        d.base_state.push_back(q);
    }
    for (int q = 0; q < nq; ++q) {
        d.state_names.push_back(tm.state_names[q] + "^r");
        d.flavor.push_back(StateFlavor::Reject);
        d.base_state.push_back(q);
    }
    auto accept_id = [&](int q) { return nq + q; };
    auto reject_id = [&](int q) { return 2 * nq + q; };

    d.initial = tm.initial;
    d.accept = tm.accept;
    d.reject = tm.reject;
    d.halting = {accept_id(tm.initial), reject_id(tm.initial)};
    d.tape_length = tm.tape_length;
    d.duplicated = true;

    d.rules = tm.rules;
    // Inverse of (q, x, q', x', s) is the reverse-form rule (q', -s, x', q, x);
    // Stay inverses collapse back to standard form.
    for (int flavored = 0; flavored < 2; ++flavored) {
        auto relabel = [&](int q) { return flavored == 0 ? accept_id(q) : reject_id(q); };
        for (const auto& r : tm.rules) {
            TransitionRule inv;
            inv.state_in = relabel(r.state_out);
            inv.state_out = relabel(r.state_in);
            inv.symbol_in = r.symbol_out;
            inv.symbol_out = r.symbol_in;
            if (r.move == Move::Stay) {
                inv.form = RuleForm::Standard;
                inv.move = Move::Stay;
            } else {
                inv.form = RuleForm::Reverse;
                inv.move = (r.move == Move::Right) ? Move::Left : Move::Right;
            }
            d.rules.push_back(inv);
        }
    }
    for (int x = 0; x < tm.num_symbols(); ++x) {
        d.rules.push_back({RuleForm::Standard, tm.accept, x, accept_id(tm.accept), x, Move::Stay});
        d.rules.push_back({RuleForm::Standard, tm.reject, x, reject_id(tm.reject), x, Move::Stay});
    }
    validate_machine(d);
    return d;
}

Configuration input_configuration(const TuringMachine& tm, const std::vector<int>& input) {
    if (int(input.size()) >= tm.tape_length)
        throw std::invalid_argument("input longer than tape allows");
    for (int s : input)
        if (s < 0 || s >= tm.num_symbols() || s == tm.blank)
            throw std::invalid_argument("input symbol outside the non-blank alphabet");
    Configuration c;
    c.state = tm.initial;
    c.head = 0;
    c.tape.assign(tm.tape_length, std::uint8_t(tm.blank));
    for (std::size_t i = 0; i < input.size(); ++i) c.tape[i] = std::uint8_t(input[i]);
    return c;
}

std::string format_rule(const TuringMachine& tm, const TransitionRule& r) {
    auto mv = [](Move m) { return m == Move::Right ? "+" : (m == Move::Left ? "-" : "0"); };
    if (r.form == RuleForm::Standard)
        return "(" + tm.state_names[r.state_in] + "," + tm.symbol_names[r.symbol_in] + "," +
               tm.state_names[r.state_out] + "," + tm.symbol_names[r.symbol_out] + "," +
               mv(r.move) + ")";
    return "(" + tm.state_names[r.state_in] + "," + mv(r.move) + "," +
           tm.symbol_names[r.symbol_in] + "," + tm.state_names[r.state_out] + "," +
           tm.symbol_names[r.symbol_out] + ")";
}

}  // namespace eclab
