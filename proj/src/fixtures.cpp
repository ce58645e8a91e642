#include "eclab/fixtures.hpp"

namespace eclab::fixtures {

namespace {

TuringMachine base_machine(std::vector<std::string> states, int tape_length) {
    TuringMachine tm;
    tm.symbol_names = {"b", "0", "1"};
    tm.blank = 0;
    tm.state_names = std::move(states);
    tm.initial = 0;
    tm.tape_length = tape_length;
    tm.flavor.assign(tm.state_names.size(), StateFlavor::Plain);
    tm.base_state.resize(tm.state_names.size());
    for (int i = 0; i < int(tm.state_names.size()); ++i) tm.base_state[i] = i;
    return tm;
}

TransitionRule std_rule(int q, int x, int q2, int x2, Move m) {
    return {RuleForm::Standard, q, x, q2, x2, m};
}

}  // namespace

TuringMachine sweep(int tape_length) {
    // Shift register: carry the scanned symbol, write the previous carry.
    enum { q0, s0, s1, qa, qr, B = 0, Z = 1, O = 2 };
    TuringMachine tm = base_machine({"q0", "s0", "s1", "qa", "qr"}, tape_length);
    tm.accept = qa;
    tm.reject = qr;
    tm.halting = {qa, qr};
    tm.rules = {
        std_rule(q0, Z, s0, B, Move::Right),
        std_rule(q0, O, s1, B, Move::Right),
        std_rule(q0, B, qa, B, Move::Stay),
        std_rule(s0, Z, s0, Z, Move::Right),
        std_rule(s0, O, s1, Z, Move::Right),
        std_rule(s1, Z, s0, O, Move::Right),
        std_rule(s1, O, s1, O, Move::Right),
        std_rule(s0, B, qa, Z, Move::Stay),
        std_rule(s1, B, qa, O, Move::Stay),
    };
    return tm;
}

TuringMachine parity(int tape_length) {
    // Shift register plus a running parity of the 1s seen so far.
    enum { q0, e0, e1, o0, o1, qa, qr, B = 0, Z = 1, O = 2 };
    TuringMachine tm = base_machine({"q0", "e0", "e1", "o0", "o1", "qa", "qr"}, tape_length);
    tm.accept = qa;
    tm.reject = qr;
    tm.halting = {qa, qr};
    tm.rules = {
        std_rule(q0, Z, e0, B, Move::Right),
        std_rule(q0, O, o1, B, Move::Right),
        std_rule(q0, B, qa, B, Move::Stay),
        std_rule(e0, Z, e0, Z, Move::Right),
        std_rule(e0, O, o1, Z, Move::Right),
        std_rule(e1, Z, e0, O, Move::Right),
        std_rule(e1, O, o1, O, Move::Right),
        std_rule(o0, Z, o0, Z, Move::Right),
        std_rule(o0, O, e1, Z, Move::Right),
        std_rule(o1, Z, o0, O, Move::Right),
        std_rule(o1, O, e1, O, Move::Right),
        std_rule(e0, B, qa, Z, Move::Stay),
        std_rule(e1, B, qa, O, Move::Stay),
        std_rule(o0, B, qr, Z, Move::Stay),
        std_rule(o1, B, qr, O, Move::Stay),
    };
    return tm;
}

TuringMachine qbf1(int tape_length) {
    // Input [q, t0, t1]: fold the two-entry truth table with AND (q=0) or
    // OR (q=1). The scan spreads (q, t0, t1) over the tape so every step
    // stays injective.
    enum {
        q0, c0, c1, d00, d01, d10, d11,
        e000, e001, e011, e100, e111, e110,
        f00, f01, f10, f11, qa, qr,
        B = 0, Z = 1, O = 2
    };
    TuringMachine tm = base_machine({"q0", "c0", "c1", "d00", "d01", "d10", "d11",
                                     "e000", "e001", "e011", "e100", "e111", "e110",
                                     "f00", "f01", "f10", "f11", "qa", "qr"},
                                    tape_length);
    tm.accept = qa;
    tm.reject = qr;
    tm.halting = {qa, qr};
    tm.rules = {
        std_rule(q0, Z, c0, B, Move::Right),
        std_rule(q0, O, c1, B, Move::Right),
        std_rule(c0, Z, d00, Z, Move::Right),
        std_rule(c0, O, d01, Z, Move::Right),
        std_rule(c1, Z, d10, O, Move::Right),
        std_rule(c1, O, d11, O, Move::Right),
        std_rule(d00, Z, e000, Z, Move::Right),
        std_rule(d00, O, e001, Z, Move::Right),
        std_rule(d01, Z, e000, O, Move::Right),
        std_rule(d01, O, e011, O, Move::Right),
        std_rule(d10, Z, e100, Z, Move::Right),
        std_rule(d10, O, e111, Z, Move::Right),
        std_rule(d11, Z, e110, O, Move::Right),
        std_rule(d11, O, e111, O, Move::Right),
        std_rule(e000, B, f00, Z, Move::Right),
        std_rule(e001, B, f01, Z, Move::Right),
        std_rule(e011, B, f11, Z, Move::Right),
        std_rule(e100, B, f00, O, Move::Right),
        std_rule(e111, B, f11, O, Move::Right),
        std_rule(e110, B, f10, O, Move::Right),
        std_rule(f00, B, qr, Z, Move::Stay),
        std_rule(f01, B, qr, O, Move::Stay),
        std_rule(f10, B, qa, Z, Move::Stay),
        std_rule(f11, B, qa, O, Move::Stay),
    };
    return tm;
}

}  // namespace eclab::fixtures
