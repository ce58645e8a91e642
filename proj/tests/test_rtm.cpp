#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "eclab/fixtures.hpp"
#include "eclab/machine_file.hpp"
#include "eclab/rtm.hpp"
#include "oracles.hpp"

using namespace eclab;

namespace {

TuringMachine one_rule_machine() {
    TuringMachine tm;
    tm.symbol_names = {"b", "0", "1"};
    tm.blank = 0;
    tm.state_names = {"q0", "qa", "qr"};
    tm.initial = 0;
    tm.accept = 1;
    tm.reject = 2;
    tm.halting = {1, 2};
    tm.tape_length = 3;
    tm.rules = {{RuleForm::Standard, 0, 1, 1, 2, Move::Right}};  // (q0, 0, qa, 1, +)
    return tm;
}

}  // namespace

TEST_CASE("single rule cannot collide") {
    auto rep = check_reversible(one_rule_machine());
    CHECK(rep.ok);
}

TEST_CASE("unidirection violation is reported") {
    TuringMachine tm = one_rule_machine();
    tm.state_names = {"q0", "q1", "qa", "qr"};
    tm.accept = 2;
    tm.reject = 3;
    tm.halting = {2, 3};
    // {(q0,0,q1,1,+), (q0,1,q1,0,-)}: q1 reached with two different moves
    tm.rules = {{RuleForm::Standard, 0, 1, 1, 2, Move::Right},
                {RuleForm::Standard, 0, 2, 1, 1, Move::Left}};
    auto rep = check_reversible(tm);
    CHECK(!rep.ok);
    REQUIRE(rep.violations.size() >= 1);
    CHECK(rep.violations[0].kind == "unidirection");
}

TEST_CASE("injectivity violation is reported") {
    TuringMachine tm = one_rule_machine();
    tm.state_names = {"q0", "p", "q1", "qa", "qr"};
    tm.accept = 3;
    tm.reject = 4;
    tm.halting = {3, 4};
    // two sources map onto the same (state, written symbol) with one move
    tm.rules = {{RuleForm::Standard, 0, 1, 2, 1, Move::Right},
                {RuleForm::Standard, 1, 2, 2, 1, Move::Right}};
    auto rep = check_reversible(tm);
    CHECK(!rep.ok);
    CHECK(rep.violations[0].kind == "injectivity");
}

TEST_CASE("validation names the offending rule") {
    TuringMachine tm = one_rule_machine();
    tm.rules.push_back({RuleForm::Standard, 1, 0, 0, 0, Move::Stay});  // leaves halting state
    CHECK_THROWS_AS(validate_machine(tm), std::invalid_argument);
    tm = one_rule_machine();
    tm.rules[0].state_out = 0;  // re-enters q0
    CHECK_THROWS_AS(validate_machine(tm), std::invalid_argument);
}

TEST_CASE("fixture machines are reversible (syntactic and exhaustive)") {
    for (auto tm : {fixtures::sweep(4), fixtures::parity(4), fixtures::qbf1(5)}) {
        auto rep = check_reversible(tm);
        CHECK(rep.ok);
        // exhaustive predecessor count over every configuration
        auto pred = oracle::predecessor_counts(tm);
        for (const auto& [node, count] : pred) CHECK(count <= 1);
    }
}

TEST_CASE("duplicated machines are reversible with <=1 predecessors") {
    for (auto tm : {fixtures::sweep(3), fixtures::parity(3)}) {
        TuringMachine d = duplicate(tm);
        CHECK(check_reversible(d).ok);
        auto pred = oracle::predecessor_counts(d);
        for (const auto& [node, count] : pred) CHECK(count <= 1);
    }
}

TEST_CASE("halting state has no successor") {
    TuringMachine tm = fixtures::sweep(4);
    Configuration c = input_configuration(tm, {1, 2});
    c.state = tm.accept;
    CHECK(successor(tm, c).status == StepStatus::Halted);
}

TEST_CASE("sweep steps match the rule table by hand") {
    TuringMachine tm = fixtures::sweep(4);
    // input "10": tape [1,0,b,b] in symbol ids [2,1,0,0]
    Configuration c = input_configuration(tm, {2, 1});
    CHECK(c.head == 0);
    CHECK(c.state == tm.initial);
    auto r = successor(tm, c);
    REQUIRE(r.status == StepStatus::Ok);
    CHECK(r.next.head == 1);
    CHECK(r.next.state == 2);          // s1 carries the 1
    CHECK(r.next.tape[0] == 0);        // blank written at cell 0
    r = successor(tm, r.next);
    REQUIRE(r.status == StepStatus::Ok);
    CHECK(r.next.state == 1);          // s0 carries the 0
    r = successor(tm, r.next);
    REQUIRE(r.status == StepStatus::Ok);
    CHECK(r.next.state == tm.accept);
}

TEST_CASE("reverse-form rule moves first, then reads") {
    // (q, +, x, q', x') applied on [q, y, x]: expect [y, q', x'].
    TuringMachine tm;
    tm.symbol_names = {"b", "x", "y", "w"};
    tm.blank = 0;
    tm.state_names = {"q0", "q", "p", "qa", "qr"};
    tm.initial = 0;
    tm.accept = 3;
    tm.reject = 4;
    tm.halting = {3, 4};
    tm.tape_length = 3;
    tm.rules = {{RuleForm::Reverse, 1, 1, 2, 3, Move::Right}};  // (q,+,x,p,w)
    Configuration c;
    c.state = 1;
    c.head = 0;
    c.tape = {2, 1, 0};  // sites: q, y, x, b
    auto r = successor(tm, c);
    REQUIRE(r.status == StepStatus::Ok);
    CHECK(r.next.head == 1);            // moved right first
    CHECK(r.next.state == 2);
    CHECK(r.next.tape[0] == 2);         // y untouched at the old site
    CHECK(r.next.tape[1] == 3);         // x rewritten after the move
}

TEST_CASE("duplicate structure counts") {
    TuringMachine tm = fixtures::sweep(4);
    TuringMachine d = duplicate(tm);
    CHECK(d.num_states() == 3 * tm.num_states());
    // transition rules: original + two inverted copies + 2|Gamma| switches
    CHECK(int(d.rules.size()) == 3 * int(tm.rules.size()) + 2 * tm.num_symbols());
    int trans = 0;
    for (const auto& r : d.rules)
        if ((r.state_in == tm.accept || r.state_in == tm.reject) &&
            d.state_flavor(r.state_in) == StateFlavor::Plain)
            ++trans;
    CHECK(trans == 2 * tm.num_symbols());
    CHECK(d.halting.size() == 2);
    CHECK(d.state_flavor(d.halting[0]) == StateFlavor::Accept);
    CHECK(d.base_state[d.halting[0]] == tm.initial);
}

TEST_CASE("duplicate requires reversible standard-form input") {
    TuringMachine tm = one_rule_machine();
    tm.state_names = {"q0", "q1", "qa", "qr"};
    tm.accept = 2; tm.reject = 3; tm.halting = {2, 3};
    tm.rules = {{RuleForm::Standard, 0, 1, 1, 2, Move::Right},
                {RuleForm::Standard, 0, 2, 1, 1, Move::Left}};
    CHECK_THROWS(duplicate(tm));
}

TEST_CASE("duplicated run is symmetric and restores the input tape") {
    for (auto base : {fixtures::sweep(5), fixtures::parity(5)}) {
        TuringMachine d = duplicate(base);
        for (std::vector<int> input : {std::vector<int>{2, 1}, {1, 1, 2}, {2, 2, 2, 1}}) {
            // verdict of the underlying machine fixes the expected flavor
            Configuration plain = input_configuration(base, input);
            while (true) {
                auto r = successor(base, plain);
                if (r.status != StepStatus::Ok) break;
                plain = r.next;
            }
            StateFlavor expect =
                plain.state == base.accept ? StateFlavor::Accept : StateFlavor::Reject;
            Configuration c = input_configuration(d, input);
            std::vector<Configuration> run{c};
            while (true) {
                auto r = successor(d, run.back());
                if (r.status != StepStatus::Ok) {
                    CHECK(r.status == StepStatus::Halted);
                    break;
                }
                run.push_back(r.next);
                REQUIRE(run.size() < 1000);
            }
            // even total length 2T
            REQUIRE(run.size() % 2 == 0);
            const std::size_t twoT = run.size();
            // sink is the relabeled initial configuration: same tape and head
            const Configuration& last = run.back();
            CHECK(d.state_flavor(last.state) == expect);
            CHECK(d.base_state[last.state] == d.initial);
            CHECK(last.tape == run.front().tape);
            CHECK(last.head == run.front().head);
            // mirror symmetry: config at step 2T-s equals config at step s+1
            // with the flavor stripped
            for (std::size_t s = 0; s < twoT / 2; ++s) {
                const Configuration& fwd = run[s];
                const Configuration& bwd = run[twoT - 1 - s];
                CHECK(bwd.tape == fwd.tape);
                CHECK(bwd.head == fwd.head);
                CHECK(d.base_state[bwd.state] == d.base_state[fwd.state]);
                CHECK(d.state_flavor(bwd.state) == expect);
            }
        }
    }
}

TEST_CASE("parity accepts exactly the even-weight inputs") {
    TuringMachine tm = fixtures::parity(5);
    for (int bits = 0; bits < 16; ++bits) {
        std::vector<int> input;
        int ones = 0;
        for (int i = 0; i < 4; ++i) {
            int b = (bits >> i) & 1;
            ones += b;
            input.push_back(b ? 2 : 1);
        }
        Configuration c = input_configuration(tm, input);
        while (true) {
            auto r = successor(tm, c);
            if (r.status != StepStatus::Ok) break;
            c = r.next;
        }
        CHECK((c.state == tm.accept) == (ones % 2 == 0));
    }
}

TEST_CASE("machine file round trip") {
    TuringMachine tm = fixtures::parity(4);
    std::string text = write_machine(tm);
    TuringMachine back = parse_machine_string(text);
    CHECK(back.symbol_names == tm.symbol_names);
    CHECK(back.state_names == tm.state_names);
    CHECK(back.rules == tm.rules);
    CHECK(back.tape_length == tm.tape_length);
    CHECK(back.initial == tm.initial);
    CHECK(back.halting == tm.halting);
}

TEST_CASE("machine file errors") {
    CHECK_THROWS(parse_machine_string("alphabet b 0\nblank b\n"));
    CHECK_THROWS(parse_machine_string(
        "alphabet b 0\nblank b\nstates q0 qa qr\ninitial q0\naccept qa\nreject qr\ntape 2\n"
        "rule std q0 7 qa 0 +\n"));
}

TEST_CASE("input placement") {
    TuringMachine tm = fixtures::sweep(4);
    Configuration c = input_configuration(tm, {});
    CHECK(c.head == 0);
    CHECK(c.state == tm.initial);
    for (auto s : c.tape) CHECK(s == tm.blank);
    c = input_configuration(tm, {2, 1});
    CHECK(c.tape[0] == 2);
    CHECK(c.tape[1] == 1);
    CHECK(c.tape[2] == tm.blank);
    CHECK(c.tape[3] == tm.blank);
    CHECK_THROWS(input_configuration(tm, {1, 1, 1, 1}));    // too long
    CHECK_THROWS(input_configuration(tm, {0}));             // blank not allowed
}

TEST_CASE("chain round trip") {
    TuringMachine tm = fixtures::sweep(4);
    Configuration c = input_configuration(tm, {2, 1, 2});
    for (int h = 0; h <= tm.tape_length; ++h) {
        c.head = h;
        Chain chain = to_chain(tm, c);
        CHECK(from_chain(tm, chain) == c);
    }
}
