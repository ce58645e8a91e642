#include "eclab/machine_file.hpp"

#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

namespace eclab {

namespace {

Move parse_move(const std::string& s, int line) {
    if (s == "+") return Move::Right;
    if (s == "-") return Move::Left;
    if (s == "0") return Move::Stay;
    throw std::invalid_argument("machine file line " + std::to_string(line) +
                                ": bad move '" + s + "'");
}

}  // namespace

TuringMachine parse_machine(std::istream& in) {
    TuringMachine tm;
    tm.tape_length = 0;
    std::map<std::string, int> sym, st;
    std::string accept_name, reject_name, initial_name, blank_name;
    std::string line;
    int lineno = 0;

    auto sym_id = [&](const std::string& s, int ln) {
        auto it = sym.find(s);
        if (it == sym.end())
            throw std::invalid_argument("machine file line " + std::to_string(ln) +
                                        ": unknown symbol '" + s + "'");
        return it->second;
    };
    auto st_id = [&](const std::string& s, int ln) {
        auto it = st.find(s);
        if (it == st.end())
            throw std::invalid_argument("machine file line " + std::to_string(ln) +
                                        ": unknown state '" + s + "'");
        return it->second;
    };

    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::string kw;
        if (!(ls >> kw)) continue;
        if (kw == "alphabet") {
            std::string s;
            while (ls >> s) {
                if (sym.count(s))
                    throw std::invalid_argument("line " + std::to_string(lineno) +
                                                ": duplicate symbol '" + s + "'");
                sym[s] = int(tm.symbol_names.size());
                tm.symbol_names.push_back(s);
            }
        } else if (kw == "states") {
            std::string s;
            while (ls >> s) {
                if (st.count(s))
                    throw std::invalid_argument("line " + std::to_string(lineno) +
                                                ": duplicate state '" + s + "'");
                st[s] = int(tm.state_names.size());
                tm.state_names.push_back(s);
            }
        } else if (kw == "blank") {
            ls >> blank_name;
        } else if (kw == "initial") {
            ls >> initial_name;
        } else if (kw == "accept") {
            ls >> accept_name;
        } else if (kw == "reject") {
            ls >> reject_name;
        } else if (kw == "tape") {
            ls >> tm.tape_length;
        } else if (kw == "rule") {
            std::string form;
            ls >> form;
            TransitionRule r;
            std::string a, b, c, d, e;
            if (!(ls >> a >> b >> c >> d >> e))
                throw std::invalid_argument("line " + std::to_string(lineno) +
                                            ": rule needs 5 fields");
            if (form == "std") {
                r.form = RuleForm::Standard;
                r.state_in = st_id(a, lineno);
                r.symbol_in = sym_id(b, lineno);
                r.state_out = st_id(c, lineno);
                r.symbol_out = sym_id(d, lineno);
                r.move = parse_move(e, lineno);
            } else if (form == "rev") {
                r.form = RuleForm::Reverse;
                r.state_in = st_id(a, lineno);
                r.move = parse_move(b, lineno);
                r.symbol_in = sym_id(c, lineno);
                r.state_out = st_id(d, lineno);
                r.symbol_out = sym_id(e, lineno);
                if (r.move == Move::Stay) r.form = RuleForm::Standard;
            } else {
                throw std::invalid_argument("line " + std::to_string(lineno) +
                                            ": rule form must be std or rev");
            }
            tm.rules.push_back(r);
        } else {
            throw std::invalid_argument("line " + std::to_string(lineno) +
                                        ": unknown directive '" + kw + "'");
        }
    }
    if (tm.symbol_names.empty()) throw std::invalid_argument("machine file: no alphabet");
    if (tm.state_names.empty()) throw std::invalid_argument("machine file: no states");
    if (blank_name.empty() || !sym.count(blank_name))
        throw std::invalid_argument("machine file: missing or unknown blank symbol");
    if (initial_name.empty() || accept_name.empty() || reject_name.empty())
        throw std::invalid_argument("machine file: initial/accept/reject required");
    if (tm.tape_length < 1) throw std::invalid_argument("machine file: tape length required");
    tm.blank = sym[blank_name];
    tm.initial = st_id(initial_name, 0);
    tm.accept = st_id(accept_name, 0);
    tm.reject = st_id(reject_name, 0);
    tm.halting = {tm.accept, tm.reject};
    tm.flavor.assign(tm.state_names.size(), StateFlavor::Plain);
    tm.base_state.resize(tm.state_names.size());
    for (int i = 0; i < int(tm.state_names.size()); ++i) tm.base_state[i] = i;
    validate_machine(tm);
    return tm;
}

TuringMachine parse_machine_string(const std::string& text) {
    std::istringstream in(text);
    return parse_machine(in);
}

TuringMachine load_machine(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("cannot open machine file: " + path);
    return parse_machine(f);
}

std::string write_machine(const TuringMachine& tm) {
    std::ostringstream out;
    out << "alphabet";
    for (const auto& s : tm.symbol_names) out << ' ' << s;
    out << "\nblank " << tm.symbol_names[tm.blank];
    out << "\nstates";
    for (const auto& s : tm.state_names) out << ' ' << s;
    out << "\ninitial " << tm.state_names[tm.initial];
    out << "\naccept " << tm.state_names[tm.accept];
    out << "\nreject " << tm.state_names[tm.reject];
    out << "\ntape " << tm.tape_length << '\n';
    auto mv = [](Move m) { return m == Move::Right ? "+" : (m == Move::Left ? "-" : "0"); };
    for (const auto& r : tm.rules) {
        if (r.form == RuleForm::Standard)
            out << "rule std " << tm.state_names[r.state_in] << ' '
                << tm.symbol_names[r.symbol_in] << ' ' << tm.state_names[r.state_out] << ' '
                << tm.symbol_names[r.symbol_out] << ' ' << mv(r.move) << '\n';
        else
            out << "rule rev " << tm.state_names[r.state_in] << ' ' << mv(r.move) << ' '
                << tm.symbol_names[r.symbol_in] << ' ' << tm.state_names[r.state_out] << ' '
                << tm.symbol_names[r.symbol_out] << '\n';
    }
    return out.str();
}

}  // namespace eclab
