#include "eclab/qbf.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace eclab {

void QbfFormula::validate() const {
    std::vector<int> seen(num_vars + 1, 0);
    for (const auto& [q, v] : prefix) {
        if (v < 1 || v > num_vars) throw std::invalid_argument("prefix variable out of range");
        if (seen[v]++) throw std::invalid_argument("variable quantified twice");
    }
    for (int v = 1; v <= num_vars; ++v)
        if (!seen[v]) throw std::invalid_argument("variable not quantified (formula not closed)");
    for (const auto& c : clauses)
        for (int l : c.lits) {
            int v = std::abs(l);
            if (v < 1 || v > num_vars) throw std::invalid_argument("literal out of range");
        }
}

std::string QbfFormula::serialize() const {
    std::ostringstream out;
    for (const auto& [q, v] : prefix) out << (q == Quant::Exists ? 'E' : 'A') << v << ' ';
    out << '|';
    for (const auto& c : clauses) {
        for (int l : c.lits) out << l << ' ';
        out << ';';
    }
    return out.str();
}

namespace {

/// Counter-based QDPLL: unit propagation assigns forced existentials and
/// fails on forced universals; branching follows the prefix order.
class Solver {
  public:
    explicit Solver(const QbfFormula& f) : f_(f) {
        val_.assign(f.num_vars + 1, -1);
        quant_.assign(f.num_vars + 1, Quant::Exists);
        order_.assign(f.num_vars + 1, 0);
        for (int i = 0; i < int(f.prefix.size()); ++i) {
            quant_[f.prefix[i].second] = f.prefix[i].first;
            order_[f.prefix[i].second] = i;
        }
        sat_count_.assign(f.clauses.size(), 0);
        unknown_count_.assign(f.clauses.size(), 0);
        occ_.assign(f.num_vars + 1, {});
        for (int c = 0; c < int(f.clauses.size()); ++c) {
            unknown_count_[c] = int(f.clauses[c].lits.size());
            for (int l : f.clauses[c].lits) occ_[std::abs(l)].push_back(c);
        }
        unsat_clauses_ = int(f.clauses.size());
    }

    bool solve() { return solve_from(0); }

  private:
    const QbfFormula& f_;
    std::vector<int> val_;
    std::vector<Quant> quant_;
    std::vector<int> order_;
    std::vector<int> sat_count_, unknown_count_;
    std::vector<std::vector<int>> occ_;
    std::vector<int> trail_;
    int unsat_clauses_ = 0;  // clauses not yet satisfied by any literal

    bool assign(int v, int b) {
        val_[v] = b;
        trail_.push_back(v);
        bool ok = true;
        for (int c : occ_[v]) {
            // A variable can appear several times in one clause.
            for (int l : f_.clauses[c].lits) {
                if (std::abs(l) != v) continue;
                --unknown_count_[c];
                if ((l > 0) == (b == 1)) {
                    if (sat_count_[c]++ == 0) --unsat_clauses_;
                }
            }
            if (sat_count_[c] == 0 && unknown_count_[c] == 0) ok = false;  // falsified
        }
        return ok;
    }

    void undo_to(std::size_t mark) {
        while (trail_.size() > mark) {
            int v = trail_.back();
            trail_.pop_back();
            int b = val_[v];
            val_[v] = -1;
            for (int c : occ_[v]) {
                for (int l : f_.clauses[c].lits) {
                    if (std::abs(l) != v) continue;
                    ++unknown_count_[c];
                    if ((l > 0) == (b == 1)) {
                        if (--sat_count_[c] == 0) ++unsat_clauses_;
                    }
                }
            }
        }
    }

    /// Returns false on conflict (or a forced universal).
    bool propagate() {
        bool changed = true;
        while (changed) {
            changed = false;
            for (int c = 0; c < int(f_.clauses.size()); ++c) {
                if (sat_count_[c] > 0) continue;
                if (unknown_count_[c] == 0) return false;
                if (unknown_count_[c] != 1) continue;
                int unit = 0;
                for (int l : f_.clauses[c].lits)
                    if (val_[std::abs(l)] == -1) unit = l;
                int v = std::abs(unit);
                if (quant_[v] == Quant::ForAll) return false;
                if (!assign(v, unit > 0 ? 1 : 0)) return false;
                changed = true;
            }
        }
        return true;
    }

    std::int64_t budget_ = std::int64_t(1) << 26;

    bool solve_from(int pos) {
        if (--budget_ < 0) throw std::length_error("tqbf_eval: branch budget exhausted");
        std::size_t mark = trail_.size();
        if (!propagate()) {
            undo_to(mark);
            return false;
        }
        if (unsat_clauses_ == 0) {
            undo_to(mark);
            return true;
        }
        while (pos < int(f_.prefix.size()) && val_[f_.prefix[pos].second] != -1) ++pos;
        if (pos == int(f_.prefix.size())) {
            // all variables assigned and some clause still unsatisfied
            undo_to(mark);
            return false;
        }
        auto [q, v] = f_.prefix[pos];
        bool result;
        if (q == Quant::Exists) {
            result = false;
            for (int b = 0; b < 2 && !result; ++b) {
                std::size_t m2 = trail_.size();
                if (assign(v, b)) result = solve_from(pos + 1);
                undo_to(m2);
            }
        } else {
            result = true;
            for (int b = 0; b < 2 && result; ++b) {
                std::size_t m2 = trail_.size();
                if (assign(v, b)) result = solve_from(pos + 1);
                else result = false;
                undo_to(m2);
            }
        }
        undo_to(mark);
        return result;
    }
};

}  // namespace

bool tqbf_eval(const QbfFormula& f) {
    f.validate();
    // Arbitrary formulas are capped at 24 branch variables; propagation-
    // friendly ones (gate-consistency encodings) may go to 64 under the
    // branch budget.
    if (f.num_vars > 64) throw std::length_error("tqbf_eval: more than 64 variables");
    if (f.clauses.empty()) return true;
    Solver s(f);
    return s.solve();
}

QbfFormula inversion_formula(const BoolCircuit& c, std::uint64_t y,
                             const std::vector<int>& fixed_bits, EncodeMode mode) {
    QbfFormula f;
    const int n = c.n_inputs;
    if (mode == EncodeMode::TruthTable) {
        if (n > 12) throw std::length_error("truth-table encoding capped at 12 inputs");
        f.num_vars = n;
        for (int v = 1; v <= n; ++v) f.prefix.push_back({Quant::Exists, v});
        for (std::uint64_t x = 0; x < (std::uint64_t(1) << n); ++x) {
            if (c.eval(x) == y) continue;
            Clause cl;  // forbid this assignment
            for (int i = 0; i < n; ++i)
                cl.lits.push_back(((x >> i) & 1) ? -(i + 1) : (i + 1));
            f.clauses.push_back(std::move(cl));
        }
    } else {
        // One variable per wire; gate consistency clauses.
        f.num_vars = c.num_wires();
        for (int v = 1; v <= f.num_vars; ++v) f.prefix.push_back({Quant::Exists, v});
        auto var = [](int wire) { return wire + 1; };
        for (std::size_t g = 0; g < c.gates.size(); ++g) {
            const auto& gt = c.gates[g];
            int v = var(c.n_inputs + int(g)), a = var(gt.a), b = var(gt.b);
            switch (gt.op) {
                case BoolCircuit::Op::And:
                    f.clauses.push_back({{-v, a}});
                    f.clauses.push_back({{-v, b}});
                    f.clauses.push_back({{v, -a, -b}});
                    break;
                case BoolCircuit::Op::Or:
                    f.clauses.push_back({{v, -a}});
                    f.clauses.push_back({{v, -b}});
                    f.clauses.push_back({{-v, a, b}});
                    break;
                case BoolCircuit::Op::Xor:
                    f.clauses.push_back({{-v, a, b}});
                    f.clauses.push_back({{-v, -a, -b}});
                    f.clauses.push_back({{v, -a, b}});
                    f.clauses.push_back({{v, a, -b}});
                    break;
                case BoolCircuit::Op::Not:
                    f.clauses.push_back({{v, a}});
                    f.clauses.push_back({{-v, -a}});
                    break;
                case BoolCircuit::Op::Const:
                    f.clauses.push_back({{gt.cval ? v : -v}});
                    break;
            }
        }
        for (std::size_t i = 0; i < c.outputs.size(); ++i) {
            int v = var(c.outputs[i]);
            f.clauses.push_back({{((y >> i) & 1) ? v : -v}});
        }
    }
    for (std::size_t i = 0; i < fixed_bits.size(); ++i)
        f.clauses.push_back({{fixed_bits[i] ? int(i) + 1 : -(int(i) + 1)}});
    return f;
}

}  // namespace eclab
