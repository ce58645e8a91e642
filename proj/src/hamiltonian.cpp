#include "eclab/hamiltonian.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace eclab {

namespace {

struct LocalPattern {
    int span = 2;
    // -1 entries are the wildcard, bound to the same symbol on both sides.
    int in[3] = {0, 0, 0};
    int out[3] = {0, 0, 0};
    bool has_wild = false;
};

/// Local isometry patterns of one rule; site values are symbol ids or
/// num_symbols + state id.
LocalPattern pattern_of(const TransitionRule& r, int S) {
    LocalPattern p;
    auto st = [&](int q) { return S + q; };
    if (r.form == RuleForm::Standard) {
        switch (r.move) {
            case Move::Right:
                p.span = 2;
                p.in[0] = st(r.state_in); p.in[1] = r.symbol_in;
                p.out[0] = r.symbol_out;  p.out[1] = st(r.state_out);
                break;
            case Move::Stay:
                p.span = 2;
                p.in[0] = st(r.state_in); p.in[1] = r.symbol_in;
                p.out[0] = st(r.state_out); p.out[1] = r.symbol_out;
                break;
            case Move::Left:
                p.span = 3;
                p.has_wild = true;
                p.in[0] = -1; p.in[1] = st(r.state_in); p.in[2] = r.symbol_in;
                p.out[0] = st(r.state_out); p.out[1] = -1; p.out[2] = r.symbol_out;
                break;
        }
    } else {
        if (r.move == Move::Right) {
            p.span = 3;
            p.has_wild = true;
            p.in[0] = st(r.state_in); p.in[1] = -1; p.in[2] = r.symbol_in;
            p.out[0] = -1; p.out[1] = st(r.state_out); p.out[2] = r.symbol_out;
        } else {
            p.span = 2;
            p.in[0] = r.symbol_in; p.in[1] = st(r.state_in);
            p.out[0] = st(r.state_out); p.out[1] = r.symbol_out;
        }
    }
    return p;
}

std::int64_t pow_i64(std::int64_t b, int e) {
    std::int64_t r = 1;
    for (int i = 0; i < e; ++i) r *= b;
    return r;
}

}  // namespace

SparseHamiltonian compile(const TuringMachine& tm, const CompileOptions& opts) {
    validate_machine(tm);
    SparseHamiltonian h;
    h.mode = opts.mode;
    h.tm = tm;
    h.basis = BasisMap::of(tm);
    const int N = tm.chain_sites();
    const int S = tm.num_symbols();
    const int Q = tm.num_states();

    std::int64_t vacuum = pow_i64(S, N);
    if (opts.mode == BasisMode::Computational) {
        h.one_state_dim = h.basis.one_state_count;
        h.dim = h.one_state_dim + vacuum;
    } else {
        h.dim = pow_i64(S + Q, N);
        h.one_state_dim = h.dim;
    }
    if (h.dim > opts.dim_cap)
        throw std::length_error("Hamiltonian dimension " + std::to_string(h.dim) +
                                " exceeds cap " + std::to_string(opts.dim_cap));

    h.diag_quarters.assign(h.dim, 0);
    std::vector<SparseHamiltonian::Entry> coo;

    std::vector<LocalPattern> pats;
    for (const auto& r : tm.rules) pats.push_back(pattern_of(r, S));

    Chain chain(N);
    auto add_pair = [&](std::int64_t a, std::int64_t b) {
        // (|out>+|in>)(<out|+<in|): two diagonal units and a symmetric pair.
        if (a == b) {
            h.diag_quarters[a] += 16;
            return;
        }
        h.diag_quarters[a] += 4;
        h.diag_quarters[b] += 4;
        coo.push_back({std::min(a, b), std::max(a, b), 4});
    };

    if (opts.mode == BasisMode::Computational) {
        // Environments range over symbols: both endpoint states stay in the
        // one-state sector. The vacuum block never matches any pattern.
        for (const auto& p : pats) {
            int wild_vals = p.has_wild ? S : 1;
            int env_sites = N - p.span;
            std::int64_t envs = pow_i64(S, env_sites);
            for (int off = 0; off < N; ++off) {
                for (int w = 0; w < wild_vals; ++w) {
                    for (std::int64_t env = 0; env < envs; ++env) {
                        std::int64_t e = env;
                        for (int i = N - 1; i >= 0; --i) {
                            int rel = (i - off + N) % N;
                            if (rel < p.span) continue;
                            chain[i] = std::uint8_t(e % S);
                            e /= S;
                        }
                        for (int rel = 0; rel < p.span; ++rel) {
                            int v = p.in[rel];
                            chain[(off + rel) % N] = std::uint8_t(v < 0 ? w : v);
                        }
                        std::int64_t a = h.basis.index_of_chain(chain);
                        for (int rel = 0; rel < p.span; ++rel) {
                            int v = p.out[rel];
                            chain[(off + rel) % N] = std::uint8_t(v < 0 ? w : v);
                        }
                        std::int64_t b = h.basis.index_of_chain(chain);
                        add_pair(a, b);
                    }
                }
            }
        }
    } else {
        // Full product space: environments range over symbols and states.
        const int V = S + Q;
        auto index_full = [&](const Chain& c) {
            std::int64_t idx = 0;
            for (int i = 0; i < N; ++i) idx = idx * V + c[i];
            return idx;
        };
        for (const auto& p : pats) {
            int wild_vals = p.has_wild ? S : 1;
            int env_sites = N - p.span;
            std::int64_t envs = pow_i64(V, env_sites);
            for (int off = 0; off < N; ++off) {
                for (int w = 0; w < wild_vals; ++w) {
                    for (std::int64_t env = 0; env < envs; ++env) {
                        std::int64_t e = env;
                        for (int i = N - 1; i >= 0; --i) {
                            int rel = (i - off + N) % N;
                            if (rel < p.span) continue;
                            chain[i] = std::uint8_t(e % V);
                            e /= V;
                        }
                        for (int rel = 0; rel < p.span; ++rel) {
                            int v = p.in[rel];
                            chain[(off + rel) % N] = std::uint8_t(v < 0 ? w : v);
                        }
                        std::int64_t a = index_full(chain);
                        for (int rel = 0; rel < p.span; ++rel) {
                            int v = p.out[rel];
                            chain[(off + rel) % N] = std::uint8_t(v < 0 ? w : v);
                        }
                        std::int64_t b = index_full(chain);
                        add_pair(a, b);
                    }
                }
            }
        }
    }

    std::sort(coo.begin(), coo.end(), [](const auto& a, const auto& b) {
        return a.row != b.row ? a.row < b.row : a.col < b.col;
    });
    for (const auto& e : coo) {
        if (!h.offdiag.empty() && h.offdiag.back().row == e.row && h.offdiag.back().col == e.col)
            h.offdiag.back().quarters += e.quarters;
        else
            h.offdiag.push_back(e);
    }
    return h;
}

namespace {

/// Visits (basis index, state id) for every state site in the given basis
/// row; one hit per site holding a state.
template <typename F>
void for_each_state_site(const SparseHamiltonian& h, std::int64_t idx, F&& f) {
    if (h.mode == BasisMode::Computational) {
        if (idx >= h.one_state_dim) return;  // vacuum block
        std::int64_t rest = idx / h.basis.tape_combos;
        f(int(rest % h.basis.num_states));
    } else {
        const int V = h.tm.num_symbols() + h.tm.num_states();
        const int N = h.tm.chain_sites();
        std::int64_t t = idx;
        for (int i = 0; i < N; ++i) {
            int v = int(t % V);
            t /= V;
            if (v >= h.tm.num_symbols()) f(v - h.tm.num_symbols());
        }
    }
}

}  // namespace

SparseHamiltonian computation_hamiltonian(const SparseHamiltonian& h, const TuringMachine& tm) {
    if (!tm.duplicated)
        throw std::invalid_argument("computation_hamiltonian requires a duplicated machine");
    int q0a = -1, q0r = -1;
    for (int q : tm.halting) {
        if (tm.state_flavor(q) == StateFlavor::Accept) q0a = q;
        if (tm.state_flavor(q) == StateFlavor::Reject) q0r = q;
    }
    if (q0a < 0 || q0r < 0)
        throw std::invalid_argument("duplicated machine lacks flavored halting states");

    SparseHamiltonian out = h;
    out.penalties_applied = true;
    for (std::int64_t i = 0; i < h.dim; ++i) {
        for_each_state_site(h, i, [&](int q) {
            out.diag_quarters[i] += 40;           // 10 per state site
            if (q == q0a) out.diag_quarters[i] += 2;   // +1/2
            if (q == q0r) out.diag_quarters[i] += 1;   // +1/4
        });
    }
    return out;
}

double SparseHamiltonian::value(std::int64_t r, std::int64_t c) const {
    return value_exact(r, c).to_double();
}

Dyadic SparseHamiltonian::value_exact(std::int64_t r, std::int64_t c) const {
    if (r == c) return Dyadic(diag_quarters[r], -2);
    std::int64_t a = std::min(r, c), b = std::max(r, c);
    auto it = std::lower_bound(offdiag.begin(), offdiag.end(), a,
                               [](const Entry& e, std::int64_t row) { return e.row < row; });
    for (; it != offdiag.end() && it->row == a; ++it)
        if (it->col == b) return Dyadic(it->quarters, -2);
    return Dyadic();
}

void SparseHamiltonian::apply(const double* x, double* y) const {
    for (std::int64_t i = 0; i < dim; ++i) y[i] = 0.25 * double(diag_quarters[i]) * x[i];
    for (const auto& e : offdiag) {
        double v = 0.25 * double(e.quarters);
        y[e.row] += v * x[e.col];
        y[e.col] += v * x[e.row];
    }
}

EffectiveHopping effective_hopping(const ConfigGraph& graph, const SparseHamiltonian& h_comp,
                                   const Component& comp) {
    EffectiveHopping eh;
    eh.length = comp.length();
    const bool pen = h_comp.penalties_applied;
    eh.bulk_diag = pen ? 12 : 2;
    const std::int64_t bulk_q = pen ? 48 : 8;

    auto fail = [&](const std::string& why) {
        throw std::runtime_error("effective hopping restriction mismatch: " + why);
    };

    if (comp.kind == ComponentKind::Loop) {
        eh.cls = "loop";
        eh.v_source = Dyadic();
        eh.v_sink = Dyadic();
        const int T = comp.length();
        for (int t = 0; t < T; ++t) {
            std::int64_t expect_diag = bulk_q + (T == 1 ? 16 : 0);
            if (h_comp.diag_quarters[comp.nodes[t]] != expect_diag) fail("loop diagonal");
        }
        if (T >= 2) {
            std::int64_t hop_q = (T == 2) ? 8 : 4;  // both loop edges coincide at T=2
            for (int t = 0; t < T - (T == 2 ? 1 : 0); ++t) {
                auto v = h_comp.value_exact(comp.nodes[t], comp.nodes[(t + 1) % T]);
                if (v != Dyadic(hop_q, -2)) fail("loop hopping entry");
            }
        }
        return eh;
    }

    // Sink boundary offset is set by which halting flavor (if any) the sink
    // carries; the source offset is always -1.
    eh.v_source = Dyadic(-1, 0);
    const auto& tm = graph.tm;
    int sink = comp.sink_state;
    bool sink_a = tm.is_halting(sink) && tm.state_flavor(sink) == StateFlavor::Accept;
    bool sink_r = tm.is_halting(sink) && tm.state_flavor(sink) == StateFlavor::Reject;
    if (!tm.duplicated) {
        sink_a = sink == tm.accept;
        sink_r = sink == tm.reject;
    }
    if (pen && sink_a) { eh.cls = "4a5a"; eh.v_sink = Dyadic(-1, -1); }
    else if (pen && sink_r) { eh.cls = "4r5r"; eh.v_sink = Dyadic(-3, -2); }
    else { eh.cls = "23"; eh.v_sink = Dyadic(-1, 0); }

    const int T = comp.length();
    const Dyadic bulk(bulk_q, -2);
    for (int t = 0; t < T; ++t) {
        Dyadic expect = bulk;
        if (t == 0) expect = expect + eh.v_source;
        if (t == T - 1) expect = expect + eh.v_sink;
        if (h_comp.value_exact(comp.nodes[t], comp.nodes[t]) != expect)
            fail("diagonal at position " + std::to_string(t));
    }
    for (int t = 0; t + 1 < T; ++t)
        if (h_comp.value_exact(comp.nodes[t], comp.nodes[t + 1]) != Dyadic(1, 0))
            fail("hopping entry at position " + std::to_string(t));
    return eh;
}

void verify_component_blocks(const ConfigGraph& graph, const SparseHamiltonian& h) {
    std::vector<std::int64_t> per_comp(graph.components.size(), 0);
    for (const auto& e : h.offdiag) {
        if (e.row >= h.one_state_dim || e.col >= h.one_state_dim)
            throw std::runtime_error("off-diagonal entry touches the vacuum block");
        auto ca = graph.node_component[e.row], cb = graph.node_component[e.col];
        if (ca != cb) throw std::runtime_error("off-diagonal entry crosses components");
        auto pa = graph.node_position[e.row], pb = graph.node_position[e.col];
        int T = graph.components[ca].length();
        bool adjacent = std::abs(pa - pb) == 1;
        if (graph.components[ca].kind == ComponentKind::Loop)
            adjacent = adjacent || std::abs(pa - pb) == T - 1;
        if (!adjacent) throw std::runtime_error("off-diagonal entry skips along a component");
        per_comp[ca]++;
    }
    for (std::size_t c = 0; c < graph.components.size(); ++c) {
        const auto& comp = graph.components[c];
        std::int64_t expect;
        if (comp.kind == ComponentKind::Loop)
            expect = comp.length() == 1 ? 0 : (comp.length() == 2 ? 1 : comp.length());
        else
            expect = comp.length() - 1;
        if (per_comp[c] != expect)
            throw std::runtime_error("component has unexpected entry count");
    }
}

bool translation_invariant(const SparseHamiltonian& h) {
    const int N = h.tm.chain_sites();
    const int S = h.tm.num_symbols();
    auto rotate_index = [&](std::int64_t idx) {
        if (h.mode == BasisMode::Computational) {
            if (idx >= h.one_state_dim) {
                // vacuum block: base-S digits
                std::int64_t t = idx - h.one_state_dim;
                std::vector<int> d(N);
                for (int i = N - 1; i >= 0; --i) { d[i] = int(t % S); t /= S; }
                std::int64_t out = 0;
                for (int i = 0; i < N; ++i) out = out * S + d[((i - 1) % N + N) % N];
                return h.one_state_dim + out;
            }
            Configuration c = h.basis.config_at(h.tm, idx);
            Chain chain = to_chain(h.tm, c);
            Chain rot(N);
            for (int i = 0; i < N; ++i) rot[i] = chain[((i - 1) % N + N) % N];
            return h.basis.index_of_chain(rot);
        }
        const int V = S + h.tm.num_states();
        std::int64_t t = idx;
        std::vector<int> d(N);
        for (int i = N - 1; i >= 0; --i) { d[i] = int(t % V); t /= V; }
        std::int64_t out = 0;
        for (int i = 0; i < N; ++i) out = out * V + d[((i - 1) % N + N) % N];
        return out;
    };
    for (std::int64_t i = 0; i < h.dim; ++i)
        if (h.diag_quarters[i] != h.diag_quarters[rotate_index(i)]) return false;
    for (const auto& e : h.offdiag) {
        std::int64_t r = rotate_index(e.row), c = rotate_index(e.col);
        if (h.value_exact(r, c) != Dyadic(e.quarters, -2)) return false;
    }
    return true;
}

std::string matrix_coo_text(const SparseHamiltonian& h) {
    std::ostringstream out;
    out << "% symmetric sparse, dim " << h.dim << "\n";
    for (std::int64_t i = 0; i < h.dim; ++i)
        if (h.diag_quarters[i] != 0)
            out << i << ' ' << i << ' ' << 0.25 * double(h.diag_quarters[i]) << '\n';
    for (const auto& e : h.offdiag)
        out << e.row << ' ' << e.col << ' ' << 0.25 * double(e.quarters) << '\n';
    return out.str();
}

std::string basis_labels_json(const SparseHamiltonian& h, std::int64_t max_rows) {
    std::ostringstream out;
    out << "{\n  \"dim\": " << h.dim << ",\n  \"one_state_dim\": " << h.one_state_dim
        << ",\n  \"labels\": [\n";
    std::int64_t rows = std::min(h.dim, max_rows);
    for (std::int64_t i = 0; i < rows; ++i) {
        out << "    \"";
        if (h.mode == BasisMode::Computational && i < h.one_state_dim) {
            Configuration c = h.basis.config_at(h.tm, i);
            Chain chain = to_chain(h.tm, c);
            for (int s = 0; s < int(chain.size()); ++s) {
                if (s) out << '.';
                if (chain[s] >= h.tm.num_symbols())
                    out << h.tm.state_names[chain[s] - h.tm.num_symbols()];
                else
                    out << h.tm.symbol_names[chain[s]];
            }
        } else if (h.mode == BasisMode::Computational) {
            std::int64_t t = i - h.one_state_dim;
            const int N = h.tm.chain_sites(), S = h.tm.num_symbols();
            std::vector<int> d(N);
            for (int s = N - 1; s >= 0; --s) { d[s] = int(t % S); t /= S; }
            for (int s = 0; s < N; ++s) out << (s ? "." : "") << h.tm.symbol_names[d[s]];
        } else {
            const int V = h.tm.num_symbols() + h.tm.num_states();
            const int N = h.tm.chain_sites();
            std::int64_t t = i;
            std::vector<int> d(N);
            for (int s = N - 1; s >= 0; --s) { d[s] = int(t % V); t /= V; }
            for (int s = 0; s < N; ++s) {
                if (s) out << '.';
                if (d[s] >= h.tm.num_symbols())
                    out << h.tm.state_names[d[s] - h.tm.num_symbols()];
                else
                    out << h.tm.symbol_names[d[s]];
            }
        }
        out << "\"" << (i + 1 < rows ? "," : "") << "\n";
    }
    out << "  ]\n}\n";
    return out.str();
}

}  // namespace eclab
