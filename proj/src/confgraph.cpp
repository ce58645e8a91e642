#include "eclab/confgraph.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace eclab {

BasisMap BasisMap::of(const TuringMachine& tm) {
    BasisMap b;
    b.chain_sites = tm.chain_sites();
    b.num_symbols = tm.num_symbols();
    b.num_states = tm.num_states();
    b.tape_combos = 1;
    for (int i = 0; i < b.chain_sites - 1; ++i) {
        if (b.tape_combos > (std::int64_t(1) << 56) / b.num_symbols)
            throw std::overflow_error("basis too large");
        b.tape_combos *= b.num_symbols;
    }
    b.one_state_count = std::int64_t(b.chain_sites) * b.num_states * b.tape_combos;
    return b;
}

std::int64_t BasisMap::index_of(const Configuration& c) const {
    std::int64_t t = 0;
    for (int i = 0; i < chain_sites - 1; ++i) t = t * num_symbols + c.tape[i];
    return (std::int64_t(c.head) * num_states + c.state) * tape_combos + t;
}

Configuration BasisMap::config_at(const TuringMachine& tm, std::int64_t idx) const {
    Configuration c;
    std::int64_t t = idx % tape_combos;
    std::int64_t rest = idx / tape_combos;
    c.state = int(rest % num_states);
    c.head = int(rest / num_states);
    c.tape.resize(chain_sites - 1);
    for (int i = chain_sites - 2; i >= 0; --i) {
        c.tape[i] = std::uint8_t(t % num_symbols);
        t /= num_symbols;
    }
    (void)tm;
    return c;
}

std::int64_t BasisMap::index_of_chain(const Chain& chain) const {
    int head = -1, state = -1;
    std::int64_t t = 0;
    for (int i = 0; i < chain_sites; ++i) {
        if (chain[i] >= num_symbols) {
            head = i;
            state = chain[i] - num_symbols;
        } else {
            t = t * num_symbols + chain[i];
        }
    }
    if (head < 0) throw std::invalid_argument("chain has no state site");
    return (std::int64_t(head) * num_states + state) * tape_combos + t;
}

namespace {

void fill_chain(const BasisMap& b, std::int64_t idx, Chain& chain) {
    std::int64_t t = idx % b.tape_combos;
    std::int64_t rest = idx / b.tape_combos;
    int state = int(rest % b.num_states);
    int head = int(rest / b.num_states);
    chain.resize(b.chain_sites);
    for (int i = b.chain_sites - 1; i >= 0; --i) {
        if (i == head) continue;
        chain[i] = std::uint8_t(t % b.num_symbols);
        t /= b.num_symbols;
    }
    // Digits were written back-to-front skipping the head slot, matching
    // index_of_chain's front-to-back accumulation.
    chain[head] = std::uint8_t(b.num_symbols + state);
}

std::vector<std::int64_t> successor_map(const TuringMachine& tm, const BasisMap& b,
                                        bool parallel) {
    std::vector<std::int64_t> succ(b.one_state_count, -1);
    const std::int64_t n = b.one_state_count;
#ifdef _OPENMP
#pragma omp parallel if (parallel)
    {
        Chain chain;
#pragma omp for schedule(static)
        for (std::int64_t i = 0; i < n; ++i) {
            fill_chain(b, i, chain);
            if (successor_chain(tm, chain) == StepStatus::Ok)
                succ[i] = b.index_of_chain(chain);
        }
    }
#else
    (void)parallel;
    Chain chain;
    for (std::int64_t i = 0; i < n; ++i) {
        fill_chain(b, i, chain);
        if (successor_chain(tm, chain) == StepStatus::Ok) succ[i] = b.index_of_chain(chain);
    }
#endif
    return succ;
}

ComponentType classify_path(const TuringMachine& tm, bool plain_markers, int source_state,
                            int sink_state) {
    bool src_q0 = source_state == tm.initial;
    bool sink_a, sink_r;
    if (plain_markers) {
        sink_a = sink_state == tm.accept;
        sink_r = sink_state == tm.reject;
    } else {
        sink_a = tm.is_halting(sink_state) && tm.state_flavor(sink_state) == StateFlavor::Accept;
        sink_r = tm.is_halting(sink_state) && tm.state_flavor(sink_state) == StateFlavor::Reject;
    }
    if (src_q0 && sink_a) return ComponentType::T5a;
    if (src_q0 && sink_r) return ComponentType::T5r;
    if (src_q0) return ComponentType::T3;
    if (sink_a) return ComponentType::T4a;
    if (sink_r) return ComponentType::T4r;
    return ComponentType::T2;
}

}  // namespace

std::vector<std::int64_t> successor_map_serial(const TuringMachine& tm) {
    return successor_map(tm, BasisMap::of(tm), false);
}

ConfigGraph build_graph(const TuringMachine& tm, const GraphOptions& opts) {
    validate_machine(tm);
    ConfigGraph g;
    g.tm = tm;
    g.basis = BasisMap::of(tm);
    if (g.basis.one_state_count > opts.node_cap) {
        std::ostringstream msg;
        msg << "configuration count (chain_sites*|Q|*|Gamma|^(chain_sites-1) = "
            << g.basis.chain_sites << "*" << g.basis.num_states << "*" << g.basis.num_symbols
            << "^" << (g.basis.chain_sites - 1) << " = " << g.basis.one_state_count
            << ") exceeds cap " << opts.node_cap;
        throw std::length_error(msg.str());
    }
    const std::int64_t n = g.basis.one_state_count;
    g.succ = successor_map(tm, g.basis, opts.parallel);

    g.pred.assign(n, -1);
    for (std::int64_t i = 0; i < n; ++i) {
        std::int64_t s = g.succ[i];
        if (s < 0) continue;
        if (g.pred[s] != -1)
            throw std::runtime_error("configuration has two predecessors; machine not reversible"
                                     " at this tape length");
        g.pred[s] = i;
    }

    bool plain_markers;
    switch (opts.classify) {
        case ClassifyMode::Plain: plain_markers = true; break;
        case ClassifyMode::Duplicated: plain_markers = false; break;
        default: plain_markers = !tm.duplicated; break;
    }

    g.node_component.assign(n, -1);
    g.node_position.assign(n, -1);
    auto state_of = [&](std::int64_t idx) {
        return int((idx / g.basis.tape_combos) % g.basis.num_states);
    };

    // Paths start at in-degree-0 nodes; whatever remains lies on loops.
    for (std::int64_t i = 0; i < n; ++i) {
        if (g.pred[i] != -1) continue;
        Component comp;
        comp.kind = ComponentKind::Path;
        std::int64_t cur = i;
        while (true) {
            g.node_component[cur] = std::int32_t(g.components.size());
            g.node_position[cur] = std::int32_t(comp.nodes.size());
            comp.nodes.push_back(cur);
            std::int64_t nxt = g.succ[cur];
            if (nxt < 0) break;
            cur = nxt;
        }
        comp.source_state = state_of(comp.nodes.front());
        comp.sink_state = state_of(comp.nodes.back());
        comp.type = classify_path(tm, plain_markers, comp.source_state, comp.sink_state);
        g.components.push_back(std::move(comp));
    }
    for (std::int64_t i = 0; i < n; ++i) {
        if (g.node_component[i] != -1) continue;
        Component comp;
        comp.kind = ComponentKind::Loop;
        comp.type = ComponentType::T1;
        std::int64_t cur = i;
        do {
            g.node_component[cur] = std::int32_t(g.components.size());
            g.node_position[cur] = std::int32_t(comp.nodes.size());
            comp.nodes.push_back(cur);
            cur = g.succ[cur];
        } while (cur != i);
        comp.source_state = state_of(comp.nodes.front());
        comp.sink_state = comp.source_state;
        g.components.push_back(std::move(comp));
    }
    return g;
}

const Component& ConfigGraph::path_of(const Configuration& c) const {
    if (c.head < 0 || c.head >= basis.chain_sites || c.state < 0 ||
        c.state >= basis.num_states || int(c.tape.size()) != basis.chain_sites - 1)
        throw std::invalid_argument("configuration does not belong to this graph");
    for (auto s : c.tape)
        if (s >= basis.num_symbols)
            throw std::invalid_argument("configuration does not belong to this graph");
    std::int64_t idx = basis.index_of(c);
    return components[node_component[idx]];
}

std::string component_type_name(ComponentType t) {
    switch (t) {
        case ComponentType::T1: return "T1";
        case ComponentType::T2: return "T2";
        case ComponentType::T3: return "T3";
        case ComponentType::T4a: return "T4a";
        case ComponentType::T4r: return "T4r";
        case ComponentType::T5a: return "T5a";
        case ComponentType::T5r: return "T5r";
    }
    return "?";
}

std::string graph_summary_json(const ConfigGraph& g) {
    // Aggregated by (kind, type, length, source, sink): individual
    // components can number in the hundreds of thousands.
    std::map<std::tuple<int, int, int, int, int>, int> counts;
    for (const auto& c : g.components)
        counts[{int(c.kind), int(c.type), c.length(), c.source_state, c.sink_state}]++;
    std::ostringstream out;
    out << "{\n  \"nodes\": " << g.num_nodes() << ",\n  \"components\": " << g.components.size()
        << ",\n  \"groups\": [\n";
    bool first = true;
    for (const auto& [key, cnt] : counts) {
        auto [kind, type, len, src, sink] = key;
        if (!first) out << ",\n";
        first = false;
        out << "    {\"kind\": \"" << (kind == int(ComponentKind::Loop) ? "loop" : "path")
            << "\", \"type\": \"" << component_type_name(ComponentType(type))
            << "\", \"length\": " << len << ", \"source\": \"" << g.tm.state_names[src]
            << "\", \"sink\": \"" << g.tm.state_names[sink] << "\", \"count\": " << cnt << "}";
    }
    out << "\n  ]\n}\n";
    return out.str();
}

}  // namespace eclab
