#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "eclab/rtm.hpp"

namespace eclab {

/// Basis indexing of the exactly-one-state-site sector: the node id packs
/// (head slot, state, tape digits). The same ids label Hamiltonian rows.
struct BasisMap {
    int chain_sites = 0;
    int num_symbols = 0;
    int num_states = 0;
    std::int64_t tape_combos = 0;  // num_symbols^(chain_sites-1)
    std::int64_t one_state_count = 0;

    static BasisMap of(const TuringMachine& tm);
    std::int64_t index_of(const Configuration& c) const;
    Configuration config_at(const TuringMachine& tm, std::int64_t idx) const;
    std::int64_t index_of_chain(const Chain& chain) const;
};

enum class ComponentKind { Loop, Path };
enum class ComponentType { T1, T2, T3, T4a, T4r, T5a, T5r };

std::string component_type_name(ComponentType t);

struct Component {
    ComponentKind kind = ComponentKind::Path;
    ComponentType type = ComponentType::T2;
    std::vector<std::int64_t> nodes;  // source..sink order; loops in cycle order
    int length() const { return int(nodes.size()); }
    int source_state = -1;
    int sink_state = -1;
};

/// Whether path endpoints are classified against q0^a/q0^r (duplicated
/// machines) or against q_a/q_r directly.
enum class ClassifyMode { Auto, Duplicated, Plain };

struct GraphOptions {
    std::int64_t node_cap = 10'000'000;
    bool parallel = true;
    ClassifyMode classify = ClassifyMode::Auto;
};

struct ConfigGraph {
    TuringMachine tm;
    BasisMap basis;
    std::vector<std::int64_t> succ;  // -1 = halted or stuck
    std::vector<std::int64_t> pred;  // -1 = no predecessor
    std::vector<Component> components;
    std::vector<std::int32_t> node_component;
    std::vector<std::int32_t> node_position;  // index inside its component

    std::int64_t num_nodes() const { return basis.one_state_count; }
    const Component& path_of(const Configuration& c) const;
};

/// Full enumeration of the one-state-site sector with successor edges,
/// decomposed into vertex-disjoint paths and loops.
ConfigGraph build_graph(const TuringMachine& tm, const GraphOptions& opts = {});

/// Serial reference enumeration of the successor map; used to validate the
/// parallel kernel.
std::vector<std::int64_t> successor_map_serial(const TuringMachine& tm);

std::string graph_summary_json(const ConfigGraph& g);

}  // namespace eclab
