#pragma once

#include <cstdint>
#include <vector>

namespace eclab {

/// Combinational circuit over AND/OR/XOR/NOT/CONST gates. Wires 0..n-1 are
/// the inputs; gate i defines wire n+i.
struct BoolCircuit {
    enum class Op { And, Or, Xor, Not, Const };
    struct Gate {
        Op op = Op::And;
        int a = 0, b = 0;
        bool cval = false;
    };
    int n_inputs = 0;
    std::vector<Gate> gates;
    std::vector<int> outputs;  // wire ids

    int num_wires() const { return n_inputs + int(gates.size()); }
    std::vector<int> eval_wires(std::uint64_t x) const;
    std::uint64_t eval(std::uint64_t x) const;  // packed output bits, output 0 = lsb
};

/// Keyed bit-mixing function on n bits; a stand-in one-way function with a
/// small circuit so the inversion formulas stay compact.
BoolCircuit toy_owf_circuit(int n_bits, std::uint64_t key, int rounds = 2);

}  // namespace eclab
