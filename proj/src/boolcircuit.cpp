#include "eclab/boolcircuit.hpp"

#include <stdexcept>

#include "eclab/sha256.hpp"

namespace eclab {

std::vector<int> BoolCircuit::eval_wires(std::uint64_t x) const {
    std::vector<int> w(num_wires());
    for (int i = 0; i < n_inputs; ++i) w[i] = int((x >> i) & 1);
    for (std::size_t g = 0; g < gates.size(); ++g) {
        const Gate& gt = gates[g];
        int v = 0;
        switch (gt.op) {
            case Op::And: v = w[gt.a] & w[gt.b]; break;
            case Op::Or: v = w[gt.a] | w[gt.b]; break;
            case Op::Xor: v = w[gt.a] ^ w[gt.b]; break;
            case Op::Not: v = 1 - w[gt.a]; break;
            case Op::Const: v = gt.cval ? 1 : 0; break;
        }
        w[n_inputs + g] = v;
    }
    return w;
}

std::uint64_t BoolCircuit::eval(std::uint64_t x) const {
    std::vector<int> w = eval_wires(x);
    std::uint64_t y = 0;
    for (std::size_t i = 0; i < outputs.size(); ++i)
        y |= std::uint64_t(w[outputs[i]]) << i;
    return y;
}

BoolCircuit toy_owf_circuit(int n_bits, std::uint64_t key, int rounds) {
    if (n_bits < 1 || n_bits > 24) throw std::invalid_argument("toy owf: 1..24 bits");
    BoolCircuit c;
    c.n_inputs = n_bits;
    std::vector<int> cur(n_bits);
    for (int i = 0; i < n_bits; ++i) cur[i] = i;

    auto add = [&](BoolCircuit::Op op, int a, int b) {
        c.gates.push_back({op, a, b, false});
        return c.num_wires() - 1;
    };
    // Per round: y_i = x_i XOR (x_{i+1} AND m_i) XOR c_i with key-derived
    // masks; nonlinearity from the AND, diffusion from the rotation.
    for (int r = 0; r < rounds; ++r) {
        std::uint64_t mask = keyed_hash_word(key, 0x1000 + r);
        std::uint64_t cbits = keyed_hash_word(key, 0x2000 + r);
        std::vector<int> next(n_bits);
        for (int i = 0; i < n_bits; ++i) {
            int t = cur[i];
            if ((mask >> i) & 1) {
                int a = add(BoolCircuit::Op::And, cur[(i + 1) % n_bits],
                            cur[(i + 2) % n_bits]);
                t = add(BoolCircuit::Op::Xor, t, a);
            } else {
                t = add(BoolCircuit::Op::Xor, t, cur[(i + 1) % n_bits]);
            }
            if ((cbits >> i) & 1) t = add(BoolCircuit::Op::Not, t, 0);
            next[i] = t;
        }
        cur = next;
    }
    c.outputs = cur;
    return c;
}

}  // namespace eclab
