#include "eclab/cpru.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace eclab {

int DiagonalTemplate::width() const {
    int w = 0;
    std::size_t d = diag.size();
    while ((std::size_t(1) << w) < d) ++w;
    if ((std::size_t(1) << w) != d)
        throw std::invalid_argument("template diagonal size must be a power of two");
    return w;
}

std::int64_t CommutingEnsembleSpec::grid_steps() const {
    double ratio = R.to_double() / delta.to_double();
    std::int64_t k = std::int64_t(std::llround(ratio));
    if (std::abs(ratio - double(k)) > 1e-9 || k % 2 == 0 || !(delta * Dyadic(k, 0) == R))
        throw std::invalid_argument("R/delta must be an odd integer");
    return k;
}

void CommutingEnsembleSpec::validate() const {
    if (qubits < 1 || qubits > 24) throw std::invalid_argument("qubit count out of range");
    grid_steps();
    std::vector<char> covered(qubits, 0);
    for (const auto& t : terms) {
        if (t.template_id < 0 || t.template_id >= int(templates.size()))
            throw std::invalid_argument("term references unknown template");
        int w = templates[t.template_id].width();
        if (int(t.support.size()) != w)
            throw std::invalid_argument("support size does not match template width");
        for (int q : t.support) {
            if (q < 0 || q >= qubits) throw std::invalid_argument("support outside system");
            covered[q] = 1;
        }
    }
    for (int q = 0; q < qubits; ++q)
        if (!covered[q]) throw std::invalid_argument("supports do not cover all qubits");

    // Pairwise commutation. Diagonal templates commute identically; verify
    // numerically on the joint support anyway per the module contract.
    for (std::size_t a = 0; a < terms.size(); ++a)
        for (std::size_t b = a + 1; b < terms.size(); ++b) {
            std::vector<int> joint = terms[a].support;
            for (int q : terms[b].support)
                if (std::find(joint.begin(), joint.end(), q) == joint.end()) joint.push_back(q);
            if (joint.size() > 12) continue;
            auto embed = [&](const CommutingTerm& t) {
                int D = 1 << joint.size();
                Eigen::MatrixXcd M = Eigen::MatrixXcd::Zero(D, D);
                const auto& tpl = templates[t.template_id];
                for (int z = 0; z < D; ++z) {
                    std::uint64_t sub = 0;
                    for (std::size_t j = 0; j < t.support.size(); ++j) {
                        int pos = int(std::find(joint.begin(), joint.end(), t.support[j]) -
                                      joint.begin());
                        sub |= std::uint64_t((z >> pos) & 1) << j;
                    }
                    M(z, z) = tpl.diag[sub].to_double();
                }
                return M;
            };
            Eigen::MatrixXcd A = embed(terms[a]), B = embed(terms[b]);
            if ((A * B - B * A).cwiseAbs().maxCoeff() > 1e-12)
                throw std::invalid_argument("terms do not commute");
        }

    // Completeness: quantum-number tuples must separate all basis states.
    if (qubits <= 22) {
        std::map<std::vector<std::int64_t>, std::uint64_t> seen;
        SampledCommutingHamiltonian probe;
        probe.spec = *this;
        probe.couplings.assign(terms.size(), Dyadic(1, 0));
        for (std::uint64_t z = 0; z < (std::uint64_t(1) << qubits); ++z) {
            std::vector<std::int64_t> tup;
            tup.reserve(terms.size());
            for (int i = 0; i < int(terms.size()); ++i) {
                Dyadic e = probe.term_quantum_number(i, z);
                tup.push_back((std::int64_t(e.mant) << 8) ^ e.exp);
            }
            auto [it, fresh] = seen.emplace(std::move(tup), z);
            if (!fresh)
                throw std::invalid_argument("set is not complete: states " +
                                            std::to_string(it->second) + " and " +
                                            std::to_string(z) + " share all quantum numbers");
        }
    }
}

Dyadic digitize_gaussian(double sample, const Dyadic& R, const Dyadic& delta) {
    double ratio = R.to_double() / delta.to_double();
    std::int64_t K = std::int64_t(std::llround(ratio));
    if (std::abs(ratio - double(K)) > 1e-9 || K % 2 == 0 || !(delta * Dyadic(K, 0) == R))
        throw std::invalid_argument("R/delta must be an odd integer");
    // bins ((k-1/2)delta, (k+1/2)delta], i.e. k = ceil(x/delta - 1/2)
    double q = sample / delta.to_double();
    std::int64_t k = std::int64_t(std::ceil(q - 0.5));
    k = std::clamp(k, -K, K);
    return delta * Dyadic(k, 0);
}

Dyadic SampledCommutingHamiltonian::term_quantum_number(int term, std::uint64_t z) const {
    const auto& t = spec.terms[term];
    const auto& tpl = spec.templates[t.template_id];
    std::uint64_t sub = 0;
    for (std::size_t j = 0; j < t.support.size(); ++j)
        sub |= ((z >> t.support[j]) & 1) << j;
    return tpl.diag[sub];
}

Dyadic SampledCommutingHamiltonian::eigenvalue(std::uint64_t z) const {
    Dyadic e;
    for (int i = 0; i < int(spec.terms.size()); ++i)
        e = e + couplings[i] * term_quantum_number(i, z);
    return e;
}

std::vector<double> SampledCommutingHamiltonian::spectrum() const {
    std::vector<double> out(std::size_t(1) << spec.qubits);
    for (std::uint64_t z = 0; z < out.size(); ++z) out[z] = eigenvalue(z).to_double();
    return out;
}

double SampledCommutingHamiltonian::min_gap() const {
    std::vector<double> s = spectrum();
    std::sort(s.begin(), s.end());
    double g = 1e300;
    for (std::size_t i = 0; i + 1 < s.size(); ++i) g = std::min(g, s[i + 1] - s[i]);
    return g;
}

Eigen::MatrixXcd SampledCommutingHamiltonian::to_dense() const {
    const std::int64_t d = std::int64_t(1) << spec.qubits;
    Eigen::MatrixXcd H = Eigen::MatrixXcd::Zero(d, d);
    for (std::int64_t z = 0; z < d; ++z) H(z, z) = eigenvalue(std::uint64_t(z)).to_double();
    return H;
}

SampledCommutingHamiltonian sample_hamiltonian(const CommutingEnsembleSpec& spec,
                                               std::uint64_t seed) {
    spec.validate();
    SampledCommutingHamiltonian h;
    h.spec = spec;
    Rng rng(seed);
    h.couplings.reserve(spec.terms.size());
    for (std::size_t i = 0; i < spec.terms.size(); ++i)
        h.couplings.push_back(digitize_gaussian(gaussian(rng), spec.R, spec.delta));
    return h;
}

namespace {

DiagonalTemplate z_template() {
    return {"Z", {Dyadic(1, 0), Dyadic(-1, 0)}};
}

DiagonalTemplate zz_template() {
    return {"ZZ", {Dyadic(1, 0), Dyadic(-1, 0), Dyadic(-1, 0), Dyadic(1, 0)}};
}

}  // namespace

CommutingEnsembleSpec z_fields_spec(int n, const Dyadic& R, const Dyadic& delta) {
    CommutingEnsembleSpec s;
    s.qubits = n;
    s.R = R;
    s.delta = delta;
    s.templates = {z_template()};
    for (int q = 0; q < n; ++q) s.terms.push_back({0, {q}});
    return s;
}

CommutingEnsembleSpec zz_chain_spec(int n, const Dyadic& R, const Dyadic& delta) {
    CommutingEnsembleSpec s;
    s.qubits = n;
    s.R = R;
    s.delta = delta;
    s.templates = {z_template(), zz_template()};
    s.terms.push_back({0, {0}});
    for (int q = 0; q + 1 < n; ++q) s.terms.push_back({1, {q, q + 1}});
    return s;
}

void gap_scaling(int n, double beta, int num_terms, Dyadic& R, Dyadic& delta) {
    double target = 1.0 / (std::pow(2.0, beta * n) * num_terms);
    int e = 0;
    while (std::ldexp(1.0, -e) > target) ++e;
    delta = Dyadic(1, -e);
    std::int64_t K = std::int64_t(std::llround(4.0 / delta.to_double()));
    if (K % 2 == 0) K += 1;
    R = delta * Dyadic(K, 0);
}

GapStats gap_statistics(const CommutingEnsembleSpec& spec, int seeds, double threshold,
                        std::uint64_t seed0, bool parallel) {
    spec.validate();
    GapStats st;
    st.seeds = seeds;
    st.threshold = threshold;
    st.min_gaps.assign(seeds, 0.0);
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) if (parallel)
#endif
    for (int s = 0; s < seeds; ++s) {
        SampledCommutingHamiltonian h = sample_hamiltonian(spec, derive_seed(seed0, s));
        st.min_gaps[s] = h.min_gap();
    }
    st.min_observed = 1e300;
    for (double g : st.min_gaps) {
        st.min_observed = std::min(st.min_observed, g);
        if (g <= threshold) ++st.hits;
    }
    return st;
}

}  // namespace eclab
