#include "eclab/spectral.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <sstream>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace eclab {

namespace {

constexpr double kPi = std::numbers::pi;

/// Smooth form of the quantization condition for boundary (-1, v_sink):
/// A*sin(Tk)*cos(k/2) + cos(Tk)*sin(k/2) with A = 2^{m+1}-1. Roots in
/// ((t-1/2)pi/T, t*pi/T) for t = 1..T; signs at the bracket ends alternate.
double quantization_f(double k, int T, double A) {
    return A * std::sin(T * k) * std::cos(0.5 * k) + std::cos(T * k) * std::sin(0.5 * k);
}

double brent_root(const std::function<double(double)>& f, double a, double b) {
    double fa = f(a), fb = f(b);
    if (fa == 0) return a;
    if (fb == 0) return b;
    if (fa * fb > 0) throw std::runtime_error("brent: no sign change in bracket");
    double c = a, fc = fa, d = b - a, e = d;
    for (int iter = 0; iter < 200; ++iter) {
        if (std::abs(fc) < std::abs(fb)) {
            a = b; b = c; c = a;
            fa = fb; fb = fc; fc = fa;
        }
        double tol = 2 * 1e-16 * std::abs(b) + 1e-17;
        double m = 0.5 * (c - b);
        if (std::abs(m) <= tol || fb == 0) return b;
        if (std::abs(e) < tol || std::abs(fa) <= std::abs(fb)) {
            d = m; e = m;
        } else {
            double s = fb / fa, p, q;
            if (a == c) {
                p = 2 * m * s;
                q = 1 - s;
            } else {
                double qq = fa / fc, r = fb / fc;
                p = s * (2 * m * qq * (qq - r) - (b - a) * (r - 1));
                q = (qq - 1) * (r - 1) * (s - 1);
            }
            if (p > 0) q = -q; else p = -p;
            if (2 * p < std::min(3 * m * q - std::abs(tol * q), std::abs(e * q))) {
                e = d; d = p / q;
            } else {
                d = m; e = m;
            }
        }
        a = b; fa = fb;
        b += (std::abs(d) > tol) ? d : (m > 0 ? tol : -tol);
        fb = f(b);
        if ((fb > 0) == (fc > 0)) { c = a; fc = fa; e = d = b - a; }
    }
    return b;
}

int sink_class_m(double v_sink) {
    if (v_sink == -0.5) return 1;   // coefficient 1/3
    if (v_sink == -0.75) return 2;  // coefficient 1/7
    return 0;
}

std::vector<double> roots_bracketed(int T, double A) {
    std::vector<double> ks(T);
    for (int t = 1; t <= T; ++t) {
        double lo = (t - 0.5) * kPi / T;
        double hi = t * kPi / T;
        auto f = [&](double k) { return quantization_f(k, T, A); };
        // The analytic signs at the bracket ends are (-1)^(t-1) and (-1)^t.
        // With rounded endpoints the evaluated sign can flip, so nudge
        // inward until the signs are right.
        double a = lo, b = hi;
        double want_a = (t % 2 == 1) ? 1.0 : -1.0;
        double step = (hi - lo) * 1e-12;
        for (int i = 0; i < 40 && f(a) * want_a <= 0; ++i, step *= 2) a += step;
        step = (hi - lo) * 1e-12;
        for (int i = 0; i < 40 && f(b) * want_a >= 0; ++i, step *= 2) b -= step;
        ks[t - 1] = brent_root(f, a, b);
    }
    return ks;
}

std::vector<double> roots_generic(int T, double V1, double V2) {
    auto g = [&](double k) {
        return std::sin(T * k) * ((V1 * V2 + 1) * std::cos(k) - (V1 + V2)) +
               (1 - V1 * V2) * std::sin(k) * std::cos(T * k);
    };
    // Uniform scan; the quantization function has T sign changes in (0,pi).
    int cells = 4 * T;
    std::vector<double> ks;
    double prev_k = kPi / (cells * 8.0), prev_g = g(prev_k);
    for (int i = 1; i <= cells; ++i) {
        double k = kPi * i / cells;
        if (i == cells) k = kPi * (1 - 1e-12);
        double gv = g(k);
        if (prev_g == 0) ks.push_back(prev_k);
        else if (prev_g * gv < 0) ks.push_back(brent_root(g, prev_k, k));
        prev_k = k;
        prev_g = gv;
    }
    if (int(ks.size()) != T)
        throw std::runtime_error("hopping solver: found " + std::to_string(ks.size()) +
                                 " roots, expected " + std::to_string(T));
    return ks;
}

}  // namespace

double ck(double k, int M) {
    double s = std::sin(k);
    if (std::abs(s) < 1e-9) {
        // Limit at k -> 0 or pi of M - sin(Mk)/sin(k).
        double c = std::cos(k) >= 0 ? 1.0 : -1.0;
        return M - M * std::cos(M * k) / c;
    }
    return M - std::sin(M * k) / s;
}

double SpectralBlock::eigvec_raw(int t, int n) const {
    return 2.0 * std::sin(momenta[t] * (n - 0.5));
}

double SpectralBlock::eigvec(int t, int n) const {
    return eigvec_raw(t, n) / std::sqrt(norms[t]);
}

SpectralBlock solve_hopping(int T, double v_source, double v_sink, double bulk_diag) {
    if (T < 1) throw std::invalid_argument("solve_hopping: T must be >= 1");
    SpectralBlock b;
    b.length = T;
    b.bulk_diag = bulk_diag;

    std::vector<double> ks;
    if (v_source == -1.0 && v_sink == -1.0) {
        b.cls = "23";
        ks.resize(T);
        for (int t = 1; t <= T; ++t) ks[t - 1] = t * kPi / T;
    } else if (v_source == -1.0 && sink_class_m(v_sink) > 0) {
        int m = sink_class_m(v_sink);
        b.cls = (m == 1) ? "4a5a" : "4r5r";
        ks = roots_bracketed(T, double((1 << (m + 1)) - 1));
    } else {
        b.cls = "generic";
        ks = roots_generic(T, v_source, v_sink);
    }

    b.momenta = std::move(ks);
    b.energies.resize(T);
    b.norms.resize(T);
    for (int t = 0; t < T; ++t) {
        b.energies[t] = bulk_diag + 2 * std::cos(b.momenta[t]);
        b.norms[t] = ck(b.momenta[t], 2 * T);
    }
    return b;
}

SpectralBlock loop_spectrum(int T, double bulk_diag) {
    if (T < 1) throw std::invalid_argument("loop_spectrum: T must be >= 1");
    SpectralBlock b;
    b.length = T;
    b.cls = "loop";
    b.loop = true;
    b.bulk_diag = bulk_diag;
    b.momenta.resize(T);
    b.energies.resize(T);
    for (int t = 0; t < T; ++t) {
        b.momenta[t] = 2 * kPi * t / T;
        b.energies[t] = bulk_diag + 2 * std::cos(b.momenta[t]);
    }
    return b;
}

SpectralBlock component_block(const ConfigGraph& graph, const SparseHamiltonian& h_comp,
                              int component_id) {
    const Component& comp = graph.components[component_id];
    EffectiveHopping eh = effective_hopping(graph, h_comp, comp);
    SpectralBlock b;
    if (comp.kind == ComponentKind::Loop) {
        b = loop_spectrum(eh.length, eh.bulk_diag);
    } else {
        b = solve_hopping(eh.length, eh.v_source.to_double(), eh.v_sink.to_double(),
                          eh.bulk_diag);
    }
    b.component_id = component_id;
    return b;
}

std::vector<SpectralBlock> all_blocks(const ConfigGraph& graph, const SparseHamiltonian& h_comp,
                                      bool parallel) {
    std::vector<SpectralBlock> blocks(graph.components.size());
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 16) if (parallel)
#endif
    for (std::int64_t i = 0; i < std::int64_t(graph.components.size()); ++i)
        blocks[i] = component_block(graph, h_comp, int(i));
    if (h_comp.dim > h_comp.one_state_dim) {
        SpectralBlock vac;
        vac.cls = "vacuum";
        vac.length = int(h_comp.dim - h_comp.one_state_dim);
        vac.bulk_diag = 0;
        vac.momenta.assign(vac.length, 0.0);
        vac.energies.assign(vac.length, 0.0);
        blocks.push_back(std::move(vac));
    }
    return blocks;
}

DegeneracyReport degeneracy_audit(const std::vector<SpectralBlock>& blocks, double tol,
                                  int rational_max_q) {
    DegeneracyReport rep;
    rep.rational_grid_max_q = rational_max_q;

    struct Level {
        double e;
        int block;
        int abclass;  // 0 = other, 1 = 4a5a, 2 = 4r5r
        int len;
    };
    std::vector<Level> levels;
    for (int bi = 0; bi < int(blocks.size()); ++bi) {
        const auto& b = blocks[bi];
        int ac = b.cls == "4a5a" ? 1 : (b.cls == "4r5r" ? 2 : 0);
        for (double e : b.energies) levels.push_back({e, bi, ac, b.length});
    }
    std::sort(levels.begin(), levels.end(), [](const Level& a, const Level& b) { return a.e < b.e; });

    // Only pairs touching a 4a5a/4r5r level matter; class-0 levels may meet
    // each other freely, and those families are enormous.
    auto record = [&](const Level& a, const Level& b) {
        EnergyMatch m;
        m.energy_a = a.e; m.energy_b = b.e;
        m.block_a = a.block; m.block_b = b.block;
        m.cls_a = blocks[a.block].cls; m.cls_b = blocks[b.block].cls;
        m.len_a = a.len; m.len_b = b.len;
        rep.forbidden.push_back(m);
    };
    for (std::size_t i = 0; i < levels.size(); ++i) {
        if (levels[i].abclass == 0) continue;
        const Level& a = levels[i];
        // scan left
        for (std::size_t j = i; j-- > 0 && a.e - levels[j].e <= tol;) {
            const Level& b = levels[j];
            if (b.abclass == 0) record(a, b);
        }
        // scan right
        for (std::size_t j = i + 1; j < levels.size() && levels[j].e - a.e <= tol; ++j) {
            const Level& b = levels[j];
            if (b.abclass == 0) { record(a, b); continue; }
            if (a.abclass != b.abclass) { record(a, b); continue; }
            if (a.len != b.len) record(a, b);
            else ++rep.allowed;
        }
        if (rep.forbidden.size() > 1000) break;  // enough evidence of a broken audit
    }

    // Distance of accept/reject-class energies to 12 + 2cos(pi p/q).
    std::vector<double> grid;
    for (int q = 1; q <= rational_max_q; ++q)
        for (int p = 0; p <= q; ++p) grid.push_back(12 + 2 * std::cos(kPi * p / q));
    std::sort(grid.begin(), grid.end());
    double mind = 1e300;
    for (const auto& lv : levels) {
        if (lv.abclass == 0) continue;
        auto it = std::lower_bound(grid.begin(), grid.end(), lv.e);
        if (it != grid.end()) mind = std::min(mind, std::abs(*it - lv.e));
        if (it != grid.begin()) mind = std::min(mind, std::abs(*(it - 1) - lv.e));
    }
    rep.min_rational_distance = mind;
    return rep;
}

RootCheckReport polynomial_root_check(int m1, int N1, int m2, int N2) {
    if (N1 > 64 || N2 > 64) throw std::invalid_argument("root check: N too large");
    auto roots_of = [](int m, int N) {
        // 2^m x^{2N} + (2^{m+1}-1)(x^{2N-1}+...+x) + 2^m, via companion matrix.
        int deg = 2 * N;
        double lead = std::ldexp(1.0, m);
        double mid = std::ldexp(1.0, m + 1) - 1;
        Eigen::MatrixXd C = Eigen::MatrixXd::Zero(deg, deg);
        for (int i = 1; i < deg; ++i) C(i, i - 1) = 1.0;
        for (int i = 0; i < deg; ++i) {
            double coeff = (i == 0) ? lead : mid;  // coefficient of x^i
            C(i, deg - 1) = -coeff / lead;
        }
        Eigen::VectorXcd ev = C.eigenvalues();
        std::vector<std::complex<double>> roots(ev.size());
        for (int i = 0; i < ev.size(); ++i) roots[i] = ev(i);
        return roots;
    };
    RootCheckReport rep;
    rep.roots_a = roots_of(m1, N1);
    rep.roots_b = roots_of(m2, N2);
    double mind = 1e300, maxdev = 0;
    for (const auto& ra : rep.roots_a) {
        maxdev = std::max(maxdev, std::abs(std::abs(ra) - 1.0));
        for (const auto& rb : rep.roots_b) mind = std::min(mind, std::abs(ra - rb));
    }
    for (const auto& rb : rep.roots_b) maxdev = std::max(maxdev, std::abs(std::abs(rb) - 1.0));
    rep.min_distance = mind;
    return rep;
}

double root_distance_to_roots_of_unity(int m, int N) {
    auto rep = polynomial_root_check(m, N, m, N);
    double mind = 1e300;
    for (const auto& r : rep.roots_a)
        for (int j = 0; j < 2 * N; ++j) {
            std::complex<double> u = std::polar(1.0, 2 * kPi * j / (2 * N));
            mind = std::min(mind, std::abs(r - u));
        }
    return mind;
}

BoundScan scan_norm_ratio_bounds(int maxT) {
    BoundScan out;
    for (int T = 1; T <= maxT; ++T) {
        bool ok = true;
        for (int m : {1, 2}) {
            auto ks = roots_bracketed(T, double((1 << (m + 1)) - 1));
            for (int t = 1; t <= T && ok; ++t) {
                double k = ks[t - 1];
                double cT = ck(k, T), c2T = ck(k, 2 * T);
                if (t == 1 || t == T) {
                    if (cT / (c2T * c2T) > 1.0 / 96.0) ok = false;
                }
                if (t >= 2 && t <= T - 1) {
                    if (cT / c2T > 5.0 / 6.0) ok = false;
                }
            }
            if (!ok) break;
        }
        if (!ok) out.failures.push_back(T);
    }
    out.T0 = out.failures.empty() ? 0 : out.failures.back();
    return out;
}

std::string spectral_report_json(const std::vector<SpectralBlock>& blocks,
                                 const DegeneracyReport& audit) {
    std::ostringstream out;
    out.precision(17);
    out << "{\n  \"blocks\": [\n";
    for (std::size_t i = 0; i < blocks.size(); ++i) {
        const auto& b = blocks[i];
        out << "    {\"class\": \"" << b.cls << "\", \"length\": " << b.length
            << ", \"component\": " << b.component_id << ", \"momenta\": [";
        if (b.cls != "vacuum")
            for (int t = 0; t < b.length; ++t) out << (t ? "," : "") << b.momenta[t];
        out << "], \"energies\": [";
        if (b.cls != "vacuum")
            for (int t = 0; t < b.length; ++t) out << (t ? "," : "") << b.energies[t];
        out << "]}" << (i + 1 < blocks.size() ? "," : "") << "\n";
    }
    out << "  ],\n  \"audit\": {\"forbidden_matches\": " << audit.forbidden.size()
        << ", \"allowed_matches\": " << audit.allowed
        << ", \"min_rational_distance\": " << audit.min_rational_distance
        << ", \"rational_grid_max_q\": " << audit.rational_grid_max_q << "}\n}\n";
    return out.str();
}

}  // namespace eclab
