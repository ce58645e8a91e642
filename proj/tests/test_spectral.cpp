#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>

#include "eclab/fixtures.hpp"
#include "eclab/spectral.hpp"
#include "oracles.hpp"

using namespace eclab;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("class 23 closed form: k = n pi / T") {
    for (int T : {1, 2, 3, 7, 50}) {
        SpectralBlock b = solve_hopping(T, -1.0, -1.0);
        CHECK(b.cls == "23");
        for (int t = 1; t <= T; ++t) {
            CHECK(b.momenta[t - 1] == t * kPi / T);
            CHECK(b.energies[t - 1] == 12.0 + 2.0 * std::cos(t * kPi / T));
        }
    }
}

TEST_CASE("4a5a T=2 equals dense eigenvalues of [[11,1],[1,11.5]]") {
    SpectralBlock b = solve_hopping(2, -1.0, -0.5);
    auto dense = oracle::sorted_eigenvalues(oracle::dense_hopping(2, 12.0, -1.0, -0.5));
    std::vector<double> got = b.energies;
    std::sort(got.begin(), got.end());
    REQUIRE(got.size() == 2);
    CHECK(got[0] == doctest::Approx(dense[0]).epsilon(1e-12));
    CHECK(got[1] == doctest::Approx(dense[1]).epsilon(1e-12));
}

TEST_CASE("4a5a roots satisfy -(1/3)tan(k/2) = tan(Tk) to 1e-12") {
    for (int T : {3, 8, 33, 100}) {
        SpectralBlock b = solve_hopping(T, -1.0, -0.5);
        for (double k : b.momenta) {
            double f = 3 * std::sin(T * k) * std::cos(k / 2) + std::cos(T * k) * std::sin(k / 2);
            CHECK(std::abs(f) < 1e-12);
        }
    }
}

TEST_CASE("4r5r roots satisfy -(1/7)tan(k/2) = tan(Tk)") {
    SpectralBlock b = solve_hopping(17, -1.0, -0.75);
    CHECK(b.cls == "4r5r");
    for (double k : b.momenta) {
        double f = 7 * std::sin(17 * k) * std::cos(k / 2) + std::cos(17 * k) * std::sin(k / 2);
        CHECK(std::abs(f) < 1e-12);
    }
}

TEST_CASE("momenta bracketing per root index") {
    for (int T : {5, 64}) {
        for (double vs : {-0.5, -0.75}) {
            SpectralBlock b = solve_hopping(T, -1.0, vs);
            for (int t = 1; t <= T; ++t) {
                CHECK(b.momenta[t - 1] > (t - 0.5) * kPi / T);
                CHECK(b.momenta[t - 1] <= t * kPi / T);
            }
        }
    }
}

TEST_CASE("solver eigenvalues match dense diagonalization across classes") {
    for (int T : {1, 2, 3, 5, 17, 60}) {
        struct Case { double vs, vk; };
        for (auto [vs, vk] : {Case{-1.0, -1.0}, Case{-1.0, -0.5}, Case{-1.0, -0.75}}) {
            SpectralBlock b = solve_hopping(T, vs, vk);
            auto dense = oracle::sorted_eigenvalues(oracle::dense_hopping(T, 12.0, vs, vk));
            std::vector<double> got = b.energies;
            std::sort(got.begin(), got.end());
            for (int i = 0; i < T; ++i) CHECK(std::abs(got[i] - dense[i]) < 1e-9);
        }
        SpectralBlock l = loop_spectrum(T);
        auto dense = oracle::sorted_eigenvalues(oracle::dense_loop(T, 12.0));
        std::vector<double> got = l.energies;
        std::sort(got.begin(), got.end());
        for (int i = 0; i < T; ++i) CHECK(std::abs(got[i] - dense[i]) < 1e-9);
    }
}

TEST_CASE("eigenvectors match dense ones and are orthonormal") {
    for (int T : {3, 12, 40, 200}) {
        for (double vk : {-1.0, -0.5, -0.75}) {
            SpectralBlock b = solve_hopping(T, -1.0, vk);
            Eigen::MatrixXd H = oracle::dense_hopping(T, 12.0, -1.0, vk);
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(H);
            for (int t = 0; t < T; ++t) {
                int match = -1;
                for (int j = 0; j < T; ++j)
                    if (std::abs(es.eigenvalues()(j) - b.energies[t]) < 1e-7) match = j;
                REQUIRE(match >= 0);
                double dot = 0, na = 0;
                for (int n = 1; n <= T; ++n) {
                    dot += b.eigvec(t, n) * es.eigenvectors()(n - 1, match);
                    na += b.eigvec(t, n) * b.eigvec(t, n);
                }
                CHECK(std::abs(na - 1.0) < 1e-10);
                CHECK(std::abs(dot) >= 1.0 - 1e-8);
            }
            for (int a = 0; a < T; ++a)
                for (int c = a + 1; c < T; ++c) {
                    double dot = 0;
                    for (int n = 1; n <= T; ++n) dot += b.eigvec(a, n) * b.eigvec(c, n);
                    CHECK(std::abs(dot) < 1e-10);
                }
        }
    }
}

TEST_CASE("normalization identity C_k = 2T - sin(2Tk)/sin(k)") {
    for (int T : {2, 9, 77}) {
        for (double vk : {-0.5, -0.75}) {
            SpectralBlock b = solve_hopping(T, -1.0, vk);
            for (int t = 0; t < T; ++t) {
                double direct = 0;
                for (int n = 1; n <= T; ++n) {
                    double k = b.momenta[t];
                    double re = std::cos(-k * n) - std::cos(k * n - k);
                    double im = std::sin(-k * n) - std::sin(k * n - k);
                    direct += re * re + im * im;
                }
                CHECK(std::abs(direct - b.norms[t]) < 1e-10);
            }
        }
    }
}

TEST_CASE("loop spectra") {
    SpectralBlock b = loop_spectrum(4);
    std::vector<double> got = b.energies;
    std::sort(got.begin(), got.end());
    CHECK(got[0] == doctest::Approx(10.0));
    CHECK(got[1] == doctest::Approx(12.0));
    CHECK(got[2] == doctest::Approx(12.0));
    CHECK(got[3] == doctest::Approx(14.0));
    SpectralBlock b1 = loop_spectrum(1);
    CHECK(b1.energies[0] == doctest::Approx(14.0));
    SpectralBlock b3 = loop_spectrum(3);
    std::vector<double> g3 = b3.energies;
    std::sort(g3.begin(), g3.end());
    CHECK(g3[0] == doctest::Approx(11.0));
    CHECK(g3[1] == doctest::Approx(11.0));
    CHECK(g3[2] == doctest::Approx(14.0));
}

TEST_CASE("degeneracy audit on fixture machines") {
    for (auto base : {fixtures::sweep(3), fixtures::parity(3)}) {
        TuringMachine d = duplicate(base);
        ConfigGraph g = build_graph(d);
        SparseHamiltonian hc = computation_hamiltonian(compile(d), d);
        verify_component_blocks(g, hc);
        auto blocks = all_blocks(g, hc);
        DegeneracyReport rep = degeneracy_audit(blocks, 1e-9);
        CHECK(rep.ok());
        CHECK(rep.min_rational_distance > 1e-9);
    }
}

TEST_CASE("equal-length same-class paths share spectra (allowed)") {
    TuringMachine d = duplicate(fixtures::sweep(3));
    ConfigGraph g = build_graph(d);
    SparseHamiltonian hc = computation_hamiltonian(compile(d), d);
    auto blocks = all_blocks(g, hc);
    DegeneracyReport rep = degeneracy_audit(blocks, 1e-9);
    CHECK(rep.allowed > 0);
}

TEST_CASE("cross-class audit on synthetic blocks") {
    std::vector<SpectralBlock> blocks;
    blocks.push_back(solve_hopping(3, -1.0, -0.5));
    blocks.push_back(solve_hopping(3, -1.0, -1.0));
    DegeneracyReport rep = degeneracy_audit(blocks, 1e-9);
    CHECK(rep.ok());
    // a forbidden pair (same class, different recorded length) is flagged
    blocks.push_back(solve_hopping(3, -1.0, -0.5));
    blocks.back().length = 4;
    DegeneracyReport rep2 = degeneracy_audit(blocks, 1e-9);
    CHECK(!rep2.ok());
}

TEST_CASE("polynomial root checks") {
    RootCheckReport rep = polynomial_root_check(1, 1, 2, 1);
    CHECK(rep.max_abs_deviation_from_unit_circle < 1e-10);
    CHECK(rep.min_distance > 1e-6);
    // quadratic-formula oracle: roots (-3 +- i sqrt7)/4 and (-7 +- i sqrt15)/8
    std::complex<double> r1(-0.75, std::sqrt(7.0) / 4.0);
    std::complex<double> r2(-0.875, std::sqrt(15.0) / 8.0);
    CHECK(rep.min_distance == doctest::Approx(std::abs(r1 - r2)).epsilon(1e-9));

    RootCheckReport same = polynomial_root_check(2, 3, 2, 3);
    CHECK(same.min_distance < 1e-10);

    for (int m = 1; m <= 4; ++m)
        for (int N : {1, 2, 4, 8, 16})
            CHECK(root_distance_to_roots_of_unity(m, N) > 1e-8);
}

TEST_CASE("norm ratio bound scan finds a small threshold") {
    BoundScan scan = scan_norm_ratio_bounds(96);
    CHECK(scan.T0 >= 0);
    CHECK(scan.T0 <= 64);
}

TEST_CASE("generic potentials fall back to the scan solver") {
    SpectralBlock b = solve_hopping(9, -1.0, -0.25);
    CHECK(b.cls == "generic");
    auto dense = oracle::sorted_eigenvalues(oracle::dense_hopping(9, 12.0, -1.0, -0.25));
    std::vector<double> got = b.energies;
    std::sort(got.begin(), got.end());
    for (int i = 0; i < 9; ++i) CHECK(std::abs(got[i] - dense[i]) < 1e-9);
}

TEST_CASE("spectral report json") {
    std::vector<SpectralBlock> blocks{solve_hopping(2, -1.0, -0.5)};
    auto rep = degeneracy_audit(blocks, 1e-9);
    std::string s = spectral_report_json(blocks, rep);
    CHECK(s.find("\"blocks\"") != std::string::npos);
    CHECK(s.find("4a5a") != std::string::npos);
}
