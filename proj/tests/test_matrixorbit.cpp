#include "om/matrixorbit.hpp"

#include "om/errors.hpp"
#include "oracles.hpp"

#include "doctest.h"

#include <cmath>
#include <complex>
#include <functional>
#include <stdexcept>

using namespace om;

namespace {

const std::complex<double> I{0.0, 1.0};

CMatrix diag(const std::vector<std::complex<double>>& d) {
    CMatrix M = CMatrix::Zero(static_cast<Eigen::Index>(d.size()),
                              static_cast<Eigen::Index>(d.size()));
    for (std::size_t k = 0; k < d.size(); ++k)
        M(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(k)) = d[k];
    return M;
}

errc code_of(const std::function<void()>& fn) {
    try {
        fn();
    } catch (const error& e) {
        return e.code();
    }
    throw std::logic_error("expected an om::error");
}

} // namespace

TEST_CASE("norms and the commutator defect") {
    CHECK(operator_norm(diag({2.0, -3.0})) == doctest::Approx(3.0));
    CHECK(normality_defect(diag({1.0, I})) == doctest::Approx(0.0).epsilon(1e-12));
    CMatrix shift = CMatrix::Zero(2, 2);
    shift(0, 1) = 1.0;
    CHECK(normality_defect(shift) == doctest::Approx(1.0));
    CHECK(code_of([&] { eigen_normal(shift); }) == errc::not_normal);
}

TEST_CASE("spectral reduction orders atoms and preserves the matrix") {
    SUBCASE("real spectrum") {
        const SpectralData sd = eigen_normal(diag({1.0, -1.0, 0.0}));
        REQUIRE(sd.atoms.size() == 3);
        CHECK(sd.atoms[0].point.re == doctest::Approx(-1.0));
        CHECK(sd.atoms[1].point.re == doctest::Approx(0.0));
        CHECK(sd.atoms[2].point.re == doctest::Approx(1.0));
        CHECK(sd.atoms[0].cls.free == std::vector<Int>{1});
    }
    SUBCASE("imaginary pair sorts by imaginary part") {
        CMatrix rot = CMatrix::Zero(2, 2);
        rot(0, 1) = -1.0;
        rot(1, 0) = 1.0;
        const SpectralData sd = eigen_normal(rot);
        REQUIRE(sd.atoms.size() == 2);
        CHECK(sd.atoms[0].point.im == doctest::Approx(-1.0));
        CHECK(sd.atoms[1].point.im == doctest::Approx(1.0));
    }
    SUBCASE("random normal matrices round-trip through the basis") {
        RandomStream rng(99);
        for (int rep = 0; rep < 5; ++rep) {
            const std::size_t n = 2 + rng.below(5);
            const CMatrix M = testgen::random_normal(rng, n);
            const SpectralData sd = eigen_normal(M);
            const Eigen::Index ni = static_cast<Eigen::Index>(n);
            CHECK(operator_norm(sd.basis.adjoint() * sd.basis - CMatrix::Identity(ni, ni)) <
                  1e-10);
            CMatrix R = sd.basis.adjoint() * M * sd.basis;
            for (Eigen::Index k = 0; k < ni; ++k) R(k, k) -= sd.values(k);
            CHECK(operator_norm(R) < 1e-8 * std::max(1.0, operator_norm(M)));
            // cluster sizes account for every basis column
            std::size_t total = 0;
            for (const IndexSet& c : sd.clusters) total += c.size();
            CHECK(total == n);
        }
    }
}

TEST_CASE("eigenvalue clustering merges and flags ambiguity") {
    SUBCASE("tiny gaps merge into one atom") {
        const SpectralData sd = eigen_normal(diag({1.0, 1.0 + 1e-14, 5.0}));
        REQUIRE(sd.atoms.size() == 2);
        CHECK(sd.atoms[0].point.re == doctest::Approx(1.0));
        CHECK(sd.atoms[0].cls.free == std::vector<Int>{2});
        CHECK(sd.clusters[0].size() == 2);
    }
    SUBCASE("gaps just past the tolerance are ambiguous") {
        SpectralOptions opts;
        opts.cluster_tol = 1e-8;
        CHECK(code_of([&] { eigen_normal(diag({0.0, 1.5e-8}), opts); }) ==
              errc::cluster_ambiguity);
    }
    SUBCASE("option validation") {
        SpectralOptions opts;
        opts.normal_tol = 0.0;
        CHECK(code_of([&] { eigen_normal(diag({1.0}), opts); }) == errc::invalid_option);
        opts.normal_tol = 1e-9;
        opts.cluster_tol = -1.0;
        CHECK(code_of([&] { eigen_normal(diag({1.0}), opts); }) == errc::invalid_option);
    }
}

TEST_CASE("matching unitaries meet their coupling bottleneck") {
    SUBCASE("identical matrices need no motion") {
        RandomStream rng(7);
        const CMatrix M = testgen::random_normal(rng, 4);
        const UnitaryCertificate cu = construct_unitary(M, M);
        CHECK(cu.radius == 0.0);
        CHECK(cu.achieved < 1e-8);
    }
    SUBCASE("a shifted real spectrum") {
        const CMatrix x = diag({0.0, 1.0, 2.0, 3.0});
        const CMatrix y = diag({0.5, 1.0, 2.0, 2.5});
        const UnitaryCertificate cu = construct_unitary(x, y);
        CHECK(cu.radius == doctest::Approx(0.5).epsilon(1e-12));
        CHECK(cu.plan_bottleneck == doctest::Approx(0.5).epsilon(1e-12));
        CHECK(cu.achieved == doctest::Approx(0.5).epsilon(1e-9));
        CHECK(operator_norm(cu.U.adjoint() * cu.U - CMatrix::Identity(4, 4)) < 1e-10);
    }
    SUBCASE("random conjugated pairs") {
        RandomStream rng(1234);
        for (int rep = 0; rep < 6; ++rep) {
            const std::size_t n = 2 + rng.below(5);
            const CMatrix x = testgen::random_normal(rng, n);
            const CMatrix y = testgen::random_normal(rng, n);
            const UnitaryCertificate cu = construct_unitary(x, y);
            const double scale =
                std::max({1.0, operator_norm(x), operator_norm(y)});
            CHECK(cu.achieved <= cu.plan_bottleneck + 1e-8 * scale);
            CHECK(operator_norm(cu.U.adjoint() * cu.U -
                                CMatrix::Identity(static_cast<Eigen::Index>(n),
                                                  static_cast<Eigen::Index>(n))) < 1e-10);
            CHECK(operator_norm(cu.U.adjoint() * x * cu.U - y) ==
                  doctest::Approx(cu.achieved));
        }
    }
    SUBCASE("shape validation") {
        CHECK(code_of([&] { construct_unitary(diag({1.0}), diag({1.0, 2.0})); }) ==
              errc::dimension_mismatch);
        CMatrix bad(1, 1);
        bad(0, 0) = std::nan("");
        CHECK(code_of([&] { construct_unitary(bad, diag({1.0})); }) == errc::schema_violation);
    }
}

TEST_CASE("sorted-spectrum distance for Hermitian pairs") {
    RandomStream rng(55);
    const CMatrix x = testgen::normal_with_spectrum(rng, {0.0, 1.0, 2.0});
    const CMatrix y = testgen::normal_with_spectrum(rng, {0.5, 0.9, 2.2});
    CHECK(hermitian_dist(x, y) == doctest::Approx(0.5).epsilon(1e-9));
    CHECK(hermitian_dist(x, y) == doctest::Approx(oracle::sorted_hermitian_dist(x, y)));

    CMatrix rot = CMatrix::Zero(2, 2);
    rot(0, 1) = -1.0;
    rot(1, 0) = 1.0;
    CHECK(code_of([&] { hermitian_dist(rot, rot); }) == errc::not_hermitian);
}

TEST_CASE("distance estimation is a monotone, seeded upper bound") {
    RandomStream rng(2024);
    const CMatrix x = testgen::random_normal(rng, 3);

    SUBCASE("identical pairs estimate to zero") {
        EstimateOptions opts;
        opts.budget = 1;
        CHECK(estimate_dist(x, x, opts) < 1e-8);
    }
    SUBCASE("bigger budgets never hurt, and reruns are identical") {
        const CMatrix y = testgen::random_normal(rng, 3);
        EstimateOptions small;
        small.budget = 1;
        EstimateOptions big = small;
        big.budget = 4;
        const double e1 = estimate_dist(x, y, small);
        const double e4 = estimate_dist(x, y, big);
        CHECK(e4 <= e1 + 1e-12);
        CHECK(estimate_dist(x, y, big) == e4);
    }
    SUBCASE("the Hermitian case lands on the sorted-spectrum distance") {
        RandomStream hr(88);
        const CMatrix hx = testgen::random_hermitian(hr, 4);
        const CMatrix hy = testgen::random_hermitian(hr, 4);
        EstimateOptions opts;
        opts.budget = 2;
        const double est = estimate_dist(hx, hy, opts);
        const double truth = oracle::sorted_hermitian_dist(hx, hy);
        CHECK(est >= truth - 1e-9);
        CHECK(est <= truth + 1e-6);
    }
}

TEST_CASE("bound audits re-verify every promised ordering") {
    AuditOptions opts;
    opts.discs.pitch = 0.1;
    opts.estimate.budget = 2;

    SUBCASE("a Hermitian pair passes clean") {
        RandomStream rng(31);
        const CMatrix x = testgen::random_hermitian(rng, 3);
        const CMatrix y = testgen::random_hermitian(rng, 3);
        const AuditReport rep = audit_bounds(x, y, opts);
        CHECK(rep.pass);
        CHECK(rep.checks.size() == 4);
        CHECK(!rep.interval.has_value());
        CHECK(rep.estimate == doctest::Approx(oracle::sorted_hermitian_dist(x, y)));
        CHECK(rep.achieved <= rep.metrics.D_c + 1e-8);
    }
    SUBCASE("a cross pair keeps the estimate between the disc and cone bounds") {
        const CMatrix x = diag({-1.0, 0.0, 1.0});
        const CMatrix y = diag({-I, 0.0 * I, I});
        const AuditReport rep = audit_bounds(x, y, opts);
        CHECK(rep.pass);
        CHECK(rep.metrics.D_T == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
        CHECK(rep.metrics.D_c == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
        CHECK(rep.estimate >= 1.0 - 1e-6);
        CHECK(rep.estimate <= std::sqrt(2.0) + 1e-6);
    }
    SUBCASE("supplied obstruction values are folded into the checks") {
        RandomStream rng(77);
        const CMatrix x = testgen::random_normal(rng, 3);
        RhoValues zero;
        const AuditReport rep = audit_bounds(x, x, opts, zero);
        CHECK(rep.pass);
        CHECK(rep.checks.size() == 7);
        REQUIRE(rep.interval.has_value());
        CHECK(rep.interval->lower == doctest::Approx(0.0));

        RhoValues inflated;
        inflated.rho_x = 5.0;
        inflated.rho_y = 5.0;
        inflated.rho_1 = 5.0;
        inflated.rho = 5.0;
        const AuditReport bad = audit_bounds(x, x, opts, inflated);
        CHECK(!bad.pass);
        bool lower_failed = false;
        for (const AuditCheck& c : bad.checks)
            if (c.name == "estimate-above-interval-lower") lower_failed = !c.pass;
        CHECK(lower_failed);
    }
}
