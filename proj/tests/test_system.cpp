#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "qrc/rng.hpp"
#include "qrc/system.hpp"

using namespace qrc;

TEST_CASE("build_space: photon-only ladder operator") {
    const SystemSpec spec = build_space(0, 3);
    CHECK(spec.dim == 3);
    CMatrix expected(3, 3);
    expected(0, 1) = std::sqrt(1.0);
    expected(1, 2) = std::sqrt(2.0);
    CHECK(max_abs_diff(spec.annihilation, expected) == 0.0);
}

TEST_CASE("build_space: single-atom lowering operator is I2 (x) |g><e|") {
    const SystemSpec spec = build_space(1, 2);
    CHECK(spec.dim == 4);
    // hand-written Kronecker product: entries (0,1) and (2,3)
    CMatrix expected(4, 4);
    expected(0, 1) = 1.0;
    expected(2, 3) = 1.0;
    CHECK(max_abs_diff(spec.lowering[0], expected) == 0.0);

    int nonzero = 0;
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j)
            if (spec.lowering[0](i, j) != cd(0.0, 0.0)) ++nonzero;
    CHECK(nonzero == 2);
}

TEST_CASE("build_space: five atoms at the published truncation") {
    const SystemSpec spec = build_space(5, 15);
    CHECK(spec.dim == 480);
}

TEST_CASE("build_space: dimension cap") {
    CHECK_THROWS_AS(build_space(10, 15), ResourceError);
    CHECK_THROWS_AS(build_space(-1, 4), ContractError);
    CHECK_THROWS_AS(build_space(1, 1), ContractError);
}

TEST_CASE("hamiltonian_static: zero parameters give the zero matrix") {
    const SystemSpec spec = build_space(2, 3);
    ReservoirParams p;
    p.omega_c = 0.0;
    p.omega = {0.0, 0.0};
    p.g = {0.0, 0.0};
    p.epsilon = 0.0;
    p.kappa = 1.0;
    const Operator h = hamiltonian_static(spec, p);
    CHECK(max_abs(h.mat) == 0.0);
}

TEST_CASE("hamiltonian_static: hand expansion for one atom, two Fock levels") {
    const SystemSpec spec = build_space(1, 2);
    ReservoirParams p;
    p.omega_c = 40.0;
    p.omega = {20.0};
    p.g = {30.0};
    p.kappa = 1.0;
    const Operator h = hamiltonian_static(spec, p);

    // ordering |0g>, |0e>, |1g>, |1e>
    CHECK(h.mat(0, 0) == cd(0.0, 0.0));
    CHECK(h.mat(1, 1) == cd(20.0, 0.0));
    CHECK(h.mat(2, 2) == cd(40.0, 0.0));
    CHECK(h.mat(3, 3) == cd(60.0, 0.0));
    CHECK(h.mat(2, 1) == cd(30.0, 0.0));
    CHECK(h.mat(1, 2) == cd(30.0, 0.0));

    double off_elsewhere = 0.0;
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j)
            if (i != j && !(i == 1 && j == 2) && !(i == 2 && j == 1))
                off_elsewhere += std::abs(h.mat(i, j));
    CHECK(off_elsewhere == 0.0);
}

TEST_CASE("hamiltonian_static: Hermitian for random valid parameters") {
    RngStream rng(3, 0);
    for (int trial = 0; trial < 20; ++trial) {
        const int n_atom = static_cast<int>(rng.below(3));
        const SystemSpec spec = build_space(n_atom, 2 + static_cast<int>(rng.below(4)));
        ReservoirParams p;
        p.omega_c = rng.uniform(-50.0, 50.0);
        for (int i = 0; i < n_atom; ++i) {
            p.omega.push_back(rng.uniform(-50.0, 50.0));
            p.g.push_back(rng.uniform(-40.0, 40.0));
        }
        p.kappa = 1.0;
        const Operator h = hamiltonian_static(spec, p);
        CHECK(h.hermitian);
        CHECK(hermitian_defect(h.mat) < 1e-12);
    }
}

TEST_CASE("hamiltonian_static: length mismatch is a contract violation") {
    const SystemSpec spec = build_space(2, 3);
    ReservoirParams p;
    p.omega = {1.0};
    p.g = {1.0, 2.0};
    p.kappa = 1.0;
    CHECK_THROWS_AS(hamiltonian_static(spec, p), ContractError);
}

TEST_CASE("hamiltonian_drive: zero input, explicit 2x2 form, linearity") {
    const SystemSpec cavity = build_space(0, 2);
    CHECK(max_abs(hamiltonian_drive(cavity, 1.0, 0.0).mat) == 0.0);

    // i(c - c†) on {|0>, |1>} = [[0, i], [-i, 0]]
    const Operator h = hamiltonian_drive(cavity, 1.0, 1.0);
    CHECK(h.mat(0, 1) == cd(0.0, 1.0));
    CHECK(h.mat(1, 0) == cd(0.0, -1.0));
    CHECK(h.mat(0, 0) == cd(0.0, 0.0));
    CHECK(hermitian_defect(h.mat) < 1e-15);

    const SystemSpec spec = build_space(1, 5);
    const Operator h1 = hamiltonian_drive(spec, 3.0, 0.8);
    const Operator h2 = hamiltonian_drive(spec, 3.0, 1.6);
    CMatrix doubled = h1.mat;
    doubled *= 2.0;
    CHECK(max_abs_diff(doubled, h2.mat) < 1e-14);

    CHECK_THROWS_AS(hamiltonian_drive(spec, 1.0, std::nan("")), ContractError);
}

TEST_CASE("observables: count, order, hermiticity") {
    const SystemSpec one = build_space(1, 4);
    const auto obs1 = observables(one);
    CHECK(obs1.size() == 4);
    CHECK(obs1[0].label == "Q");
    CHECK(obs1[1].label == "P");
    CHECK(obs1[2].label == "sigma_x,1");
    CHECK(obs1[3].label == "sigma_y,1");
    for (const auto& o : obs1) CHECK(hermitian_defect(o.mat) < 1e-12);

    const SystemSpec five = build_space(5, 2);
    CHECK(observables(five).size() == 12);
}

TEST_CASE("observables: Q^2 + P^2 = 2(2 c†c + 1) away from the truncation edge") {
    const SystemSpec spec = build_space(0, 8);
    const auto obs = observables(spec);
    const CMatrix lhs = matmul(obs[0].mat, obs[0].mat) + matmul(obs[1].mat, obs[1].mat);
    CMatrix rhs = matmul(adjoint(spec.annihilation), spec.annihilation);
    rhs *= 4.0;
    rhs += 2.0 * CMatrix::identity(8);
    // the commutator defect is confined to the top Fock level
    for (std::size_t i = 0; i < 7; ++i)
        for (std::size_t j = 0; j < 7; ++j)
            CHECK(std::abs(lhs(i, j) - rhs(i, j)) < 1e-12);
}

TEST_CASE("collapse_operators: equal per-channel rates kappa/(2N+2)") {
    const SystemSpec one = build_space(1, 3);
    const auto ops1 = collapse_operators(one, 10.0);
    CHECK(ops1.size() == 2);
    CHECK(ops1[0].rate == doctest::Approx(2.5).epsilon(1e-15));
    CHECK(ops1[1].rate == doctest::Approx(2.5).epsilon(1e-15));

    const SystemSpec five = build_space(5, 2);
    const auto ops5 = collapse_operators(five, 10.0);
    CHECK(ops5.size() == 6);
    double total = 0.0;
    for (const auto& op : ops5) {
        CHECK(op.rate == doctest::Approx(10.0 / 12.0).epsilon(1e-15));
        total += op.rate * 2.0; // two homodyne channels per decay channel
    }
    CHECK(total == doctest::Approx(10.0).epsilon(1e-12));
}

TEST_CASE("ladder algebra: [c, c†] = I below the truncation edge, sigma relations") {
    const SystemSpec spec = build_space(2, 6);
    const CMatrix& c = spec.annihilation;
    const CMatrix comm = matmul(c, adjoint(c)) - matmul(adjoint(c), c);
    const std::size_t atom_dim = 4;
    const std::size_t edge = static_cast<std::size_t>(spec.dim) - atom_dim;
    for (std::size_t i = 0; i < edge; ++i)
        for (std::size_t j = 0; j < edge; ++j)
            CHECK(std::abs(comm(i, j) - (i == j ? cd(1.0, 0.0) : cd(0.0, 0.0))) < 1e-12);

    for (const auto& s : spec.lowering) {
        CHECK(max_abs(matmul(s, s)) == 0.0);
        const CMatrix anti = matmul(adjoint(s), s) + matmul(s, adjoint(s));
        CHECK(max_abs_diff(anti, CMatrix::identity(static_cast<std::size_t>(spec.dim))) <
              1e-12);
    }
}

TEST_CASE("operator construction is deterministic") {
    const SystemSpec a = build_space(2, 5);
    const SystemSpec b = build_space(2, 5);
    CHECK(max_abs_diff(a.annihilation, b.annihilation) == 0.0);
    for (std::size_t i = 0; i < a.lowering.size(); ++i)
        CHECK(max_abs_diff(a.lowering[i], b.lowering[i]) == 0.0);
}
