#include "qrc/system.hpp"

#include <cmath>
#include <string>

namespace qrc {

void ReservoirParams::validate(const SystemSpec& spec) const {
    if (static_cast<int>(omega.size()) != spec.n_atom ||
        static_cast<int>(g.size()) != spec.n_atom)
        throw ContractError("omega and g must have one entry per atom");
    if (!(kappa > 0.0)) throw ContractError("kappa must be positive");
    if (epsilon < 0.0) throw ContractError("epsilon must be nonnegative");
}

namespace {

CMatrix fock_annihilation(int n_fock) {
    CMatrix c(static_cast<std::size_t>(n_fock), static_cast<std::size_t>(n_fock));
    for (int n = 1; n < n_fock; ++n)
        c(static_cast<std::size_t>(n - 1), static_cast<std::size_t>(n)) = std::sqrt(double(n));
    return c;
}

CMatrix atom_lowering() {
    // |g><e| with ordering (g, e)
    CMatrix s(2, 2);
    s(0, 1) = 1.0;
    return s;
}

} // namespace

SystemSpec build_space(int n_atom, int n_fock, int dim_cap) {
    if (n_atom < 0) throw ContractError("n_atom must be >= 0");
    if (n_fock < 2) throw ContractError("n_fock must be >= 2");
    const long long dim_ll = static_cast<long long>(n_fock) << n_atom;
    if (dim_ll > dim_cap)
        throw ResourceError("Hilbert dimension " + std::to_string(dim_ll) +
                            " exceeds cap " + std::to_string(dim_cap));

    SystemSpec spec;
    spec.n_atom = n_atom;
    spec.n_fock = n_fock;
    spec.dim = static_cast<int>(dim_ll);

    const int atom_dim = 1 << n_atom;
    spec.annihilation = kron(fock_annihilation(n_fock), CMatrix::identity(atom_dim));

    const CMatrix sigma = atom_lowering();
    spec.lowering.reserve(static_cast<std::size_t>(n_atom));
    for (int i = 0; i < n_atom; ++i) {
        // atom 1 occupies the most significant atomic bit
        const int left = 1 << i;
        const int right = 1 << (n_atom - i - 1);
        CMatrix op = kron(CMatrix::identity(left), kron(sigma, CMatrix::identity(right)));
        spec.lowering.push_back(kron(CMatrix::identity(n_fock), op));
    }
    return spec;
}

Operator hamiltonian_static(const SystemSpec& spec, const ReservoirParams& params) {
    params.validate(spec);
    const CMatrix& c = spec.annihilation;
    CMatrix h = matmul(adjoint(c), c);
    h *= cd(params.omega_c, 0.0);
    for (int i = 0; i < spec.n_atom; ++i) {
        const CMatrix& s = spec.lowering[static_cast<std::size_t>(i)];
        const CMatrix sd = adjoint(s);
        CMatrix number = matmul(sd, s);
        number *= cd(params.omega[static_cast<std::size_t>(i)], 0.0);
        h += number;
        CMatrix coupling = matmul(adjoint(c), s);
        coupling += matmul(c, sd);
        coupling *= cd(params.g[static_cast<std::size_t>(i)], 0.0);
        h += coupling;
    }
    return {std::move(h), true, "H0"};
}

Operator hamiltonian_drive(const SystemSpec& spec, double epsilon, double f_tilde) {
    if (!std::isfinite(f_tilde)) throw ContractError("drive input must be finite");
    const CMatrix& c = spec.annihilation;
    CMatrix h = c;
    h -= adjoint(c);
    h *= cd(0.0, epsilon * f_tilde); // i eps f (c - c^†)
    return {std::move(h), true, "H1"};
}

std::vector<Operator> observables(const SystemSpec& spec) {
    std::vector<Operator> out;
    out.reserve(static_cast<std::size_t>(spec.readout_count()));
    const CMatrix& c = spec.annihilation;
    const CMatrix cdag = adjoint(c);

    CMatrix q = c;
    q += cdag;
    out.push_back({std::move(q), true, "Q"});

    CMatrix p = c;
    p -= cdag;
    p *= cd(0.0, 1.0);
    out.push_back({std::move(p), true, "P"});

    for (int i = 0; i < spec.n_atom; ++i) {
        const CMatrix& s = spec.lowering[static_cast<std::size_t>(i)];
        const CMatrix sd = adjoint(s);
        CMatrix sx = s;
        sx += sd;
        out.push_back({std::move(sx), true, "sigma_x," + std::to_string(i + 1)});
        CMatrix sy = s;
        sy -= sd;
        sy *= cd(0.0, 1.0);
        out.push_back({std::move(sy), true, "sigma_y," + std::to_string(i + 1)});
    }
    return out;
}

double per_channel_rate(int n_atom, double kappa) {
    return kappa / (2.0 * n_atom + 2.0);
}

std::vector<CollapseOp> collapse_operators(const SystemSpec& spec, double kappa) {
    if (!(kappa > 0.0)) throw ContractError("kappa must be positive");
    const double rate = per_channel_rate(spec.n_atom, kappa);
    const double root = std::sqrt(rate);

    std::vector<CollapseOp> out;
    out.reserve(static_cast<std::size_t>(spec.n_atom) + 1);
    CMatrix c = spec.annihilation;
    c *= root;
    out.push_back({{std::move(c), false, "sqrt(kc) c"}, rate, "cavity"});
    for (int i = 0; i < spec.n_atom; ++i) {
        CMatrix s = spec.lowering[static_cast<std::size_t>(i)];
        s *= root;
        out.push_back({{std::move(s), false, "sqrt(ki) sigma_" + std::to_string(i + 1)},
                       rate,
                       "atom" + std::to_string(i + 1)});
    }
    return out;
}

} // namespace qrc
