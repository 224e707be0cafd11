// system.hpp — truncated Hilbert space for N two-level atoms coupled to one
// lossy cavity mode, plus the operators driving and reading it out.
//
// Basis ordering is fixed project-wide: photon-major, then atom 1 ... atom N,
// i.e. index = n_photon * 2^N + bits(s_1 ... s_N) with atom 1 the most
// significant bit and s_i = 1 for the excited state.

#pragma once

#include <string>
#include <vector>

#include "qrc/matrix.hpp"

namespace qrc {

struct Operator {
    CMatrix mat;
    bool hermitian = false;
    std::string label;
};

struct SystemSpec {
    int n_atom = 0;
    int n_fock = 0;   // retained photon levels 0 .. n_fock-1
    int dim = 0;      // n_fock * 2^n_atom

    CMatrix annihilation;            // cavity c on the full space
    std::vector<CMatrix> lowering;   // per-atom sigma_i on the full space

    int readout_count() const { return 2 * n_atom + 2; }
};

struct ReservoirParams {
    double omega_c = 0.0;          // cavity detuning
    std::vector<double> omega;     // atomic detunings, length n_atom
    std::vector<double> g;         // coupling strengths, length n_atom
    double epsilon = 0.0;          // drive strength
    double kappa = 0.0;            // total decay rate

    void validate(const SystemSpec& spec) const;
};

struct CollapseOp {
    Operator op;       // already scaled by sqrt(rate)
    double rate;
    std::string label;
};

// Builds the space and caches c and sigma_i.  dim above `dim_cap` raises a
// ResourceError.
SystemSpec build_space(int n_atom, int n_fock, int dim_cap = 4096);

// omega_c c^†c + sum_i omega_i sigma_i^†sigma_i + sum_i g_i (c^†sigma_i + c sigma_i^†)
Operator hamiltonian_static(const SystemSpec& spec, const ReservoirParams& params);

// i epsilon f_tilde (c - c^†)
Operator hamiltonian_drive(const SystemSpec& spec, double epsilon, double f_tilde);

// [Q, P, sigma_x1, sigma_y1, ..., sigma_xN, sigma_yN]; readout channel n is
// observable n-1 of this list.
std::vector<Operator> observables(const SystemSpec& spec);

// sqrt(kappa_c) c and sqrt(kappa_i) sigma_i with
// kappa_c = kappa_i = kappa / (2 n_atom + 2).
std::vector<CollapseOp> collapse_operators(const SystemSpec& spec, double kappa);

double per_channel_rate(int n_atom, double kappa);

} // namespace qrc
