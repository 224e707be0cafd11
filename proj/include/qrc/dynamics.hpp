// dynamics.hpp — deterministic Lindblad evolution (fixed-step RK4) and the
// Ito stochastic master equation with simultaneous homodyne channels
// (Euler-Maruyama).
//
// The master equation carries the dissipators with an overall factor of two:
//   d rho/dt = -i[H, rho] + 2 sum_a D[a] rho,
//   D[a] rho = a rho a† - (a†a rho + rho a†a)/2,
// and the stochastic unraveling adds, per homodyne channel,
//   dW H[a] rho,  H[a] rho = a rho + rho a† - <a + a†> rho,
// with channels paired to collapse operators (a, i a) for each physical decay
// channel, in the readout order Q, P, sigma_x/y per atom.

#pragma once

#include <cmath>
#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "qrc/matrix.hpp"
#include "qrc/rng.hpp"
#include "qrc/system.hpp"

namespace qrc {

struct DensityMatrix {
    CMatrix m;

    static DensityMatrix ground(const SystemSpec& spec);
    static DensityMatrix pure(const SystemSpec& spec, int basis_index);

    double trace_real() const;
    double trace_defect() const { return std::abs(trace_real() - 1.0); }
    double hermitian_error() const { return hermitian_defect(m); }
    double min_eigenvalue() const; // on-demand positivity probe

    // trace within tol_trace of 1, Hermitian to tol_herm
    void validate(double tol_trace = 1e-8, double tol_herm = 1e-10) const;
};

// Per-run integration bookkeeping.  Populated by the evolve calls; merged
// upward by the reservoir loops.
struct EvolveDiagnostics {
    double max_trace_drift = 0.0;   // |tr - 1| before renormalization
    double max_renorm = 0.0;        // largest applied trace correction
    long renorm_events = 0;
    double max_top_fock_population = 0.0; // population of the top two levels
    bool top_fock_warning = false;

    void merge(const EvolveDiagnostics& o);
};

// Gaussian increments, one row per substep, one column per homodyne channel;
// each entry has mean 0 and variance dt.
struct WienerPath {
    double dt = 0.0;
    std::size_t substeps = 0;
    std::size_t channels = 0;
    std::vector<double> dw; // substeps x channels

    static WienerPath draw(RngStream& rng, std::size_t substeps, std::size_t channels,
                           double dt);
    static WienerPath zeros(std::size_t substeps, std::size_t channels, double dt);
    double at(std::size_t step, std::size_t channel) const {
        return dw[step * channels + channel];
    }
};

class LindbladGenerator;

struct LindbladWorkspace {
    CMatrix w, b, k1, k2, k3, k4, stage, next;
    std::vector<cd> g_values;
    double g_drive = std::numeric_limits<double>::quiet_NaN();

    void ensure(const LindbladGenerator& gen);
};

// Precompiled right-hand side for one (H_static, drive pattern, collapse set)
// triple.  The drive enters as H(f) = H_static + f * D with D fixed, so the
// combined generator matrix is refreshed per time step by a values-only
// update.  All applications assume (and preserve) Hermitian rho.
class LindbladGenerator {
public:
    LindbladGenerator(const Operator& h_static, const Operator& drive_pattern,
                      const std::vector<CollapseOp>& collapse);

    // drive pattern = hamiltonian_drive(spec, params.epsilon, 1)
    static LindbladGenerator for_reservoir(const SystemSpec& spec,
                                           const ReservoirParams& params);

    int dim() const { return dim_; }
    int collapse_count() const { return static_cast<int>(ops_.size()); }
    int channel_count() const { return 2 * collapse_count(); }

    // out = -i[H, rho] + 2 sum_a D[a] rho at the drive value prepared in ws
    void rhs(const cd* rho, cd* out, LindbladWorkspace& ws) const;
    void prepare_drive(LindbladWorkspace& ws, double f_tilde) const;

    // Smallest substep counts keeping the fixed-step schemes inside their
    // stability regions for |f| <= f_abs, from the spectral data of H and the
    // decay channels.
    int rk4_substep_floor(double dt, double f_abs) const;
    int em_substep_floor(double dt, double f_abs) const;

    // population of the two highest Fock levels (0 when the generator was not
    // built from a SystemSpec)
    double top_fock_population(const cd* rho) const;

    const std::vector<CsrMatrix>& collapse_csr() const { return ops_; }
    const std::vector<double>& collapse_rates() const { return rates_; }

private:
    friend struct LindbladWorkspace;

    int dim_ = 0;
    int n_fock_ = 0;
    int atom_dim_ = 0;

    // union pattern of -iH_static - sum a†a (v0) and -iD (v1)
    std::vector<int> g_row_ptr_, g_col_;
    std::vector<cd> g_v0_, g_v1_;

    std::vector<CsrMatrix> ops_;
    std::vector<double> rates_;

    // spectral data for the substep floors
    double h_spread_ = 0.0;        // lambda_max - lambda_min of H_static
    double drive_spread_ = 0.0;    // same for the unit drive pattern
    double diss_diag_max_ = 0.0;   // max_j sum_a (a†a)_jj
    std::vector<double> h_eigs_;
    std::vector<double> mode_damping_; // diag of sum_a a†a in the H eigenbasis
};

// General-form right-hand side: -i[H, rho] + 2 sum D[a] rho.
CMatrix lindblad_rhs(const CMatrix& rho, const Operator& h,
                     const std::vector<CollapseOp>& collapse);

using DriveFn = std::function<double(double)>;

// Fixed-step RK4 over [t0, t1) with the piecewise-constant drive value
// drive(t0).  Re-Hermitized and trace-renormalized once at the end of the
// interval; drift beyond 1e-6 before renormalization raises IntegratorError.
DensityMatrix evolve_deterministic(const DensityMatrix& rho, const LindbladGenerator& gen,
                                   const DriveFn& drive, double t0, double t1, int substeps,
                                   LindbladWorkspace& ws,
                                   EvolveDiagnostics* diag = nullptr);

struct SmeStepResult {
    DensityMatrix rho;
    std::vector<double> records;      // <O_n> + dW_n/dt per channel
    double trace_before_renorm = 1.0; // drift + noise terms are both traceless
};

// One Euler-Maruyama update of the conditional state, one Wiener increment
// per homodyne channel.
SmeStepResult sme_step(const DensityMatrix& rho, const LindbladGenerator& gen,
                       double f_tilde, const std::vector<double>& dw, double dt,
                       LindbladWorkspace& ws);

struct StochasticInterval {
    DensityMatrix rho;
    std::vector<double> mean_records; // per channel, averaged over the substeps
};

// Chains sme_step over `substeps` with increments drawn from `rng`
// (channel-major per substep).
StochasticInterval evolve_stochastic(const DensityMatrix& rho, const LindbladGenerator& gen,
                                     const DriveFn& drive, double t0, double t1, int substeps,
                                     RngStream& rng, LindbladWorkspace& ws,
                                     EvolveDiagnostics* diag = nullptr);

// Same, with a caller-supplied path (testing hook).
StochasticInterval evolve_stochastic_path(const DensityMatrix& rho,
                                          const LindbladGenerator& gen, const DriveFn& drive,
                                          double t0, double t1, const WienerPath& path,
                                          LindbladWorkspace& ws,
                                          EvolveDiagnostics* diag = nullptr);

} // namespace qrc
