#include "qrc/dynamics.hpp"

#include <algorithm>
#include <cmath>

#include "qrc/linalg.hpp"

namespace qrc {

// ---------------------------------------------------------------- density

DensityMatrix DensityMatrix::ground(const SystemSpec& spec) {
    return pure(spec, 0);
}

DensityMatrix DensityMatrix::pure(const SystemSpec& spec, int basis_index) {
    if (basis_index < 0 || basis_index >= spec.dim)
        throw ContractError("basis index out of range");
    DensityMatrix rho;
    rho.m = CMatrix(static_cast<std::size_t>(spec.dim), static_cast<std::size_t>(spec.dim));
    rho.m(static_cast<std::size_t>(basis_index), static_cast<std::size_t>(basis_index)) = 1.0;
    return rho;
}

double DensityMatrix::trace_real() const { return trace(m).real(); }

double DensityMatrix::min_eigenvalue() const { return min_hermitian_eigenvalue(m); }

void DensityMatrix::validate(double tol_trace, double tol_herm) const {
    if (trace_defect() > tol_trace)
        throw ContractError("density matrix trace deviates from 1");
    if (hermitian_error() > tol_herm)
        throw ContractError("density matrix is not Hermitian");
}

void EvolveDiagnostics::merge(const EvolveDiagnostics& o) {
    max_trace_drift = std::max(max_trace_drift, o.max_trace_drift);
    max_renorm = std::max(max_renorm, o.max_renorm);
    renorm_events += o.renorm_events;
    max_top_fock_population = std::max(max_top_fock_population, o.max_top_fock_population);
    top_fock_warning = top_fock_warning || o.top_fock_warning;
}

// ---------------------------------------------------------------- wiener

WienerPath WienerPath::draw(RngStream& rng, std::size_t substeps, std::size_t channels,
                            double dt) {
    if (!(dt > 0.0)) throw ContractError("dt must be positive");
    WienerPath p;
    p.dt = dt;
    p.substeps = substeps;
    p.channels = channels;
    p.dw.resize(substeps * channels);
    const double sd = std::sqrt(dt);
    for (auto& w : p.dw) w = rng.normal(sd);
    return p;
}

WienerPath WienerPath::zeros(std::size_t substeps, std::size_t channels, double dt) {
    WienerPath p;
    p.dt = dt;
    p.substeps = substeps;
    p.channels = channels;
    p.dw.assign(substeps * channels, 0.0);
    return p;
}

// ---------------------------------------------------------------- generator

void LindbladWorkspace::ensure(const LindbladGenerator& gen) {
    const auto d = static_cast<std::size_t>(gen.dim());
    if (w.rows() != d) {
        w = CMatrix(d, d);
        b = CMatrix(d, d);
        k1 = CMatrix(d, d);
        k2 = CMatrix(d, d);
        k3 = CMatrix(d, d);
        k4 = CMatrix(d, d);
        stage = CMatrix(d, d);
        next = CMatrix(d, d);
        g_values.assign(gen.g_v0_.size(), cd(0.0, 0.0));
        g_drive = std::numeric_limits<double>::quiet_NaN();
    }
}

namespace {

// Merge two sparse patterns into one CSR with parallel value arrays.
void merge_patterns(const CMatrix& a, const CMatrix& b, std::vector<int>& row_ptr,
                    std::vector<int>& col, std::vector<cd>& va, std::vector<cd>& vb) {
    const std::size_t dim = a.rows();
    row_ptr.assign(dim + 1, 0);
    for (std::size_t r = 0; r < dim; ++r) {
        for (std::size_t c = 0; c < dim; ++c) {
            const cd x = a(r, c), y = b(r, c);
            if (x != cd(0.0, 0.0) || y != cd(0.0, 0.0)) {
                col.push_back(static_cast<int>(c));
                va.push_back(x);
                vb.push_back(y);
            }
        }
        row_ptr[r + 1] = static_cast<int>(col.size());
    }
}

} // namespace

LindbladGenerator::LindbladGenerator(const Operator& h_static, const Operator& drive_pattern,
                                     const std::vector<CollapseOp>& collapse) {
    if (!h_static.mat.square()) throw ContractError("H must be square");
    dim_ = static_cast<int>(h_static.mat.rows());
    if (drive_pattern.mat.rows() != h_static.mat.rows())
        throw ContractError("drive pattern dimension mismatch");
    if (hermitian_defect(h_static.mat) > 1e-12)
        throw ContractError("H_static must be Hermitian");

    const cd mi(0.0, -1.0);

    // G0 = -i H_static - sum_a a†a ; G1 = -i D
    CMatrix g0 = h_static.mat;
    g0 *= mi;
    CMatrix diss_sum(static_cast<std::size_t>(dim_), static_cast<std::size_t>(dim_));
    for (const auto& cop : collapse) {
        if (cop.op.mat.rows() != h_static.mat.rows())
            throw ContractError("collapse operator dimension mismatch");
        CMatrix n_a = matmul(adjoint(cop.op.mat), cop.op.mat);
        diss_sum += n_a;
        ops_.push_back(CsrMatrix::from_dense(cop.op.mat));
        rates_.push_back(cop.rate);
    }
    g0 -= diss_sum;
    CMatrix g1 = drive_pattern.mat;
    g1 *= mi;
    merge_patterns(g0, g1, g_row_ptr_, g_col_, g_v0_, g_v1_);

    // spectral data for the substep floors
    const HermitianEigen hs = hermitian_eigensystem(h_static.mat);
    h_eigs_.assign(hs.values.data(), hs.values.data() + hs.values.size());
    h_spread_ = h_eigs_.empty() ? 0.0 : (h_eigs_.back() - h_eigs_.front());
    drive_spread_ = hermitian_spread(drive_pattern.mat);

    diss_diag_max_ = 0.0;
    mode_damping_.assign(static_cast<std::size_t>(dim_), 0.0);
    const Eigen::MatrixXcd diss_e = to_eigen(diss_sum);
    const Eigen::MatrixXcd in_eigbasis = hs.vectors.adjoint() * diss_e * hs.vectors;
    for (int j = 0; j < dim_; ++j) {
        mode_damping_[static_cast<std::size_t>(j)] = in_eigbasis(j, j).real();
        diss_diag_max_ = std::max(diss_diag_max_, diss_e(j, j).real());
    }
}

LindbladGenerator LindbladGenerator::for_reservoir(const SystemSpec& spec,
                                                   const ReservoirParams& params) {
    LindbladGenerator gen(hamiltonian_static(spec, params),
                          hamiltonian_drive(spec, params.epsilon, 1.0),
                          collapse_operators(spec, params.kappa));
    gen.n_fock_ = spec.n_fock;
    gen.atom_dim_ = 1 << spec.n_atom;
    return gen;
}

void LindbladGenerator::prepare_drive(LindbladWorkspace& ws, double f_tilde) const {
    ws.ensure(*this);
    if (ws.g_drive == f_tilde) return;
    const std::size_t nnz = g_v0_.size();
    for (std::size_t k = 0; k < nnz; ++k) ws.g_values[k] = g_v0_[k] + f_tilde * g_v1_[k];
    ws.g_drive = f_tilde;
}

void LindbladGenerator::rhs(const cd* rho, cd* out, LindbladWorkspace& ws) const {
    const auto& ops = kernels::active();
    const std::size_t n = static_cast<std::size_t>(dim_) * static_cast<std::size_t>(dim_);

    // W = G rho;  out = W + W†  (covers -i[H,rho] and the anticommutator halves)
    std::fill_n(ws.w.data(), n, cd(0.0, 0.0));
    const kernels::CsrView g{g_row_ptr_.data(), g_col_.data(), ws.g_values.data(), dim_};
    ops.csr_mul_acc(g, rho, ws.w.data(), cd(1.0, 0.0));
    std::fill_n(out, n, cd(0.0, 0.0));
    ops.acc_plus_adjoint(dim_, ws.w.data(), out);

    // out += 2 a rho a† per collapse channel
    for (const auto& a : ops_) {
        std::fill_n(ws.b.data(), n, cd(0.0, 0.0));
        ops.csr_mul_acc(a.view(), rho, ws.b.data(), cd(1.0, 0.0));
        ops.csr_rdag_mul_acc(a.view(), ws.b.data(), out, cd(2.0, 0.0));
    }
}

int LindbladGenerator::rk4_substep_floor(double dt, double f_abs) const {
    // spectral radius bound of the generator: commutator spread plus decay
    const double bound = h_spread_ + f_abs * drive_spread_ + 4.0 * diss_diag_max_;
    const double h_max = 2.5 / std::max(bound, 1e-12);
    return std::max(1, static_cast<int>(std::ceil(dt / h_max)));
}

int LindbladGenerator::em_substep_floor(double dt, double f_abs) const {
    // Euler stability per coherence mode (j,k): |1 + h(-gamma + i omega)| <= 1
    // requires h <= 2 gamma / (gamma^2 + omega^2).
    const double shift = 0.5 * f_abs * drive_spread_;
    double h_max = 1.0 / std::max(4.0 * diss_diag_max_, 1e-12);
    const int d = dim_;
    for (int j = 0; j < d; ++j) {
        for (int k = j + 1; k < d; ++k) {
            const double omega = std::abs(h_eigs_[static_cast<std::size_t>(j)] -
                                          h_eigs_[static_cast<std::size_t>(k)]) + shift;
            const double gamma = mode_damping_[static_cast<std::size_t>(j)] +
                                 mode_damping_[static_cast<std::size_t>(k)];
            if (gamma <= 0.0) continue;
            h_max = std::min(h_max, 2.0 * gamma / (gamma * gamma + omega * omega));
        }
    }
    // safety for the multiplicative noise terms
    const double h = 0.7 * h_max;
    return std::max(1, static_cast<int>(std::ceil(dt / h)));
}

double LindbladGenerator::top_fock_population(const cd* rho) const {
    if (n_fock_ < 2 || atom_dim_ == 0) return 0.0;
    double p = 0.0;
    const std::size_t start = static_cast<std::size_t>(n_fock_ - 2) *
                              static_cast<std::size_t>(atom_dim_);
    for (std::size_t i = start; i < static_cast<std::size_t>(dim_); ++i)
        p += rho[i * static_cast<std::size_t>(dim_) + i].real();
    return p;
}

// ---------------------------------------------------------------- rhs (general)

CMatrix lindblad_rhs(const CMatrix& rho, const Operator& h,
                     const std::vector<CollapseOp>& collapse) {
    if (!rho.square() || rho.rows() != h.mat.rows())
        throw ContractError("lindblad_rhs dimension mismatch");
    if (hermitian_defect(h.mat) > 1e-12) throw ContractError("H must be Hermitian");

    const cd mi(0.0, -1.0);
    CMatrix hr = matmul(h.mat, rho);
    hr *= mi; // -i H rho
    CMatrix out(rho.rows(), rho.cols());
    kernels::active().acc_plus_adjoint(static_cast<int>(rho.rows()), hr.data(), out.data());

    for (const auto& cop : collapse) {
        if (cop.op.mat.rows() != rho.rows())
            throw ContractError("collapse operator dimension mismatch");
        const CMatrix& a = cop.op.mat;
        const CMatrix ad = adjoint(a);
        CMatrix arho = matmul(a, rho);
        CMatrix sandwich = matmul(arho, ad);
        sandwich *= 2.0;
        out += sandwich;
        CMatrix na_rho = matmul(matmul(ad, a), rho);
        na_rho *= -1.0;
        kernels::active().acc_plus_adjoint(static_cast<int>(rho.rows()), na_rho.data(),
                                           out.data());
    }
    return out;
}

// ---------------------------------------------------------------- rk4

namespace {

void finish_interval(CMatrix& rho, const LindbladGenerator& gen, EvolveDiagnostics* diag) {
    const int dim = static_cast<int>(rho.rows());
    const double tr = trace(rho).real();
    const double drift = std::abs(tr - 1.0);
    if (!std::isfinite(tr) || drift > 1e-6)
        throw IntegratorError("trace drift " + std::to_string(drift) +
                              " exceeds 1e-6 before renormalization; increase substeps");
    kernels::active().hermitize(dim, rho.data());
    kernels::active().scal_re(rho.size(), 1.0 / tr, rho.data());
    if (diag != nullptr) {
        diag->max_trace_drift = std::max(diag->max_trace_drift, drift);
        diag->max_renorm = std::max(diag->max_renorm, drift);
        diag->renorm_events += 1;
        const double top = gen.top_fock_population(rho.data());
        diag->max_top_fock_population = std::max(diag->max_top_fock_population, top);
        if (top >= 1e-6) diag->top_fock_warning = true;
    }
}

} // namespace

DensityMatrix evolve_deterministic(const DensityMatrix& rho, const LindbladGenerator& gen,
                                   const DriveFn& drive, double t0, double t1, int substeps,
                                   LindbladWorkspace& ws, EvolveDiagnostics* diag) {
    if (!(t1 > t0)) throw ContractError("t1 must exceed t0");
    if (substeps < 1) throw ContractError("substeps must be >= 1");
    ws.ensure(gen);
    const double f = drive(t0);
    if (!std::isfinite(f)) throw ContractError("drive value must be finite");
    gen.prepare_drive(ws, f);

    const double h = (t1 - t0) / substeps;
    const auto& ops = kernels::active();
    const std::size_t n = rho.m.size();

    DensityMatrix out = rho;
    cd* r = out.m.data();
    for (int s = 0; s < substeps; ++s) {
        gen.rhs(r, ws.k1.data(), ws);

        std::copy_n(r, n, ws.stage.data());
        ops.axpy_re(n, 0.5 * h, ws.k1.data(), ws.stage.data());
        gen.rhs(ws.stage.data(), ws.k2.data(), ws);

        std::copy_n(r, n, ws.stage.data());
        ops.axpy_re(n, 0.5 * h, ws.k2.data(), ws.stage.data());
        gen.rhs(ws.stage.data(), ws.k3.data(), ws);

        std::copy_n(r, n, ws.stage.data());
        ops.axpy_re(n, h, ws.k3.data(), ws.stage.data());
        gen.rhs(ws.stage.data(), ws.k4.data(), ws);

        ops.axpy_re(n, h / 6.0, ws.k1.data(), r);
        ops.axpy_re(n, h / 3.0, ws.k2.data(), r);
        ops.axpy_re(n, h / 3.0, ws.k3.data(), r);
        ops.axpy_re(n, h / 6.0, ws.k4.data(), r);
    }
    finish_interval(out.m, gen, diag);
    return out;
}

// ---------------------------------------------------------------- sme

namespace {

// One Euler-Maruyama update; dw has one entry per channel (2 per collapse op).
// Writes the per-channel records <O> + dW/dt into records (when non-null).
double em_update(const LindbladGenerator& gen, const cd* rho, cd* out,
                 const std::vector<double>& dw, double dt, LindbladWorkspace& ws,
                 double* records) {
    const auto& ops = kernels::active();
    const int dim = gen.dim();
    const std::size_t n = static_cast<std::size_t>(dim) * static_cast<std::size_t>(dim);
    const auto& collapse = gen.collapse_csr();
    const auto& rates = gen.collapse_rates();

    std::copy_n(rho, n, out);

    // deterministic drift
    gen.rhs(rho, ws.k1.data(), ws);
    ops.axpy_re(n, dt, ws.k1.data(), out);

    // stochastic channels, reusing B = a rho per collapse op
    for (std::size_t j = 0; j < collapse.size(); ++j) {
        std::fill_n(ws.b.data(), n, cd(0.0, 0.0));
        ops.csr_mul_acc(collapse[j].view(), rho, ws.b.data(), cd(1.0, 0.0));
        cd tb(0.0, 0.0);
        for (int i = 0; i < dim; ++i)
            tb += ws.b.data()[static_cast<std::size_t>(i) * dim + i];

        const double u = dw[2 * j];     // channel a
        const double v = dw[2 * j + 1]; // channel i a
        const double mean_re = 2.0 * tb.real();  // <a + a†>
        const double mean_im = -2.0 * tb.imag(); // <ia + (ia)†>

        if (u != 0.0) {
            // u (B + B† - <a+a†> rho)
            for (int r = 0; r < dim; ++r) {
                cd* orow = out + static_cast<std::size_t>(r) * dim;
                const cd* brow = ws.b.data() + static_cast<std::size_t>(r) * dim;
                for (int c = 0; c < dim; ++c)
                    orow[c] += u * (brow[c] +
                                    std::conj(ws.b.data()[static_cast<std::size_t>(c) * dim + r]));
            }
            ops.axpy_re(n, -u * mean_re, rho, out);
        }
        if (v != 0.0) {
            // v (iB - iB† - <ia+(ia)†> rho)
            const cd iu(0.0, v);
            for (int r = 0; r < dim; ++r) {
                cd* orow = out + static_cast<std::size_t>(r) * dim;
                const cd* brow = ws.b.data() + static_cast<std::size_t>(r) * dim;
                for (int c = 0; c < dim; ++c)
                    orow[c] += iu * (brow[c] -
                                     std::conj(ws.b.data()[static_cast<std::size_t>(c) * dim + r]));
            }
            ops.axpy_re(n, -v * mean_im, rho, out);
        }
        if (records != nullptr) {
            const double root_rate = std::sqrt(rates[j]);
            records[2 * j] = mean_re / root_rate + dw[2 * j] / dt;
            records[2 * j + 1] = mean_im / root_rate + dw[2 * j + 1] / dt;
        }
    }

    // re-Hermitize and renormalize each stochastic step
    ops.hermitize(dim, out);
    cd tr(0.0, 0.0);
    for (int i = 0; i < dim; ++i) tr += out[static_cast<std::size_t>(i) * dim + i];
    const double trr = tr.real();
    if (!std::isfinite(trr) || std::abs(trr) < 1e-12)
        throw IntegratorError("stochastic step lost trace normalizability; increase substeps");
    ops.scal_re(n, 1.0 / trr, out);
    return trr;
}

} // namespace

SmeStepResult sme_step(const DensityMatrix& rho, const LindbladGenerator& gen,
                       double f_tilde, const std::vector<double>& dw, double dt,
                       LindbladWorkspace& ws) {
    if (!(dt > 0.0)) throw ContractError("dt must be positive");
    if (static_cast<int>(dw.size()) != gen.channel_count())
        throw ContractError("one Wiener increment required per homodyne channel");
    ws.ensure(gen);
    gen.prepare_drive(ws, f_tilde);

    SmeStepResult result;
    result.rho.m = CMatrix(rho.m.rows(), rho.m.cols());
    result.records.assign(static_cast<std::size_t>(gen.channel_count()), 0.0);
    result.trace_before_renorm =
        em_update(gen, rho.m.data(), result.rho.m.data(), dw, dt, ws, result.records.data());
    return result;
}

namespace {

StochasticInterval run_stochastic(const DensityMatrix& rho, const LindbladGenerator& gen,
                                  const DriveFn& drive, double t0, double t1,
                                  std::size_t substeps, const WienerPath* path,
                                  RngStream* rng, LindbladWorkspace& ws,
                                  EvolveDiagnostics* diag) {
    if (!(t1 > t0)) throw ContractError("t1 must exceed t0");
    if (substeps < 1) throw ContractError("substeps must be >= 1");
    ws.ensure(gen);
    const double f = drive(t0);
    gen.prepare_drive(ws, f);

    const double dt = (t1 - t0) / static_cast<double>(substeps);
    const double sd = std::sqrt(dt);
    const std::size_t channels = static_cast<std::size_t>(gen.channel_count());
    const std::size_t n = rho.m.size();

    StochasticInterval out;
    out.rho = rho;
    out.mean_records.assign(channels, 0.0);

    std::vector<double> dw(channels, 0.0);
    std::vector<double> records(channels, 0.0);

    double max_drift = 0.0;
    for (std::size_t s = 0; s < substeps; ++s) {
        if (path != nullptr) {
            for (std::size_t c = 0; c < channels; ++c) dw[c] = path->at(s, c);
        } else {
            for (std::size_t c = 0; c < channels; ++c) dw[c] = rng->normal(sd);
        }
        const double tr =
            em_update(gen, out.rho.m.data(), ws.next.data(), dw, dt, ws, records.data());
        max_drift = std::max(max_drift, std::abs(tr - 1.0));
        std::copy_n(ws.next.data(), n, out.rho.m.data());
        for (std::size_t c = 0; c < channels; ++c) out.mean_records[c] += records[c];
    }
    for (auto& r : out.mean_records) r /= static_cast<double>(substeps);

    if (diag != nullptr) {
        diag->max_trace_drift = std::max(diag->max_trace_drift, max_drift);
        diag->renorm_events += static_cast<long>(substeps);
        diag->max_renorm = std::max(diag->max_renorm, max_drift);
        const double top = gen.top_fock_population(out.rho.m.data());
        diag->max_top_fock_population = std::max(diag->max_top_fock_population, top);
        if (top >= 1e-6) diag->top_fock_warning = true;
    }
    return out;
}

} // namespace

StochasticInterval evolve_stochastic(const DensityMatrix& rho, const LindbladGenerator& gen,
                                     const DriveFn& drive, double t0, double t1, int substeps,
                                     RngStream& rng, LindbladWorkspace& ws,
                                     EvolveDiagnostics* diag) {
    return run_stochastic(rho, gen, drive, t0, t1, static_cast<std::size_t>(substeps),
                          nullptr, &rng, ws, diag);
}

StochasticInterval evolve_stochastic_path(const DensityMatrix& rho,
                                          const LindbladGenerator& gen, const DriveFn& drive,
                                          double t0, double t1, const WienerPath& path,
                                          LindbladWorkspace& ws, EvolveDiagnostics* diag) {
    if (path.channels != static_cast<std::size_t>(gen.channel_count()))
        throw ContractError("path channel count mismatch");
    return run_stochastic(rho, gen, drive, t0, t1, path.substeps, &path, nullptr, ws, diag);
}

} // namespace qrc
