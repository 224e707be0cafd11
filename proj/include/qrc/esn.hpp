// esn.hpp — classical echo-state-network baseline: random contractive
// reservoirs x_{k+1} = ReLU(A x_k + B u_k) trained with the same ridge
// readout as the quantum pipeline.

#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "qrc/tasks.hpp"

namespace qrc {

struct EsnSpec {
    std::vector<double> a;   // n x n row-major
    std::vector<double> b;   // n
    int n_neuron = 0;
    int n_measured = 0;
    bool diagonal_only = false;
    std::uint64_t seed = 0;
    double sigma_max = 0.0;  // largest singular value after rescaling
};

// Entries of A and B uniform in [-1, 1]; off-diagonal A zeroed first when
// diagonal_only; A rescaled by 0.99/sigma_max whenever sigma_max >= 1.
EsnSpec esn_random(int n_neuron, int n_measured, bool diagonal_only, std::uint64_t seed);

// x_0 = 0; returns the L x n_neuron state sequence (row k = x_{k+1}); the
// first n_measured columns are the readouts.
std::vector<double> esn_run(const EsnSpec& spec, std::span<const double> inputs);

struct EsnEnsembleStats {
    double mean = 0.0;
    double std_error = 0.0;
    double min = 0.0;
    double max = 0.0;
    int evaluated = 0;
    int degenerate = 0; // excluded fits
    std::vector<double> per_network;
};

// Test NRMSE over n_networks independently seeded ESNs trained on the task's
// training segment; degenerate fits are logged, excluded and counted.
EsnEnsembleStats esn_ensemble_eval(const TaskDataset& task, int n_neuron, int n_measured,
                                   bool diagonal_only, int n_networks, double delta,
                                   std::uint64_t seed = 7, std::size_t workers = 1);

} // namespace qrc
