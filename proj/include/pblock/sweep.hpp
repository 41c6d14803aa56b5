// sweep.hpp — Parameter grids, config-to-domain mapping, and the
// deterministic worker-pool runner used by the CLI sweeps.

#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "pblock/config.hpp"
#include "pblock/lindblad.hpp"

namespace pblock {

struct AxisSpec {
    std::string param;  // delta | j | u | f | n_th | t_over_t0
    double min = 0.0;
    double max = 0.0;
    int n_points = 0;
    bool log_spacing = false;
};

std::vector<double> axis_values(const AxisSpec& axis);

// Assigns a named parameter; t_over_t0 is converted to n_th.
void set_param(SystemParams& params, const std::string& name, double value);

// Shared config keys: delta, j, u, f, gamma (1), and n_th or t_over_t0 (0).
SystemParams system_params_from(const Config& cfg);

// n1_max / n2_max, both defaulting to 10.
FockBasis basis_from(const Config& cfg);

AxisSpec axis_from(const Config& cfg, const std::string& prefix);

struct SweepSpec {
    AxisSpec axis1;
    AxisSpec axis2;
    SystemParams fixed;
    int n1_max = 10;
    int n2_max = 10;
};

SweepSpec sweep_from(const Config& cfg);

struct SweepPoint {
    double axis1 = 0.0;
    double axis2 = 0.0;
    double g2 = 0.0;
    double mean_phonon = 0.0;
    double residual = 0.0;
    std::string error;  // empty on success
    bool truncation_warning = false;
};

// Runs all grid points on a worker pool; results come back in axis-major
// order regardless of scheduling, so reruns are byte-identical.
std::vector<SweepPoint> run_sweep(const SweepSpec& spec, int workers);

// PBLOCK_WORKERS when set, otherwise the hardware concurrency.
int worker_count_from_env();

// Deterministic-order parallel map over [0, n).
void parallel_for(int n, int workers, const std::function<void(int)>& fn);

// One steady-state evaluation shared by the scan commands.
SweepPoint evaluate_point(const SystemParams& params, const FockBasis& basis,
                          double axis1, double axis2);

} // namespace pblock
