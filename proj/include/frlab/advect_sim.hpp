#pragma once

#include <Eigen/Dense>
#include <vector>

#include "frlab/operators.hpp"

namespace frlab {

// ============================================================================
// configuration and state
// ============================================================================

enum class BcKind { Periodic, InflowOutflow };
enum class IcKind { GaussianBump, Harmonic, Constant };

// Unit-speed linear advection on a uniform mesh of [x0, x1].
struct SimConfig {
    int n_elements = 32;
    double x0 = 0.0;
    double x1 = 1.0;
    BcKind bc = BcKind::Periodic;
    IcKind ic = IcKind::GaussianBump;
    double bump_center = 0.5;
    double bump_width = 0.2;     // the Gaussian scale in exp(-(x-c)^2/w^2)
    double harmonic_khat = 0.5;  // normalized wavenumber of the harmonic IC
    double constant_value = 1.0;
    // inflow signal A sin(2 pi k (x0 - t)), used only for InflowOutflow
    double inflow_amplitude = 1.0;
    double inflow_k = 1.0;
    FrOperators ops;
    double tau = 0.0;  // explicit step size; wins over cfl when > 0
    double cfl = 0.0;  // tau = cfl * delta when tau is unset
    double t_end = 10.0;
    int rk_order = 3;
};

struct SimState {
    Eigen::MatrixXd u;  // n_elements x (p+1) solution-point values
    double t = 0.0;
    long step_count = 0;
    bool diverged = false;  // max|u| exceeded 1e12 at some step
};

double resolve_tau(const SimConfig& cfg);
double element_width(const SimConfig& cfg);

// x coordinate of solution point q in element j
double node_x(const SimConfig& cfg, int element, int node);

SimState initial_state(const SimConfig& cfg);

// Exact profile of the bump IC convected for time t (periodic images summed)
double bump_exact(const SimConfig& cfg, double x, double t);

// ============================================================================
// stepping
// ============================================================================

// du/dt for every element: -J^{-1}(Cm u_{j-1} + C0 u_j + Cp u_{j+1}) with
// periodic wrap, or with the prescribed inflow trace replacing the upwind
// state at the inlet (requires alpha = 1; the outlet is then flux-free).
Eigen::MatrixXd rhs(const Eigen::MatrixXd& u, double t, const SimConfig& cfg);

// One RK33 (Shu-Osher) or classic RK44 step; for this linear rhs both match
// their truncated-exponential update polynomials exactly.
void step(SimState& state, double tau, const SimConfig& cfg);

// ============================================================================
// cases
// ============================================================================

double l2_norm(const SimState& state, const SimConfig& cfg);
double total_integral(const SimState& state, const SimConfig& cfg);

struct BumpResult {
    SimState state;
    double l2_error = 0.0;    // vs the exact convected bump, Gauss quadrature
    double linf_error = 0.0;  // over solution points
    double min_value = 0.0;   // dense-sample minimum (undershoot detector)
    double peak_value = 0.0;
    double peak_location = 0.0;
    double analytic_peak_location = 0.0;
    bool diverged = false;
};

BumpResult run_bump_case(const SimConfig& cfg);

struct WaveResult {
    std::vector<double> t;
    std::vector<double> probe;  // solution trace at the outlet face
    double inflow_amplitude = 0.0;
    bool growth = false;  // max|probe| > 10x the inflow amplitude
    bool diverged = false;
};

// Starts from a zero field and feeds the sinusoidal inflow signal in.
WaveResult run_wave_case(const SimConfig& cfg);

struct OrderResult {
    std::vector<int> n_elements;
    std::vector<double> dx;
    std::vector<double> l2_error;
    double slope = 0.0;  // least-squares log-log fit
    bool diverged = false;
};

// Bump convection at fixed CFL across grids, error measured after exactly
// 1000 steps (so t_end shrinks with the mesh); runs are independent and
// evaluated in parallel.
OrderResult order_study(const SimConfig& tmpl, const std::vector<int>& n_grid);

}  // namespace frlab
