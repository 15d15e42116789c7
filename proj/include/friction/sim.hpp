#ifndef FRICTION_SIM_HPP
#define FRICTION_SIM_HPP

#include "friction/fit.hpp"
#include "friction/model.hpp"

#include <complex>
#include <memory>
#include <string>
#include <vector>

namespace friction {

// Periodic box [-L/2, L/2)^3 with n nodes per side and a polynomial absorbing
// mask of the given width on each face.
struct BoxGrid {
    int n = 64;
    double L = 40.0;
    double absorber_width = 7.5;
    double absorber_strength = 1.0;
    int absorber_order = 2;

    double spacing() const { return L / n; }
    std::vector<double> axis() const;
    // GridError unless n is an even 2^a 3^b 5^c >= 8, sigma / spacing >= 1
    // and the absorber stays below 20% of L per side.
    void validate(double sigma) const;
};

struct SimOptions {
    double dt = 0.01;
    double t_max = 200.0;
    int sample_every = 10;  // steps between TimeSeries rows
    double delta = 0.6;     // exponent of the majorant
    bool source = true;     // sqrt(rho0) W term of the field equation
    bool kinetic = true;    // -Delta term of the field equation
    bool absorber = true;
    int snapshot_every = 0;  // steps; 0 disables field snapshots
    std::string snapshot_dir;
};

struct SimState {
    double t = 0.0;
    Vec3 X{0, 0, 0};
    Vec3 P{0, 0, 0};
    std::vector<std::complex<double>> beta;  // row-major, z fastest
};

struct EnergyParts {
    double particle = 0.0;     // P^2 / 2M
    double gradient = 0.0;     // int |grad beta|^2
    double interaction = 0.0;  // int W^X (g |beta|^2 + 2 sqrt(rho0) Re beta)

    double total() const { return particle + gradient + interaction; }
    double scale() const;  // sum of magnitudes, the reference for relative drift
};

struct TimeSeries {
    std::vector<double> t;
    std::vector<Vec3> P;
    std::vector<double> pabs;
    std::vector<Vec3> X;
    std::vector<double> energy;
    std::vector<double> splash;            // lab-frame <x>^{-3} weight
    std::vector<double> splash_comoving;   // <x - X_t>^{-3} weight
    std::vector<double> mu;

    std::size_t size() const { return t.size(); }
    void validate() const;
};

// max_{s <= t} (1 + s)^{1/2 + delta} |P_s| at every row.
std::vector<double> majorant_trace(const std::vector<double>& t, const std::vector<double>& pabs, double delta);
double majorant_mu(const TimeSeries& series, double delta);

struct RunResult {
    TimeSeries series;
    std::string status = "completed";  // completed | instability | boundary
    std::string message;
    long steps = 0;
    double wall_seconds = 0.0;
    FitResult momentum_fit;     // |P| over the last decade; exponent is the slope
    bool momentum_fit_ok = false;
    double x_convergence = 0.0;  // |X(t_max) - X(t_max / 2)|
    double x_travel = 0.0;       // |X(t_max / 2) - X_0|
};

class BoxSimulator {
public:
    BoxSimulator(const ModelParams& params, const RadialPotential& W, const BoxGrid& grid, SimOptions opt = {});
    ~BoxSimulator();
    BoxSimulator(const BoxSimulator&) = delete;
    BoxSimulator& operator=(const BoxSimulator&) = delete;

    const BoxGrid& grid() const { return grid_; }
    const SimOptions& options() const { return opt_; }

    SimState init(const InitialData& data) const;

    // Strang step of the field with X frozen: potential + source half step
    // (exact local solution), kinetic step, second half step, then the mask.
    void field_substep(SimState& s, double dt);
    // F = -d/dX of the interaction energy, by grid quadrature with analytic grad W.
    Vec3 force(const SimState& s) const;
    // Kick, drift, field, drift, kick.
    void step(SimState& s, double dt);

    EnergyParts energy_parts(const SimState& s) const;
    double energy(const SimState& s) const { return energy_parts(s).total(); }
    // ||<x>^{-3} (beta + sqrt(rho0) (h^X)^{-1} W^X)||_2.
    double splash_norm(const SimState& s, bool comoving = false) const;
    // The dressing -sqrt(rho0) (h^X)^{-1} W^X sampled on the grid.
    std::vector<std::complex<double>> dressing(const Vec3& X) const;
    // X at least two absorber widths from every face.
    bool valid_position(const Vec3& X) const;

    RunResult run(const InitialData& data);

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
    ModelParams params_;
    RadialPotential W_;
    BoxGrid grid_;
    SimOptions opt_;
};

// Mirror image x -> -x of a state on the symmetric grid.
SimState mirror(const SimState& s, int n);

// Little-endian complex pairs, row-major, plus a JSON sidecar with the shape.
void write_snapshot(const SimState& s, const BoxGrid& grid, const std::string& path_stem);

struct FrictionChecks {
    bool envelope_decreasing = false;
    int envelope_samples = 0;
    double decay_exponent = 0.0;  // p in |P| ~ t^{-p}
    bool decay_ok = false;
    double splash_first_quarter = 0.0;
    double splash_last_quarter = 0.0;
    bool splash_ok = false;
    double stopping_ratio = 0.0;  // x_convergence / x_travel
    bool stopping_ok = false;
    double mu_growth = 0.0;  // mu(t_max) / mu(t_max / 2) - 1
    bool mu_ok = false;

    bool all() const { return envelope_decreasing && decay_ok && splash_ok && stopping_ok && mu_ok; }
};

// Qualitative friction properties of a completed run. The transient is
// t < t_max / 10; the envelope is the running maximum of |P| over the next
// t_max / 20.
FrictionChecks check_friction_run(const RunResult& run, double delta);

}  // namespace friction

#endif
