#pragma once

// Adams-Bashforth-Moulton predictor-corrector for Caputo fractional ODEs
// D^q x = f(x), q in (0,1], on a uniform grid with full memory. The memory
// term makes each step cost O(n), so a run of N steps is Theta(N^2).

#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <stdexcept>
#include <vector>

#include "ecodyn/rk45.hpp"
#include "ecodyn/state.hpp"
#include "ecodyn/system.hpp"

namespace ecodyn {

struct FOConfig {
    double q = 0.9995;        // fractional order, (0, 1]
    double h = 0.05;          // fixed step
    double t_max = 5000.0;
    double escape_radius = 1e3;
    int corrector_iterations = 1;
    std::size_t max_steps = 4'000'000;  // memory cap: history grows linearly
    std::size_t memory_window = 0;      // 0 = full memory; >0 truncates (benchmarking only)

    void validate() const {
        const bool ok = q > 0.0 && q <= 1.0 && h > 0.0 && t_max > 0.0 &&
                        escape_radius > 0.0 && corrector_iterations >= 1;
        if (!ok) throw std::invalid_argument("FOConfig: inconsistent settings");
    }
    std::size_t step_count() const {
        return static_cast<std::size_t>(std::ceil(t_max / h - 1e-9));
    }
};

/// Quadrature weights for one step n -> n+1.
/// predictor[j] multiplies f(x_j) and carries the h^q/q factor;
/// corrector[j] (j = 0..n+1, the last entry multiplying f at the predicted
/// point) carries h^q/(q(q+1)). Each sum is then scaled by 1/Gamma(q),
/// giving the usual h^q/Gamma(q+1) and h^q/Gamma(q+2) normalizations.
struct AbmWeights {
    std::vector<double> predictor;  // size n+1
    std::vector<double> corrector;  // size n+2
    double pred_scale = 0.0;        // h^q / Gamma(q+1)
    double corr_scale = 0.0;        // h^q / Gamma(q+2)
};

AbmWeights abm_weights(double q, double h, std::size_t n);

namespace abm_detail {

// Dimensionless weight kernels shared by abm_weights() and the integrator,
// expressed via precomputed k^q and k^(q+1) tables so both paths agree bitwise.
struct PowerTables {
    double q;
    std::vector<double> pq;   // k^q
    std::vector<double> pq1;  // k^(q+1)

    PowerTables(double order, std::size_t max_index) : q(order) {
        pq.resize(max_index + 1);
        pq1.resize(max_index + 1);
        for (std::size_t k = 0; k <= max_index; ++k) {
            pq[k] = std::pow(static_cast<double>(k), q);
            pq1[k] = pq[k] * static_cast<double>(k);
        }
    }

    // (n+1-j)^q - (n-j)^q
    double pred_kernel(std::size_t n, std::size_t j) const { return pq[n + 1 - j] - pq[n - j]; }

    // n^(q+1) - (n-q)(n+1)^q for j = 0, else the second difference of k^(q+1)
    double corr_kernel(std::size_t n, std::size_t j) const {
        if (j == 0)
            return pq1[n] - (static_cast<double>(n) - q) * pq[n + 1];
        const std::size_t m = n - j + 1;  // >= 1
        return pq1[m + 1] + pq1[m - 1] - 2.0 * pq1[m];
    }
};

}  // namespace abm_detail

/// Stateful ABM integrator for a generic system D^q x = f(x). Exposes the
/// history so the fractional Lyapunov driver can rescale tangent components
/// (the tangent flow is linear, so scaling current state, initial condition,
/// and stored derivatives by one factor yields the exactly rescaled solution).
template <std::size_t N, class RHS>
class CaputoAbm {
  public:
    using Vec = std::array<double, N>;

    CaputoAbm(RHS f, const Vec& x0, const FOConfig& cfg)
        : f_(std::move(f)), cfg_(cfg), x0_(x0), x_(x0) {
        cfg_.validate();
        n_total_ = cfg_.step_count();
        if (n_total_ > cfg_.max_steps)
            throw std::length_error("CaputoAbm: step count exceeds max_steps memory cap");
        tables_ = std::make_unique<abm_detail::PowerTables>(cfg_.q, n_total_ + 2);
        const double hq = std::pow(cfg_.h, cfg_.q);
        pred_scale_ = hq / std::tgamma(cfg_.q + 1.0);
        corr_scale_ = hq / std::tgamma(cfg_.q + 2.0);
        fhist_.reserve(n_total_ + 1);
        fhist_.push_back(f_(x_));
    }

    double t() const { return static_cast<double>(n_) * cfg_.h; }
    std::size_t step_index() const { return n_; }
    std::size_t total_steps() const { return n_total_; }
    const Vec& current() const { return x_; }
    const FOConfig& config() const { return cfg_; }

    /// Inner-loop iteration count so far; grows as Theta(steps^2) with
    /// full memory.
    std::uint64_t history_ops() const { return history_ops_; }

    enum class Outcome { Advanced, Escaped, Finished };

    /// One P(EC)^m E step. History gains one entry.
    Outcome step() {
        if (n_ >= n_total_) return Outcome::Finished;
        x_ = compute_step(n_);
        ++n_;
        fhist_.push_back(f_(x_));
        bool finite = true;
        double nrm = 0.0;
        for (double c : x_) {
            finite = finite && std::isfinite(c);
            nrm = std::max(nrm, std::fabs(c));
        }
        if (!finite || nrm > cfg_.escape_radius) return Outcome::Escaped;
        return n_ >= n_total_ ? Outcome::Finished : Outcome::Advanced;
    }

    /// Recompute the state at step n (1-based target index) from the stored
    /// history alone; bitwise-identical to what step() produced.
    Vec recompute_state(std::size_t n) const {
        if (n == 0 || n > n_) throw std::out_of_range("CaputoAbm::recompute_state");
        return compute_step(n - 1);
    }

    /// Multiply components [begin, end) of the initial condition, the current
    /// state, and every stored derivative by s.
    void scale_components(std::size_t begin, std::size_t end, double s) {
        for (std::size_t i = begin; i < end; ++i) {
            x0_[i] *= s;
            x_[i] *= s;
        }
        for (auto& fv : fhist_)
            for (std::size_t i = begin; i < end; ++i) fv[i] *= s;
    }

  private:
    // Target value at grid index n+1 given history f[0..n].
    Vec compute_step(std::size_t n) const {
        Vec pred_sum{}, corr_sum{};
        std::size_t j_begin = 0;
        if (cfg_.memory_window > 0 && n + 1 > cfg_.memory_window)
            j_begin = n + 1 - cfg_.memory_window;
        for (std::size_t j = j_begin; j <= n; ++j) {
            const double bw = tables_->pred_kernel(n, j);
            const double aw = tables_->corr_kernel(n, j);
            const Vec& fj = fhist_[j];
            for (std::size_t i = 0; i < N; ++i) {
                pred_sum[i] += bw * fj[i];
                corr_sum[i] += aw * fj[i];
            }
        }
        history_ops_ += n + 1 - j_begin;
        Vec cand;
        for (std::size_t i = 0; i < N; ++i) cand[i] = x0_[i] + pred_scale_ * pred_sum[i];
        for (int it = 0; it < cfg_.corrector_iterations; ++it) {
            const Vec fc = f_(cand);
            for (std::size_t i = 0; i < N; ++i)
                cand[i] = x0_[i] + corr_scale_ * (corr_sum[i] + fc[i]);
        }
        return cand;
    }

    mutable RHS f_;
    FOConfig cfg_;
    Vec x0_{}, x_{};
    std::size_t n_ = 0, n_total_ = 0;
    double pred_scale_ = 0.0, corr_scale_ = 0.0;
    std::unique_ptr<abm_detail::PowerTables> tables_;
    std::vector<Vec> fhist_;
    mutable std::uint64_t history_ops_ = 0;
};

/// Integrate a generic Caputo system; samples every grid point.
template <std::size_t N, class RHS>
TrajectoryN<N> integrate_caputo(RHS&& f, const std::array<double, N>& x0, const FOConfig& cfg) {
    CaputoAbm<N, std::decay_t<RHS>> abm(std::forward<RHS>(f), x0, cfg);
    TrajectoryN<N> traj;
    traj.t.reserve(abm.total_steps() + 1);
    traj.x.reserve(abm.total_steps() + 1);
    traj.t.push_back(0.0);
    traj.x.push_back(x0);
    for (;;) {
        const auto out = abm.step();
        if (out == CaputoAbm<N, std::decay_t<RHS>>::Outcome::Escaped) {
            traj.status = TrajStatus::Escaped;
            traj.stop_time = abm.t();
            return traj;
        }
        traj.t.push_back(abm.t());
        traj.x.push_back(abm.current());
        if (out == CaputoAbm<N, std::decay_t<RHS>>::Outcome::Finished) return traj;
    }
}

/// Caputo fractional-order economic system from x0 over [0, t_max]. The
/// initial condition is taken exactly as in the integer-order case.
Trajectory integrate_fo(const SystemParams& p, const State3& x0, const FOConfig& cfg);

}  // namespace ecodyn
