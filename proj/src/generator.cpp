#include "hawkes/generator.hpp"

#include "hawkes/error.hpp"

#include <boost/numeric/odeint.hpp>

#include <algorithm>
#include <cmath>
#include <deque>
#include <set>
#include <sstream>

namespace hawkes {

namespace {

double binomial(int n, int k) {
    double result = 1.0;
    for (int i = 1; i <= k; ++i) {
        result = result * static_cast<double>(n - k + i) / static_cast<double>(i);
    }
    return result;
}

}  // namespace

BivariatePolynomial BivariatePolynomial::monomial(int m, int l, double coefficient) {
    BivariatePolynomial p;
    p.add_term(m, l, coefficient);
    return p;
}

BivariatePolynomial BivariatePolynomial::constant(double value) { return monomial(0, 0, value); }

double BivariatePolynomial::coefficient(int m, int l) const {
    auto it = terms_.find({m, l});
    return it == terms_.end() ? 0.0 : it->second;
}

int BivariatePolynomial::total_degree() const {
    int degree = 0;
    for (const auto& [index, c] : terms_) degree = std::max(degree, index.m + index.l);
    return degree;
}

double BivariatePolynomial::evaluate(double lambda, double n) const {
    double sum = 0.0;
    for (const auto& [index, c] : terms_) {
        sum += c * std::pow(lambda, index.m) * std::pow(n, index.l);
    }
    return sum;
}

void BivariatePolynomial::add_term(int m, int l, double c) {
    if (m < 0 || l < 0) {
        throw HawkesError(ErrorCode::InvalidArgument, "monomial exponents must be nonnegative");
    }
    if (c == 0.0) return;
    auto [it, inserted] = terms_.try_emplace(MomentIndex{m, l}, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0.0) terms_.erase(it);
    }
}

BivariatePolynomial& BivariatePolynomial::operator+=(const BivariatePolynomial& other) {
    for (const auto& [index, c] : other.terms_) add_term(index.m, index.l, c);
    return *this;
}

BivariatePolynomial& BivariatePolynomial::operator-=(const BivariatePolynomial& other) {
    for (const auto& [index, c] : other.terms_) add_term(index.m, index.l, -c);
    return *this;
}

BivariatePolynomial& BivariatePolynomial::operator*=(double scale) {
    if (scale == 0.0) {
        terms_.clear();
        return *this;
    }
    for (auto& [index, c] : terms_) c *= scale;
    return *this;
}

BivariatePolynomial apply_generator(const HawkesParams& params, const BivariatePolynomial& poly) {
    const double alpha = params.alpha();
    const double beta = params.beta();
    const double lambda_inf = params.lambda_inf();

    BivariatePolynomial out;
    for (const auto& [index, c] : poly.terms()) {
        const int m = index.m;
        const int l = index.l;
        if (m > kMaxMonomialPower || l > kMaxMonomialPower) {
            std::ostringstream msg;
            msg << "monomial lambda^" << m << " n^" << l << " exceeds power " << kMaxMonomialPower;
            throw HawkesError(ErrorCode::InvalidArgument, msg.str());
        }
        // Jump part lambda [(lambda+alpha)^m (n+1)^l - lambda^m n^l]; the
        // (j, q) = (m, l) product cancels the subtracted lambda^{m+1} n^l.
        for (int j = 0; j <= m; ++j) {
            const double lambda_coeff = binomial(m, j) * std::pow(alpha, m - j);
            for (int q = 0; q <= l; ++q) {
                if (j == m && q == l) continue;
                out.add_term(j + 1, q, c * lambda_coeff * binomial(l, q));
            }
        }
        // Drift part g'(lambda) beta (lambda_inf - lambda).
        if (m > 0) {
            out.add_term(m - 1, l, c * m * beta * lambda_inf);
            out.add_term(m, l, -c * m * beta);
        }
    }
    return out;
}

BivariatePolynomial moment_ode_rhs(const HawkesParams& params, MomentIndex index) {
    return apply_generator(params, BivariatePolynomial::monomial(index.m, index.l));
}

MomentSystem::MomentSystem(const HawkesParams& params, std::span<const MomentIndex> requested) {
    std::map<MomentIndex, BivariatePolynomial> rhs;
    std::deque<MomentIndex> pending(requested.begin(), requested.end());
    while (!pending.empty()) {
        const MomentIndex next = pending.front();
        pending.pop_front();
        if (rhs.contains(next)) continue;
        auto poly = moment_ode_rhs(params, next);
        for (const auto& [dep, c] : poly.terms()) {
            if (!rhs.contains(dep)) pending.push_back(dep);
        }
        rhs.emplace(next, std::move(poly));
    }

    indices_.reserve(rhs.size());
    for (const auto& [index, poly] : rhs) {
        lookup_.emplace(index, indices_.size());
        indices_.push_back(index);
    }
    const std::size_t n = indices_.size();
    matrix_.assign(n * n, 0.0);
    for (std::size_t row = 0; row < n; ++row) {
        for (const auto& [dep, c] : rhs.at(indices_[row]).terms()) {
            matrix_[row * n + lookup_.at(dep)] += c;
        }
    }
}

std::size_t MomentSystem::position(MomentIndex index) const {
    auto it = lookup_.find(index);
    if (it == lookup_.end()) {
        throw HawkesError(ErrorCode::InvalidArgument, "moment index not in system");
    }
    return it->second;
}

std::vector<double> MomentSystem::initial_state(double lambda0) const {
    std::vector<double> y(indices_.size(), 0.0);
    for (std::size_t i = 0; i < indices_.size(); ++i) {
        if (indices_[i].l == 0) y[i] = std::pow(lambda0, indices_[i].m);
    }
    return y;
}

std::vector<double> MomentSystem::integrate(std::vector<double> initial, double t,
                                            const IntegrationOptions& options) const {
    namespace odeint = boost::numeric::odeint;
    using State = std::vector<double>;

    if (initial.size() != indices_.size()) {
        throw HawkesError(ErrorCode::InvalidArgument, "initial state size mismatch");
    }
    if (!(t >= 0.0) || !std::isfinite(t)) {
        throw HawkesError(ErrorCode::InvalidArgument, "integration time must be finite and >= 0");
    }
    if (t == 0.0) return initial;

    const std::size_t n = indices_.size();
    auto rhs = [this, n](const State& y, State& dydt, double) {
        for (std::size_t row = 0; row < n; ++row) {
            double sum = 0.0;
            for (std::size_t col = 0; col < n; ++col) sum += matrix_[row * n + col] * y[col];
            dydt[row] = sum;
        }
    };

    auto stepper = odeint::make_controlled(options.abs_tolerance, options.rel_tolerance,
                                           odeint::runge_kutta_dopri5<State>());
    double time = 0.0;
    double dt = std::min(t, 1e-3);
    std::size_t attempts = 0;
    try {
        const double end_slack = 1e-13 * std::max(1.0, t);
        while (t - time > end_slack) {
            if (++attempts > options.max_steps) {
                throw HawkesError(ErrorCode::ToleranceNotMet, "step budget exhausted");
            }
            dt = std::min(dt, t - time);
            if (dt < end_slack * 1e-2) {
                throw HawkesError(ErrorCode::ToleranceNotMet, "step size underflow");
            }
            // On success time and dt advance; on failure dt shrinks.
            stepper.try_step(rhs, initial, time, dt);
        }
    } catch (const odeint::odeint_error& e) {
        throw HawkesError(ErrorCode::ToleranceNotMet, e.what());
    }
    for (double v : initial) {
        if (!std::isfinite(v)) {
            throw HawkesError(ErrorCode::ToleranceNotMet, "moment integration diverged");
        }
    }
    return initial;
}

std::map<MomentIndex, double> integrate_moments(const HawkesParams& params,
                                                std::span<const MomentIndex> indices, double t,
                                                const IntegrationOptions& options) {
    const MomentSystem system(params, indices);
    const auto y = system.integrate(system.initial_state(params.lambda0()), t, options);
    std::map<MomentIndex, double> out;
    for (const auto& index : indices) out[index] = y[system.position(index)];
    return out;
}

}  // namespace hawkes
