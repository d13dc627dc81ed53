#pragma once

#include "hawkes/core.hpp"

#include <compare>
#include <map>
#include <span>
#include <vector>

namespace hawkes {

/// Exponent pair (m, l) of the monomial lambda^m n^l; also names the mixed
/// moment E[lambda_t^m N_t^l].
struct MomentIndex {
    int m{0};  ///< power of lambda
    int l{0};  ///< power of N

    friend auto operator<=>(const MomentIndex&, const MomentIndex&) = default;
};

/// Largest lambda or N power accepted as generator input.
inline constexpr int kMaxMonomialPower = 8;

/// Real polynomial sum c_{m,l} lambda^m n^l. Zero coefficients are never stored.
class BivariatePolynomial {
public:
    using Terms = std::map<MomentIndex, double>;

    BivariatePolynomial() = default;

    [[nodiscard]] static BivariatePolynomial monomial(int m, int l, double coefficient = 1.0);
    [[nodiscard]] static BivariatePolynomial constant(double value);

    [[nodiscard]] double coefficient(int m, int l) const;
    [[nodiscard]] const Terms& terms() const noexcept { return terms_; }
    [[nodiscard]] bool is_zero() const noexcept { return terms_.empty(); }
    [[nodiscard]] int total_degree() const;

    [[nodiscard]] double evaluate(double lambda, double n) const;

    /// Adds c * lambda^m n^l, dropping the entry if it cancels to zero.
    void add_term(int m, int l, double c);

    BivariatePolynomial& operator+=(const BivariatePolynomial& other);
    BivariatePolynomial& operator-=(const BivariatePolynomial& other);
    BivariatePolynomial& operator*=(double scale);

    friend BivariatePolynomial operator+(BivariatePolynomial a, const BivariatePolynomial& b) {
        return a += b;
    }
    friend BivariatePolynomial operator-(BivariatePolynomial a, const BivariatePolynomial& b) {
        return a -= b;
    }
    friend BivariatePolynomial operator*(BivariatePolynomial a, double s) { return a *= s; }
    friend BivariatePolynomial operator*(double s, BivariatePolynomial a) { return a *= s; }

    friend bool operator==(const BivariatePolynomial&, const BivariatePolynomial&) = default;

private:
    Terms terms_;
};

/// Generator of the Markov pair (lambda_t, N_t) applied to a polynomial:
///   A[lambda^m n^l] = lambda (lambda+alpha)^m (n+1)^l - lambda^{m+1} n^l
///                     + m beta lambda_inf lambda^{m-1} n^l - m beta lambda^m n^l,
/// extended linearly and expanded binomially.
/// Throws InvalidArgument when any input power exceeds kMaxMonomialPower.
[[nodiscard]] BivariatePolynomial apply_generator(const HawkesParams& params,
                                                  const BivariatePolynomial& poly);

/// d/dt E[lambda^m N^l] as a polynomial whose expectation is taken term by term.
[[nodiscard]] BivariatePolynomial moment_ode_rhs(const HawkesParams& params, MomentIndex index);

struct IntegrationOptions {
    double abs_tolerance{1e-10};
    double rel_tolerance{1e-8};
    std::size_t max_steps{1'000'000};
};

/// Closed linear system d/dt y = A y over the mixed moments reachable from a
/// set of requested indices under moment_ode_rhs.
class MomentSystem {
public:
    MomentSystem(const HawkesParams& params, std::span<const MomentIndex> requested);

    [[nodiscard]] const std::vector<MomentIndex>& indices() const noexcept { return indices_; }
    [[nodiscard]] std::size_t size() const noexcept { return indices_.size(); }
    /// Position of an index in the state vector; throws if absent.
    [[nodiscard]] std::size_t position(MomentIndex index) const;
    /// Row-major coefficient matrix.
    [[nodiscard]] const std::vector<double>& matrix() const noexcept { return matrix_; }

    /// Deterministic start: E[lambda_0^m N_0^l] = lambda0^m [l == 0].
    [[nodiscard]] std::vector<double> initial_state(double lambda0) const;

    /// Integrates the system from `initial` over [0, t] with an adaptive
    /// Dormand-Prince 5(4) pair. Throws ToleranceNotMet on step failure.
    [[nodiscard]] std::vector<double> integrate(std::vector<double> initial, double t,
                                                const IntegrationOptions& options = {}) const;

private:
    std::vector<MomentIndex> indices_;
    std::map<MomentIndex, std::size_t> lookup_;
    std::vector<double> matrix_;
};

/// E[lambda_t^m N_t^l] for each requested index, from the deterministic start.
[[nodiscard]] std::map<MomentIndex, double> integrate_moments(
    const HawkesParams& params, std::span<const MomentIndex> indices, double t,
    const IntegrationOptions& options = {});

}  // namespace hawkes
