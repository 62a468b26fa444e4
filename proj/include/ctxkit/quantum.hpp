#pragma once

#include <complex>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace ctxkit::quantum {

inline constexpr double kTolerance = 1e-12;

enum class Pauli { I, X, Y, Z };

// Parses "x", "y", "z", "i" (case-insensitive). Throws InputError.
Pauli parse_pauli(std::string_view name);
char pauli_name(Pauli p);

// Amplitudes in the product basis; |+> = index 0, |-> = index 1 per particle,
// with particle 1 the most significant.
class StateVector {
 public:
  // Throws InputError unless the dimension is a power of two and the norm is 1.
  explicit StateVector(Eigen::VectorXcd amplitudes);

  // Normalizes `weights` over the given basis strings, e.g. {"+++", "---"}.
  static StateVector superposition(const std::vector<std::string>& basis,
                                   const std::vector<std::complex<double>>& weights);

  const Eigen::VectorXcd& amplitudes() const { return amplitudes_; }
  std::size_t particles() const { return particles_; }

 private:
  Eigen::VectorXcd amplitudes_;
  std::size_t particles_;
};

class SpinOperator {
 public:
  const Eigen::MatrixXcd& matrix() const { return matrix_; }
  const std::vector<Pauli>& factors() const { return factors_; }
  std::string label() const;

  friend SpinOperator build_operator(const std::vector<Pauli>& factors);

 private:
  SpinOperator(Eigen::MatrixXcd m, std::vector<Pauli> f) : matrix_(std::move(m)), factors_(std::move(f)) {}
  Eigen::MatrixXcd matrix_;
  std::vector<Pauli> factors_;
};

// Kronecker product of Pauli factors in particle order; 1 <= k <= 10.
SpinOperator build_operator(const std::vector<Pauli>& factors);
SpinOperator build_operator(std::string_view factors);  // e.g. "xyy"

Eigen::MatrixXcd pauli_matrix(Pauli p);

// <psi|Op|psi>. Throws InputError on dimension mismatch or when the imaginary
// part exceeds kTolerance.
double expectation_value(const StateVector& state, const SpinOperator& op);

// -cos(theta): spin correlation of the singlet at relative analyzer angle theta.
double singlet_correlation(double theta_radians);
double degrees_to_radians(double degrees);

// (|+++> - |--->)/sqrt(2).
StateVector mermin_ghz_state();
// (|++-> + |--+>)/sqrt(2).
StateVector alt_ghz_state();
// (|+-> - |-+>)/sqrt(2).
StateVector singlet_state();

// The four GHZ operators sigma_1x s_2y s_3y, s_1y s_2x s_3y, s_1y s_2y s_3x, s_1x s_2x s_3x.
struct GhzOperators {
  SpinOperator a;
  SpinOperator b;
  SpinOperator c;
  SpinOperator d;
};
GhzOperators ghz_operators();

bool is_hermitian(const Eigen::MatrixXcd& m, double tol = kTolerance);
double max_abs_difference(const Eigen::MatrixXcd& lhs, const Eigen::MatrixXcd& rhs);

// "p/q" or "p/q*sqrt(d)" (d in {2, 3}, q <= 64) when within 1e-9 of `value`.
std::optional<std::string> nearest_exact_form(double value);

}  // namespace ctxkit::quantum
