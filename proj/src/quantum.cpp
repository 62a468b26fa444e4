#include "ctxkit/quantum.hpp"

#include <cctype>
#include <cmath>
#include <numeric>

#include <unsupported/Eigen/KroneckerProduct>

#include "ctxkit/errors.hpp"

namespace ctxkit::quantum {

using cd = std::complex<double>;

Pauli parse_pauli(std::string_view name) {
  if (name.size() == 1) {
    switch (std::tolower(static_cast<unsigned char>(name[0]))) {
      case 'x':
        return Pauli::X;
      case 'y':
        return Pauli::Y;
      case 'z':
        return Pauli::Z;
      case 'i':
        return Pauli::I;
      default:
        break;
    }
  }
  throw InputError("unknown spin component '" + std::string(name) + "'");
}

char pauli_name(Pauli p) {
  switch (p) {
    case Pauli::I:
      return 'i';
    case Pauli::X:
      return 'x';
    case Pauli::Y:
      return 'y';
    case Pauli::Z:
      return 'z';
  }
  return '?';
}

Eigen::MatrixXcd pauli_matrix(Pauli p) {
  Eigen::MatrixXcd m(2, 2);
  const cd i(0, 1);
  switch (p) {
    case Pauli::I:
      m << 1, 0, 0, 1;
      break;
    case Pauli::X:
      m << 0, 1, 1, 0;
      break;
    case Pauli::Y:
      m << 0, -i, i, 0;
      break;
    case Pauli::Z:
      m << 1, 0, 0, -1;
      break;
  }
  return m;
}

namespace {

std::size_t log2_exact(std::size_t dim) {
  std::size_t k = 0;
  while ((std::size_t{1} << k) < dim) ++k;
  if ((std::size_t{1} << k) != dim || k == 0) {
    throw InputError("state dimension " + std::to_string(dim) + " is not 2^k with k >= 1");
  }
  return k;
}

}  // namespace

StateVector::StateVector(Eigen::VectorXcd amplitudes)
    : amplitudes_(std::move(amplitudes)), particles_(log2_exact(static_cast<std::size_t>(amplitudes_.size()))) {
  if (std::abs(amplitudes_.norm() - 1.0) > kTolerance) throw InputError("state vector is not normalized");
}

StateVector StateVector::superposition(const std::vector<std::string>& basis,
                                       const std::vector<std::complex<double>>& weights) {
  if (basis.empty() || basis.size() != weights.size()) throw InputError("superposition needs one weight per basis state");
  const std::size_t k = basis.front().size();
  Eigen::VectorXcd amps = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(std::size_t{1} << k));
  for (std::size_t b = 0; b < basis.size(); ++b) {
    if (basis[b].size() != k) throw InputError("basis strings differ in length");
    std::size_t index = 0;
    for (char ch : basis[b]) {
      if (ch != '+' && ch != '-') throw InputError("basis string '" + basis[b] + "' must use '+' and '-'");
      index = (index << 1) | (ch == '-' ? 1U : 0U);
    }
    amps(static_cast<Eigen::Index>(index)) += weights[b];
  }
  double norm = amps.norm();
  if (norm == 0) throw InputError("superposition has zero norm");
  return StateVector(amps / norm);
}

std::string SpinOperator::label() const {
  std::string out;
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    if (i) out += ' ';
    out += "s" + std::to_string(i + 1) + pauli_name(factors_[i]);
  }
  return out;
}

SpinOperator build_operator(const std::vector<Pauli>& factors) {
  if (factors.empty() || factors.size() > 10) throw InputError("operator needs between 1 and 10 particle factors");
  Eigen::MatrixXcd m = pauli_matrix(factors.front());
  for (std::size_t i = 1; i < factors.size(); ++i) {
    Eigen::MatrixXcd next = Eigen::kroneckerProduct(m, pauli_matrix(factors[i])).eval();
    m = std::move(next);
  }
  return SpinOperator(std::move(m), factors);
}

SpinOperator build_operator(std::string_view factors) {
  std::vector<Pauli> parsed;
  for (char ch : factors) parsed.push_back(parse_pauli(std::string_view(&ch, 1)));
  return build_operator(parsed);
}

double expectation_value(const StateVector& state, const SpinOperator& op) {
  const auto& psi = state.amplitudes();
  if (op.matrix().rows() != psi.size()) throw InputError("operator and state dimensions differ");
  cd value = psi.dot(op.matrix() * psi);  // dot() conjugates its first argument
  if (std::abs(value.imag()) > kTolerance) throw InputError("expectation has a non-negligible imaginary part");
  return value.real();
}

double singlet_correlation(double theta_radians) { return -std::cos(theta_radians); }

double degrees_to_radians(double degrees) { return degrees * M_PI / 180.0; }

StateVector mermin_ghz_state() { return StateVector::superposition({"+++", "---"}, {1.0, -1.0}); }

StateVector alt_ghz_state() { return StateVector::superposition({"++-", "--+"}, {1.0, 1.0}); }

StateVector singlet_state() { return StateVector::superposition({"+-", "-+"}, {1.0, -1.0}); }

GhzOperators ghz_operators() {
  return {build_operator("xyy"), build_operator("yxy"), build_operator("yyx"), build_operator("xxx")};
}

bool is_hermitian(const Eigen::MatrixXcd& m, double tol) {
  return m.rows() == m.cols() && max_abs_difference(m, m.adjoint()) <= tol;
}

double max_abs_difference(const Eigen::MatrixXcd& lhs, const Eigen::MatrixXcd& rhs) {
  if (lhs.rows() != rhs.rows() || lhs.cols() != rhs.cols()) throw InputError("matrix shapes differ");
  return (lhs - rhs).cwiseAbs().maxCoeff();
}

std::optional<std::string> nearest_exact_form(double value) {
  constexpr double kMatch = 1e-9;
  struct Radical {
    double factor;
    const char* suffix;
  };
  for (Radical r : {Radical{1.0, ""}, Radical{std::sqrt(2.0), "*sqrt(2)"}, Radical{std::sqrt(3.0), "*sqrt(3)"}}) {
    double scaled = value / r.factor;
    for (long q = 1; q <= 64; ++q) {
      double p = std::round(scaled * static_cast<double>(q));
      if (std::abs(scaled - p / static_cast<double>(q)) * r.factor <= kMatch) {
        long pi = static_cast<long>(p);
        long g = std::gcd(std::abs(pi), q);
        if (g == 0) g = 1;
        if (pi == 0) return std::string("0");
        std::string text = std::to_string(pi / g);
        if (q / g != 1) text += "/" + std::to_string(q / g);
        return text + r.suffix;
      }
    }
  }
  return std::nullopt;
}

}  // namespace ctxkit::quantum
