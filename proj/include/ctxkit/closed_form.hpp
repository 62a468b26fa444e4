#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "ctxkit/errors.hpp"
#include "ctxkit/feasibility.hpp"
#include "ctxkit/interval.hpp"
#include "ctxkit/measures.hpp"
#include "ctxkit/rational.hpp"

namespace ctxkit {

// One line of a verification trace: a named relation and whether it held.
struct Check {
  std::string name;
  std::string detail;
  bool holds = false;
};

bool all_hold(const std::vector<Check>& checks);

// ---------------------------------------------------------------------------
// Three-variable GHZ moments

struct GhzMoments {
  Rational a;
  Rational b;
  Rational c;
  Rational abc;
};

// E(A) + E(B) + E(C) - E(ABC).
Rational ghz_F(const GhzMoments& m);

struct GhzInequalityResult {
  bool passed = true;
  int violated = 0;  // 1..4, 0 when passed
  Rational value{0};  // the offending signed sum
  std::array<Rational, 4> sums;
};

// The four two-sided bounds -2 <= s . (E(A), E(B), E(C), E(ABC)) <= 2 for the
// sign patterns (+,+,+,-), (-,+,+,+), (+,-,+,+), (+,+,-,+). Inside [-1,1]^4
// these hold exactly when a joint distribution exists.
GhzInequalityResult ghz_inequalities(const GhzMoments& m);

// Standard scenario over A, B, C with the four equality constraints.
Scenario ghz_scenario(const GhzMoments& m);

struct SymmetricParams {
  Rational p;  // P(A=1) = P(B=1) = P(C=1)
  Rational q;  // P(ABC=1)
};

// x: one minus sign, y: two minus signs, z: "+++", w: "---".
struct SymmetricWitness {
  Rational x;
  Rational y;
  Rational z;
  Rational w;
};

struct SymmetricConstruction {
  SymmetricWitness weights;
  AtomMeasure measure;
};

class NoWitnessError : public Error {
 public:
  using Error::Error;
};

// Mixture of the two boundary distributions (3p = q and 3p = q + 2) with
// weight lambda = (3p - q) / 2 on the latter. Requires p, q in [0,1] and
// 0 <= 3p - q <= 2, else NoWitnessError. The returned measure is re-checked
// against (2p - 1, 2q - 1) before returning.
SymmetricConstruction symmetric_construct(const SymmetricParams& params);

// E(A)=E(B)=E(C)=2p-1, E(ABC)=2q-1.
Scenario symmetric_scenario(const SymmetricParams& params);

struct EpsilonResult {
  bool feasible = false;
  Rational F{0};
};

// F = 4 - 4 eps; feasible iff F <= 2. Throws InputError unless 0 <= eps <= 1.
EpsilonResult epsilon_feasible(const Rational& eps);

// E(A), E(B), E(C) >= 1 - eps and E(ABC) <= -1 + eps.
Scenario epsilon_scenario(const Rational& eps);

// ---------------------------------------------------------------------------
// Value assignments s_ij for particles i = 1..3 and directions j = x, y

struct MerminAssignment {
  std::array<int, 3> sx{1, 1, 1};
  std::array<int, 3> sy{1, 1, 1};
};

struct MerminValues {
  int a;  // s1x s2y s3y
  int b;  // s1y s2x s3y
  int c;  // s1y s2y s3x
  int d;  // s1x s2x s3x
};

MerminValues mermin_values(const MerminAssignment& s);

struct MerminResult {
  int assignments = 0;
  int satisfying = 0;       // A = B = C = 1 and D = -1
  int identity_holds = 0;   // A * B * C == D
};

MerminResult mermin_assignment_check();

// ---------------------------------------------------------------------------
// Pairwise spin correlations of X, Y, Z with P(X=1) = P(Y=1) = P(Z=1) = 1/2

struct BellMoments {
  ScalarInterval xy;
  ScalarInterval xz;
  ScalarInterval yz;
};

// Order: E(XY|Z=+1), E(XY|Z=-1), E(XZ|Y=+1), E(XZ|Y=-1), E(YZ|X=+1), E(YZ|X=-1).
using SixConditionals = std::array<Rational, 6>;
const std::array<std::string, 6>& conditional_names();

// X, Y, Z with E(X)=E(Y)=E(Z)=0 and the three pairwise moments.
Scenario bell_scenario(const BellMoments& m);

struct BellSystemResult {
  Endpoint endpoint = Endpoint::Lo;
  bool linear_stage_solved = false;
  std::string linear_detail;
  std::optional<SixConditionals> conditionals;
  FeasibilityOutcome realizability;
  bool solved() const { return conditionals.has_value() && realizability.verdict == Verdict::Feasible; }
};

// Two stages. Linear: 2E(XY) = E(XY|Z=1) + E(XY|Z=-1) (and for XZ, YZ) with
// E(XY|Z=s) = E(YZ|X=s) and every unknown in [-1,1]; the returned solution is
// the balanced one, each conditional equal to its unconditional moment.
// Realizability: the matching standard scenario must be feasible.
BellSystemResult bell_conditional_solve(const BellMoments& m, Endpoint endpoint);

struct UpperBellResult {
  Endpoint endpoint = Endpoint::Lo;
  SixConditionals values;
  std::vector<Check> checks;
  bool verified() const { return all_hold(checks); }
};

// Upper relaxation: 2E*(XY) >= E*(XY|Z=1) + E*(XY|Z=-1) (and for XZ, YZ), the
// two symmetry equalities, unknowns in [-1,1], and for every conditional the
// implied upper probabilities (1 + u)/2 and (1 - u)/2 summing to at least 1.
// Canonical choice: maximize the sum of the six unknowns, prefer the solution
// with equal values inside each conditioning pair, else the lexicographically
// smallest optimum. Throws InternalError if the system is infeasible.
UpperBellResult upper_bell_solve(const BellMoments& m, Endpoint endpoint);

// ---------------------------------------------------------------------------
// Lower and upper atom witnesses for scenarios with no standard joint

struct NonadditiveWitness {
  AtomMeasure atoms;
  PartialSetFunction set_function;
  std::vector<std::string> forced_zero_atoms;
  std::vector<Check> checks;
};

// Lower (or upper) atom system for a scenario whose single-variable moments
// are all +1 or -1 and whose constraints are exact equalities:
// - each sign event forced to lower/upper probability 1 has atom sum <= 1
// (lower) or >= 1 (upper);
// - each product moment holds as a signed atom sum;
// - total atom mass <= 1 (lower) or >= 1 (upper).
// Lower: maximize total mass; upper: minimize it. Ties are broken
// lexicographically (largest earliest atom for lower, smallest for upper) and
// the result is averaged over the variable permutations that preserve the
// scenario. Forced zeros are atoms whose maximum over the feasible set is 0.
NonadditiveWitness solve_nonadditive(const Scenario& scenario);

// E(A)=E(B)=E(C)=1, E(ABC)=-1 under lower probabilities.
NonadditiveWitness lower_ghz_solve();
// E(A)=E(B)=E(C)=1, E(ABC)=-1 under upper probabilities.
NonadditiveWitness upper_ghz_solve();

// The GHZ premises as a scenario of the given kind.
Scenario ghz_premises(ScenarioKind kind);

}  // namespace ctxkit
