#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "bidisk/io.hpp"
#include "bidisk/model_space.hpp"

namespace bidisk {

enum class ConjectureVerdict { CONSISTENT, VIOLATION_CANDIDATE, INCONCLUSIVE };
std::string to_string(ConjectureVerdict v);

struct ConjectureRecord {
  std::string label;
  Degree deg;
  DetDegree det_deg;
  RankReport report;
  std::optional<int> predicted_rank;  // empty: infinite
  ConjectureVerdict verdict = ConjectureVerdict::INCONCLUSIVE;
  std::vector<std::string> warnings;
};

ConjectureRecord conjecture_report(const RationalInnerMatrix& theta, const Schedule& schedule,
                                   const SweepOptions& opt = {});

enum class FamilyKind { DIAGONAL, PRODUCT, CONJUGATED };
FamilyKind family_kind_from_string(const std::string& s);
std::string to_string(FamilyKind k);

struct FamilySpec {
  FamilyKind kind = FamilyKind::DIAGONAL;
  int d = 2;
  int count = 10;
  std::uint64_t seed = 0;
  int max_m1 = 1;
  int max_m2 = 2;
  int factors = 1;  // PRODUCT: number of (Φ_i, Ψ_i) pairs
};

// A generated or loaded candidate; `theta` is empty when construction failed.
struct BatchItem {
  std::string label;
  std::optional<RationalInnerMatrix> theta;
  std::string error;
};

std::vector<BatchItem> generate_family(const FamilySpec& spec);

// Seeded unitary from the QR factor of a complex Gaussian matrix.
Eigen::MatrixXcd random_unitary(int d, std::mt19937_64& rng);
// 1 + small random terms supported on [0, m] x [0, n], Σ|non-constant| <= 0.3.
BiPoly random_stable_poly(int m, int n, std::mt19937_64& rng);

struct BatchResult {
  std::string label;
  std::optional<ConjectureRecord> record;
  std::string error;
};

struct BatchSummary {
  std::vector<BatchResult> results;
  int consistent = 0;
  int violation_candidates = 0;
  int inconclusive = 0;
  int errors = 0;
};

// Thrown after persistence when a generated Θ with deg_1 Θ <= 1 exceeds the
// d·deg_2 Θ rank bound at some level.
struct ScreeningFailure : std::logic_error {
  using std::logic_error::logic_error;
};

json record_to_json(const ConjectureRecord& r);
std::string summary_csv(const BatchSummary& s);

// Writes <out_dir>/items/<index>_<label>.json and <out_dir>/summary.csv.
BatchSummary run_batch(const std::vector<BatchItem>& items, const Schedule& schedule, const std::string& out_dir,
                       const SweepOptions& opt = {});

}  // namespace bidisk
