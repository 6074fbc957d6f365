#ifndef TORSION_REPORT_HPP
#define TORSION_REPORT_HPP

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace torsion {

enum class Status { pass, fail, rejected };

std::string to_string(Status s);
Status parse_status(const std::string& s);

/// One verifier evaluation. `metrics` holds residuals and integer-valued
/// quantities (dimensions, counts) keyed by name.
struct TrialRecord {
  std::uint64_t seed = 0;
  std::string inputs_digest;
  Status status = Status::pass;
  double residual = 0.0;
  std::map<std::string, double> metrics;
  std::string note;

  bool passed() const { return status == Status::pass; }
  friend bool operator==(const TrialRecord&, const TrialRecord&) = default;
};

struct VerificationReport {
  std::string check;
  Status status = Status::pass;
  double worst_residual = 0.0;
  std::vector<TrialRecord> trials;
  nlohmann::json details = nlohmann::json::object();
  nlohmann::json config = nlohmann::json::object();
  double wall_time_seconds = 0.0;

  bool passed() const { return status == Status::pass; }

  /// Single-trial report; status and residual come from the trial.
  static VerificationReport single(std::string check, TrialRecord trial);

  /// Recomputes status and worst residual from the trials: pass iff every trial passed,
  /// fail if any failed, rejected otherwise.
  void finalize();

  /// First failing or rejected trial, if any.
  const TrialRecord* first_failure() const;

  friend bool operator==(const VerificationReport&, const VerificationReport&) = default;
};

void to_json(nlohmann::json& j, const TrialRecord& t);
void from_json(const nlohmann::json& j, TrialRecord& t);
void to_json(nlohmann::json& j, const VerificationReport& r);
void from_json(const nlohmann::json& j, VerificationReport& r);

/// JSON text with `wall_time_seconds` zeroed, used for replay comparisons.
std::string deterministic_dump(const VerificationReport& r, int indent = 2);

/// 64-bit FNV-1a, hex encoded. Stable across platforms.
std::string digest(std::string_view bytes);
std::string digest_doubles(const std::vector<double>& values);

}  // namespace torsion

#endif  // TORSION_REPORT_HPP
