#include "torsion/report.hpp"

#include <algorithm>
#include <cstring>
#include <stdexcept>

namespace torsion {

std::string to_string(Status s) {
  switch (s) {
    case Status::pass: return "pass";
    case Status::fail: return "fail";
    case Status::rejected: return "rejected";
  }
  return "?";
}

Status parse_status(const std::string& s) {
  if (s == "pass") return Status::pass;
  if (s == "fail") return Status::fail;
  if (s == "rejected") return Status::rejected;
  throw std::invalid_argument("unknown status '" + s + "'");
}

VerificationReport VerificationReport::single(std::string check, TrialRecord trial) {
  VerificationReport r;
  r.check = std::move(check);
  r.trials.push_back(std::move(trial));
  r.finalize();
  return r;
}

void VerificationReport::finalize() {
  bool any_fail = false;
  bool any_rejected = false;
  worst_residual = 0.0;
  for (const auto& t : trials) {
    any_fail |= t.status == Status::fail;
    any_rejected |= t.status == Status::rejected;
    if (t.status != Status::rejected) worst_residual = std::max(worst_residual, t.residual);
  }
  status = any_fail ? Status::fail : (any_rejected ? Status::rejected : Status::pass);
}

const TrialRecord* VerificationReport::first_failure() const {
  auto it = std::find_if(trials.begin(), trials.end(), [](const TrialRecord& t) { return !t.passed(); });
  return it == trials.end() ? nullptr : &*it;
}

void to_json(nlohmann::json& j, const TrialRecord& t) {
  j = nlohmann::json{{"seed", t.seed},         {"inputs_digest", t.inputs_digest},
                     {"status", to_string(t.status)}, {"residual", t.residual},
                     {"metrics", t.metrics},   {"note", t.note}};
}

void from_json(const nlohmann::json& j, TrialRecord& t) {
  j.at("seed").get_to(t.seed);
  j.at("inputs_digest").get_to(t.inputs_digest);
  t.status = parse_status(j.at("status").get<std::string>());
  j.at("residual").get_to(t.residual);
  j.at("metrics").get_to(t.metrics);
  j.at("note").get_to(t.note);
}

void to_json(nlohmann::json& j, const VerificationReport& r) {
  j = nlohmann::json{{"check", r.check},
                     {"status", to_string(r.status)},
                     {"pass", r.passed()},
                     {"worst_residual", r.worst_residual},
                     {"trials", r.trials},
                     {"details", r.details},
                     {"config", r.config},
                     {"wall_time_seconds", r.wall_time_seconds}};
}

void from_json(const nlohmann::json& j, VerificationReport& r) {
  j.at("check").get_to(r.check);
  r.status = parse_status(j.at("status").get<std::string>());
  j.at("worst_residual").get_to(r.worst_residual);
  j.at("trials").get_to(r.trials);
  r.details = j.at("details");
  r.config = j.at("config");
  j.at("wall_time_seconds").get_to(r.wall_time_seconds);
}

std::string deterministic_dump(const VerificationReport& r, int indent) {
  nlohmann::json j = r;
  j["wall_time_seconds"] = 0.0;
  return j.dump(indent);
}

std::string digest(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  static constexpr char hex[] = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i) {
    out[i] = hex[h & 0xf];
    h >>= 4;
  }
  return out;
}

std::string digest_doubles(const std::vector<double>& values) {
  std::string bytes(values.size() * sizeof(double), '\0');
  if (!values.empty()) std::memcpy(bytes.data(), values.data(), bytes.size());
  return digest(bytes);
}

}  // namespace torsion
