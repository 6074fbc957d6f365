#include <doctest.h>

#include <limits>

#include "torsion/report.hpp"
#include "torsion/sweep.hpp"

using namespace torsion;

namespace {

TrialRecord trial(std::uint64_t seed, Status s, double residual) {
  TrialRecord t;
  t.seed = seed;
  t.inputs_digest = digest(std::to_string(seed));
  t.status = s;
  t.residual = residual;
  t.metrics = {{"dim", 3.0}, {"tiny", 1.2345678901234567e-17}};
  t.note = "n=" + std::to_string(seed);
  return t;
}

}  // namespace

TEST_CASE("status strings") {
  for (Status s : {Status::pass, Status::fail, Status::rejected}) CHECK(parse_status(to_string(s)) == s);
  CHECK_THROWS(parse_status("maybe"));
}

TEST_CASE("finalize") {
  VerificationReport r;
  r.trials = {trial(1, Status::pass, 1e-12), trial(2, Status::pass, 3e-11)};
  r.finalize();
  CHECK(r.status == Status::pass);
  CHECK(r.worst_residual == 3e-11);
  CHECK(r.first_failure() == nullptr);

  r.trials.push_back(trial(3, Status::rejected, 1.0));
  r.finalize();
  CHECK(r.status == Status::rejected);
  REQUIRE(r.first_failure() != nullptr);
  CHECK(r.first_failure()->seed == 3);

  r.trials.push_back(trial(4, Status::fail, 0.5));
  r.finalize();
  CHECK(r.status == Status::fail);
  CHECK(r.first_failure()->seed == 3);
}

TEST_CASE("json round trip is lossless") {
  VerificationReport r;
  r.check = "demo";
  r.trials = {trial(10, Status::pass, 0.1 + 0.2), trial(11, Status::fail, 1.0 / 3.0)};
  r.details = {{"classes", 4}, {"missing", nlohmann::json::array({"1/2"})}};
  r.config = {{"seed", 10}};
  r.wall_time_seconds = 0.25;
  r.finalize();
  const nlohmann::json j = r;
  const auto back = nlohmann::json::parse(j.dump()).get<VerificationReport>();
  CHECK(back == r);
  CHECK(back.trials[0].metrics.at("tiny") == 1.2345678901234567e-17);
  CHECK(j.at("pass") == false);
}

TEST_CASE("deterministic dump ignores wall time") {
  VerificationReport a = VerificationReport::single("x", trial(1, Status::pass, 0.0));
  VerificationReport b = a;
  a.wall_time_seconds = 1.0;
  b.wall_time_seconds = 2.0;
  CHECK(deterministic_dump(a) == deterministic_dump(b));
}

TEST_CASE("digest") {
  CHECK(digest("") == "cbf29ce484222325");
  CHECK(digest("a") == "af63dc4c8601ec8c");
  CHECK(digest_doubles({1.0, 2.0}) != digest_doubles({2.0, 1.0}));
}

TEST_CASE("sweep records exceptions as failures and seeds by index") {
  for (Execution exec : {Execution::serial(), Execution::parallel()}) {
    const auto r = sweep("t", 10, 100, exec, [](std::size_t i, std::uint64_t s) {
      if (i == 7) throw std::runtime_error("boom");
      TrialRecord t;
      t.seed = s;
      t.residual = static_cast<double>(i);
      return t;
    });
    REQUIRE(r.trials.size() == 10);
    CHECK(r.status == Status::fail);
    CHECK(r.trials[3].seed == 103);
    CHECK(r.trials[7].seed == 107);
    CHECK(r.first_failure()->seed == 107);
  }
}
