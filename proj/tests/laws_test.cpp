#include <catch2/catch_amalgamated.hpp>

#include "ordmeas/fuzz.hpp"
#include "ordmeas/laws.hpp"

using namespace ordmeas;

TEST_CASE("all suites pass in quick mode") {
  LawOptions opt;
  opt.quick = true;
  const auto reports = run_suites("all", opt);
  REQUIRE(reports.size() == 5);
  for (const auto& suite : reports) {
    INFO(suite.suite);
    for (const auto& law : suite.laws) {
      INFO(law.name << ": " << law.witness);
      CHECK(law.violations == 0);
    }
  }
  CHECK(all_ok(reports));
  CHECK_THROWS_AS(run_suites("nope", opt), error);
}

TEST_CASE("file mode reports the running-example witnesses") {
  const InstanceFile file = builtin_instance();
  LawOptions opt;
  opt.file = &file;
  const auto reports = run_suites("measures", opt);
  REQUIRE(reports.size() == 1);
  const auto& laws = reports[0].laws;
  const auto modular = std::find_if(laws.begin(), laws.end(), [](const LawResult& l) {
    return l.name == "modular_identity";
  });
  REQUIRE(modular != laws.end());
  CHECK(modular->cases == 1);
  CHECK(modular->violations == 0);
  CHECK(modular->witness == "(5,5)");
  CHECK(all_ok(run_suites("all", opt)));

  const InstanceFile nat = builtin_nat_instance();
  LawOptions nopt;
  nopt.file = &nat;
  CHECK(all_ok(run_suites("all", nopt)));
}

TEST_CASE("law reports serialize deterministically") {
  LawOptions opt;
  opt.quick = true;
  const auto a = to_json(run_suites("lattice", opt), opt.seed).dump();
  const auto b = to_json(run_suites("lattice", opt), opt.seed).dump();
  CHECK(a == b);
}

TEST_CASE("fuzz runs are deterministic and pass") {
  FuzzOptions opt;
  opt.seed = 42;
  opt.cases = 40;
  const FuzzReport r1 = run_fuzz(opt);
  const FuzzReport r2 = run_fuzz(opt);
  CHECK(r1.ok());
  CHECK(r1.to_text() == r2.to_text());
  CHECK(r1.to_json_report().dump() == r2.to_json_report().dump());

  FuzzOptions other = opt;
  other.seed = 43;
  CHECK(run_fuzz(other).ok());
}

TEST_CASE("the shrinker minimizes a planted violation") {
  // A deliberately false law: the first coordinate of mu's total stays small.
  std::vector<InstanceLaw> bogus;
  bogus.push_back({"bogus/mu_total_small", false,
                   [](const InstanceFile& f) -> std::optional<std::string> {
                     const auto& mu = f.pos_measures.at("mu");
                     if (mu.total().finite()[0] > 3) return std::string("total too big");
                     return std::nullopt;
                   }});
  FuzzOptions opt;
  opt.seed = 7;
  opt.cases = 50;
  const FuzzReport r = run_fuzz(opt, &bogus);
  REQUIRE_FALSE(r.ok());
  REQUIRE(r.violation.has_value());
  const InstanceFile& reproducer = r.violation->reproducer;
  // Still violating, and shrunk to the smallest shape that can violate.
  CHECK(bogus[0].check(reproducer).has_value());
  CHECK(reproducer.space.finite().size() == 1);
  CHECK(reproducer.dim == 1);
  // Deterministic reproduction.
  const FuzzReport again = run_fuzz(opt, &bogus);
  CHECK(r.to_text() == again.to_text());
}

TEST_CASE("planted nat violation shrinks over exceptional indices") {
  std::vector<InstanceLaw> bogus;
  bogus.push_back({"bogus/nat_support_small", true,
                   [](const InstanceFile& f) -> std::optional<std::string> {
                     const auto& mu = f.pos_measures.at("mu");
                     if (mu.exceptional().size() >= 2)
                       return std::string("two exceptional atoms");
                     return std::nullopt;
                   }});
  FuzzOptions opt;
  opt.seed = 3;
  opt.cases = 60;
  const FuzzReport r = run_fuzz(opt, &bogus);
  REQUIRE_FALSE(r.ok());
  // The shrinker cannot drop below two entries without losing the violation.
  CHECK(r.violation->reproducer.pos_measures.at("mu").exceptional().size() == 2);
  CHECK(r.violation->reproducer.dim == 1);
}
