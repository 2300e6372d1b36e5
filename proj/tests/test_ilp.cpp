#include <doctest.h>

#include <random>
#include <sstream>

#include "mmc/ilp.hpp"
#include "oracles.hpp"

using mmc::BinaryMatrix;
using mmc::Selection;
namespace ilp = mmc::ilp;

namespace {

const BinaryMatrix kSample = BinaryMatrix::from_rows({"1000", "1010", "0010", "0101"});

const char* const kPairLp =
    "\\ Maximum matrix contraction, p=1 q=2 T=2\n"
    "Maximize\n"
    " obj: z_e_1_1\n"
    "Subject To\n"
    " fix_1_1: a_1_1_1 = 1\n"
    " fix_1_2: a_1_1_2 = 1\n"
    " mc_1_1_2_u1: r_1_1_2 - a_1_1_2 <= 0\n"
    " mc_1_1_2_u2: r_1_1_2 - y_1 <= 0\n"
    " mc_1_1_2_l: r_1_1_2 - a_1_1_2 - y_1 >= -1\n"
    " st_1_1_1: a_2_1_1 - a_1_1_1 - r_1_1_2 = 0\n"
    " st_1_1_2: a_2_1_2 - a_1_1_2 + r_1_1_2 = 0\n"
    " ub_2_1_1: a_2_1_1 <= 1\n"
    " ub_2_1_2: a_2_1_2 <= 1\n"
    " zc_e_1_1_u1: z_e_1_1 - a_2_1_1 <= 0\n"
    " zc_e_1_1_u2: z_e_1_1 - a_2_1_2 <= 0\n"
    " zc_e_1_1_l: z_e_1_1 - a_2_1_1 - a_2_1_2 >= -1\n"
    "Binary\n"
    " y_1\n"
    " a_1_1_1\n"
    " a_1_1_2\n"
    " r_1_1_2\n"
    " a_2_1_1\n"
    " a_2_1_2\n"
    " z_e_1_1\n"
    "End\n";

// Evaluator against the operator-product oracle on every assignment.
void check_against_product(const BinaryMatrix& m) {
  const ilp::IlpModel model = ilp::build_model(m);
  const ilp::Evaluator ev(model);
  for (std::uint32_t lm = 0; lm < (1U << (m.rows() - 1)); ++lm)
    for (std::uint32_t cm = 0; cm < (1U << (m.cols() - 1)); ++cm) {
      const Selection sel{oracle::bits(lm, m.rows() - 1), oracle::bits(cm, m.cols() - 1)};
      const auto prod = oracle::product_contraction(m, sel);
      const auto e = ev.evaluate(sel);
      REQUIRE(e.feasible == oracle::binary(prod));
      REQUIRE(e.products_exact);
      if (e.feasible) REQUIRE(e.objective == oracle::pair_density(prod));
    }
}

}  // namespace

TEST_SUITE("ilp") {
  TEST_CASE("model sizes") {
    const auto model = ilp::build_model(kSample);
    CHECK(model.stages == 7);
    CHECK(model.count_prefix("a_") == 112);
    CHECK(model.count_prefix("x_") == 3);
    CHECK(model.count_prefix("y_") == 3);
    CHECK(model.find("x_3") >= 0);
    CHECK(model.find("x_4") == -1);
    const auto two = ilp::build_model(BinaryMatrix(2, 2));
    CHECK(two.stages == 3);
    CHECK(two.count_prefix("x_") == 1);
    CHECK(two.count_prefix("y_") == 1);
  }

  TEST_CASE("golden LP text") {
    const auto model = ilp::build_model(BinaryMatrix::from_rows({"11"}));
    CHECK(ilp::to_lp(model) == kPairLp);
    std::ostringstream out;
    ilp::write_lp(model, out);
    CHECK(out.str() == kPairLp);
  }

  TEST_CASE("pair matrix: merging the two ones is infeasible") {
    const auto model = ilp::build_model(BinaryMatrix::from_rows({"11"}));
    const ilp::Evaluator ev(model);
    CHECK_FALSE(ev.evaluate({{}, {1}}).feasible);
    const auto keep = ev.evaluate({{}, {}});
    CHECK(keep.feasible);
    CHECK(keep.objective == 1);
  }

  TEST_CASE("example matrix assignments") {
    const auto model = ilp::build_model(kSample);
    const ilp::Evaluator ev(model);
    const auto best = ev.evaluate({{3}, {1}});
    CHECK(best.feasible);
    CHECK(best.objective == 10);
    const auto none = ev.evaluate({{}, {}});
    CHECK(none.feasible);
    CHECK(none.objective == 4);
    CHECK_FALSE(ev.evaluate({{}, {1, 2}}).feasible);
    CHECK(ev.evaluate({{3}, {}}).objective == 7);
  }

  TEST_CASE("zero and trivial matrices") {
    const auto zero = ilp::build_model(BinaryMatrix(2, 2));
    const auto report = ilp::check_formulation(BinaryMatrix(2, 2), zero);
    CHECK(report.agrees);
    CHECK(report.assignments == 4);
    CHECK(report.feasible == 4);
    CHECK(report.best_objective == 0);
    const auto one = ilp::build_model(BinaryMatrix::from_rows({"1"}));
    CHECK(one.stages == 1);
    CHECK(ilp::Evaluator(one).evaluate({}).objective == 0);
    CHECK(ilp::read_lp(ilp::to_lp(one)) == one);
  }

  TEST_CASE("evaluator matches the operator product on every matrix up to 3x3") {
    for (int p = 1; p <= 3; ++p)
      for (int q = 1; q <= 3; ++q)
        for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << (p * q)); ++mask)
          check_against_product(oracle::from_mask(p, q, mask));
  }

  TEST_CASE("evaluator matches the operator product on random rectangles") {
    std::mt19937_64 rng(41);
    for (int t = 0; t < 40; ++t) {
      const int p = 2 + static_cast<int>(rng() % 3);
      const int q = 2 + static_cast<int>(rng() % 4);
      check_against_product(oracle::random_matrix(rng, p, q, 0.35));
    }
  }

  TEST_CASE("LP round trip and determinism") {
    std::mt19937_64 rng(43);
    for (int t = 0; t < 20; ++t) {
      const BinaryMatrix m = oracle::random_matrix(rng, 1 + static_cast<int>(rng() % 5), 1 + static_cast<int>(rng() % 5), 0.4);
      const auto model = ilp::build_model(m);
      const std::string text = ilp::to_lp(model);
      CHECK(ilp::to_lp(ilp::build_model(m)) == text);
      const auto back = ilp::read_lp(text);
      CHECK(back == model);
      CHECK(ilp::to_lp(back) == text);
    }
    CHECK_THROWS_AS(ilp::read_lp("Maximize\n obj: x_1\nSubject To\n c: x_1 <== 1\nEnd\n"), std::runtime_error);
  }

  TEST_CASE("oracle catches broken models") {
    const BinaryMatrix m = BinaryMatrix::from_rows({"110", "011"});
    auto model = ilp::build_model(m);
    CHECK(ilp::check_formulation(m, model).agrees);

    auto no_obj = model;
    const int east = no_obj.find("z_e_1_1");
    std::erase_if(no_obj.objective, [&](const ilp::Term& t) { return t.var == east; });
    CHECK_FALSE(ilp::check_formulation(m, no_obj).agrees);

    auto loose = model;
    std::erase_if(loose.constraints, [](const ilp::Constraint& c) { return c.name.starts_with("mc_"); });
    CHECK_THROWS_AS(ilp::Evaluator{loose}, mmc::DomainError);
  }

  TEST_CASE("oracle guard") {
    CHECK_THROWS_AS(ilp::model_oracle_check(BinaryMatrix(8, 8)), mmc::GuardRefusal);
    ilp::OracleOptions opts;
    opts.execution = mmc::Execution::Serial;
    CHECK(ilp::model_oracle_check(kSample, opts));
  }
}
