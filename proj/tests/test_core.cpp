#include <doctest.h>

#include <random>

#include "mmc/bitgrid.hpp"
#include "mmc/contraction.hpp"
#include "oracles.hpp"

using mmc::BinaryMatrix;
using mmc::Selection;

namespace {

const BinaryMatrix kSample = BinaryMatrix::from_rows({"1000", "1010", "0010", "0101"});

oracle::Dense dense(const mmc::IntegerMatrix& m) {
  oracle::Dense d(static_cast<std::size_t>(m.rows()), std::vector<std::int64_t>(static_cast<std::size_t>(m.cols())));
  for (int r = 0; r < m.rows(); ++r)
    for (int c = 0; c < m.cols(); ++c) d[r][c] = m(r, c);
  return d;
}

template <class F>
void for_all_small(int max_p, int max_q, F&& f) {
  for (int p = 1; p <= max_p; ++p)
    for (int q = 1; q <= max_q; ++q)
      for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << (p * q)); ++mask) f(oracle::from_mask(p, q, mask));
}

template <class F>
void for_all_selections(const BinaryMatrix& m, F&& f) {
  for (std::uint32_t lm = 0; lm < (1U << (m.rows() - 1)); ++lm)
    for (std::uint32_t cm = 0; cm < (1U << (m.cols() - 1)); ++cm)
      f(Selection{oracle::bits(lm, m.rows() - 1), oracle::bits(cm, m.cols() - 1)});
}

}  // namespace

TEST_SUITE("core") {
  TEST_CASE("matrix construction and errors") {
    CHECK(kSample.rows() == 4);
    CHECK(kSample.ones() == 6);
    CHECK_THROWS_AS(BinaryMatrix(0, 3), mmc::DomainError);
    CHECK_THROWS_AS(BinaryMatrix::from_rows({"10", "1"}), mmc::DomainError);
    CHECK_THROWS_AS(BinaryMatrix::from_rows({"12"}), mmc::DomainError);
    mmc::IntegerMatrix im(1, 2);
    im(0, 1) = 2;
    CHECK_FALSE(im.is_binary());
    CHECK_THROWS_AS(BinaryMatrix::from_integer(im), mmc::DomainError);
    BinaryMatrix m(2, 2);
    m.set(1, 1, true);
    m.set(1, 1, true);
    CHECK(m.ones() == 1);
    m.set(1, 1, false);
    CHECK(m.ones() == 0);
    CHECK(kSample.transposed().transposed() == kSample);
  }

  TEST_CASE("selection checks") {
    CHECK_THROWS_AS(mmc::check_selection(kSample, {{4}, {}}), mmc::BoundsError);
    CHECK_THROWS_AS(mmc::check_selection(kSample, {{}, {0}}), mmc::BoundsError);
    CHECK_THROWS_AS(mmc::check_selection(kSample, {{2, 1}, {}}), mmc::DomainError);
    CHECK_THROWS_AS(mmc::check_selection(kSample, {{2, 2}, {}}), mmc::DomainError);
    CHECK_NOTHROW(mmc::check_selection(kSample, {{1, 2, 3}, {1, 2, 3}}));
  }

  TEST_CASE("density on small hand examples") {
    CHECK(mmc::density(BinaryMatrix::from_rows({"11"})) == 1);
    CHECK(mmc::density(BinaryMatrix::from_rows({"11", "11"})) == 6);
    CHECK(mmc::density(BinaryMatrix::from_rows({"101"})) == 0);
    CHECK(mmc::density(BinaryMatrix::from_rows({"10", "01"})) == 1);
    CHECK(mmc::density(BinaryMatrix::from_rows({"111", "111", "111"})) == 20);
    mmc::IntegerMatrix im(1, 2);
    im(0, 0) = 2;
    CHECK_THROWS_AS(mmc::density(im), mmc::DomainError);
  }

  TEST_CASE("the example matrix") {
    CHECK(mmc::density(kSample) == 4);
    CHECK(mmc::density(mmc::apply(kSample, {{3}, {}})) == 7);
    CHECK(mmc::density(mmc::apply(kSample, {{3}, {1}})) == 10);
    const auto product = mmc::contract(kSample, {{3}, {1}});
    CHECK(product == BinaryMatrix::from_rows({"1000", "1100", "1110", "0000"}).to_integer());
    CHECK(mmc::apply(kSample, {{3}, {1}}) == BinaryMatrix::from_rows({"100", "110", "111"}));
    const auto bad = mmc::contract(kSample, {{}, {1, 2}});
    CHECK_FALSE(bad.is_binary());
    CHECK(bad(1, 0) == 2);
    CHECK_FALSE(mmc::is_valid(kSample, {{}, {1, 2}}));
    CHECK_THROWS_AS(mmc::apply(kSample, {{}, {1, 2}}), mmc::DomainError);
  }

  TEST_CASE("delta examples") {
    CHECK(mmc::density_delta_line(BinaryMatrix::from_rows({"10", "00", "01"}), 2) == 1);
    CHECK(mmc::density_delta_column(BinaryMatrix::from_rows({"101"}), 2) == 1);
    CHECK_THROWS_AS(mmc::density_delta_line(BinaryMatrix::from_rows({"1", "1"}), 1), mmc::DomainError);
    CHECK_THROWS_AS(mmc::single_line_valid(kSample, 4), mmc::BoundsError);
    CHECK_THROWS_AS(mmc::single_column_valid(kSample, 0), mmc::BoundsError);
  }

  TEST_CASE("reduce_empty") {
    CHECK(mmc::reduce_empty(BinaryMatrix::from_rows({"000", "010", "000"})) == BinaryMatrix::from_rows({"1"}));
    CHECK(mmc::reduce_empty(BinaryMatrix(3, 4)) == BinaryMatrix(1, 1));
    CHECK(mmc::reduce_empty(BinaryMatrix::from_rows({"1001", "0000", "0100"})) ==
          BinaryMatrix::from_rows({"101", "010"}));
  }

  TEST_CASE("contract matches the operator product on every selection up to 3x4") {
    for_all_small(3, 4, [](const BinaryMatrix& m) {
      for_all_selections(m, [&](const Selection& sel) {
        const auto want = oracle::product_contraction(m, sel);
        REQUIRE(dense(mmc::contract(m, sel)) == want);
        const bool valid = oracle::binary(want);
        REQUIRE(mmc::is_valid(m, sel) == valid);
        if (valid) {
          const BinaryMatrix t = mmc::apply(m, sel);
          REQUIRE(t.rows() == m.rows() - static_cast<int>(sel.lines.size()));
          REQUIRE(mmc::density(t) == oracle::pair_density(want));
          REQUIRE(mmc::apply_fast(m, sel) == t);
          REQUIRE(mmc::replay(m, sel).density() == mmc::density(t));
        }
      });
    });
  }

  TEST_CASE("order decomposition and single validity on every matrix up to 4x4") {
    for_all_small(4, 4, [](const BinaryMatrix& m) {
      REQUIRE(mmc::density(m) == oracle::pair_density(m));
      for (int i = 1; i < m.rows(); ++i) {
        const bool v = mmc::single_line_valid(m, i);
        REQUIRE(v == mmc::is_valid(m, {{i}, {}}));
        if (v) {
          REQUIRE(mmc::density_delta_line(m, i) == mmc::density(mmc::apply(m, {{i}, {}})) - mmc::density(m));
        }
      }
      for (int j = 1; j < m.cols(); ++j) {
        const bool v = mmc::single_column_valid(m, j);
        REQUIRE(v == mmc::is_valid(m, {{}, {j}}));
        if (v) {
          REQUIRE(mmc::density_delta_column(m, j) == mmc::density(mmc::apply(m, {{}, {j}})) - mmc::density(m));
        }
      }
      // Lines and columns commute: contracting lines then columns equals the
      // two applied as separate steps.
      if (m.rows() == 4 && m.cols() == 4) {
        const Selection sel{{1, 3}, {2}};
        if (mmc::is_valid(m, sel)) {
          REQUIRE(mmc::apply(mmc::apply(m, {{1, 3}, {}}), {{}, {2}}) == mmc::apply(m, sel));
        }
      }
    });
  }

  TEST_CASE("validity is downward closed") {
    std::mt19937_64 rng(7);
    for (int t = 0; t < 200; ++t) {
      const BinaryMatrix m = oracle::random_matrix(rng, 5, 5, 0.25);
      for_all_selections(m, [&](const Selection& sel) {
        if (!mmc::is_valid(m, sel)) return;
        for (std::size_t k = 0; k < sel.lines.size(); ++k) {
          Selection sub = sel;
          sub.lines.erase(sub.lines.begin() + static_cast<long>(k));
          REQUIRE(mmc::is_valid(m, sub));
        }
      });
    }
  }

  TEST_CASE("bitgrid kernels across word boundaries") {
    std::mt19937_64 rng(11);
    for (int t = 0; t < 40; ++t) {
      const int p = 2 + static_cast<int>(rng() % 8);
      const int q = 60 + static_cast<int>(rng() % 80);
      const BinaryMatrix m = oracle::random_matrix(rng, p, q, 0.08);
      mmc::BitGrid g(m);
      REQUIRE(g.to_matrix() == m);
      REQUIRE(g.density() == mmc::density(m));
      REQUIRE(g.transposed().to_matrix() == m.transposed());
      for (int j = 1; j < q; ++j) {
        REQUIRE(g.cols_mergeable(j - 1) == mmc::single_column_valid(m, j));
      }
      for (int i = 1; i < p; ++i) {
        const bool v = mmc::single_line_valid(m, i);
        REQUIRE(g.rows_mergeable(i - 1) == v);
        if (v) REQUIRE(g.row_merge_delta(i - 1) == mmc::density_delta_line(m, i));
      }
      const int j = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(q - 1));
      if (mmc::single_column_valid(m, j)) {
        mmc::BitGrid h = g;
        h.merge_cols(j - 1);
        REQUIRE(h.to_matrix() == mmc::apply(m, {{}, {j}}));
      }
    }
  }

  TEST_CASE("contraction state tracks original gaps") {
    mmc::ContractionState s(kSample);
    REQUIRE(s.line_valid(3));
    s.contract_line(3);
    REQUIRE(s.column_valid(1));
    s.contract_column(1);
    CHECK(s.selection() == Selection{{3}, {1}});
    CHECK(s.density() == 10);
    CHECK(s.matrix() == mmc::apply(kSample, {{3}, {1}}));
    CHECK_THROWS_AS(mmc::replay(kSample, {{}, {1, 2}}), mmc::DomainError);
  }
}
