#include <doctest.h>

#include <sstream>

#include "oracle.hpp"
#include "sigpat/transaction_db.hpp"

using namespace sigpat;

namespace {
TransactionDatabase parse(const std::string& text, bool remap = false) {
  std::istringstream in(text);
  return TransactionDatabase::parse_fimi(in, remap);
}
}  // namespace

TEST_CASE("FIMI parsing") {
  const auto db = parse("1 2 3\n2 3\n");
  CHECK(db.num_transactions() == 2);
  CHECK(db.num_items() == 4);  // max id + 1 without remapping
  CHECK(db.support(2) == 2);
  CHECK(db.support(1) == 1);
  CHECK(db.support(0) == 0);

  const auto empty = parse("");
  CHECK(empty.num_transactions() == 0);
  CHECK(empty.num_items() == 0);

  SUBCASE("blank lines are empty transactions") {
    const auto with_blank = parse("1 2\n\n2\n");
    CHECK(with_blank.num_transactions() == 3);
    CHECK(with_blank.rows()[1].empty());
    CHECK(with_blank.support(2) == 2);
  }

  SUBCASE("duplicates within a line are dropped") {
    const auto dup = parse("5 5 5 1\n");
    CHECK(dup.rows()[0] == std::vector<Count>{1, 5});
    CHECK(dup.support(5) == 1);
  }

  SUBCASE("parse errors carry the line number") {
    std::istringstream bad("1 2\n3 x 4\n");
    try {
      TransactionDatabase::parse_fimi(bad);
      FAIL("expected ParseError");
    } catch (const ParseError& e) {
      CHECK(e.line() == 2);
    }
    std::istringstream neg("1 -2\n");
    CHECK_THROWS_AS(TransactionDatabase::parse_fimi(neg), ParseError);
  }

  SUBCASE("sparse ids remap to a dense range with a persisted map") {
    const auto sparse = parse("100 16470\n16470\n", /*remap=*/true);
    CHECK(sparse.num_items() == 2);
    CHECK(sparse.external_id(0) == 100);
    CHECK(sparse.external_id(1) == 16470);
    CHECK(sparse.support(1) == 2);
  }
}

TEST_CASE("parse -> serialize -> parse round-trips") {
  SplitMix64 rng(0x5eed0101);
  for (int trial = 0; trial < 30; ++trial) {
    const auto db = oracle::random_db(rng, 20, 10, 0.4);
    std::ostringstream out;
    db.write_fimi(out);
    const auto again = parse(out.str());
    CHECK(again == db);
  }
  // Remapped databases serialize external ids, so the round trip preserves
  // the database including its id map.
  const auto sparse = parse("7 900\n900 7 3\n", true);
  std::ostringstream out;
  sparse.write_fimi(out);
  CHECK(out.str() == "7 900\n3 7 900\n");
  const auto again = parse(out.str(), true);
  CHECK(again == sparse);
}

TEST_CASE("pattern support") {
  const auto db = parse("0 1 2\n0 1\n2\n");
  CHECK(db.pattern_support(std::vector<Count>{1}) == 2);
  CHECK(db.pattern_support(std::vector<Count>{0, 1}) == 2);
  CHECK(db.pattern_support(std::vector<Count>{1, 2}) == 1);
  CHECK(db.pattern_support(std::vector<Count>{2, 1, 0}) == 1);
  const auto disjoint = parse("0\n1\n");
  CHECK(disjoint.pattern_support(std::vector<Count>{0, 1}) == 0);
  CHECK_THROWS_AS(db.pattern_support(std::vector<Count>{9}),
                  std::domain_error);

  SUBCASE("matches the row-product oracle on random databases") {
    SplitMix64 rng(0x5eed0102);
    for (int trial = 0; trial < 50; ++trial) {
      const auto rdb = oracle::random_db(rng, 30, 10, 0.35);
      const auto masks = oracle::row_masks_of(rdb);
      for (int q = 0; q < 20; ++q) {
        const std::uint32_t subset = static_cast<std::uint32_t>(
            1 + rng.next_below((1u << rdb.num_items()) - 1));
        const auto items = oracle::mask_to_items(subset);
        CHECK(rdb.pattern_support(items) ==
              oracle::mask_support(masks, subset));
      }
    }
  }

  SUBCASE("monotone non-increasing under extension (property)") {
    SplitMix64 rng(0x5eed0103);
    for (int trial = 0; trial < 40; ++trial) {
      const auto rdb = oracle::random_db(rng, 25, 8, 0.5);
      std::vector<Count> pattern;
      for (Count item = 0; item < rdb.num_items(); ++item) {
        const Count before = rdb.pattern_support(pattern);
        pattern.push_back(item);
        CHECK(rdb.pattern_support(pattern) <= before);
      }
    }
  }
}

TEST_CASE("label parsing and canonicalization") {
  {
    std::istringstream in("1\n0\n0\n");
    const auto lv = LabelVector::parse(in, 3);
    CHECK(lv.n() == 1);
    CHECK_FALSE(lv.swapped());
    CHECK(lv.positive(0));
    CHECK_FALSE(lv.positive(1));
  }
  {
    // Ones are the majority: canonical positives are the zeros.
    std::istringstream in("1\n1\n0\n");
    const auto lv = LabelVector::parse(in, 3);
    CHECK(lv.n() == 1);
    CHECK(lv.swapped());
    CHECK_FALSE(lv.positive(0));
    CHECK(lv.positive(2));
    CHECK(lv.positive_transactions() == std::vector<Count>{2});
  }
  {
    std::istringstream in("1\n1\n1\n");
    CHECK_THROWS_AS(LabelVector::parse(in, 3), DegenerateDataError);
  }
  {
    std::istringstream in("1\n0\n");
    CHECK_THROWS_AS(LabelVector::parse(in, 3), ParseError);
  }
  {
    std::istringstream in("1\n2\n0\n");
    CHECK_THROWS_AS(LabelVector::parse(in, 3), ParseError);
  }
  {
    std::istringstream in("1\n0\n1\n0\n");
    const auto lv = LabelVector::parse(in, 4);
    CHECK(lv.balanced_tie());
    CHECK(lv.n() == 2);
  }
}

TEST_CASE("synthetic ratio labels") {
  const auto r10 = LabelVector::synthetic_ratio(100, 10);
  CHECK(r10.n() == 10);
  CHECK(r10.synthetic());
  CHECK(r10.positive(9));
  CHECK_FALSE(r10.positive(10));

  CHECK(LabelVector::synthetic_ratio(958, 2).n() == 479);
  CHECK(LabelVector::synthetic_ratio(67557, 2).n() == 33778);
  CHECK(LabelVector::synthetic_ratio(105, 10).n() == 10);  // floor(N/r)
  CHECK_THROWS_AS(LabelVector::synthetic_ratio(100, 1), std::domain_error);
  CHECK_THROWS_AS(LabelVector::synthetic_ratio(5, 10), DegenerateDataError);
}
