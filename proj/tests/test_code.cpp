#include <algorithm>
#include <numeric>
#include <random>
#include <set>

#include "doctest.h"
#include "nct/code.hpp"
#include "nct/error.hpp"
#include "nct/fuzz.hpp"

using namespace nct;

namespace {

Code code_of_words(std::uint32_t radix, std::vector<std::vector<std::string>> sets) {
  std::vector<CodeEntry> entries;
  for (std::size_t i = 0; i < sets.size(); ++i) {
    CodeEntry e{std::string(1, static_cast<char>('a' + i)), {}};
    for (const auto& w : sets[i]) e.codewords.push_back(Codeword::parse(w, radix));
    entries.push_back(std::move(e));
  }
  return make_code(radix, std::move(entries));
}

Source letters(std::vector<Rational> probs) {
  std::vector<std::string> symbols;
  for (std::size_t i = 0; i < probs.size(); ++i) symbols.emplace_back(1, static_cast<char>('a' + i));
  return make_source(std::move(symbols), std::move(probs));
}

ErrorCode error_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an nct::Error");
  return ErrorCode::InvalidArgument;
}

}  // namespace

TEST_CASE("codewords render and parse") {
  CHECK(Codeword::parse("-", 2).empty());
  CHECK(Codeword::parse("0110", 2).str() == "0110");
  CHECK(Codeword::parse("a9", 11).digits == std::vector<std::uint8_t>{10, 9});
  CHECK(error_of([] { Codeword::parse("012", 2); }) == ErrorCode::InvalidCodeword);
  CHECK(error_of([] { Codeword::parse("", 2); }) == ErrorCode::InvalidCodeword);
  CHECK(Codeword::parse("01", 2).is_prefix_of(Codeword::parse("011", 2)));
  CHECK_FALSE(Codeword::parse("01", 2).is_prefix_of(Codeword::parse("001", 2)));
}

TEST_CASE("make_code rejects malformed codes") {
  CHECK(error_of([] { make_code(0, {{"a", {Codeword{}}}}); }) == ErrorCode::InvalidRadix);
  CHECK(error_of([] { make_code(2, {{"a", {}}}); }) == ErrorCode::InvalidArgument);
  CHECK(error_of([] { code_of_words(2, {{"0", "0"}}); }) == ErrorCode::InvalidCodeword);
  CHECK(error_of([] { make_code(2, {{"a", {Codeword{{3}}}}}); }) == ErrorCode::InvalidCodeword);
  CHECK(error_of([] {
          make_code(2, {{"a", {Codeword{{0}}}}, {"a", {Codeword{{1}}}}});
        }) == ErrorCode::DuplicateSymbol);
  const auto multi = code_of_words(2, {{"0", "10"}, {"11"}});
  CHECK(multi.codeword_count() == 3);
  CHECK_FALSE(multi.is_single_valued());
}

TEST_CASE("is_non_singular examples") {
  CHECK(is_non_singular(code_of_words(2, {{"0"}, {"1"}})));
  CHECK_FALSE(is_non_singular(code_of_words(2, {{"0", "10"}, {"10"}})));
  CHECK(is_non_singular(code_of_words(2, {{"-"}})));
}

TEST_CASE("kraft_sum examples") {
  const std::vector<std::size_t> a{1, 2, 2}, b{1, 1, 1}, c{1, 2, 3, 3};
  CHECK(kraft_sum(a, 2) == 1);
  CHECK(kraft_sum(b, 2) == Rational(3, 2));
  CHECK(kraft_sum(c, 2) == Rational(1, 2) + Rational(1, 4) + Rational(1, 8) + Rational(1, 8));
  CHECK(kraft_sum(c, 2) == 1);
  CHECK(kraft_sum(std::vector<std::size_t>{0}, 3) == 1);
  CHECK(error_of([&] { kraft_sum(a, 1); }) == ErrorCode::InvalidRadix);
}

TEST_CASE("kraft_sum is invariant under permutation") {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<std::size_t> lengths(1 + rng() % 10);
    for (auto& l : lengths) l = rng() % 9;
    const std::uint32_t r = 2 + rng() % 5;
    const auto before = kraft_sum(lengths, r);
    std::shuffle(lengths.begin(), lengths.end(), rng);
    CHECK(kraft_sum(lengths, r) == before);
  }
}

TEST_CASE("acl examples") {
  CHECK(acl(letters({Rational(1, 2), Rational(1, 4), Rational(1, 4)}), code_of_words(2, {{"0"}, {"10"}, {"11"}})) ==
        1.5);

  const auto fair = letters({Rational(1, 2), Rational(1, 2)});
  const auto multi = code_of_words(2, {{"0"}, {"10", "11"}});
  const EncodingPolicy half{{{}, {Rational(1, 2), Rational(1, 2)}}};
  CHECK(acl(fair, multi, half) == 1.5);
  CHECK(error_of([&] { acl(fair, multi); }) == ErrorCode::MissingPolicy);

  // Exact oracle: 2/5*1 + 3/10*2 + 1/5*3 + 1/10*3 = 19/10.
  const auto skew = letters({Rational(2, 5), Rational(3, 10), Rational(1, 5), Rational(1, 10)});
  const auto code = code_of_words(2, {{"0"}, {"10"}, {"110"}, {"111"}});
  CHECK(acl_exact(skew, code) == Rational(19, 10));
  CHECK(std::abs(acl(skew, code) - 1.9) <= 1e-12);

  CHECK(error_of([&] { acl(skew, code_of_words(2, {{"0"}, {"1"}})); }) == ErrorCode::MissingSymbol);
  const EncodingPolicy bad{{{}, {Rational(1, 3), Rational(1, 3)}}};
  CHECK(error_of([&] { acl(fair, multi, bad); }) == ErrorCode::InvalidPolicy);
}

TEST_CASE("minimal_reduction examples") {
  const auto r1 = minimal_reduction(code_of_words(2, {{"00", "1"}}));
  CHECK(r1.entry(0).codewords == std::vector<Codeword>{Codeword::parse("1", 2)});

  const auto single = code_of_words(2, {{"0"}, {"10"}, {"11"}});
  CHECK(minimal_reduction(single) == single);

  const auto tie = minimal_reduction(code_of_words(2, {{"10", "01"}}));
  CHECK(tie.entry(0).codewords.front().str() == "01");
}

TEST_CASE("minimal_reduction is idempotent and never lengthens the mean") {
  std::mt19937_64 rng(22);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = 1 + rng() % 6;
    const std::uint32_t r = 2 + rng() % 3;
    std::vector<CodeEntry> entries;
    EncodingPolicy policy;
    for (std::size_t i = 0; i < n; ++i) {
      CodeEntry e{"s" + std::to_string(i + 1), {}};
      std::set<Codeword> words;
      const std::size_t k = 1 + rng() % 3;
      while (words.size() < k) {
        Codeword w;
        const std::size_t len = 1 + rng() % 4;
        for (std::size_t d = 0; d < len; ++d) w.digits.push_back(static_cast<std::uint8_t>(rng() % r));
        words.insert(w);
      }
      e.codewords.assign(words.begin(), words.end());
      std::vector<Rational> q;
      std::uint64_t total = 0;
      std::vector<std::uint64_t> raw(k);
      for (auto& x : raw) total += (x = 1 + rng() % 5);
      for (auto x : raw) q.emplace_back(static_cast<unsigned long>(x), static_cast<unsigned long>(total));
      for (auto& x : q) x.canonicalize();
      policy.weights.push_back(std::move(q));
      entries.push_back(std::move(e));
    }
    const auto code = make_code(r, std::move(entries));
    const auto reduced = minimal_reduction(code);
    CHECK(minimal_reduction(reduced) == reduced);
    CHECK(reduced.is_single_valued());
    const auto src = random_rational_source(n, 64, rng);
    CHECK(acl_exact(src, reduced) <= acl_exact(src, code, policy));
  }
}

TEST_CASE("empirical_acl examples") {
  const auto single = make_source({"a"}, {Rational(1)});
  const auto trace = empirical_acl(single, code_of_words(2, {{"0"}}), first_chooser(), 4, StreamSeed{1});
  REQUIRE(trace.steps() == 4);
  for (std::size_t t = 1; t <= 4; ++t) CHECK(trace.acl_at(t) == 1.0);
  CHECK(trace.frequencies_at(2) == std::vector<std::size_t>{2});

  // Lengths <= 4: sd of ACL_t is at most 4/sqrt(1e5) ~ 0.0126; 0.05 is ~4 sigma
  // for the worst case and far more for this source.
  const auto skew = letters({Rational(2, 5), Rational(3, 10), Rational(1, 5), Rational(1, 10)});
  const auto code = code_of_words(2, {{"0"}, {"10"}, {"110"}, {"1110"}});
  const auto long_run = empirical_acl(skew, code, first_chooser(), 100'000, StreamSeed{1});
  CHECK(std::abs(long_run.acl_at(100'000) - acl(skew, code)) <= 0.05);

  const auto only_b = make_source({"b"}, {Rational(1)});
  std::vector<CodeEntry> e{{"b", {Codeword::parse("1", 2), Codeword::parse("00", 2)}}};
  const auto adversarial = empirical_acl(only_b, make_code(2, e), longest_chooser(), 50, StreamSeed{2});
  for (std::size_t t = 1; t <= 50; ++t) {
    CHECK(adversarial.acl_at(t) == 2.0);
    CHECK(adversarial.reduced_acl_at(t) == 1.0);
  }
  CHECK(adversarial.pathwise_violations() == 0);

  CHECK(error_of([&] { empirical_acl(single, code_of_words(2, {{"0"}}), first_chooser(), 0, StreamSeed{}); }) ==
        ErrorCode::InvalidArgument);
  CHECK(error_of([&] { empirical_acl(skew, code_of_words(2, {{"0"}}), first_chooser(), 3, StreamSeed{}); }) ==
        ErrorCode::MissingSymbol);
}

TEST_CASE("trace bookkeeping: frequencies sum to t, ACL_t is digits over t") {
  const auto src = letters({Rational(1, 2), Rational(1, 3), Rational(1, 6)});
  const auto code = code_of_words(2, {{"0", "111"}, {"10"}, {"110", "11111"}});
  const EncodingPolicy q{{{Rational(3, 4), Rational(1, 4)}, {}, {Rational(1, 2), Rational(1, 2)}}};
  const auto trace = empirical_acl(src, code, policy_chooser(code, q, 5), 2000, StreamSeed{8});
  std::uint64_t digits = 0;
  for (std::size_t t = 1; t <= trace.steps(); t += 97) {
    const auto f = trace.frequencies_at(t);
    CHECK(std::accumulate(f.begin(), f.end(), std::size_t{0}) == t);
  }
  for (std::size_t z = 0; z < trace.steps(); ++z) {
    const auto& ev = trace.events[z];
    digits += code.entry(ev.symbol).codewords[ev.choice].length();
    if (z % 211 == 0) CHECK(trace.acl_at(z + 1) == static_cast<double>(digits) / static_cast<double>(z + 1));
  }
  CHECK(trace.frequencies == trace.frequencies_at(trace.steps()));
  CHECK(trace.pathwise_violations() == 0);
}

TEST_CASE("policy-driven ACL_t converges toward acl as t grows") {
  const auto src = letters({Rational(1, 2), Rational(1, 4), Rational(1, 4)});
  const auto code = code_of_words(2, {{"0", "111"}, {"10"}, {"110", "11"}});
  const EncodingPolicy q{{{Rational(1, 2), Rational(1, 2)}, {}, {Rational(1, 3), Rational(2, 3)}}};
  const double target = acl(src, code, q);
  double previous = 1e9;
  for (std::size_t t : {1'000u, 10'000u, 100'000u}) {
    double err = 0.0;
    for (std::uint64_t s = 1; s <= 20; ++s) {
      const auto trace = empirical_acl(src, code, policy_chooser(code, q, derive_seed(s, 99)), t, StreamSeed{s});
      err += std::abs(trace.acl_at(t) - target);
    }
    err /= 20.0;
    CAPTURE(t);
    CHECK(err < previous);
    previous = err;
  }
}
