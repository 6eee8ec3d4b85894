#include <cmath>
#include <random>

#include "doctest.h"
#include "nct/decipherability.hpp"
#include "nct/error.hpp"
#include "nct/fuzz.hpp"
#include "nct/proof.hpp"
#include "oracle.hpp"

using namespace nct;

namespace {

Source letters(std::vector<Rational> probs) {
  std::vector<std::string> symbols;
  for (std::size_t i = 0; i < probs.size(); ++i) symbols.emplace_back(1, static_cast<char>('a' + i));
  return make_source(std::move(symbols), std::move(probs));
}

Code letter_code(std::uint32_t radix, std::vector<std::string> ws) {
  std::vector<std::string> symbols;
  for (std::size_t i = 0; i < ws.size(); ++i) symbols.emplace_back(1, static_cast<char>('a' + i));
  return make_code(radix, symbols, ws);
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

std::vector<Rational> rationals(std::initializer_list<std::pair<long, long>> xs) {
  std::vector<Rational> out;
  for (auto [n, d] : xs) out.emplace_back(n, d);
  for (auto& x : out) x.canonicalize();
  return out;
}

}  // namespace

TEST_CASE("reduction_step examples") {
  const auto src = letters({Rational(1, 2), Rational(1, 4), Rational(1, 4)});
  const auto tree = to_tree(letter_code(2, {"0", "10", "11"}), src);
  const auto step = reduction_step(src, tree, find_sibling_group(tree));
  CHECK(step.step.p_red == Rational(1, 2));
  CHECK(step.step.l_red == 1);
  CHECK(std::abs(step.step.delta) < 1e-15);
  CHECK(step.step.is_tight);
  CHECK(step.source.size() == 2);
  CHECK(step.source.symbol(1) == "[b+c]");
  CHECK(from_tree(step.tree) == make_code(2, std::vector<std::string>{"a", "[b+c]"}, std::vector<std::string>{"0", "1"}));

  // Group {3/10, 1/10}, r = 2.
  const auto skew = letters({Rational(3, 5), Rational(3, 10), Rational(1, 10)});
  const auto t2 = to_tree(letter_code(2, {"0", "10", "11"}), skew);
  const auto s2 = reduction_step(skew, t2, find_sibling_group(t2));
  const double ref2 = static_cast<double>(oracle::merge_defect({{3, 10}, {1, 10}}, 2));
  CHECK(std::abs(ref2 - (-0.0754887502163468544)) < 1e-15);
  CHECK(s2.step.p_red == Rational(2, 5));
  CHECK(std::abs(s2.step.delta - ref2) < 1e-12);
  CHECK(std::abs(s2.step.delta - (-0.0754887)) < 1e-6);
  CHECK_FALSE(s2.step.is_tight);

  // Group {1/4, 1/4} under r = 3: s < r forces strictness.
  const auto tri = letters({Rational(1, 2), Rational(1, 4), Rational(1, 4)});
  const auto t3 = to_tree(letter_code(3, {"0", "10", "11"}), tri);
  const auto s3 = reduction_step(tri, t3, find_sibling_group(t3));
  const double ref3 = static_cast<double>(oracle::merge_defect({{1, 4}, {1, 4}}, 3));
  CHECK(std::abs(ref3 - (-0.1845351232142712815)) < 1e-15);
  CHECK(s3.step.p_red == Rational(1, 2));
  CHECK(std::abs(s3.step.delta - ref3) < 1e-12);
  CHECK_FALSE(s3.step.is_tight);
}

TEST_CASE("reduction_step satisfies both bookkeeping identities") {
  std::mt19937_64 rng(51);
  for (int trial = 0; trial < 500; ++trial) {
    const std::uint32_t r = 2 + rng() % 4;
    const auto code = random_tree_code(r, 12, rng() % 2 == 0, rng);
    if (code.size() < 2) continue;
    const auto src = random_rational_source(code.size(), 64, rng);
    const auto tree = to_tree(code, src);
    const auto res = reduction_step(src, tree, find_sibling_group(tree));
    const auto& st = res.step;
    double group_term = 0.0;
    for (const auto& p : st.probabilities) group_term -= to_double(p) * std::log(to_double(p)) / std::log(double(r));
    const double p_red = to_double(st.p_red);
    const double red_term = p_red * std::log(p_red) / std::log(double(r));
    // H(S') = H(S_red) + p_red log p_red - sum p log p
    CHECK(std::abs(entropy(src, r) - (entropy(res.source, r) + red_term + group_term)) < 1e-9);
    // ACL(S', C') = ACL(S_red, C_red) + p_red, exactly.
    CHECK(tree.acl_exact() == res.tree.acl_exact() + st.p_red);
    CHECK(st.delta <= 1e-12);
    CHECK(st.is_tight == (std::abs(st.delta) <= 1e-9));
    CHECK(res.tree.is_compact());
  }
}

TEST_CASE("reduction_step rejects groups that are not a full sibling set") {
  const auto src = letters({Rational(1, 2), Rational(1, 4), Rational(1, 8), Rational(1, 8)});
  const auto tree = to_tree(letter_code(2, {"0", "10", "110", "111"}), src);
  auto g = find_sibling_group(tree);
  auto partial = g;
  partial.members.pop_back();
  CHECK(error_of([&] { reduction_step(src, tree, partial); }) == ErrorCode::InvalidGroup);
  auto wrong_parent = g;
  wrong_parent.parent = Codeword{{0}};
  CHECK(error_of([&] { reduction_step(src, tree, wrong_parent); }) == ErrorCode::InvalidGroup);
  const auto loose = to_tree(letter_code(2, {"0", "10"}), letters({Rational(1, 2), Rational(1, 2)}));
  CHECK(error_of([&] { reduction_step(letters({Rational(1, 2), Rational(1, 2)}), loose, g); }) ==
        ErrorCode::NotCompact);
}

TEST_CASE("certify examples") {
  const auto dyadic = letters({Rational(1, 2), Rational(1, 4), Rational(1, 8), Rational(1, 8)});
  const auto c1 = certify(dyadic, letter_code(2, {"0", "10", "110", "111"}));
  CHECK(c1.entropy == doctest::Approx(1.75).epsilon(1e-15));
  CHECK(c1.acl == 1.75);
  CHECK(c1.verdict == Verdict::Equality);
  REQUIRE(c1.witness.has_value());
  CHECK(c1.witness->internal == 3);
  CHECK(dyadic.size() == c1.witness->internal * 1 + 1);
  CHECK(c1.steps.size() == 3);

  const auto skew = letters({Rational(2, 5), Rational(3, 10), Rational(1, 5), Rational(1, 10)});
  const auto c2 = certify(skew, letter_code(2, {"0", "10", "110", "111"}));
  const double ref_h = static_cast<double>(oracle::entropy({{2, 5}, {3, 10}, {1, 5}, {1, 10}}, 2));
  CHECK(std::abs(ref_h - 1.8464393446710154934) < 1e-15);
  CHECK(std::abs(c2.entropy - ref_h) < 1e-12);
  CHECK(c2.certified_acl == Rational(19, 10));
  CHECK(c2.verdict == Verdict::StrictInequality);
  CHECK(std::abs(c2.sum_delta - (ref_h - 1.9)) < 1e-12);
  CHECK(std::abs(c2.sum_delta - (-0.0535607)) < 1e-7);
  CHECK_FALSE(c2.witness.has_value());

  const auto single = make_source({"a"}, {Rational(1)});
  const auto c3 = certify(single, letter_code(2, {"-"}));
  CHECK(c3.entropy == 0.0);
  CHECK(c3.acl == 0.0);
  CHECK(c3.verdict == Verdict::Equality);
  CHECK(c3.steps.empty());
}

TEST_CASE("certify canonicalizes, compacts and reduces before merging") {
  const auto src = letters({Rational(1, 2), Rational(1, 4), Rational(1, 4)});
  const auto ud = certify(src, letter_code(2, {"0", "01", "11"}));
  CHECK(ud.canonicalized);
  CHECK(ud.verdict == Verdict::Equality);
  CHECK(from_tree(to_tree(ud.certified_code)) == letter_code(2, {"0", "10", "11"}));

  const auto loose = certify(src, letter_code(2, {"00", "10", "11"}));
  CHECK(loose.compacted);
  CHECK(loose.input_acl == 2);
  CHECK(loose.certified_acl == Rational(3, 2));
  CHECK(loose.verdict == Verdict::StrictInequality);
  CHECK(verify_certificate(loose));

  const auto multi = make_code(2, {{"a", {Codeword{{0}}, Codeword{{1, 1, 1}}}},
                                   {"b", {Codeword{{1, 0}}}},
                                   {"c", {Codeword{{1, 1}}}}});
  const auto m = certify(src, multi);
  CHECK(m.minimal_reduced);
  CHECK(m.verdict == Verdict::Equality);

  CHECK(error_of([&] { certify(src, letter_code(2, {"0", "01", "10"})); }) ==
        ErrorCode::NotUniquelyDecipherable);
  CHECK(error_of([&] { certify(src, letter_code(2, {"0", "10"})); }) == ErrorCode::MissingSymbol);
  CHECK(error_of([&] { certify(letters({Rational(1)}), letter_code(2, {"0", "10"})); }) ==
        ErrorCode::InvalidArgument);
}

TEST_CASE("radix one is certified only for a single symbol") {
  const auto single = make_source({"a"}, {Rational(1)});
  const auto lambda = certify(single, letter_code(1, {"-"}));
  CHECK(lambda.verdict == Verdict::Equality);
  const auto unary = certify(single, letter_code(1, {"000"}));
  CHECK(unary.verdict == Verdict::StrictInequality);
  CHECK(unary.entropy == 0.0);
  CHECK(unary.input_acl == 3);
  CHECK_FALSE(equality_condition(single, letter_code(1, {"000"})).holds);
  CHECK(verify_certificate(unary));

  const auto two = letters({Rational(1, 2), Rational(1, 2)});
  CHECK(error_of([&] { certify(two, letter_code(1, {"0", "00"})); }) == ErrorCode::RadixOneUnsupported);
}

TEST_CASE("certificate serialization is byte-stable") {
  const auto skew = letters({Rational(2, 5), Rational(3, 10), Rational(1, 5), Rational(1, 10)});
  const auto cert = certify(skew, letter_code(2, {"0", "10", "110", "111"}));
  const auto text = serialize(cert);
  CHECK(text == serialize(certify(skew, letter_code(2, {"0", "10", "110", "111"}))));
  CHECK(text.find("step 1: merge parent=11 s=2 p_red=3/10 delta=") == 0);
  CHECK(text.find("step 3: merge parent=- s=2 p_red=1/1 ") != std::string::npos);
  CHECK(text.find("verdict=StrictInequality\n") != std::string::npos);

  const auto dy = certify(letters({Rational(1, 2), Rational(1, 4), Rational(1, 4)}), letter_code(2, {"0", "10", "11"}));
  CHECK(serialize(dy) ==
        "step 1: merge parent=1 s=2 p_red=1/2 delta=0 tight=true\n"
        "step 2: merge parent=- s=2 p_red=1/1 delta=0 tight=true\n"
        "H=1.5 ACL=1.5 sum_delta=0 verdict=Equality\n");
}

TEST_CASE("equality_condition examples") {
  const auto e1 = equality_condition(letters({Rational(1, 2), Rational(1, 4), Rational(1, 4)}),
                                     letter_code(2, {"0", "10", "11"}));
  CHECK(e1.holds);
  REQUIRE(e1.witness);
  CHECK(e1.witness->internal == 2);
  CHECK(e1.witness->lengths == std::vector<std::size_t>{1, 2, 2});

  CHECK_FALSE(equality_condition(letters({Rational(1, 2), Rational(3, 10), Rational(1, 5)}),
                                 letter_code(2, {"0", "10", "11"}))
                  .holds);

  const auto e3 = equality_condition(letters({Rational(1, 3), Rational(1, 3), Rational(1, 3)}),
                                     letter_code(3, {"0", "1", "2"}));
  CHECK(e3.holds);
  CHECK(e3.witness->internal == 1);
  CHECK(error_of([] {
          equality_condition(letters({Rational(1, 2), Rational(1, 2)}), letter_code(2, {"0", "01"}));
        }) == ErrorCode::NotPrefixFree);
}

TEST_CASE("check_group_inequality examples") {
  const auto g1 = check_group_inequality(rationals({{1, 2}, {1, 2}}), 2);
  CHECK(std::abs(g1.value - 1.0) < 1e-15);
  CHECK(g1.holds);
  CHECK(g1.tight);

  const auto g2 = check_group_inequality(rationals({{1, 3}, {2, 3}}), 2);
  const double ref2 = static_cast<double>(oracle::group_value({{1, 3}, {2, 3}}, 2));
  CHECK(std::abs(ref2 - 1.0582673679787996498) < 1e-15);
  CHECK(std::abs(g2.value - ref2) < 1e-12);
  CHECK(g2.holds);
  CHECK_FALSE(g2.tight);

  const auto g3 = check_group_inequality(rationals({{1, 4}, {1, 4}}), 3);
  CHECK(std::abs(g3.value - std::sqrt(1.5)) < 1e-12);
  CHECK(std::abs(g3.value - 1.2247) < 1e-4);
  CHECK_FALSE(g3.tight);

  CHECK(check_group_inequality(rationals({{1, 7}}), 2).holds);
  CHECK(error_of([] { check_group_inequality(rationals({{1, 3}, {1, 3}, {1, 3}}), 2); }) ==
        ErrorCode::GroupLargerThanRadix);
  CHECK(error_of([] { check_group_inequality({}, 2); }) == ErrorCode::InvalidArgument);
  CHECK(error_of([] { check_group_inequality(rationals({{0, 1}, {1, 2}}), 2); }) ==
        ErrorCode::ZeroOrNegativeProbability);
}

TEST_CASE("check_rational_ghm examples") {
  const auto a = check_rational_ghm(RationalWeights{{1, 1}, 2});
  CHECK(a.lhs == 1);
  CHECK(a.rhs == 1);
  CHECK(a.holds);

  const auto b = check_rational_ghm(RationalWeights{{1, 2}, 2});
  CHECK(b.lhs == Rational(32, 27));
  CHECK(b.rhs == 1);
  CHECK(b.holds);

  const auto c = check_rational_ghm(RationalWeights{{1, 1}, 3});
  CHECK(c.lhs == Rational(9, 4));
  CHECK(c.rhs == Rational(9, 4));
  CHECK(c.holds);

  CHECK(error_of([] { check_rational_ghm(RationalWeights{{1, 1, 1}, 2}); }) == ErrorCode::GroupLargerThanRadix);
  CHECK(error_of([] { check_rational_ghm(RationalWeights{{0, 1}, 2}); }) == ErrorCode::InvalidArgument);

  const auto w = weights_from_probabilities(rationals({{1, 6}, {1, 4}}), 2);
  CHECK(w.frequencies == std::vector<BigInt>{2, 3});
  CHECK(w.total() == 5);
}

TEST_CASE("check_pp_inequalities examples") {
  const auto a = check_pp_inequalities(rationals({{1, 2}, {1, 2}}), 2);
  CHECK(a.ineq_a);
  REQUIRE(a.ineq_b.has_value());
  CHECK(*a.ineq_b);

  const auto b = check_pp_inequalities(rationals({{3, 5}, {2, 5}}), 2);
  CHECK(b.ineq_a);
  REQUIRE(b.ineq_b.has_value());
  CHECK(*b.ineq_b);
  CHECK(std::abs(std::pow(0.6, 0.6) * std::pow(0.4, 0.4) - 0.51017) < 1e-5);

  const auto c = check_pp_inequalities(rationals({{1, 10}}), 2);
  CHECK(c.ineq_a);
  CHECK_FALSE(c.ineq_b.has_value());
}

TEST_CASE("group inequality agrees with the exact GM-HM oracle") {
  std::mt19937_64 rng(52);
  for (int trial = 0; trial < 2000; ++trial) {
    const std::uint32_t r = 1 + rng() % 4;
    const std::size_t s = 1 + rng() % r;
    std::vector<Rational> probs;
    for (std::size_t k = 0; k < s; ++k) {
      Rational p(static_cast<long>(1 + rng() % 32), static_cast<long>(1 + rng() % 32));
      p.canonicalize();
      probs.push_back(p);
    }
    const auto g = check_group_inequality(probs, r);
    const auto h = check_rational_ghm(weights_from_probabilities(probs, r));
    CHECK(g.holds == h.holds);
    CHECK(g.holds);
    CHECK(g.tight == (h.lhs == 1));
  }
}

TEST_CASE("group inequality values converge along decimal convergents") {
  // Irrational-like weights: sqrt(2) - 1 and 1 / pi, truncated at 10^-k.
  const double x = std::sqrt(2.0) - 1.0;
  const double y = 1.0 / M_PI;
  const double limit = std::exp(x * std::log(2.0 * x / (x + y)) + y * std::log(2.0 * y / (x + y)));
  double previous_gap = 1e9;
  for (int k = 1; k <= 6; ++k) {
    const long scale = static_cast<long>(std::pow(10, k));
    Rational px(static_cast<long>(std::floor(x * scale)), scale);
    Rational py(static_cast<long>(std::floor(y * scale)), scale);
    px.canonicalize();
    py.canonicalize();
    const std::vector<Rational> probs{px, py};
    const auto g = check_group_inequality(probs, 2);
    CHECK(g.holds);
    const double gap = std::abs(g.value - limit);
    CHECK(gap <= previous_gap + 1e-6);
    previous_gap = gap;
  }
  CHECK(previous_gap < 1e-5);
}

TEST_CASE("Huffman codes reach equality exactly on r-adic sources") {
  std::mt19937_64 rng(53);
  for (int trial = 0; trial < 300; ++trial) {
    const std::uint32_t r = 2 + rng() % 3;
    const bool dyadic = rng() % 2 == 0;
    Source src = [&] {
      if (!dyadic) return random_rational_source(1 + rng() % 8, 64, rng);
      const auto shape = random_tree_code(r, 10, true, rng);
      std::vector<std::string> names;
      std::vector<Rational> probs;
      for (const auto& e : shape.entries()) {
        names.push_back(e.symbol);
        probs.push_back(inverse_power(r, e.codewords.front().length()));
      }
      return make_source(std::move(names), std::move(probs));
    }();
    const auto cert = certify(src, huffman(src, r));
    bool r_adic = true;
    for (const auto& p : src.probabilities()) {
      bool power = false;
      for (std::size_t l = 0; l <= 12; ++l) power = power || p == inverse_power(r, l);
      r_adic = r_adic && power;
    }
    const bool expect = r_adic && src.size() % (r - 1) == 1 % (r - 1);
    CHECK((cert.verdict == Verdict::Equality) == expect);
    CHECK(verify_certificate(cert));
  }
}
