#include <catch2/catch_amalgamated.hpp>

#include "helpers.hpp"

using namespace muset;

namespace {

CoverPtr leb_fast() { return make_cover(lebesgue_line(), CoverMode::fast); }

RingSet unit(long long a, long long b) {
  return RingSet::lebesgue({Interval(Rat(a), Rat(b))});
}

MuName evens_name(CoverPtr c) {
  return name_of_scheme(evens_scheme(c->space().id), c);
}
MuName odds_name(CoverPtr c) {
  return name_of_scheme(odds_scheme(c->space().id), c);
}
MuName geo_name(CoverPtr c) {
  return name_of_scheme(geometric_pack_scheme(), c);
}

void check_brackets(const RealStream& rs, const Rat& v, int depth) {
  for (int n = 1; n <= depth; ++n) {
    const RealTerm& t = rs.at(n);
    CAPTURE(n, t.str(), v.str());
    CHECK(t.contains(v));
  }
}

void check_infinite(const RealStream& rs, int depth) {
  for (int n = 1; n <= depth; ++n) {
    CHECK_FALSE(rs.at(n).bounded());
    CHECK(rs.at(n).lo == Rat::pow2(n));
  }
}

}  // namespace

TEST_CASE("measure stream of a ring name") {
  RealStream rs = mu_of(from_ring(unit(0, 1), leb_fast()));
  check_brackets(rs, Rat(1), 10);
  for (int n = 1; n <= 10; ++n)
    CHECK(*rs.at(n).hi - rs.at(n).lo == Rat(2) * Rat::pow2(-n));
}

TEST_CASE("measure stream of the geometric pack converges to one") {
  check_brackets(mu_of(geo_name(leb_fast())), Rat(1), 10);
}

TEST_CASE("measure stream of the whole space escalates") {
  check_infinite(mu_of(name_of_omega(leb_fast())), 8);
}

TEST_CASE("union of ring names brackets the union measure") {
  CoverPtr c = leb_fast();
  MuName u = mu_union(from_ring(unit(0, 1), c), from_ring(unit(1, 2), c));
  CHECK(u.regime == Regime::finite);
  check_brackets(mu_of(u), Rat(2), 10);
  CHECK(validate_mu_prefix(u, 10).ok());
}

TEST_CASE("union with an infinite name is infinite and validates") {
  CoverPtr c = leb_fast();
  MuName u = mu_union(evens_name(c), name_of_omega(c));
  CHECK(u.regime == Regime::infinite);
  CHECK(validate_mu_prefix(u, 8).ok());
  CHECK(classify(u) == Regime::infinite);

  MuName m = mu_union(geo_name(c), evens_name(c));
  CHECK(m.regime == Regime::infinite);
  ValidationReport rep = validate_mu_prefix(m, 8);
  CHECK(rep.ok());
  for (int n = 1; n <= 8; ++n)
    CHECK(exact_measure(m.term(n)) >= Rat::pow2(n));
}

TEST_CASE("union rejects mismatched covers") {
  MuName a = from_ring(unit(0, 1), leb_fast());
  MuName b = from_ring(unit(0, 1), make_cover(lebesgue_line(), CoverMode::generic));
  CHECK_THROWS_AS(mu_union(a, b), usage_error);
}

TEST_CASE("intersection with a finite side is total") {
  CoverPtr c = leb_fast();
  MuName x = mu_intersection(from_ring(unit(0, 2), c), evens_name(c));
  CHECK(x.regime == Regime::finite);
  check_brackets(mu_of(x), Rat(1), 8);  // [0,2) ∩ evens = [0,1)
  CHECK(validate_mu_prefix(x, 8).ok());

  // same answer with the arguments swapped
  MuName y = mu_intersection(evens_name(c), from_ring(unit(0, 2), c));
  check_brackets(mu_of(y), Rat(1), 8);
}

TEST_CASE("intersection of two infinite names inside the promise domain") {
  CoverPtr c = leb_fast();
  MuName x = mu_intersection(evens_name(c), name_of_omega(c));
  CHECK(x.regime == Regime::infinite);
  CHECK(validate_mu_prefix(x, 8).ok());
  CHECK(classify(x) == Regime::infinite);
}

TEST_CASE("intersection outside the promise domain hits the step budget") {
  CoverPtr c = leb_fast();
  OpOptions opts;
  opts.step_budget = 2000;
  MuName x = mu_intersection(evens_name(c), odds_name(c), opts);
  CHECK_THROWS_AS(x.term(1), step_budget_exhausted);
}

TEST_CASE("difference with a finite left side is total") {
  CoverPtr c = leb_fast();
  MuName d = mu_difference(geo_name(c), name_of_omega(c));
  CHECK(d.regime == Regime::finite);
  check_brackets(mu_of(d), Rat(0), 8);
  CHECK(validate_mu_prefix(d, 8).ok());

  MuName d2 = mu_difference(from_ring(unit(0, 4), c), evens_name(c));
  check_brackets(mu_of(d2), Rat(2), 8);  // odds part of [0,4)
}

TEST_CASE("difference with infinite result validates") {
  CoverPtr c = leb_fast();
  MuName d = mu_difference(name_of_omega(c), evens_name(c));
  CHECK(d.regime == Regime::infinite);
  CHECK(validate_mu_prefix(d, 8).ok());

  MuName d2 = mu_difference(name_of_omega(c), geo_name(c));
  CHECK(d2.regime == Regime::infinite);
  CHECK(validate_mu_prefix(d2, 8).ok());
  check_infinite(mu_of(d2), 6);
}

TEST_CASE("difference outside the promise domain hits the step budget") {
  CoverPtr c = leb_fast();
  OpOptions opts;
  opts.step_budget = 2000;
  // evens - omega is empty, yet both inputs are infinite
  MuName d = mu_difference(evens_name(c), name_of_omega(c), opts);
  CHECK_THROWS_AS(d.term(1), step_budget_exhausted);
}

TEST_CASE("complement of a finite name") {
  CoverPtr c = leb_fast();
  MuName k = mu_complement(from_ring(unit(0, 1), c));
  CHECK(k.regime == Regime::infinite);
  CHECK(validate_mu_prefix(k, 8).ok());
  check_infinite(mu_of(k), 6);

  // complement of evens meets [0,4) in the odd part: measure 2
  MuName co_evens = mu_complement(evens_name(c));
  CHECK(validate_mu_prefix(co_evens, 8).ok());
  MuName sliced = mu_intersection(from_ring(unit(0, 4), c), co_evens);
  check_brackets(mu_of(sliced), Rat(2), 6);
}

TEST_CASE("complement of the whole space hits the step budget") {
  CoverPtr c = leb_fast();
  OpOptions opts;
  opts.step_budget = 500;
  MuName k = mu_complement(name_of_omega(c), opts);
  CHECK_THROWS_AS(k.term(1), step_budget_exhausted);
}

TEST_CASE("regime of every output matches classification") {
  CoverPtr c = leb_fast();
  std::vector<MuName> outs;
  outs.push_back(mu_union(geo_name(c), evens_name(c)));
  outs.push_back(mu_intersection(from_ring(unit(0, 2), c), evens_name(c)));
  outs.push_back(mu_difference(geo_name(c), from_ring(unit(0, 1), c)));
  outs.push_back(mu_complement(from_ring(unit(0, 1), c)));
  outs.push_back(mu_intersection(evens_name(c), name_of_omega(c)));
  for (const MuName& n : outs) CHECK(classify(n) == n.regime);
}

TEST_CASE("modularity: union and intersection measures balance exactly") {
  CoverPtr c = leb_fast();
  struct Pair {
    MuName a, b;
    Rat ma, mb;
  };
  std::vector<Pair> pairs;
  pairs.push_back({from_ring(unit(0, 2), c), from_ring(unit(1, 3), c), Rat(2),
                   Rat(2)});
  pairs.push_back({geo_name(c), from_ring(unit(0, 1), c), Rat(1), Rat(1)});
  for (const auto& p : pairs) {
    RealStream u = mu_of(mu_union(p.a, p.b));
    RealStream i = mu_of(mu_intersection(p.a, p.b));
    int k = 8;
    Rat lo = u.at(k).lo + i.at(k).lo;
    Rat hi = *u.at(k).hi + *i.at(k).hi;
    Rat target = p.ma + p.mb;
    CHECK(lo <= target);
    CHECK(target <= hi);
  }
}

TEST_CASE("counting-instance spot check against explicit sets") {
  CoverPtr c = make_cover(counting_naturals(), CoverMode::fast);
  MuName ev = name_of_scheme(evens_scheme(Space::counting_naturals), c);
  MuName window = from_ring(RingSet::counting({0, 1, 2, 3, 4, 5, 6}), c);
  MuName x = mu_intersection(window, ev);
  check_brackets(mu_of(x), Rat(4), 8);  // {0,2,4,6}
  CHECK(validate_mu_prefix(x, 8).ok());
}
