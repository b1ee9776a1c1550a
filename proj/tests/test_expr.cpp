#include <catch2/catch_amalgamated.hpp>

#include "helpers.hpp"

using namespace muset;

namespace {

CoverPtr leb_fast() { return make_cover(lebesgue_line(), CoverMode::fast); }

EvalOptions opts_with(std::vector<std::string> promises,
                      CoverPtr cover = leb_fast()) {
  EvalOptions o;
  o.cover = std::move(cover);
  o.op.promises = std::move(promises);
  return o;
}

}  // namespace

TEST_CASE("parser shapes") {
  ExprPtr e = parse_set_expr("evens & U [0/1,2/1)");
  REQUIRE(e->kind == SetExpr::Kind::op_intersection);
  CHECK(e->lhs->kind == SetExpr::Kind::scheme);
  CHECK(e->lhs->scheme == "evens");
  REQUIRE(e->rhs->kind == SetExpr::Kind::ring_literal);
  CHECK(*e->rhs->literal == RingSet::lebesgue({Interval(Rat(0), Rat(2))}));

  ExprPtr c = parse_set_expr("~(omega)");
  REQUIRE(c->kind == SetExpr::Kind::op_complement);
  CHECK(c->lhs->kind == SetExpr::Kind::scheme);
  CHECK(c->lhs->scheme == "omega");

  // '&' binds tighter than '|' and '\'
  ExprPtr p = parse_set_expr("empty | evens & odds");
  REQUIRE(p->kind == SetExpr::Kind::op_union);
  CHECK(p->rhs->kind == SetExpr::Kind::op_intersection);

  // same-level operators associate left
  ExprPtr q = parse_set_expr("omega \\ evens | empty");
  REQUIRE(q->kind == SetExpr::Kind::op_union);
  CHECK(q->lhs->kind == SetExpr::Kind::op_difference);

  // complement binds tightest
  ExprPtr r = parse_set_expr("~evens & omega");
  REQUIRE(r->kind == SetExpr::Kind::op_intersection);
  CHECK(r->lhs->kind == SetExpr::Kind::op_complement);

  // multi-interval literal
  ExprPtr m = parse_set_expr("U [0/1,1/1) [2/1,3/1)");
  REQUIRE(m->kind == SetExpr::Kind::ring_literal);
  CHECK(exact_measure(*m->literal) == Rat(2));

  ExprPtr n = parse_set_expr("N {1,4,9}");
  CHECK(*n->literal == RingSet::counting({1, 4, 9}));
}

TEST_CASE("parser rejections carry positions") {
  auto pos_of = [](const std::string& text) -> std::size_t {
    try {
      parse_set_expr(text);
    } catch (const parse_error& e) {
      return e.pos();
    }
    return static_cast<std::size_t>(-1);
  };
  CHECK(pos_of("U [1/2,1/3)") == 0);       // empty interval literal
  CHECK(pos_of("evens & wibble") == 8);    // unknown scheme name
  CHECK(pos_of("evens &") == 7);           // missing operand
  CHECK(pos_of("(evens") == 6);            // missing ')'
  CHECK(pos_of("evens evens") == 6);       // trailing token
  CHECK(pos_of("evens ? odds") == 6);      // stray character
  CHECK(pos_of("N 5") == 2);               // braces required
  CHECK(pos_of("U [0/1,1/1") == 2);        // unterminated interval
  CHECK(pos_of("") == 0);
}

TEST_CASE("mu evaluation honors promise flags") {
  ExprPtr e = parse_set_expr("evens & U [0/1,2/1)");
  CHECK_THROWS_AS(eval_mu(*e, opts_with({})), usage_error);
  CHECK_THROWS_AS(eval_mu(*e, opts_with({"diff"})), usage_error);
  MuName with_cap = eval_mu(*e, opts_with({"cap"}));
  MuName with_all = eval_mu(*e, opts_with({"all"}));
  RealStream rs = mu_of(with_cap);
  for (int n = 4; n <= 8; ++n) CHECK(rs.at(n).contains(Rat(1)));
  CHECK(validate_mu_prefix(with_all, 6).ok());

  ExprPtr d = parse_set_expr("omega \\ evens");
  CHECK_THROWS_AS(eval_mu(*d, opts_with({"cap"})), usage_error);
  CHECK_NOTHROW(eval_mu(*d, opts_with({"diff"})));

  ExprPtr k = parse_set_expr("~U [0/1,1/1)");
  CHECK_THROWS_AS(eval_mu(*k, opts_with({})), usage_error);
  MuName comp = eval_mu(*k, opts_with({"finite-or-coco"}));
  CHECK(classify(comp) == Regime::infinite);
}

TEST_CASE("tilde evaluation needs no promises") {
  ExprPtr e = parse_set_expr("~(evens & odds)");
  TildeName t = eval_tilde(*e, opts_with({}));
  RealStream rs = mu_tilde_of(t);
  for (int n = 4; n <= 8; ++n) CHECK(rs.at(n).contains(Rat(1)));
}

TEST_CASE("evaluation enforces the session space") {
  CoverPtr cnt = make_cover(counting_naturals(), CoverMode::fast);
  CHECK_THROWS_AS(
      eval_mu(*parse_set_expr("U [0/1,1/1)"), opts_with({}, cnt)),
      usage_error);
  CHECK_THROWS_AS(
      eval_mu(*parse_set_expr("geometric-pack"), opts_with({}, cnt)),
      usage_error);
  CHECK_THROWS_AS(
      eval_mu(*parse_set_expr("N {1}"), opts_with({})),
      usage_error);
  CHECK_NOTHROW(eval_mu(*parse_set_expr("N {1,2}"), opts_with({}, cnt)));
  CHECK_NOTHROW(eval_mu(*parse_set_expr("evens"), opts_with({}, cnt)));
}

TEST_CASE("scheme leaves evaluate to valid names in both modes") {
  for (const char* text : {"geometric-pack", "evens", "half-line", "omega",
                           "empty", "odds"}) {
    MuName m = eval_mu(*parse_set_expr(text), opts_with({}));
    CHECK(validate_mu_prefix(m, 6).ok());
    TildeName t = eval_tilde(*parse_set_expr(text), opts_with({}));
    CHECK(validate_tilde_prefix(t, 6).ok());
  }
}
