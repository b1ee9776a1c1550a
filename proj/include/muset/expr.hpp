#pragma once

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "muset/mu_ops.hpp"
#include "muset/names.hpp"
#include "muset/tilde_ops.hpp"

namespace muset {

// Set expressions, parsed by a hand-written LL(1) recursive descent:
//
//   expr  := inter (('|' | '\') inter)*      union / difference, left-assoc
//   inter := atom ('&' atom)*                intersection
//   atom  := '~' atom | '(' expr ')' | ring-literal | scheme-name
//
// Ring literals use the same text format as the set notation ("U [p/q,r/s)
// ..." or "N {k1,...}"). Scheme names: geometric-pack, evens, odds,
// half-line, omega, empty.

struct SetExpr {
  enum class Kind {
    ring_literal,
    scheme,
    op_union,
    op_intersection,
    op_difference,
    op_complement
  };

  Kind kind;
  std::optional<RingSet> literal;
  std::string scheme;
  std::shared_ptr<const SetExpr> lhs;
  std::shared_ptr<const SetExpr> rhs;
  std::size_t pos = 0;
};

using ExprPtr = std::shared_ptr<const SetExpr>;

namespace detail {

struct ExprToken {
  enum class T {
    pipe,
    amp,
    backslash,
    tilde,
    lparen,
    rparen,
    word,      // "U", "N", or a scheme identifier
    interval,  // "[p/q,r/s)"
    braces,    // "{k1,...}"
    end
  };
  T t;
  std::string text;
  std::size_t pos;
};

inline std::vector<ExprToken> lex_expr(std::string_view text) {
  std::vector<ExprToken> out;
  std::size_t i = 0;
  auto push = [&](ExprToken::T t, std::size_t pos, std::string s) {
    out.push_back({t, std::move(s), pos});
  };
  while (i < text.size()) {
    char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    std::size_t start = i;
    switch (c) {
      case '|': push(ExprToken::T::pipe, i++, "|"); continue;
      case '&': push(ExprToken::T::amp, i++, "&"); continue;
      case '\\': push(ExprToken::T::backslash, i++, "\\"); continue;
      case '~': push(ExprToken::T::tilde, i++, "~"); continue;
      case '(': push(ExprToken::T::lparen, i++, "("); continue;
      case ')': push(ExprToken::T::rparen, i++, ")"); continue;
      case '[': {
        while (i < text.size() && text[i] != ')') ++i;
        if (i >= text.size())
          throw parse_error(start, "unterminated interval literal");
        ++i;
        push(ExprToken::T::interval, start,
             std::string(text.substr(start, i - start)));
        continue;
      }
      case '{': {
        while (i < text.size() && text[i] != '}') ++i;
        if (i >= text.size())
          throw parse_error(start, "unterminated '{...}' literal");
        ++i;
        push(ExprToken::T::braces, start,
             std::string(text.substr(start, i - start)));
        continue;
      }
      default: break;
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      while (i < text.size() &&
             (std::isalnum(static_cast<unsigned char>(text[i])) ||
              text[i] == '-' || text[i] == '_'))
        ++i;
      push(ExprToken::T::word, start,
           std::string(text.substr(start, i - start)));
      continue;
    }
    throw parse_error(i, std::string("unexpected character '") + c + "'");
  }
  push(ExprToken::T::end, text.size(), "");
  return out;
}

inline const std::vector<std::string>& known_scheme_names() {
  static const std::vector<std::string> names = {
      "geometric-pack", "evens", "odds", "half-line", "omega", "empty"};
  return names;
}

class ExprParser {
 public:
  explicit ExprParser(std::string_view text) : toks_(lex_expr(text)) {}

  ExprPtr parse() {
    ExprPtr e = parse_union_level();
    if (peek().t != ExprToken::T::end)
      throw parse_error(peek().pos, "unexpected token '" + peek().text + "'");
    return e;
  }

 private:
  const ExprToken& peek() const { return toks_[pos_]; }
  const ExprToken& take() { return toks_[pos_++]; }

  ExprPtr parse_union_level() {
    ExprPtr lhs = parse_intersection_level();
    while (peek().t == ExprToken::T::pipe ||
           peek().t == ExprToken::T::backslash) {
      ExprToken op = take();
      ExprPtr rhs = parse_intersection_level();
      auto node = std::make_shared<SetExpr>();
      node->kind = op.t == ExprToken::T::pipe ? SetExpr::Kind::op_union
                                              : SetExpr::Kind::op_difference;
      node->lhs = lhs;
      node->rhs = rhs;
      node->pos = op.pos;
      lhs = node;
    }
    return lhs;
  }

  ExprPtr parse_intersection_level() {
    ExprPtr lhs = parse_atom();
    while (peek().t == ExprToken::T::amp) {
      ExprToken op = take();
      ExprPtr rhs = parse_atom();
      auto node = std::make_shared<SetExpr>();
      node->kind = SetExpr::Kind::op_intersection;
      node->lhs = lhs;
      node->rhs = rhs;
      node->pos = op.pos;
      lhs = node;
    }
    return lhs;
  }

  ExprPtr parse_atom() {
    const ExprToken& tok = peek();
    if (tok.t == ExprToken::T::tilde) {
      ExprToken op = take();
      ExprPtr inner = parse_atom();
      auto node = std::make_shared<SetExpr>();
      node->kind = SetExpr::Kind::op_complement;
      node->lhs = inner;
      node->pos = op.pos;
      return node;
    }
    if (tok.t == ExprToken::T::lparen) {
      take();
      ExprPtr inner = parse_union_level();
      if (peek().t != ExprToken::T::rparen)
        throw parse_error(peek().pos, "expected ')'");
      take();
      return inner;
    }
    if (tok.t == ExprToken::T::word) {
      if (tok.text == "U") return parse_lebesgue_literal();
      if (tok.text == "N") return parse_counting_literal();
      ExprToken word = take();
      const auto& known = known_scheme_names();
      if (std::find(known.begin(), known.end(), word.text) == known.end())
        throw parse_error(word.pos, "unknown scheme name '" + word.text + "'");
      auto node = std::make_shared<SetExpr>();
      node->kind = SetExpr::Kind::scheme;
      node->scheme = word.text;
      node->pos = word.pos;
      return node;
    }
    throw parse_error(tok.pos, "expected a set expression");
  }

  ExprPtr parse_lebesgue_literal() {
    ExprToken tag = take();
    std::string text = "U";
    while (peek().t == ExprToken::T::interval) text += " " + take().text;
    return make_literal(text, tag.pos);
  }

  ExprPtr parse_counting_literal() {
    ExprToken tag = take();
    if (peek().t != ExprToken::T::braces)
      throw parse_error(peek().pos, "expected '{...}' after N");
    std::string text = "N " + take().text;
    return make_literal(text, tag.pos);
  }

  static ExprPtr make_literal(const std::string& text, std::size_t pos) {
    RingSet set = [&] {
      try {
        return decode(text);
      } catch (const parse_error& e) {
        throw parse_error(pos, std::string("bad ring literal: ") + e.what());
      }
    }();
    auto node = std::make_shared<SetExpr>();
    node->kind = SetExpr::Kind::ring_literal;
    node->literal = std::move(set);
    node->pos = pos;
    return node;
  }

  std::vector<ExprToken> toks_;
  std::size_t pos_ = 0;
};

}  // namespace detail

inline ExprPtr parse_set_expr(std::string_view text) {
  return detail::ExprParser(text).parse();
}

// ---------------------------------------------------------------------------
// Evaluation
// ---------------------------------------------------------------------------

// Promise tags for the partial operations (the domains on which they are
// guaranteed to finish):
//   cap            intersection: A or B finite, or A ∩ B infinite
//   diff           difference:   A finite, or A - B infinite
//   finite-or-coco complement:   A finite, or both A and its complement
//                                infinite
//   all            all of the above
inline const std::vector<std::string>& promise_tags() {
  static const std::vector<std::string> tags = {"cap", "diff",
                                                "finite-or-coco", "all"};
  return tags;
}

struct EvalOptions {
  CoverPtr cover;
  OpOptions op;
  bool enforce_promises = true;  // mu mode requires flags on partial nodes
};

namespace detail {

inline bool has_promise(const std::vector<std::string>& promises,
                        const std::string& tag) {
  return std::find(promises.begin(), promises.end(), tag) != promises.end() ||
         std::find(promises.begin(), promises.end(), "all") != promises.end();
}

inline void require_promise(const EvalOptions& opts, const std::string& tag,
                            const char* what, std::size_t pos) {
  if (!opts.enforce_promises) return;
  if (!has_promise(opts.op.promises, tag))
    throw usage_error(std::string("promise flag missing for ") + what +
                      " node at offset " + std::to_string(pos) +
                      " (declare --promise " + tag + " or --promise all)");
}

inline SetScheme builtin_scheme(const std::string& name, Space space) {
  if (name == "omega") return SetScheme(OmegaScheme{});
  if (name == "empty") return SetScheme(RingScheme{RingSet::empty(space)});
  if (name == "evens") return evens_scheme(space);
  if (name == "odds") return odds_scheme(space);
  if (name == "geometric-pack") {
    if (space != Space::lebesgue_line)
      throw usage_error("scheme 'geometric-pack' needs the lebesgue-line space");
    return geometric_pack_scheme();
  }
  if (name == "half-line") {
    if (space != Space::lebesgue_line)
      throw usage_error("scheme 'half-line' needs the lebesgue-line space");
    return half_line_scheme();
  }
  throw usage_error("unknown scheme '" + name + "'");
}

}  // namespace detail

inline MuName eval_mu(const SetExpr& e, const EvalOptions& opts) {
  switch (e.kind) {
    case SetExpr::Kind::ring_literal:
      return from_ring(*e.literal, opts.cover);
    case SetExpr::Kind::scheme:
      return name_of_scheme(
          detail::builtin_scheme(e.scheme, opts.cover->space().id),
          opts.cover);
    case SetExpr::Kind::op_union:
      return mu_union(eval_mu(*e.lhs, opts), eval_mu(*e.rhs, opts));
    case SetExpr::Kind::op_intersection:
      detail::require_promise(opts, "cap", "intersection", e.pos);
      return mu_intersection(eval_mu(*e.lhs, opts), eval_mu(*e.rhs, opts),
                             opts.op);
    case SetExpr::Kind::op_difference:
      detail::require_promise(opts, "diff", "difference", e.pos);
      return mu_difference(eval_mu(*e.lhs, opts), eval_mu(*e.rhs, opts),
                           opts.op);
    case SetExpr::Kind::op_complement:
      detail::require_promise(opts, "finite-or-coco", "complement", e.pos);
      return mu_complement(eval_mu(*e.lhs, opts), opts.op);
  }
  throw std::logic_error("unreachable expression kind");
}

/// Tilde mode: every operation is total, no promises involved.
inline TildeName eval_tilde(const SetExpr& e, const EvalOptions& opts) {
  switch (e.kind) {
    case SetExpr::Kind::ring_literal:
      return from_ring_tilde(*e.literal, opts.cover);
    case SetExpr::Kind::scheme:
      return reduce_mu_to_tilde(name_of_scheme(
          detail::builtin_scheme(e.scheme, opts.cover->space().id),
          opts.cover));
    case SetExpr::Kind::op_union:
      return tilde_union(eval_tilde(*e.lhs, opts), eval_tilde(*e.rhs, opts));
    case SetExpr::Kind::op_intersection:
      return tilde_intersection(eval_tilde(*e.lhs, opts),
                                eval_tilde(*e.rhs, opts));
    case SetExpr::Kind::op_difference:
      return tilde_difference(eval_tilde(*e.lhs, opts),
                              eval_tilde(*e.rhs, opts));
    case SetExpr::Kind::op_complement:
      return tilde_complement(eval_tilde(*e.lhs, opts));
  }
  throw std::logic_error("unreachable expression kind");
}

}  // namespace muset
