// Command-line front end: parse set expressions, build and validate name
// prefixes, evaluate measures to a requested precision, and convert mu-name
// files into tilde-name files.
//
// Exit codes: 0 success, 1 validation failure, 2 usage or parse error,
// 3 step-budget exhaustion.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "muset/muset.hpp"

namespace {

struct Session {
  std::string space = "lebesgue";
  std::string cover = "fast";
  long long step_budget = 1'000'000;
  std::vector<std::string> promises;

  muset::CoverPtr make_cover_ptr() const {
    muset::SpaceInstance sp = space == "lebesgue"
                                  ? muset::lebesgue_line()
                                  : muset::counting_naturals();
    muset::CoverMode mode = cover == "fast" ? muset::CoverMode::fast
                                            : muset::CoverMode::generic;
    return muset::make_cover(sp, mode);
  }

  muset::EvalOptions eval_options() const {
    muset::EvalOptions opts;
    opts.cover = make_cover_ptr();
    opts.op.step_budget = step_budget;
    opts.op.promises = promises;
    return opts;
  }
};

void add_common_options(CLI::App* cmd, Session& s) {
  cmd->add_option("--space", s.space, "Space instance")
      ->check(CLI::IsMember({"lebesgue", "counting"}));
  cmd->add_option("--cover", s.cover, "Cover construction")
      ->check(CLI::IsMember({"fast", "generic"}));
  cmd->add_option("--step-budget", s.step_budget,
                  "Work cap per searched term");
  cmd->add_option("--promise", s.promises,
                  "Domain promise for partial operations")
      ->check(CLI::IsMember(muset::promise_tags()));
}

void print_stream(const muset::RealStream& rs, int steps) {
  for (int n = 1; n <= steps; ++n) std::cout << rs.at(n).str() << "\n";
}

muset::NameFile read_file_or_stdin(const std::string& path) {
  if (path == "-") return muset::read_name_file(std::cin);
  std::ifstream in(path);
  if (!in) throw muset::usage_error("cannot open '" + path + "'");
  return muset::read_name_file(in);
}

}  // namespace

int main(int argc, char** argv) {
  Session session;
  std::string expr_text;
  std::string file_path;
  int precision = 10;
  int prefix_len = 8;
  int cover_index = 1;
  bool expand_tilde = false;

  CLI::App app{"exact measurable-set computation over approximation streams"};
  app.require_subcommand(1);

  auto* measure = app.add_subcommand(
      "measure", "Evaluate the measure of a mu-mode expression");
  measure->add_option("expr", expr_text, "Set expression")->required();
  measure->add_option("--precision", precision, "Number of stream steps");
  add_common_options(measure, session);

  auto* tmeasure = app.add_subcommand(
      "tmeasure", "Evaluate the induced probability of an expression");
  tmeasure->add_option("expr", expr_text, "Set expression")->required();
  tmeasure->add_option("--precision", precision, "Number of stream steps");
  add_common_options(tmeasure, session);

  auto* tmu = app.add_subcommand(
      "tmu-restricted", "Evaluate the measure restricted to a cover level");
  tmu->add_option("expr", expr_text, "Set expression")->required();
  tmu->add_option("--index", cover_index, "Cover level n (uses C_n)");
  tmu->add_option("--precision", precision, "Number of stream steps");
  add_common_options(tmu, session);

  auto* classify_cmd = app.add_subcommand(
      "classify", "Decide the finite/infinite regime of an expression");
  classify_cmd->add_option("expr", expr_text, "Set expression")->required();
  add_common_options(classify_cmd, session);

  auto* expand = app.add_subcommand(
      "expand", "Write a name-prefix file for an expression to stdout");
  expand->add_option("expr", expr_text, "Set expression")->required();
  expand->add_option("--prefix-len,--len", prefix_len, "Terms to write");
  expand->add_flag("--tilde", expand_tilde, "Write a tilde name");
  add_common_options(expand, session);

  auto* validate = app.add_subcommand(
      "validate", "Replay the exact prefix validator on a name file");
  validate->add_option("file", file_path, "Name-prefix file ('-' for stdin)")
      ->required();

  auto* reduce = app.add_subcommand(
      "reduce", "Translate a mu-name file into a tilde-name file (stdout)");
  reduce->add_option("file", file_path, "Name-prefix file ('-' for stdin)")
      ->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (measure->parsed()) {
      muset::EvalOptions opts = session.eval_options();
      muset::MuName name = muset::eval_mu(*muset::parse_set_expr(expr_text), opts);
      print_stream(muset::mu_of(name), precision);
      return 0;
    }
    if (tmeasure->parsed()) {
      muset::EvalOptions opts = session.eval_options();
      muset::TildeName name =
          muset::eval_tilde(*muset::parse_set_expr(expr_text), opts);
      print_stream(muset::mu_tilde_of(name), precision);
      return 0;
    }
    if (tmu->parsed()) {
      muset::EvalOptions opts = session.eval_options();
      muset::TildeName name =
          muset::eval_tilde(*muset::parse_set_expr(expr_text), opts);
      print_stream(muset::mu_restricted(name, cover_index), precision);
      return 0;
    }
    if (classify_cmd->parsed()) {
      muset::EvalOptions opts = session.eval_options();
      muset::MuName name = muset::eval_mu(*muset::parse_set_expr(expr_text), opts);
      std::cout << muset::regime_name(muset::classify(name)) << "\n";
      return 0;
    }
    if (expand->parsed()) {
      muset::EvalOptions opts = session.eval_options();
      // materialize every term first: a diagnostic abort must not leave a
      // truncated file on stdout
      if (expand_tilde) {
        muset::TildeName name =
            muset::eval_tilde(*muset::parse_set_expr(expr_text), opts);
        for (int n = 1; n <= prefix_len; ++n) name.term(n);
        muset::write_tilde_prefix(std::cout, name, prefix_len);
      } else {
        muset::MuName name =
            muset::eval_mu(*muset::parse_set_expr(expr_text), opts);
        for (int n = 1; n <= prefix_len; ++n) name.term(n);
        muset::write_mu_prefix(std::cout, name, prefix_len);
      }
      return 0;
    }
    if (validate->parsed()) {
      muset::NameFile f = read_file_or_stdin(file_path);
      int len = static_cast<int>(f.terms.size());
      muset::ValidationReport rep =
          f.is_tilde ? muset::validate_tilde_prefix(muset::as_tilde_name(f), len)
                     : muset::validate_mu_prefix(muset::as_mu_name(f), len);
      if (rep.ok()) {
        std::cout << rep.summary() << "\n";
        return 0;
      }
      std::cerr << rep.summary();
      return 1;
    }
    if (reduce->parsed()) {
      muset::NameFile f = read_file_or_stdin(file_path);
      muset::TildeName t = muset::reduce_mu_to_tilde(muset::as_mu_name(f));
      int out_len = static_cast<int>(f.terms.size()) - 2;
      if (out_len < 1)
        throw muset::usage_error(
            "reduce needs at least 3 stored terms (the stream shifts by 2)");
      muset::write_tilde_prefix(std::cout, t, out_len);
      return 0;
    }
  } catch (const muset::step_budget_exhausted& e) {
    std::cerr << "step budget exhausted: " << e.what() << "\n";
    return 3;
  } catch (const muset::cover_assumption_error& e) {
    std::cerr << "cover construction aborted: " << e.what() << "\n";
    return 3;
  } catch (const muset::parse_error& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 2;
  } catch (const muset::usage_error& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
