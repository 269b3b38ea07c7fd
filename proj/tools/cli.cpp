#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "verify.hpp"
#include "wordperc/core.hpp"
#include "wordperc/exactprob.hpp"
#include "wordperc/moments.hpp"
#include "wordperc/montecarlo.hpp"
#include "wordperc/recursions.hpp"

namespace wordperc::cli {
namespace {

using nlohmann::json;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct WordOptions {
  std::string word;
  bool has_word = false;
  bool constant = false;
  bool alternating = false;
  std::vector<long> twoblock;
  long n = -1;
  int letter = 1;

  void attach(CLI::App* cmd) {
    cmd->add_option("--word", word, "explicit 0/1 word")->each([this](const std::string&) { has_word = true; });
    cmd->add_flag("--constant", constant, "constant word of length --n (letter --letter)");
    cmd->add_flag("--alternating", alternating, "alternating word of length --n starting with --letter");
    cmd->add_option("--twoblock", twoblock, "two-block word: ONES ZEROS")->expected(2);
    cmd->add_option("--n", n, "word length for --constant / --alternating");
    cmd->add_option("--letter", letter, "letter of a constant word / first letter")->check(CLI::Range(0, 1));
  }

  BinaryWord resolve() const {
    const int forms = int(has_word) + int(constant) + int(alternating) + int(!twoblock.empty());
    if (forms != 1) throw UsageError("give exactly one of --word, --constant, --alternating, --twoblock");
    if (has_word) return BinaryWord::parse(word);
    if (!twoblock.empty()) {
      if (twoblock[0] < 0 || twoblock[1] < 0) throw UsageError("block sizes must be non-negative");
      return make_word(word_kind::TwoBlock{static_cast<std::size_t>(twoblock[0]),
                                           static_cast<std::size_t>(twoblock[1])},
                       twoblock[0] + twoblock[1]);
    }
    if (n < 0) throw UsageError("--n must be given and non-negative");
    if (constant) return make_word(word_kind::Constant{static_cast<Bit>(letter)}, n);
    return make_word(word_kind::Alternating{static_cast<Bit>(letter)}, n);
  }
};

struct Output {
  std::string format;
  std::string path;

  void attach(CLI::App* cmd, const std::string& default_format, std::vector<std::string> allowed) {
    format = default_format;
    cmd->add_option("--format", format, "output format")->check(CLI::IsMember(std::move(allowed)));
    cmd->add_option("--out", path, "write output to FILE instead of stdout");
  }
};

class Sink {
 public:
  Sink(const Output& o, std::ostream& fallback) : stream_(&fallback) {
    if (!o.path.empty()) {
      file_ = std::make_unique<std::ofstream>(o.path);
      if (!*file_) throw UsageError("cannot open output file " + o.path);
      stream_ = file_.get();
    }
  }
  std::ostream& operator*() { return *stream_; }

 private:
  std::unique_ptr<std::ofstream> file_;
  std::ostream* stream_;
};

void emit_json(std::ostream& out, const json& j) { out << j.dump(2) << '\n'; }

std::size_t as_size(long value, const char* flag) {
  if (value < 0) throw UsageError(std::string(flag) + " must be non-negative");
  return static_cast<std::size_t>(value);
}

json exact_json(const Rational& q) {
  return json{{"exact", to_fraction_string(q)}, {"decimal", to_decimal_string(q)}};
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Seeing probabilities of binary words in Bernoulli sequences"};
  app.name("wordperc");
  app.require_subcommand(1);

  long M = 2, n = -1, N = -1, trials = 10000;
  std::uint64_t seed = 1;
  double tol = 1e-9;

  // vn
  Output vn_out;
  auto* vn = app.add_subcommand("vn", "alternating-word probabilities v_n");
  vn->add_option("--M", M, "window")->required();
  vn->add_option("--N", N, "largest index")->required();
  vn_out.attach(vn, "csv", {"csv", "json"});

  // exact
  WordOptions exact_word;
  Output exact_out;
  std::string exact_p = "1/2";
  bool oracle = false, use_float = false, dump = false;
  auto* exact = app.add_subcommand("exact", "exact probability that a word is M-seen");
  exact_word.attach(exact);
  exact->add_option("--M", M, "window")->required();
  exact->add_option("--p", exact_p, "P(Y_i = 1) as a rational, default 1/2");
  exact->add_flag("--oracle", oracle, "enumerate all 2^{nM} prefixes instead (p = 1/2 only)");
  exact->add_flag("--float", use_float, "double-precision evaluation");
  exact->add_flag("--dump", dump, "print the automaton adjacency list");
  exact_out.attach(exact, "json", {"csv", "json"});

  // maxword
  Output maxword_out;
  auto* maxword = app.add_subcommand("maxword", "extreme seeing probabilities over all words of length n");
  maxword->add_option("--n", n, "word length")->required();
  maxword->add_option("--M", M, "window")->required();
  maxword_out.attach(maxword, "json", {"json"});

  // cm
  Output cm_out;
  auto* cm = app.add_subcommand("cm", "growth constant c_M of E(2^{Z_n})");
  cm->add_option("--M", M, "window")->required();
  cm->add_option("--tol", tol, "tolerance")->check(CLI::PositiveNumber);
  cm_out.attach(cm, "json", {"csv", "json"});

  // twoblock
  Output tb_out;
  long grid_p = static_cast<long>(kDefaultGridBound), grid_q = static_cast<long>(kDefaultGridBound);
  auto* twoblock = app.add_subcommand("twoblock", "sigma, u, w and delta grids for two-block words");
  twoblock->add_option("--M", M, "window")->required();
  twoblock->add_option("--p", grid_p, "largest number of ones");
  twoblock->add_option("--q", grid_q, "largest number of zeros");
  tb_out.attach(twoblock, "csv", {"csv", "json"});

  // renewal
  Output renewal_out;
  auto* renewal = app.add_subcommand("renewal", "return probabilities u_n, renewal sequence, V_n");
  renewal->add_option("--M", M, "window")->required();
  renewal->add_option("--N", N, "largest index")->required();
  renewal_out.attach(renewal, "csv", {"csv", "json"});

  // simulate
  WordOptions sim_word;
  Output sim_out;
  double sim_p = 0.5;
  std::optional<double> p_x, p_y;
  auto* simulate = app.add_subcommand("simulate", "Monte Carlo seeing frequency");
  sim_word.attach(simulate);
  simulate->add_option("--M", M, "window")->required();
  simulate->add_option("--p", sim_p, "P(Y_i = 1) for a fixed word");
  simulate->add_option("--p-x", p_x, "random word parameter (random-word mode)");
  simulate->add_option("--p-y", p_y, "sequence parameter (random-word mode)");
  simulate->add_option("--trials", trials, "number of trials");
  simulate->add_option("--seed", seed, "seed");
  sim_out.attach(simulate, "json", {"json"});

  // couple
  Output couple_out;
  double couple_p = 0.5, couple_q = 0.25;
  long couple_len = 16, couple_samples = 200;
  auto* couple = app.add_subcommand("couple", "block-coupling chain from parameter p to q");
  couple->add_option("--p", couple_p, "input parameter")->required();
  couple->add_option("--q", couple_q, "target parameter")->required();
  couple->add_option("--n", couple_len, "output letters checked per sample");
  couple->add_option("--trials", couple_samples, "samples");
  couple->add_option("--seed", seed, "seed");
  couple_out.attach(couple, "json", {"json"});

  // grid
  Output grid_out;
  std::string grid_x, grid_y;
  auto* grid = app.add_subcommand("grid", "red grid of two sequences and its M-admissible path");
  grid->add_option("--x", grid_x, "sequence X as 0/1 string")->required();
  grid->add_option("--y", grid_y, "sequence Y as 0/1 string")->required();
  grid->add_option("--M", M, "window")->required();
  grid_out.attach(grid, "pbm", {"pbm", "csv", "json"});

  // verify
  Output verify_out;
  std::string suite;
  auto* verify_cmd = app.add_subcommand("verify", "run a verification sweep");
  verify_cmd->add_option("suite", suite, "suite name")->required()->check(CLI::IsMember(verify::suite_names()));
  verify_cmd->add_option("--M", M, "window");
  verify_cmd->add_option("--n", n, "word length / grid bound");
  verify_cmd->add_option("--N", N, "table length");
  verify_cmd->add_option("--trials", trials, "samples");
  verify_cmd->add_option("--seed", seed, "seed");
  verify_out.attach(verify_cmd, "text", {"text", "json"});

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    const std::size_t window = as_size(M, "--M");

    if (*vn) {
      const std::size_t last = as_size(N, "--N");
      const VnTable t = vn_pair_recursion(window, last + 1);
      Sink sink(vn_out, out);
      if (vn_out.format == "csv") {
        write_vn_csv(*sink, t, last + 1);
      } else {
        json rows = json::array();
        for (std::size_t i = 0; i <= last; ++i) {
          rows.push_back({{"n", i},
                          {"v", exact_json(t.v[i])},
                          {"vprime", exact_json(t.vprime[i])},
                          {"ratio_next", to_decimal_string(t.v[i + 1] / t.v[i])}});
        }
        emit_json(*sink, json{{"M", window}, {"rows", rows}});
      }
      return kExitOk;
    }

    if (*exact) {
      const BinaryWord w = exact_word.resolve();
      Sink sink(exact_out, out);
      if (dump) {
        build_automaton(w, window).dump(*sink);
        return kExitOk;
      }
      const Rational p = parse_rational(exact_p);
      json j{{"word", w.to_string()}, {"M", window}, {"p", to_fraction_string(p)}};
      if (oracle) {
        if (p != Rational(1, 2)) throw UsageError("--oracle enumerates prefixes at p = 1/2 only");
        const Rational prob = exhaustive_seen_probability(w, window);
        j["method"] = "exhaustive";
        j["probability"] = to_fraction_string(prob);
        j["decimal"] = to_decimal_string(prob);
      } else {
        const ProbAutomaton a = build_automaton(w, window);
        j["method"] = use_float ? "automaton-float" : "automaton";
        j["states"] = a.size();
        if (use_float) {
          j["probability"] = a.accept_probability(p.get_d());
        } else {
          const Rational prob = a.accept_probability(p);
          j["probability"] = to_fraction_string(prob);
          j["decimal"] = to_decimal_string(prob);
        }
      }
      if (exact_out.format == "json") {
        emit_json(*sink, j);
      } else {
        *sink << "word,M,p,method,probability,decimal\n"
              << w.to_string() << ',' << window << ',' << j["p"].get<std::string>() << ','
              << j["method"].get<std::string>() << ','
              << (use_float ? std::to_string(j["probability"].get<double>()) : j["probability"].get<std::string>())
              << ',' << (j.contains("decimal") ? j["decimal"].get<std::string>() : "") << '\n';
      }
      return kExitOk;
    }

    if (*maxword) {
      const WordExtremes ex = max_word_probability(as_size(n, "--n"), window);
      json maxs = json::array(), mins = json::array();
      for (const auto& w : ex.maximizers) maxs.push_back(w.to_string());
      for (const auto& w : ex.minimizers) mins.push_back(w.to_string());
      Sink sink(maxword_out, out);
      emit_json(*sink, json{{"n", n},
                            {"M", window},
                            {"max", exact_json(ex.max)},
                            {"maximizers", maxs},
                            {"min", exact_json(ex.min)},
                            {"minimizers", mins}});
      return kExitOk;
    }

    if (*cm) {
      const GrowthConstant c = growth_constant(window, tol);
      Sink sink(cm_out, out);
      if (cm_out.format == "json") {
        emit_json(*sink, to_json(c));
      } else {
        std::ostringstream row;
        row.precision(17);
        row << c.window << ',' << c.tol << ',' << c.by_generating_function << ',' << c.by_ratio;
        *sink << "M,tol,c_generating_function,c_ratio\n" << row.str() << '\n';
      }
      return kExitOk;
    }

    if (*twoblock) {
      const TwoBlockTable t = u_table(window, as_size(grid_p, "--p"), as_size(grid_q, "--q"));
      Sink sink(tb_out, out);
      if (tb_out.format == "csv") {
        write_two_block_csv(*sink, t);
      } else {
        json cells = json::array();
        for (std::size_t p = 0; p < t.u.size(); ++p) {
          for (std::size_t q = 0; q < t.u[p].size(); ++q) {
            cells.push_back({{"p", p},
                             {"q", q},
                             {"sigma", exact_json(t.sigma[p][q])},
                             {"u", exact_json(t.u[p][q])},
                             {"w", exact_json(t.w[p][q])},
                             {"delta", exact_json(t.delta[p][q])}});
          }
        }
        emit_json(*sink, json{{"M", window}, {"cells", cells}});
      }
      return kExitOk;
    }

    if (*renewal) {
      const RenewalTable t = renewal_table(window, as_size(N, "--N") + 1);
      Sink sink(renewal_out, out);
      if (renewal_out.format == "csv") {
        write_renewal_csv(*sink, t, t.u.size() - 1);
      } else {
        json rows = json::array();
        for (std::size_t i = 0; i + 1 < t.u.size(); ++i) {
          rows.push_back({{"n", i},
                          {"u", exact_json(t.u[i])},
                          {"r", exact_json(t.r[i])},
                          {"V", exact_json(t.V[i])},
                          {"V_ratio_next", to_decimal_string(t.V[i + 1] / t.V[i])}});
        }
        emit_json(*sink, json{{"M", window}, {"rows", rows}});
      }
      return kExitOk;
    }

    if (*simulate) {
      const RngConfig rng{seed};
      const std::size_t count = as_size(trials, "--trials");
      Sink sink(sim_out, out);
      if (p_x || p_y) {
        if (!p_x || !p_y) throw UsageError("random-word mode needs both --p-x and --p-y");
        const std::size_t len = as_size(sim_word.n, "--n");
        const Estimate e = estimate_x_seen_in_y(window, *p_x, *p_y, len, count, rng);
        emit_json(*sink, json{{"word", "random"},
                              {"n", len},
                              {"M", window},
                              {"p_x", *p_x},
                              {"p_y", *p_y},
                              {"trials", e.trials},
                              {"estimate", e.estimate},
                              {"stderr", e.std_error},
                              {"seed", seed}});
      } else {
        const BinaryWord w = sim_word.resolve();
        const Estimate e = estimate_seen_probability(w, window, sim_p, count, rng);
        emit_json(*sink, estimate_json(w.to_string(), window, sim_p, e, rng));
      }
      return kExitOk;
    }

    if (*couple) {
      const ChainReport rep = coupling_chain_demo(couple_p, couple_q, as_size(couple_len, "--n"),
                                                  as_size(couple_samples, "--trials"), RngConfig{seed});
      json stages = json::array();
      for (const auto& s : rep.path.stages) {
        stages.push_back({{"p_in", s.p_in}, {"p1", s.p1}, {"p_out", s.p_out}});
      }
      Sink sink(couple_out, out);
      emit_json(*sink, json{{"p", couple_p},
                            {"target", couple_q},
                            {"stages", stages},
                            {"k", rep.path.stages.size()},
                            {"M", rep.path.window()},
                            {"samples", rep.samples},
                            {"seen_failures", rep.seen_failures},
                            {"empirical_p", rep.empirical_p},
                            {"sigma", rep.sigma},
                            {"ok", rep.ok()},
                            {"seed", seed}});
      return rep.ok() ? kExitOk : kExitVerificationFailed;
    }

    if (*grid) {
      const RedGrid g(SequencePrefix::parse(grid_x), SequencePrefix::parse(grid_y));
      Sink sink(grid_out, out);
      if (grid_out.format == "pbm") {
        g.write_pbm(*sink);
      } else if (grid_out.format == "csv") {
        g.write_csv(*sink);
      } else {
        emit_json(*sink, json{{"rows", g.rows()},
                              {"cols", g.cols()},
                              {"M", window},
                              {"admissible_path", admissible_path_exists(g, window)}});
      }
      return kExitOk;
    }

    if (*verify_cmd) {
      verify::Bounds b;
      b.window = window;
      if (n >= 0) b.n = static_cast<std::size_t>(n);
      if (N >= 0) b.N = static_cast<std::size_t>(N);
      if (verify_cmd->count("--n") && n < 0) throw UsageError("--n must be non-negative");
      if (verify_cmd->count("--N") && N < 0) throw UsageError("--N must be non-negative");
      b.trials = as_size(trials, "--trials");
      b.seed = seed;
      const verify::Result r = verify::run_suite(suite, b);
      Sink sink(verify_out, out);
      if (verify_out.format == "json") {
        emit_json(*sink, json{{"suite", suite}, {"pass", r.pass}, {"lines", r.lines}, {"failures", r.failures}});
      } else {
        for (const auto& line : r.lines) *sink << line << '\n';
        for (const auto& line : r.failures) *sink << line << '\n';
        *sink << suite << ": " << (r.pass ? "PASS" : "FAIL") << '\n';
      }
      return r.pass ? kExitOk : kExitVerificationFailed;
    }
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const BudgetExceeded& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const StateLimitExceeded& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitVerificationFailed;
  }
  return kExitUsage;
}

}  // namespace wordperc::cli
