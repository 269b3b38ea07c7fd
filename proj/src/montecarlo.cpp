#include "wordperc/montecarlo.hpp"

#include <cmath>
#include <ostream>
#include <stdexcept>
#include <string>

namespace wordperc {
namespace {

std::uint64_t splitmix64(std::uint64_t z) {
  z += 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

void require_open_unit(double p, const char* what) {
  if (!(p > 0.0 && p < 1.0)) throw std::invalid_argument(std::string(what) + " must lie in (0,1)");
}

Estimate finish(std::size_t successes, std::size_t trials) {
  Estimate e;
  e.trials = trials;
  e.successes = successes;
  e.estimate = static_cast<double>(successes) / static_cast<double>(trials);
  e.std_error = std::sqrt(e.estimate * (1 - e.estimate) / static_cast<double>(trials));
  return e;
}

}  // namespace

std::mt19937_64 RngConfig::stream(std::uint64_t index) const {
  return std::mt19937_64(splitmix64(seed ^ splitmix64(index)));
}

double uniform01(std::mt19937_64& gen) {
  return static_cast<double>(gen() >> 11) * 0x1.0p-53;
}

SequencePrefix sample_sequence(double p, std::size_t length, std::mt19937_64& gen) {
  require_open_unit(p, "letter probability");
  std::vector<Bit> bits(length);
  for (Bit& b : bits) b = uniform01(gen) < p ? 1 : 0;
  return SequencePrefix(std::move(bits));
}

SequencePrefix sample_sequence(double p, std::size_t length, const RngConfig& rng) {
  auto gen = rng.stream(0);
  return sample_sequence(p, length, gen);
}

Estimate estimate_seen_probability(const BinaryWord& word, std::size_t window, double p,
                                   std::size_t trials, const RngConfig& rng) {
  require_open_unit(p, "letter probability");
  if (trials == 0) throw std::invalid_argument("need at least one trial");
  if (window == 0) throw std::invalid_argument("window M must be at least 1");
  const std::size_t horizon = event_horizon(word.size(), window);
  std::size_t successes = 0;
  for (std::size_t t = 0; t < trials; ++t) {
    auto gen = rng.stream(t);
    if (is_m_seen(word, sample_sequence(p, horizon, gen), window)) ++successes;
  }
  return finish(successes, trials);
}

Estimate estimate_x_seen_in_y(std::size_t window, double p_x, double p_y, std::size_t n,
                              std::size_t trials, const RngConfig& rng) {
  require_open_unit(p_x, "p_X");
  require_open_unit(p_y, "p_Y");
  if (trials == 0) throw std::invalid_argument("need at least one trial");
  if (window == 0) throw std::invalid_argument("window M must be at least 1");
  std::size_t successes = 0;
  for (std::size_t t = 0; t < trials; ++t) {
    auto gen = rng.stream(t);
    const SequencePrefix x = sample_sequence(p_x, n, gen);
    const SequencePrefix y = sample_sequence(p_y, event_horizon(n, window), gen);
    if (is_m_seen(BinaryWord(std::vector<Bit>(x.bits().begin(), x.bits().end())), y, window)) {
      ++successes;
    }
  }
  return finish(successes, trials);
}

nlohmann::json estimate_json(const std::string& word, std::size_t window, double p,
                             const Estimate& e, const RngConfig& rng) {
  return nlohmann::json{{"word", word},   {"M", window},
                        {"p", p},         {"trials", e.trials},
                        {"estimate", e.estimate}, {"stderr", e.std_error},
                        {"seed", rng.seed}};
}

RedGrid::RedGrid(const SequencePrefix& x, const SequencePrefix& y)
    : rows_(x.size() + 1), cols_(y.size() + 1), cells_(rows_ * cols_, 0) {
  cells_[0] = 1;
  for (std::size_t i = 1; i < rows_; ++i) {
    for (std::size_t j = 1; j < cols_; ++j) cells_[i * cols_ + j] = x.at(i) == y.at(j);
  }
}

void RedGrid::write_pbm(std::ostream& out) const {
  out << "P1\n" << cols_ << ' ' << rows_ << '\n';
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) out << (j ? " " : "") << (red(i, j) ? '1' : '0');
    out << '\n';
  }
}

void RedGrid::write_csv(std::ostream& out) const {
  out << "i,j,red\n";
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) out << i << ',' << j << ',' << (red(i, j) ? 1 : 0) << '\n';
  }
}

RedGrid red_grid(const SequencePrefix& x, const SequencePrefix& y) { return RedGrid(x, y); }

bool admissible_path_exists(const RedGrid& grid, std::size_t window) {
  if (window == 0) throw std::invalid_argument("window M must be at least 1");
  const std::size_t steps = grid.rows() - 1;
  if (grid.cols() - 1 < steps * window) {
    throw std::invalid_argument("grid has " + std::to_string(grid.cols() - 1) +
                                " columns; deciding a path of " + std::to_string(steps) +
                                " steps needs " + std::to_string(steps * window));
  }
  std::vector<char> reach(grid.cols(), 0);
  reach[0] = 1;
  for (std::size_t i = 1; i <= steps; ++i) {
    std::vector<char> next(grid.cols(), 0);
    bool any = false;
    // running count of reachable cells in row i-1 within [j - M, j - 1]
    std::size_t in_window = 0;
    for (std::size_t j = 1; j < grid.cols(); ++j) {
      in_window += static_cast<std::size_t>(reach[j - 1]);
      if (j > window) in_window -= static_cast<std::size_t>(reach[j - 1 - window]);
      if (in_window > 0 && grid.red(i, j)) {
        next[j] = 1;
        any = true;
      }
    }
    if (!any) return false;
    reach = std::move(next);
  }
  return true;
}

CouplingOutput coupling_f(const SequencePrefix& x, double p1, std::mt19937_64& gen) {
  if (!(p1 >= 0.0 && p1 <= 1.0)) throw std::invalid_argument("mixing probability must lie in [0,1]");
  if (x.size() % 2 != 0) throw std::invalid_argument("coupling needs an even-length input");
  CouplingOutput out;
  std::vector<Bit> letters;
  letters.reserve(x.size() / 2);
  out.source.reserve(x.size() / 2);
  for (std::size_t k = 1; k <= x.size() / 2; ++k) {
    const Bit a = x.at(2 * k - 1), b = x.at(2 * k);
    Bit letter = a;
    if (a != b) letter = uniform01(gen) < p1 ? 1 : 0;
    letters.push_back(letter);
    out.source.push_back(a == letter ? 2 * k - 1 : 2 * k);
  }
  out.letters = SequencePrefix(std::move(letters));
  return out;
}

std::size_t ParameterPath::window() const {
  std::size_t m = 1;
  for (std::size_t i = 0; i < stages.size(); ++i) m *= 3;
  return m;
}

ParameterPath plan_parameter_path(double p, double p_target, std::size_t max_stages) {
  require_open_unit(p, "p");
  require_open_unit(p_target, "p'");
  ParameterPath path;
  double current = p;
  while (current != p_target) {
    if (path.stages.size() >= max_stages) {
      throw std::runtime_error("no parameter path within " + std::to_string(max_stages) + " stages");
    }
    const double lo = current * current;
    const double hi = 1 - (1 - current) * (1 - current);
    CouplingStage stage{current, 0.0, 0.0};
    if (p_target >= lo && p_target <= hi) {
      stage.p1 = (p_target - lo) / (2 * current * (1 - current));
      stage.p_out = p_target;
    } else if (p_target < lo) {
      stage.p1 = 0.0;
      stage.p_out = lo;
    } else {
      stage.p1 = 1.0;
      stage.p_out = hi;
    }
    path.stages.push_back(stage);
    current = stage.p_out;
  }
  return path;
}

bool ChainReport::ok() const {
  return seen_failures == 0 && std::abs(empirical_p - target_p) <= 4 * sigma;
}

ChainReport coupling_chain_demo(double p, double p_target, std::size_t length,
                                std::size_t samples, const RngConfig& rng) {
  ChainReport report;
  report.path = plan_parameter_path(p, p_target);
  report.samples = samples;
  report.output_length = length;
  report.target_p = p_target;

  const std::size_t k = report.path.stages.size();
  const std::size_t window = report.path.window();
  const std::size_t block = std::size_t{1} << k;
  // X must cover the event horizon length * 3^k, and its image must keep `length` letters.
  const std::size_t blocks = (length * window + block - 1) / block;
  const std::size_t input_length = std::max(blocks, length) * block;
  if (input_length > (std::size_t{1} << 28)) throw std::runtime_error("coupling chain input too long");

  for (std::size_t s = 0; s < samples; ++s) {
    auto gen = rng.stream(s);
    const SequencePrefix x = sample_sequence(p, input_length, gen);
    SequencePrefix current = x;
    for (const CouplingStage& stage : report.path.stages) current = coupling_f(current, stage.p1, gen).letters;
    const SequencePrefix head = current.prefix(length);
    const BinaryWord word(std::vector<Bit>(head.bits().begin(), head.bits().end()));
    if (!is_m_seen(word, x, window)) ++report.seen_failures;
    for (Bit b : head.bits()) report.ones += b;
    report.letters += length;
  }
  report.empirical_p = report.letters ? static_cast<double>(report.ones) / static_cast<double>(report.letters) : 0.0;
  report.sigma = std::sqrt(p_target * (1 - p_target) / static_cast<double>(std::max<std::size_t>(report.letters, 1)));
  return report;
}

}  // namespace wordperc
