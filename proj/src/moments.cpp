#include "wordperc/moments.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <stdexcept>
#include <string>

#include "wordperc/exactprob.hpp"

namespace wordperc {
namespace {

void require_window(std::size_t window) {
  if (window == 0) throw std::invalid_argument("window M must be at least 1");
}

Rational window_over_two(std::size_t window) {
  return Rational(static_cast<unsigned long>(window), 2UL);
}

// Probabilities of J_n - K_n for growing n, in double precision.
class DifferenceWalk {
 public:
  explicit DifferenceWalk(std::size_t window) : window_(window), dist_{1.0} {
    const double m2 = static_cast<double>(window * window);
    for (std::size_t a = 0; a + 1 < 2 * window; ++a) {
      const double offset = std::abs(static_cast<double>(a) - static_cast<double>(window - 1));
      step_.push_back((static_cast<double>(window) - offset) / m2);
    }
  }

  // Advances one step and returns P(J_n = K_n).
  double next_return() {
    std::vector<double> out(dist_.size() + step_.size() - 1, 0.0);
    for (std::size_t i = 0; i < dist_.size(); ++i) {
      for (std::size_t s = 0; s < step_.size(); ++s) out[i + s] += dist_[i] * step_[s];
    }
    dist_ = std::move(out);
    return dist_[dist_.size() / 2];
  }

 private:
  std::size_t window_;
  std::vector<double> dist_;  // symmetric, centered on zero
  std::vector<double> step_;
};

}  // namespace

Rational expected_embeddings(std::size_t window, std::size_t n) {
  require_window(window);
  return pow(window_over_two(window), static_cast<unsigned>(n));
}

Rational second_moment_exact(const BinaryWord& word, std::size_t window) {
  require_window(window);
  const std::size_t n = word.size();
  const std::size_t width = 2 * window + 1;  // d = J_r - K_s in [-M, M]
  const auto at = [&](std::size_t r, std::size_t s, long d) {
    return (r * (n + 1) + s) * width + static_cast<std::size_t>(d + static_cast<long>(window));
  };
  std::vector<Rational> weight((n + 1) * (n + 1) * width, Rational(0));
  weight[at(0, 0, 0)] = 1;
  const Rational step_prob(1UL, static_cast<unsigned long>(window));
  const long m = static_cast<long>(window);

  Rational product_mean = 0;
  for (std::size_t level = 0; level <= 2 * n; ++level) {
    const std::size_t r_lo = level > n ? level - n : 0;
    const std::size_t r_hi = std::min(level, n);
    for (std::size_t r = r_lo; r <= r_hi; ++r) {
      const std::size_t s = level - r;
      for (long d = -m; d <= m; ++d) {
        const Rational& w = weight[at(r, s, d)];
        if (w == 0) continue;
        if (d <= 0) {
          // J is not ahead. Once J has finished, K can never meet it again.
          if (r == n) {
            product_mean += w;
            continue;
          }
          for (long step = 1; step <= m; ++step) {
            const long nd = d + step;
            if (nd == 0) {
              if (word.at(r + 1) != word.at(s)) continue;
              weight[at(r + 1, s, nd)] += 2 * w * step_prob;
            } else {
              weight[at(r + 1, s, nd)] += w * step_prob;
            }
          }
        } else {
          if (s == n) {
            product_mean += w;
            continue;
          }
          for (long step = 1; step <= m; ++step) {
            const long nd = d - step;
            if (nd == 0) {
              if (word.at(r) != word.at(s + 1)) continue;
              weight[at(r, s + 1, nd)] += 2 * w * step_prob;
            } else {
              weight[at(r, s + 1, nd)] += w * step_prob;
            }
          }
        }
      }
    }
  }
  return pow(window_over_two(window), static_cast<unsigned>(2 * n)) * product_mean;
}

Rational second_moment_oracle(const BinaryWord& word, std::size_t window, std::size_t max_bits) {
  require_window(window);
  const std::size_t bits = event_horizon(word.size(), window);
  if (bits > max_bits || bits >= 63) {
    throw BudgetExceeded("second-moment oracle over 2^" + std::to_string(bits) + " prefixes");
  }
  const std::uint64_t total = std::uint64_t{1} << bits;
  Integer sum = 0;
  std::vector<Bit> y(bits);
  for (std::uint64_t mask = 0; mask < total; ++mask) {
    for (std::size_t i = 0; i < bits; ++i) y[i] = static_cast<Bit>((mask >> i) & 1u);
    const Integer count(static_cast<unsigned long>(count_embeddings(word, SequencePrefix(y), window)));
    sum += count * count;
  }
  Rational out(sum, Integer(static_cast<unsigned long>(total)));
  out.canonicalize();
  return out;
}

RenewalTable renewal_table(std::size_t window, std::size_t max_index) {
  require_window(window);
  RenewalTable t;
  t.window = window;

  // counts[l] = number of step sequences with J_n = l
  std::vector<Integer> counts{Integer(1)};
  Integer paths = 1;  // M^n
  t.u.push_back(Rational(1));
  for (std::size_t n = 1; n <= max_index; ++n) {
    std::vector<Integer> next(counts.size() + window, Integer(0));
    for (std::size_t l = 0; l < counts.size(); ++l) {
      if (counts[l] == 0) continue;
      for (std::size_t s = 1; s <= window; ++s) next[l + s] += counts[l];
    }
    counts = std::move(next);
    paths *= static_cast<unsigned long>(window);
    Integer squares = 0;
    for (const Integer& c : counts) squares += c * c;
    Rational u(squares, paths * paths);
    u.canonicalize();
    t.u.push_back(std::move(u));
  }

  t.r.push_back(Rational(1));
  t.V.push_back(Rational(1));
  for (std::size_t n = 1; n <= max_index; ++n) {
    Rational r = 0;
    for (std::size_t k = 1; k <= n; ++k) r += t.u[k] * t.r[n - k];
    t.V.push_back(t.V.back() + r);
    t.r.push_back(std::move(r));
  }
  return t;
}

void write_renewal_csv(std::ostream& out, const RenewalTable& table, std::size_t rows) {
  out << "n,u_num,u_den,u_decimal,r_num,r_den,r_decimal,V_num,V_den,V_decimal,V_ratio_next\n";
  auto exact = [&](const Rational& q) {
    out << q.get_num().get_str() << ',' << q.get_den().get_str() << ',' << to_decimal_string(q);
  };
  for (std::size_t n = 0; n < std::min(rows, table.u.size()); ++n) {
    out << n << ',';
    exact(table.u[n]);
    out << ',';
    exact(table.r[n]);
    out << ',';
    exact(table.V[n]);
    out << ',';
    if (n + 1 < table.V.size()) out << to_decimal_string(table.V[n + 1] / table.V[n]);
    out << '\n';
  }
}

Rational random_word_second_moment(std::size_t window, std::size_t n) {
  const RenewalTable t = renewal_table(window, n);
  return pow(window_over_two(window), static_cast<unsigned>(2 * n)) * t.V[n];
}

Rational visits_moment_bruteforce(std::size_t window, std::size_t n) {
  require_window(window);
  const std::size_t steps = 2 * n;
  double log_size = static_cast<double>(steps) * std::log2(static_cast<double>(window));
  if (log_size > 30) throw BudgetExceeded("too many walk pairs to enumerate");

  std::vector<std::size_t> choice(steps, 0);  // step - 1 for J_1..J_n then K_1..K_n
  Integer total = 0, pairs = 0;
  while (true) {
    std::size_t j = 0, k = 0;
    unsigned long factor = 1;
    for (std::size_t i = 0; i < n; ++i) {
      j += choice[i] + 1;
      k += choice[n + i] + 1;
      if (j == k) factor *= 2;
    }
    total += factor;
    pairs += 1;
    std::size_t pos = 0;
    while (pos < steps && ++choice[pos] == window) choice[pos++] = 0;
    if (pos == steps) break;
  }
  Rational out(total, pairs);
  out.canonicalize();
  return out;
}

Rational visits_moment_by_subsets(std::size_t window, std::size_t n) {
  if (n > 24) throw BudgetExceeded("too many subsets to enumerate");
  const RenewalTable t = renewal_table(window, n);
  Rational sum = 0;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    Rational term = 1;
    std::size_t last = 0;
    for (std::size_t i = 1; i <= n; ++i) {
      if ((mask >> (i - 1)) & 1u) {
        term *= t.u[i - last];
        last = i;
      }
    }
    sum += term;
  }
  return sum;
}

GrowthConstant growth_constant(std::size_t window, double tol) {
  require_window(window);
  if (!(tol > 0)) throw std::invalid_argument("tolerance must be positive");
  if (window == 1) throw std::invalid_argument("c_M is undefined for M = 1 (J - K never moves)");

  GrowthConstant out;
  out.window = window;
  out.tol = tol;

  constexpr std::size_t kMaxTerms = 200000;
  std::vector<double> u{1.0};
  DifferenceWalk walk(window);
  auto ensure = [&](std::size_t n) {
    while (u.size() <= n) u.push_back(walk.next_return());
  };

  // Bounds on U(x) = sum_n u_n x^n. u_n is non-increasing, so the tail after
  // N terms is at most u_{N+1} x^{N+1} / (1 - x).
  const double tail_target = tol * 1e-3;
  auto bounds = [&](double x) {
    double sum = 0, xn = 1;
    std::size_t n = 0;
    while (true) {
      ensure(n + 1);
      sum += u[n] * xn;
      xn *= x;
      const double tail = u[n + 1] * xn / (1 - x);
      ++n;
      if (tail < tail_target) {
        out.series_terms = std::max(out.series_terms, n);
        return std::pair{sum, sum + tail};
      }
      if (n >= kMaxTerms) throw std::runtime_error("series for U(x) did not converge");
    }
  };

  double lo = 0.0, hi = 1.0;
  for (int iter = 0; iter < 200 && 1.0 / lo - 1.0 / hi > tol * 1e-2; ++iter) {
    const double mid = 0.5 * (lo + hi);
    const auto [lower, upper] = bounds(mid);
    if (lower > 2.0) {
      hi = mid;
    } else if (upper < 2.0) {
      lo = mid;
    } else {
      break;  // mid is within the series error of the root
    }
  }
  out.by_generating_function = 2.0 / (lo + hi);

  // Ratio route: V_{n+1}/V_n decreases to c. Stop once a geometric
  // extrapolation of successive decrements puts the remaining gap below tol/10.
  constexpr std::size_t kMaxSteps = 20000;
  std::vector<long double> r{1.0L};
  long double V = 1.0L, ratio_prev = 0, decrement_prev = 0;
  for (std::size_t n = 1; n <= kMaxSteps; ++n) {
    ensure(n);
    long double rn = 0;
    for (std::size_t k = 1; k <= n; ++k) rn += static_cast<long double>(u[k]) * r[n - k];
    r.push_back(rn);
    const long double ratio = (V + rn) / V;
    V += rn;
    if (n >= 2) {
      const long double decrement = ratio_prev - ratio;
      if (n >= 20 && decrement_prev > 0 && decrement >= 0) {
        const long double rho = decrement / decrement_prev;
        if (rho < 1) {
          const long double remaining = decrement * rho / (1 - rho);
          if (remaining < tol / 10) {
            out.by_ratio = static_cast<double>(ratio - remaining);
            out.ratio_steps = n;
            return out;
          }
        }
      }
      decrement_prev = decrement;
    }
    ratio_prev = ratio;
  }
  throw std::runtime_error("ratio V_{n+1}/V_n did not converge for M=" + std::to_string(window));
}

nlohmann::json to_json(const GrowthConstant& c) {
  return nlohmann::json{{"M", c.window},
                        {"tol", c.tol},
                        {"c_generating_function", c.by_generating_function},
                        {"c_ratio", c.by_ratio},
                        {"series_terms", c.series_terms},
                        {"ratio_steps", c.ratio_steps}};
}

}  // namespace wordperc
