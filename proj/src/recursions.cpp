#include "wordperc/recursions.hpp"

#include <algorithm>
#include <ostream>
#include <stdexcept>
#include <string>

#include "wordperc/exactprob.hpp"

namespace wordperc {
namespace {

void require_window_at_least_two(std::size_t window) {
  if (window < 2) throw std::invalid_argument("this recursion needs M >= 2");
}

Rational dyadic(std::size_t exponent) {
  Integer den;
  mpz_ui_pow_ui(den.get_mpz_t(), 2, exponent);
  return Rational(Integer(1), den);
}

// The sign change of f inside (lo, hi), to within `width`, with exact sign
// evaluation at dyadic midpoints.
double bisect(const CharPoly& f, Rational lo, Rational hi, double width) {
  const int lo_sign = sgn(f(lo));
  while (Rational(hi - lo).get_d() > width) {
    Rational mid = (lo + hi) / 2;
    const int s = sgn(f(mid));
    if (s == 0) return mid.get_d();
    (s == lo_sign ? lo : hi) = mid;
  }
  return Rational((lo + hi) / 2).get_d();
}

void write_exact(std::ostream& out, const Rational& q) {
  out << q.get_num().get_str() << ',' << q.get_den().get_str() << ',' << to_decimal_string(q);
}

std::vector<Rational> poly_mul(const std::vector<Rational>& a, const std::vector<Rational>& b) {
  std::vector<Rational> out(a.size() + b.size() - 1, Rational(0));
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  }
  return out;
}

}  // namespace

AlphaBeta::AlphaBeta(std::size_t window_) : window(window_) {
  if (window == 0) throw std::invalid_argument("window M must be at least 1");
  beta = dyadic(window);
  alpha = 1 - beta;
}

VnTable vn_pair_recursion(std::size_t window, std::size_t max_index) {
  require_window_at_least_two(window);
  const AlphaBeta ab(window);
  const Rational m(static_cast<unsigned long>(window));

  VnTable t;
  t.window = window;
  t.v.push_back(Rational(1));
  t.vprime.push_back(Rational(0));
  t.by_start.emplace_back();

  for (std::size_t n = 1; n <= max_index; ++n) {
    const Rational& prev = t.v[n - 1];
    const Rational& prev_last = t.vprime[n - 1];
    std::vector<Rational> starts(window);
    Rational sum = 0;
    for (std::size_t k = 1; k <= window; ++k) {
      starts[k - 1] = dyadic(k) * (prev + Rational(static_cast<unsigned long>(k - 1)) * prev_last);
      sum += starts[k - 1];
    }
    Rational v = ab.alpha * prev + (ab.alpha - m * ab.beta) * prev_last;
    Rational vprime = ab.beta * prev + (m - 1) * ab.beta * prev_last;
    if (v != sum || vprime != starts[window - 1]) {
      throw std::logic_error("start-position recursion disagrees with the pair recursion at n=" +
                             std::to_string(n));
    }
    t.v.push_back(std::move(v));
    t.vprime.push_back(std::move(vprime));
    t.by_start.push_back(std::move(starts));
  }
  return t;
}

std::vector<Rational> vn_single_recursion(std::size_t window, std::size_t max_index) {
  require_window_at_least_two(window);
  const AlphaBeta ab(window);
  const Rational m(static_cast<unsigned long>(window));
  const Rational c1 = ab.alpha + (m - 1) * ab.beta;
  const Rational c2 = ab.beta * (m - 2 * ab.alpha);

  std::vector<Rational> v{Rational(1)};
  if (max_index >= 1) v.push_back(ab.alpha);
  for (std::size_t n = 1; n + 1 <= max_index; ++n) v.push_back(c1 * v[n] - c2 * v[n - 1]);
  return v;
}

void write_vn_csv(std::ostream& out, const VnTable& table, std::size_t rows) {
  out << "n,v_num,v_den,v_decimal,vprime_num,vprime_den,vprime_decimal,ratio_next\n";
  for (std::size_t n = 0; n < std::min(rows, table.v.size()); ++n) {
    out << n << ',';
    write_exact(out, table.v[n]);
    out << ',';
    write_exact(out, table.vprime[n]);
    out << ',';
    if (n + 1 < table.v.size()) out << to_decimal_string(table.v[n + 1] / table.v[n]);
    out << '\n';
  }
}

CharPoly char_poly(std::size_t window) {
  require_window_at_least_two(window);
  const AlphaBeta ab(window);
  const Rational m(static_cast<unsigned long>(window));

  CharPoly f{window, -(ab.alpha + (m - 1) * ab.beta), ab.beta * (m - 2 * ab.alpha), 0.0, 0.0};
  const Rational mb = m * ab.beta;
  if (!(f(Rational(0)) > 0 && f(mb) < 0 && f(ab.alpha) < 0 && f(Rational(1)) > 0)) {
    throw std::logic_error("characteristic polynomial lacks the expected sign pattern");
  }
  constexpr double kWidth = 1e-13;
  f.small_root = bisect(f, Rational(0), mb, kWidth);
  f.large_root = bisect(f, ab.alpha, Rational(1), kWidth);
  return f;
}

Rational sigma_closed_form(std::size_t window, std::size_t p, std::size_t j) {
  Integer total = 0;
  for (std::size_t i = 0; i <= p; ++i) {
    Integer inner = 0;
    for (std::size_t l = 0; l + 1 <= p + j; ++l) inner += binomial(i * window, l);
    inner *= binomial(p, i);
    if ((p - i) % 2 == 0) {
      total += inner;
    } else {
      total -= inner;
    }
  }
  return Rational(total) * pow(AlphaBeta(window).beta, static_cast<unsigned>(p));
}

SigmaPair sigma_oracle(std::size_t window, std::size_t p, std::size_t j) {
  if (window == 0) throw std::invalid_argument("window M must be at least 1");
  const std::size_t horizon = p * window;
  if (horizon > kSigmaOracleMaxHorizon) throw BudgetExceeded("sigma oracle horizon too large");

  // mass[t] = P(T_i = t, constraints so far), for t <= horizon; overflow holds T_i > horizon.
  std::vector<Rational> mass(horizon + 1, Rational(0));
  mass[0] = 1;
  for (std::size_t i = 0; i < p; ++i) {
    std::vector<Rational> next(horizon + 1, Rational(0));
    for (std::size_t t = 0; t <= horizon; ++t) {
      if (mass[t] == 0) continue;
      for (std::size_t tau = 1; tau <= window && t + tau <= horizon; ++tau) {
        next[t + tau] += mass[t] * dyadic(tau);
      }
    }
    mass = std::move(next);
  }
  Rational overflow = 0;
  for (std::size_t i = 0; i < j; ++i) {
    std::vector<Rational> next(horizon + 1, Rational(0));
    for (std::size_t t = 0; t <= horizon; ++t) {
      if (mass[t] == 0) continue;
      for (std::size_t tau = 1; t + tau <= horizon; ++tau) next[t + tau] += mass[t] * dyadic(tau);
      overflow += mass[t] * dyadic(horizon - t);  // P(tau > horizon - t)
    }
    mass = std::move(next);
  }
  Rational inside = 0;
  for (const Rational& m : mass) inside += m;
  return {overflow, inside};
}

TwoBlockTable u_table(std::size_t window, std::size_t max_p, std::size_t max_q,
                      std::size_t budget) {
  require_window_at_least_two(window);
  if (max_p > budget || max_q > budget) {
    throw BudgetExceeded("two-block grid " + std::to_string(max_p) + "x" + std::to_string(max_q) +
                         " exceeds the budget " + std::to_string(budget));
  }
  const AlphaBeta ab(window);
  const std::vector<Rational> v = vn_single_recursion(window, max_p + max_q);

  TwoBlockTable t;
  t.window = window;
  auto grid = [&] { return RationalGrid(max_p + 1, std::vector<Rational>(max_q + 1, Rational(0))); };
  t.sigma = grid();
  t.sigma_prime = grid();
  t.u = grid();
  t.w = grid();
  t.delta = grid();

  for (std::size_t p = 0; p <= max_p; ++p) {
    const Rational alpha_p = pow(ab.alpha, static_cast<unsigned>(p));
    for (std::size_t j = 0; j <= max_q; ++j) {
      t.sigma[p][j] = sigma_closed_form(window, p, j);
      t.sigma_prime[p][j] = alpha_p - t.sigma[p][j];
    }
    for (std::size_t q = 0; q <= max_q; ++q) {
      Rational via_prime = 0, via_sigma = 0;
      for (std::size_t j = 1; j <= q; ++j) {
        const Rational weight = pow(ab.alpha, static_cast<unsigned>(q - j));
        via_prime += weight * t.sigma_prime[p][j];
        via_sigma += weight * t.sigma[p][j];
      }
      const Rational u1 = pow(ab.alpha, static_cast<unsigned>(p + q)) + ab.beta * via_prime;
      const Rational u2 = alpha_p - ab.beta * via_sigma;
      if (u1 != u2) {
        throw std::logic_error("the two expressions for u disagree at p=" + std::to_string(p) +
                               ", q=" + std::to_string(q));
      }
      t.u[p][q] = u1;
      t.w[p][q] = via_sigma;
      t.delta[p][q] = v[p + q] - u1;
    }
  }
  return t;
}

void write_two_block_csv(std::ostream& out, const TwoBlockTable& table) {
  out << "p,q,sigma_num,sigma_den,sigma_decimal,u_num,u_den,u_decimal,w_num,w_den,w_decimal,"
         "delta_num,delta_den,delta_decimal\n";
  for (std::size_t p = 0; p < table.u.size(); ++p) {
    for (std::size_t q = 0; q < table.u[p].size(); ++q) {
      out << p << ',' << q << ',';
      write_exact(out, table.sigma[p][q]);
      out << ',';
      write_exact(out, table.u[p][q]);
      out << ',';
      write_exact(out, table.w[p][q]);
      out << ',';
      write_exact(out, table.delta[p][q]);
      out << '\n';
    }
  }
}

Rational delta_operator(const RationalGrid& grid, std::size_t window, std::size_t p,
                        std::size_t q) {
  if (p + 1 >= grid.size() || q + 1 >= grid[p].size() || q + 1 >= grid[p + 1].size()) {
    throw std::out_of_range("difference operator needs the grid to cover (p+1, q+1)");
  }
  const AlphaBeta ab(window);
  const Rational m(static_cast<unsigned long>(window));
  return grid[p + 1][q + 1] - m * ab.beta * grid[p][q + 1] - (ab.alpha - ab.beta) * grid[p + 1][q] +
         ab.beta * (m - 2 * ab.alpha) * grid[p][q];
}

PolyPQ pq_polynomials(std::size_t window) {
  require_window_at_least_two(window);
  const AlphaBeta ab(window);
  const Rational m(static_cast<unsigned long>(window));
  const Rational slope = ab.alpha - ab.beta;

  PolyPQ out{window, std::vector<Rational>(window + 2, Rational(0)), {}};
  for (std::size_t k = 0; k <= window + 1; ++k) {
    Rational c = Rational(binomial(window, k));
    if (k >= 1) c -= slope * Rational(binomial(window, k - 1));
    out.p[k] = c;
  }
  out.p[0] -= 1;
  out.p[1] -= m + ab.beta - ab.alpha;
  out.p[2] += m - 2 * ab.alpha;

  if (out.p[0] != 0 || out.p[1] != 0) throw std::logic_error("P has nonzero low-order terms");
  Rational partial = 0;
  for (std::size_t k = 0; k <= window; ++k) {
    partial += out.p[k];
    out.q.push_back(partial);
  }
  if (partial + out.p[window + 1] != 0) throw std::logic_error("P(1) != 0");
  return out;
}

Rational q_coefficient_closed_form(std::size_t window, std::size_t l) {
  Integer tail = 0;
  for (std::size_t k = l; k <= window; ++k) tail += binomial(window, k);
  return Rational(binomial(window, l)) - 2 * AlphaBeta(window).beta * Rational(tail);
}

bool sigma_generating_identity(std::size_t window, std::size_t p, std::size_t order) {
  const AlphaBeta ab(window);
  std::vector<Rational> left(order + 1);
  Rational prev = 0;
  for (std::size_t m = 0; m <= order; ++m) {
    Rational s = sigma_closed_form(window, p, m + 1);
    left[m] = s - prev;
    prev = s;
  }

  std::vector<Rational> g(window + 1);
  for (std::size_t k = 1; k <= window; ++k) g[k] = Rational(binomial(window, k));
  g[0] = 0;
  std::vector<Rational> power{Rational(1)};
  for (std::size_t i = 0; i < p; ++i) power = poly_mul(power, g);

  const Rational scale = pow(ab.beta, static_cast<unsigned>(p));
  for (std::size_t m = 0; m <= order; ++m) {
    Rational right = m + p < power.size() ? scale * power[m + p] : Rational(0);
    if (left[m] != right) return false;
  }
  return true;
}

bool SuffixBoundReport::ok() const {
  for (const auto& r : rows) {
    if (!r.equality_21 || !r.inequality_22 || !r.below_v) return false;
  }
  return true;
}

SuffixBoundReport verify_suffix_bounds_m2(const BinaryWord& word, std::size_t max_length) {
  if (word.size() > max_length) throw BudgetExceeded("word too long for suffix-bound verification");
  constexpr std::size_t kWindow = 2;
  const Rational half(1, 2), quarter(1, 4);
  const VnTable vn = vn_pair_recursion(kWindow, word.size());

  SuffixBoundReport report{word, {}};
  Rational prev_total = 1, prev_start2 = 0;  // the empty suffix
  for (std::size_t m = 1; m <= word.size(); ++m) {
    const BinaryWord suffix = word.suffix(m);
    SuffixBoundRow row;
    row.m = m;
    row.total = exact_seen_probability(suffix, kWindow, half);
    row.start1 = exact_seen_probability(suffix, kWindow, half, {.first_gap_limit = 1});
    row.start2 = row.total - row.start1;
    row.v = vn.v[m];
    row.equality_21 = row.start1 == half * prev_total;
    const Rational bound = quarter * prev_start2 + quarter * prev_total;
    row.inequality_22 = row.start2 <= bound;
    row.strict_22 = row.start2 < bound;
    row.below_v = row.total <= row.v;
    prev_total = row.total;
    prev_start2 = row.start2;
    report.rows.push_back(std::move(row));
  }
  return report;
}

}  // namespace wordperc
