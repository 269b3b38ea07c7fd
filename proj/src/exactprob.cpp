#include "wordperc/exactprob.hpp"

#include <algorithm>
#include <ostream>
#include <string>
#include <unordered_map>

namespace wordperc {
namespace {

std::string key_of(const SubsetState& s) { return std::string(s.ages.begin(), s.ages.end()); }

class Determinizer {
 public:
  Determinizer(const BinaryWord& word, std::size_t window, std::size_t first_limit)
      : word_(word), window_(window), first_limit_(first_limit) {}

  // Returns the successor as an optional-like pair: {absorbing id or npos, state}.
  std::pair<std::size_t, SubsetState> step(const SubsetState& from, Bit letter) const {
    const std::size_t n = word_.size();
    if (from.ages[n - 1] != 0 && word_.at(n) == letter) return {ProbAutomaton::kAccept, {}};

    SubsetState to;
    to.ages.assign(n, 0);
    bool live = false;
    for (std::size_t k = 0; k < n; ++k) {
      const std::size_t limit = k == 0 ? first_limit_ : window_;
      if (k >= 1 && from.ages[k - 1] != 0 && word_.at(k) == letter) {
        to.ages[k] = 1;
      } else if (from.ages[k] != 0 && from.ages[k] < limit) {
        // stored value a means age a - 1; it ages to a, still extendable iff a + 1 <= limit
        to.ages[k] = static_cast<std::uint8_t>(from.ages[k] + 1);
      }
      live = live || to.ages[k] != 0;
    }
    if (!live) return {ProbAutomaton::kDead, {}};
    return {static_cast<std::size_t>(-1), std::move(to)};
  }

 private:
  const BinaryWord& word_;
  std::size_t window_;
  std::size_t first_limit_;
};

}  // namespace

std::vector<std::pair<std::size_t, std::size_t>> SubsetState::members() const {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t k = 0; k < ages.size(); ++k) {
    if (ages[k] != 0) out.emplace_back(k, ages[k] - 1u);
  }
  return out;
}

ProbAutomaton build_automaton(const BinaryWord& word, std::size_t window,
                              const AutomatonOptions& options) {
  if (window == 0) throw std::invalid_argument("window M must be at least 1");
  if (window > 250) throw std::invalid_argument("window too large for automaton state encoding");
  const std::size_t first_limit = options.first_gap_limit == 0 ? window : options.first_gap_limit;
  if (first_limit > window) throw std::invalid_argument("first gap limit exceeds the window");

  ProbAutomaton a;
  a.word_ = word;
  a.window_ = window;
  a.states_.resize(2);  // DEAD, ACCEPT
  a.transitions_.push_back({ProbAutomaton::kDead, ProbAutomaton::kDead});
  a.transitions_.push_back({ProbAutomaton::kAccept, ProbAutomaton::kAccept});
  if (word.empty()) {
    a.initial_ = ProbAutomaton::kAccept;
    return a;
  }

  Determinizer det(word, window, first_limit);
  std::unordered_map<std::string, std::size_t> index;
  SubsetState start;
  start.ages.assign(word.size(), 0);
  start.ages[0] = 1;
  index.emplace(key_of(start), 2);
  a.states_.push_back(start);
  a.transitions_.push_back({0, 0});
  a.initial_ = 2;

  for (std::size_t id = 2; id < a.states_.size(); ++id) {
    for (Bit letter : {Bit{0}, Bit{1}}) {
      auto [absorbing, next] = det.step(a.states_[id], letter);
      std::size_t target = absorbing;
      if (absorbing == static_cast<std::size_t>(-1)) {
        auto [it, inserted] = index.emplace(key_of(next), a.states_.size());
        if (inserted) {
          if (a.states_.size() >= options.state_cap) {
            throw StateLimitExceeded("automaton for word " + word.to_string() + " exceeds " +
                                     std::to_string(options.state_cap) + " states");
          }
          a.states_.push_back(std::move(next));
          a.transitions_.push_back({0, 0});
        }
        target = it->second;
      }
      a.transitions_[id][letter] = target;
    }
  }
  return a;
}

// Along every transition the least live word index either grows or keeps its
// entry with a strictly larger age, so apart from the two absorbing states the
// automaton is acyclic and absorption probabilities follow by memoized descent.
template <class T>
T ProbAutomaton::absorb(const T& p) const {
  const T q = T(1) - p;
  std::vector<T> value(states_.size(), T(0));
  std::vector<char> done(states_.size(), 0);
  value[kAccept] = T(1);
  done[kDead] = done[kAccept] = 1;

  std::vector<std::size_t> stack{initial_};
  while (!stack.empty()) {
    const std::size_t id = stack.back();
    if (done[id]) {
      stack.pop_back();
      continue;
    }
    const auto [on0, on1] = transitions_[id];
    if (!done[on0]) {
      stack.push_back(on0);
    } else if (!done[on1]) {
      stack.push_back(on1);
    } else {
      value[id] = p * value[on1] + q * value[on0];
      done[id] = 1;
      stack.pop_back();
    }
  }
  return value[initial_];
}

Rational ProbAutomaton::accept_probability(const Rational& p) const {
  if (p <= 0 || p >= 1) throw std::invalid_argument("letter probability must lie in (0,1)");
  return absorb<Rational>(p);
}

double ProbAutomaton::accept_probability(double p) const {
  if (!(p > 0.0 && p < 1.0)) throw std::invalid_argument("letter probability must lie in (0,1)");
  return absorb<double>(p);
}

void ProbAutomaton::dump(std::ostream& out) const {
  for (std::size_t id = 0; id < states_.size(); ++id) {
    out << id << " | ";
    if (id == kDead) {
      out << "DEAD";
    } else if (id == kAccept) {
      out << "ACCEPT";
    } else {
      out << '{';
      bool first = true;
      for (auto [k, d] : states_[id].members()) {
        out << (first ? "" : ",") << '(' << k << ',' << d << ')';
        first = false;
      }
      out << '}';
    }
    out << " | on0->" << transitions_[id][0] << " | on1->" << transitions_[id][1];
    if (id == initial_) out << " | initial";
    out << '\n';
  }
}

Rational exact_seen_probability(const BinaryWord& word, std::size_t window, const Rational& p,
                                const AutomatonOptions& options) {
  return build_automaton(word, window, options).accept_probability(p);
}

double approx_seen_probability(const BinaryWord& word, std::size_t window, double p,
                               const AutomatonOptions& options) {
  return build_automaton(word, window, options).accept_probability(p);
}

Rational exhaustive_seen_probability(const BinaryWord& word, std::size_t window,
                                     std::size_t max_bits) {
  if (window == 0) throw std::invalid_argument("window M must be at least 1");
  const std::size_t bits = event_horizon(word.size(), window);
  if (bits > max_bits || bits >= 63) {
    throw BudgetExceeded("exhaustive enumeration over 2^" + std::to_string(bits) +
                         " prefixes exceeds the bound 2^" + std::to_string(max_bits));
  }
  const std::uint64_t total = std::uint64_t{1} << bits;
  std::uint64_t seen = 0;
  std::vector<Bit> y(bits);
  for (std::uint64_t mask = 0; mask < total; ++mask) {
    for (std::size_t i = 0; i < bits; ++i) y[i] = static_cast<Bit>((mask >> i) & 1u);
    if (is_m_seen(word, SequencePrefix(y), window)) ++seen;
  }
  Rational out(Integer(static_cast<unsigned long>(seen)), Integer(static_cast<unsigned long>(total)));
  out.canonicalize();
  return out;
}

WordExtremes max_word_probability(std::size_t n, std::size_t window, std::size_t max_length) {
  if (n > max_length || n >= 63) {
    throw BudgetExceeded("enumerating 2^" + std::to_string(n) + " words exceeds the budget 2^" +
                         std::to_string(max_length));
  }
  const Rational half(1, 2);
  WordExtremes out;
  const std::uint64_t total = std::uint64_t{1} << n;
  for (std::uint64_t mask = 0; mask < total; ++mask) {
    std::vector<Bit> bits(n);
    for (std::size_t i = 0; i < n; ++i) bits[i] = static_cast<Bit>((mask >> (n - 1 - i)) & 1u);
    BinaryWord w(std::move(bits));
    Rational prob = exact_seen_probability(w, window, half);
    if (mask == 0 || prob > out.max) {
      out.max = prob;
      out.maximizers.clear();
    }
    if (prob == out.max) out.maximizers.push_back(w);
    if (mask == 0 || prob < out.min) {
      out.min = prob;
      out.minimizers.clear();
    }
    if (prob == out.min) out.minimizers.push_back(w);
  }
  return out;
}

}  // namespace wordperc
