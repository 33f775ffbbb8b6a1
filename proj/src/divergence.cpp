#include "tmspace/divergence.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <tuple>
#include <unordered_set>

namespace tmspace {

std::optional<LeftEscapeCertificate> detect_left_escape(const Configuration& config,
                                                        const MachineRule& rule) {
  for (std::size_t i = config.head; i < config.tape.size(); ++i) {
    if (config.tape[i] != kWhite) return std::nullopt;
  }
  std::vector<bool> seen(rule.space().states, false);
  LeftEscapeCertificate cert{config.steps, config.head, {}};
  State q = config.state;
  while (!seen[q]) {
    seen[q] = true;
    cert.states.push_back(q);
    const Transition& t = rule.at(q, kWhite);
    if (t.move != Direction::kLeft) return std::nullopt;
    q = t.next;
  }
  return cert;
}

namespace {

std::optional<std::uint64_t> edge_closure_size(const Configuration& config, const MachineRule& rule,
                                               std::uint32_t segment, std::size_t max_nodes) {
  const SpaceId& space = rule.space();
  std::vector<State> reentry;
  for (State p = 0; p < space.states; ++p) {
    for (Color c = 0; c < space.colors; ++c) {
      const Transition& t = rule.at(p, c);
      if (t.move == Direction::kRight &&
          std::find(reentry.begin(), reentry.end(), t.next) == reentry.end()) {
        reentry.push_back(t.next);
      }
    }
  }

  struct Abstract {
    std::vector<Color> cells;
    std::uint32_t head;  // == segment means outside
    State state;
    auto operator<=>(const Abstract&) const = default;
  };
  Abstract start{std::vector<Color>(segment, kWhite),
                 static_cast<std::uint32_t>(std::min<std::uint64_t>(config.head, segment)), config.state};
  for (std::uint32_t i = 0; i < segment && i < config.tape.size(); ++i) start.cells[i] = config.tape[i];

  std::set<Abstract> seen{start};
  std::vector<Abstract> todo{start};
  while (!todo.empty()) {
    const Abstract a = std::move(todo.back());
    todo.pop_back();
    std::vector<Abstract> next;
    if (a.head == segment) {
      for (State q : reentry) next.push_back({a.cells, segment - 1, q});
    } else {
      const Transition& t = rule.at(a.state, a.cells[a.head]);
      Abstract b = a;
      b.cells[a.head] = t.write;
      b.state = t.next;
      if (t.move == Direction::kRight) {
        if (a.head == 0) return std::nullopt;  // may halt
        b.head = a.head - 1;
      } else {
        b.head = a.head + 1;
      }
      next.push_back(std::move(b));
    }
    for (auto& b : next) {
      if (seen.insert(b).second) {
        if (seen.size() > max_nodes) return std::nullopt;
        todo.push_back(std::move(b));
      }
    }
  }
  return seen.size();
}

// Windows list cells nearest the head first and are packed base `symbols`,
// digit i holding the i-th nearest cell. Symbol `colors` is the edge. Nodes
// and segments also carry the cell index modulo `modulus` of the head or of
// the segment's nearest cell.
class NgramClosure {
 public:
  NgramClosure(const MachineRule& rule, std::uint32_t radius, std::uint32_t modulus)
      : rule_(rule), radius_(radius), modulus_(modulus), symbols_(rule.space().colors + 1),
        edge_(rule.space().colors) {
    for (std::uint32_t i = 1; i < radius; ++i) top_ *= symbols_;
    span_ = top_ * symbols_;
    left_grams_.assign(span_ * modulus_, false);
    right_grams_.assign(span_ * modulus_, false);
  }

  // Cells below `floor` are treated as edge, so a closure also shows the head
  // never reaches them.
  std::optional<std::uint64_t> close(const Configuration& config, std::uint64_t floor, std::size_t max_nodes) {
    const std::uint64_t head = config.head;
    if (floor > head) return std::nullopt;
    auto left_cell = [&](std::uint64_t i) {  // i-th cell left of the head, 0-based
      const std::uint64_t at = head + 1 + i;
      return at < config.tape.size() ? config.tape[at] : kWhite;
    };
    auto right_cell = [&](std::uint64_t i) {  // i-th cell right of the head
      return i < head - floor ? config.tape[head - 1 - i] : edge_;
    };
    const std::uint64_t left_end = config.tape.size() > head ? config.tape.size() - head : 0;
    for (std::uint64_t start = 1; start <= left_end + modulus_; ++start) {
      left_grams_[gram(pack(left_cell, start), residue(head + 1 + start))] = true;
    }
    for (std::uint64_t start = 1; start <= head - floor + modulus_; ++start) {
      right_grams_[gram(pack(right_cell, start), residue(head - 1 - start))] = true;
    }
    add(key(config.state, config.tape[head], residue(head), pack(left_cell, 0), pack(right_cell, 0)));

    bool grew = true;
    while (grew) {
      grew = false;
      for (std::size_t i = 0; i < nodes_.size(); ++i) {
        const std::size_t before = nodes_.size();
        const std::size_t grams_before = gram_count_;
        if (!expand(nodes_[i])) return std::nullopt;
        if (nodes_.size() > max_nodes) return std::nullopt;
        if (nodes_.size() != before || gram_count_ != grams_before) grew = true;
      }
    }
    return nodes_.size() + gram_count_;
  }

 private:
  template <typename Cell>
  std::uint64_t pack(Cell cell, std::uint64_t start) const {
    std::uint64_t code = 0;
    for (std::uint32_t i = radius_; i-- > 0;) code = code * symbols_ + cell(start + i);
    return code;
  }

  // Cell indices right of the edge are negative.
  std::uint64_t residue(std::int64_t index) const {
    const std::int64_t m = modulus_;
    return static_cast<std::uint64_t>(((index % m) + m) % m);
  }
  std::uint64_t residue(std::uint64_t index) const { return residue(static_cast<std::int64_t>(index)); }

  std::uint64_t gram(std::uint64_t window, std::uint64_t at) const { return at * span_ + window; }

  std::uint64_t key(State q, Color read, std::uint64_t at, std::uint64_t left, std::uint64_t right) const {
    return (((std::uint64_t{q} * symbols_ + read) * modulus_ + at) * span_ + left) * span_ + right;
  }

  void add(std::uint64_t k) {
    if (seen_.insert(k).second) nodes_.push_back(k);
  }

  void record(std::vector<bool>& grams, std::uint64_t g) {
    if (!grams[g]) {
      grams[g] = true;
      ++gram_count_;
    }
  }

  // False when the node can take a right move at cell 0.
  bool expand(std::uint64_t k) {
    const std::uint64_t right = k % span_;
    k /= span_;
    const std::uint64_t left = k % span_;
    k /= span_;
    const std::uint64_t at = k % modulus_;
    k /= modulus_;
    const auto read = static_cast<Color>(k % symbols_);
    const auto q = static_cast<State>(k / symbols_);

    const Transition& t = rule_.at(q, read);
    const bool rightward = t.move == Direction::kRight;
    const std::uint64_t toward = rightward ? right : left;
    const std::uint64_t away = rightward ? left : right;
    const auto next_read = static_cast<Color>(toward % symbols_);
    if (next_read == edge_) return false;

    // Residues, moving right lowers the index.
    const std::uint64_t step = rightward ? modulus_ - 1 : 1;
    const std::uint64_t next_at = (at + step) % modulus_;
    const std::uint64_t away_at = (at + modulus_ - step) % modulus_;
    const std::uint64_t beyond_at = (next_at + step) % modulus_;

    auto& away_grams = rightward ? left_grams_ : right_grams_;
    const auto& toward_grams = rightward ? right_grams_ : left_grams_;
    record(away_grams, gram(away, away_at));
    const std::uint64_t pushed = (away * symbols_ + t.write) % span_;
    const std::uint64_t rest = toward / symbols_;
    for (std::uint64_t x = 0; x < symbols_; ++x) {
      const std::uint64_t pulled = rest + x * top_;
      if (!toward_grams[gram(pulled, beyond_at)]) continue;
      add(rightward ? key(t.next, next_read, next_at, pushed, pulled)
                    : key(t.next, next_read, next_at, pulled, pushed));
    }
    return true;
  }

  const MachineRule& rule_;
  std::uint32_t radius_;
  std::uint32_t modulus_;
  std::uint64_t symbols_;
  Color edge_;
  std::uint64_t top_ = 1;
  std::uint64_t span_ = 1;
  std::vector<bool> left_grams_;
  std::vector<bool> right_grams_;
  std::uint64_t gram_count_ = 0;
  std::unordered_set<std::uint64_t> seen_;
  std::vector<std::uint64_t> nodes_;
};

std::optional<std::uint64_t> ngram_closure_size(const Configuration& config, const MachineRule& rule,
                                                std::uint32_t radius, std::uint32_t modulus,
                                                std::uint64_t floor, std::size_t max_nodes) {
  return NgramClosure(rule, radius, modulus).close(config, floor, max_nodes);
}

}  // namespace

std::optional<NgramClosureCertificate> detect_ngram_closure(const Configuration& config,
                                                            const MachineRule& rule,
                                                            std::uint32_t max_radius,
                                                            std::uint32_t max_modulus,
                                                            std::size_t max_nodes) {
  // Candidate floors: the edge, then the two non-white cells nearest to it
  // that lie right of the head.
  std::vector<std::uint64_t> floors{0};
  for (std::uint64_t i = 1; i < config.head && floors.size() < 3; ++i) {
    if (config.tape[i] != kWhite) floors.push_back(i);
  }
  for (std::uint64_t floor : floors) {
    for (std::uint32_t radius = 1; radius <= max_radius; ++radius) {
      for (std::uint32_t modulus = 1; modulus <= max_modulus; ++modulus) {
        if (auto size = ngram_closure_size(config, rule, radius, modulus, floor, max_nodes)) {
          return NgramClosureCertificate{config.steps, radius, modulus, floor, *size};
        }
      }
    }
  }
  return std::nullopt;
}

std::optional<EdgeClosureCertificate> detect_edge_closure(const Configuration& config,
                                                          const MachineRule& rule,
                                                          std::uint32_t max_segment,
                                                          std::size_t max_nodes) {
  for (std::uint32_t segment = 1; segment <= max_segment; ++segment) {
    if (auto size = edge_closure_size(config, rule, segment, max_nodes)) {
      return EdgeClosureCertificate{config.steps, segment, *size};
    }
  }
  return std::nullopt;
}

ConfigurationDigest digest(const Configuration& config) {
  std::size_t top = config.tape.size();
  while (top > config.head + 1 && config.tape[top - 1] == kWhite) --top;
  return {{config.tape.begin(), config.tape.begin() + static_cast<std::ptrdiff_t>(top)},
          config.head, config.state, config.steps};
}

std::optional<CycleCertificate> detect_cycle(std::span<const ConfigurationDigest> history) {
  // Keyed by value; the map only narrows candidates, equality is exact.
  std::map<std::tuple<std::uint64_t, State, std::vector<Color>>, std::uint64_t> first_seen;
  for (const auto& d : history) {
    auto [it, inserted] = first_seen.try_emplace({d.head, d.state, d.cells}, d.step);
    if (!inserted) return CycleCertificate{it->second, d.step, 0, 0};
  }
  return std::nullopt;
}

namespace {

// Runs from `config` until `target` steps. False if the machine halts first.
bool advance_to(Configuration& config, const MachineRule& rule, std::uint64_t target,
                std::uint64_t* min_head = nullptr) {
  while (config.steps < target) {
    if (apply_step(config, rule)) return false;
    if (min_head) *min_head = std::min(*min_head, config.head);
  }
  return true;
}

bool all_white_from(const Configuration& config, std::uint64_t from) {
  for (std::size_t i = from; i < config.tape.size(); ++i) {
    if (config.tape[i] != kWhite) return false;
  }
  return true;
}

Color cell(const Configuration& config, std::uint64_t i) {
  return i < config.tape.size() ? config.tape[i] : kWhite;
}

bool verify_escape(const MachineRule& rule, Configuration config, const LeftEscapeCertificate& cert) {
  if (cert.states.empty() || !advance_to(config, rule, cert.step)) return false;
  if (config.head != cert.head || config.state != cert.states.front()) return false;
  if (!all_white_from(config, config.head)) return false;
  // The white-reading successor of every listed state is listed and moves left.
  for (State q : cert.states) {
    const Transition& t = rule.at(q, kWhite);
    if (t.move != Direction::kLeft) return false;
    if (std::find(cert.states.begin(), cert.states.end(), t.next) == cert.states.end()) return false;
  }
  return true;
}

bool verify_edge_closure(const MachineRule& rule, Configuration config,
                         const EdgeClosureCertificate& cert) {
  if (cert.segment == 0 || !advance_to(config, rule, cert.step)) return false;
  auto size = edge_closure_size(config, rule, cert.segment, std::size_t(-1));
  return size && *size == cert.closure_size;
}

bool verify_ngram_closure(const MachineRule& rule, Configuration config,
                          const NgramClosureCertificate& cert) {
  if (cert.radius == 0 || cert.modulus == 0 || !advance_to(config, rule, cert.step)) return false;
  auto size = ngram_closure_size(config, rule, cert.radius, cert.modulus, cert.floor, std::size_t(-1));
  return size && *size == cert.closure_size;
}

bool verify_cycle(const MachineRule& rule, Configuration config, const CycleCertificate& cert) {
  if (cert.second_step <= cert.first_step || !advance_to(config, rule, cert.first_step)) return false;
  const Configuration first = config;
  std::uint64_t min_head = config.head;
  if (!advance_to(config, rule, cert.second_step, &min_head)) return false;
  if (cert.shift == 0) return digest(first).same_configuration(digest(config));

  if (config.state != first.state || config.head != first.head + cert.shift) return false;
  if (!all_white_from(first, first.head) || !all_white_from(config, config.head)) return false;
  if (min_head < cert.window_start || cert.window_start > first.head) return false;
  for (std::uint64_t i = cert.window_start; i <= first.head; ++i) {
    if (cell(first, i) != cell(config, i + cert.shift)) return false;
  }
  return true;
}

}  // namespace

bool verify_certificate(const MachineRule& rule, const Configuration& start,
                        const DivergenceCertificate& certificate) {
  return std::visit(
      [&](const auto& cert) {
        using T = std::decay_t<decltype(cert)>;
        if constexpr (std::is_same_v<T, LeftEscapeCertificate>) {
          return verify_escape(rule, start, cert);
        } else if constexpr (std::is_same_v<T, EdgeClosureCertificate>) {
          return verify_edge_closure(rule, start, cert);
        } else if constexpr (std::is_same_v<T, NgramClosureCertificate>) {
          return verify_ngram_closure(rule, start, cert);
        } else {
          return verify_cycle(rule, start, cert);
        }
      },
      certificate);
}

}  // namespace tmspace
