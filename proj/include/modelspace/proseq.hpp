#pragma once

// Inverse sequences: multiplication sequences Z <-xk1- Z <-xk2- ... with
// eventually periodic labels, sequences of free abelian groups with integer
// matrix bonds, and commuting ladder diagrams between sequences.

#include "intmat.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

namespace modelspace {

/// Labels k_1, k_2, ... : prefix followed by the cycle repeated forever.
struct MultSequence {
  std::vector<BigInt> prefix;
  std::vector<BigInt> cycle;

  friend bool operator==(const MultSequence&, const MultSequence&) = default;

  void check() const {
    if (cycle.empty()) throw DomainError("sequence cycle must be nonempty");
    for (const auto& v : prefix)
      if (v < 0) throw DomainError("sequence labels must be nonnegative");
    for (const auto& v : cycle)
      if (v < 0) throw DomainError("sequence labels must be nonnegative");
  }

  // k_i, 1-based.
  const BigInt& label(std::size_t i) const {
    if (i == 0) throw DomainError("bond indices start at 1");
    if (i <= prefix.size()) return prefix[i - 1];
    return cycle[(i - 1 - prefix.size()) % cycle.size()];
  }
};

inline std::string render_sequence(const MultSequence& s) {
  auto join = [](const std::vector<BigInt>& v) {
    std::string out;
    for (std::size_t k = 0; k < v.size(); ++k) out += (k ? "," : "") + v[k].str();
    return out;
  };
  std::string out;
  if (!s.prefix.empty()) out += "prefix:" + join(s.prefix) + ";";
  return out + "cycle:" + join(s.cycle);
}

/// Parses "prefix:3,0;cycle:2,1" (prefix section optional).
inline MultSequence parse_sequence(std::string_view text) {
  MultSequence s;
  bool have_cycle = false, have_prefix = false;
  auto parse_list = [](std::string_view body) {
    std::vector<BigInt> out;
    if (body.empty()) return out;
    std::size_t pos = 0;
    while (pos <= body.size()) {
      auto comma = body.find(',', pos);
      if (comma == std::string_view::npos) comma = body.size();
      auto item = body.substr(pos, comma - pos);
      if (item.empty() || !std::all_of(item.begin(), item.end(), [](char c) { return c >= '0' && c <= '9'; }))
        throw ParseError(0, "bad sequence label '" + std::string(item) + "'");
      out.emplace_back(std::string(item));
      pos = comma + 1;
    }
    return out;
  };
  std::size_t pos = 0;
  while (pos < text.size()) {
    auto semi = text.find(';', pos);
    if (semi == std::string_view::npos) semi = text.size();
    auto part = text.substr(pos, semi - pos);
    pos = semi + 1;
    if (part.empty()) continue;
    auto colon = part.find(':');
    if (colon == std::string_view::npos) throw ParseError(0, "sequence section without ':'");
    auto key = part.substr(0, colon);
    auto body = part.substr(colon + 1);
    if (key == "prefix" && !have_prefix) {
      s.prefix = parse_list(body);
      have_prefix = true;
    } else if (key == "cycle" && !have_cycle) {
      s.cycle = parse_list(body);
      have_cycle = true;
    } else {
      throw ParseError(0, "unexpected sequence section '" + std::string(key) + "'");
    }
  }
  if (!have_cycle || s.cycle.empty()) throw ParseError(0, "sequence needs a nonempty cycle section");
  return s;
}

/// lambda_{i,j}: k_i * ... * k_j.
inline BigInt bond_compose(const MultSequence& s, std::size_t i, std::size_t j) {
  if (i == 0) throw DomainError("bond indices start at 1");
  if (i > j) throw DomainError("bond_compose requires i <= j");
  BigInt p = 1;
  for (std::size_t t = i; t <= j; ++t) {
    p *= s.label(t);
    if (p == 0) break;
  }
  return p;
}

/// Subsequence obtained by composing consecutive blocks of m bonds.
inline MultSequence block_compose(const MultSequence& s, std::size_t m) {
  if (m == 0) throw DomainError("block size must be positive");
  s.check();
  const std::size_t P = s.prefix.size(), C = s.cycle.size();
  const std::size_t head = (P + m - 1) / m;  // blocks not starting in the periodic part
  const std::size_t period = C / std::gcd(C, m);
  MultSequence out;
  for (std::size_t t = 0; t < head + period; ++t) {
    auto block = bond_compose(s, t * m + 1, (t + 1) * m);
    (t < head ? out.prefix : out.cycle).push_back(std::move(block));
  }
  return out;
}

struct SequenceClass {
  bool pro_trivial = false;
  bool semistable = false;
  bool pro_mono = false;
  bool stable = false;
  friend bool operator==(const SequenceClass&, const SequenceClass&) = default;
};

namespace detail {
inline bool any_zero(const std::vector<BigInt>& v) {
  return std::any_of(v.begin(), v.end(), [](const BigInt& x) { return x == 0; });
}
inline bool all_one(const std::vector<BigInt>& v) {
  return std::all_of(v.begin(), v.end(), [](const BigInt& x) { return x == 1; });
}
}  // namespace detail

/// Pro-trivial iff infinitely many zero bonds; semistable iff pro-trivial or
/// the labels are eventually all 1; pro-monomorphic whenever the zeros are
/// finite in number or infinite (the zero-free tail has injective bonds).
inline SequenceClass classify_mult(const MultSequence& s) {
  s.check();
  SequenceClass c;
  c.pro_trivial = detail::any_zero(s.cycle);
  c.semistable = c.pro_trivial || detail::all_one(s.cycle);
  c.pro_mono = true;
  c.stable = c.semistable && c.pro_mono;
  return c;
}

enum class InverseLimit { Zero, Z };

inline const char* to_string(InverseLimit l) { return l == InverseLimit::Z ? "Z" : "0"; }

inline InverseLimit inverse_limit_mult(const MultSequence& s) {
  s.check();
  return detail::all_one(s.cycle) ? InverseLimit::Z : InverseLimit::Zero;
}

// ---------------------------------------------------------------------------
// Ladder diagrams between sequences whose groups are each Z or 0.

struct LadderTerm {
  bool zero_group = false;  // G_i = 0
  BigInt bond = 0;          // lambda_i : G_i -> G_{i-1}
  friend bool operator==(const LadderTerm&, const LadderTerm&) = default;
};

/// G_0, G_1, ... with G_i in {0, Z}; terms describe (G_i, lambda_i) for i >= 1.
struct RankedSequence {
  bool zero_base = false;
  std::vector<LadderTerm> prefix;
  std::vector<LadderTerm> cycle;

  static RankedSequence of(const MultSequence& s) {
    s.check();
    RankedSequence r;
    for (const auto& k : s.prefix) r.prefix.push_back({false, k});
    for (const auto& k : s.cycle) r.cycle.push_back({false, k});
    return r;
  }

  // 0 <- 0 <- 0 <- ...
  static RankedSequence trivial() {
    RankedSequence r;
    r.zero_base = true;
    r.cycle.push_back({true, 0});
    return r;
  }

  const LadderTerm& term(std::size_t i) const {
    if (i <= prefix.size()) return prefix[i - 1];
    return cycle[(i - 1 - prefix.size()) % cycle.size()];
  }
  bool zero(std::size_t i) const { return i == 0 ? zero_base : term(i).zero_group; }

  // lambda_{i+1..j} as an integer (1 when i == j); 0 if any group on the way is 0.
  BigInt compose(std::size_t i, std::size_t j) const {
    BigInt p = 1;
    for (std::size_t t = i + 1; t <= j; ++t) {
      if (zero(t) || zero(t - 1)) return 0;
      p *= term(t).bond;
      if (p == 0) return 0;
    }
    return p;
  }

  std::size_t period_span() const { return prefix.size() + cycle.size(); }
};

/// Candidate epimorphic normal form of s: the sequence of stable images.
/// For semistable s this is pro-isomorphic to s (ladder_search finds the
/// certificate); otherwise it is the closest epimorphic sequence of the same
/// shape and no ladder exists.
inline RankedSequence epi_normal_form(const MultSequence& s) {
  if (classify_mult(s).pro_trivial) return RankedSequence::trivial();
  std::size_t last_zero = 0;
  for (std::size_t t = 0; t < s.prefix.size(); ++t)
    if (s.prefix[t] == 0) last_zero = t + 1;
  RankedSequence r;
  r.zero_base = last_zero > 0;
  for (std::size_t i = 1; i <= s.prefix.size(); ++i) {
    if (i < last_zero) r.prefix.push_back({true, 0});
    else if (i == last_zero) r.prefix.push_back({false, 0});
    else r.prefix.push_back({false, 1});
  }
  r.cycle.push_back({false, 1});
  return r;
}

/// i_0 < ... < i_D on the top sequence, j_0 < ... < j_{D-1} on the bottom,
/// up_m : H_{j_m} -> G_{i_m}, down_m : G_{i_{m+1}} -> H_{j_m}.
struct LadderCertificate {
  std::vector<std::size_t> top;
  std::vector<std::size_t> bottom;
  std::vector<BigInt> up;
  std::vector<BigInt> down;
  std::size_t depth() const { return bottom.size(); }
};

namespace detail {

inline bool ladder_upper_ok(const RankedSequence& a, const LadderCertificate& L, std::size_t m) {
  // G_{i_{m+1}} -> H_{j_m} -> G_{i_m} equals lambda_{i_m+1, i_{m+1}}
  const auto i0 = L.top[m], i1 = L.top[m + 1];
  if (a.zero(i0) || a.zero(i1)) return true;
  return L.up[m] * L.down[m] == a.compose(i0, i1);
}

inline bool ladder_lower_ok(const RankedSequence& b, const LadderCertificate& L, std::size_t m) {
  // H_{j_{m+1}} -> G_{i_{m+1}} -> H_{j_m} equals mu_{j_m+1, j_{m+1}}
  const auto j0 = L.bottom[m], j1 = L.bottom[m + 1];
  if (b.zero(j0) || b.zero(j1)) return true;
  return L.down[m] * L.up[m + 1] == b.compose(j0, j1);
}

inline std::vector<BigInt> coefficient_order(long bound) {
  std::vector<BigInt> out{0};
  for (long c = 1; c <= bound; ++c) {
    out.emplace_back(c);
    out.emplace_back(-c);
  }
  return out;
}

}  // namespace detail

/// True iff every triangle in the window commutes and maps touching a zero
/// group are zero.
inline bool verify_ladder(const RankedSequence& a, const RankedSequence& b, const LadderCertificate& L) {
  const auto D = L.depth();
  if (D == 0 || L.top.size() != D + 1 || L.up.size() != D || L.down.size() != D)
    throw DomainError("verify_ladder: inconsistent certificate dimensions");
  for (std::size_t k = 1; k < L.top.size(); ++k)
    if (L.top[k] <= L.top[k - 1]) throw DomainError("verify_ladder: top indices not increasing");
  for (std::size_t k = 1; k < L.bottom.size(); ++k)
    if (L.bottom[k] <= L.bottom[k - 1]) throw DomainError("verify_ladder: bottom indices not increasing");
  for (std::size_t m = 0; m < D; ++m) {
    if ((a.zero(L.top[m]) || b.zero(L.bottom[m])) && L.up[m] != 0) return false;
    if ((a.zero(L.top[m + 1]) || b.zero(L.bottom[m])) && L.down[m] != 0) return false;
  }
  for (std::size_t m = 0; m < D; ++m)
    if (!detail::ladder_upper_ok(a, L, m)) return false;
  for (std::size_t m = 0; m + 1 < D; ++m)
    if (!detail::ladder_lower_ok(b, L, m)) return false;
  return true;
}

inline bool verify_ladder(const RankedSequence& a, const RankedSequence& b,
                          const std::optional<LadderCertificate>& L) {
  return L && verify_ladder(a, b, *L);
}

/// Exhaustive depth-first search in lexicographic order over index
/// selections (hops of up to a few periods of either sequence) and integer maps
/// with |coefficient| <= bound. Returns the first certificate found.
///
/// The first and last rungs of a finite window are only half constrained, so
/// the window starts past both prefixes and has at least 2 + (longer cycle)
/// rungs: the fully constrained middle then covers a whole period.
inline std::optional<LadderCertificate> ladder_search(const RankedSequence& a, const RankedSequence& b,
                                                      std::size_t depth = 4, long bound = 8) {
  if (depth < 2) throw DomainError("ladder_search requires depth >= 2");
  depth = std::max(depth, 2 + std::max(a.cycle.size(), b.cycle.size()));
  const std::size_t span = std::max(a.period_span(), b.period_span());
  const std::size_t hop = a.cycle.size() + b.cycle.size() + 1;
  const std::size_t limit_a = a.prefix.size() + (depth + 1) * hop + span;
  const std::size_t limit_b = b.prefix.size() + (depth + 1) * hop + span;
  const auto coeffs = detail::coefficient_order(bound);
  const std::vector<BigInt> zero_only{0};
  const BigInt big_bound = bound;

  // Maps x with known * x == target, in search order. `vacuous` when the
  // triangle touches a zero group.
  auto solutions = [&](bool forced_zero, bool vacuous, const BigInt& known,
                       const BigInt& target) -> std::vector<BigInt> {
    if (forced_zero) return (vacuous || target == 0) ? zero_only : std::vector<BigInt>{};
    if (vacuous) return coeffs;
    if (known == 0) return target == 0 ? coeffs : std::vector<BigInt>{};
    if (target % known != 0) return {};
    BigInt x = target / known;
    if (abs(x) > big_bound) return {};
    return {x};
  };

  LadderCertificate L;
  L.top.resize(depth + 1);
  L.bottom.resize(depth);
  L.up.resize(depth);
  L.down.resize(depth);

  // A rung's outcome depends only on (m, top[m], bottom[m], up[m]).
  std::set<std::tuple<std::size_t, std::size_t, std::size_t, long>> failed;

  // Rung m: given top[m], bottom[m], up[m], pick top[m+1] and down[m] (upper
  // triangle), then bottom[m+1] and up[m+1] (lower triangle).
  std::function<bool(std::size_t)> rung = [&](std::size_t m) -> bool {
    if (m == depth) return true;
    const auto key = std::make_tuple(m, L.top[m], L.bottom[m], static_cast<long>(L.up[m]));
    if (failed.count(key)) return false;
    for (std::size_t i1 = L.top[m] + 1; i1 <= limit_a; ++i1) {
      L.top[m + 1] = i1;
      const bool down_zero = a.zero(i1) || b.zero(L.bottom[m]);
      const bool upper_vacuous = a.zero(L.top[m]) || a.zero(i1);
      const auto downs = solutions(down_zero, upper_vacuous, L.up[m], a.compose(L.top[m], i1));
      for (const auto& d : downs) {
        L.down[m] = d;
        if (m + 1 == depth) return true;
        for (std::size_t j1 = L.bottom[m] + 1; j1 <= limit_b; ++j1) {
          L.bottom[m + 1] = j1;
          const bool up_zero = a.zero(i1) || b.zero(j1);
          const bool lower_vacuous = b.zero(L.bottom[m]) || b.zero(j1);
          for (const auto& u : solutions(up_zero, lower_vacuous, d, b.compose(L.bottom[m], j1))) {
            L.up[m + 1] = u;
            if (rung(m + 1)) return true;
          }
        }
      }
    }
    failed.insert(key);
    return false;
  };

  for (std::size_t i0 = a.prefix.size(); i0 <= limit_a; ++i0) {
    L.top[0] = i0;
    for (std::size_t j0 = b.prefix.size(); j0 <= limit_b; ++j0) {
      L.bottom[0] = j0;
      const bool up_zero = a.zero(i0) || b.zero(j0);
      for (const auto& u : up_zero ? zero_only : coeffs) {
        L.up[0] = u;
        if (rung(0)) return L;
      }
    }
  }
  return std::nullopt;
}

inline std::optional<LadderCertificate> ladder_search(const MultSequence& a, const MultSequence& b,
                                                      std::size_t depth = 4, long bound = 8) {
  return ladder_search(RankedSequence::of(a), RankedSequence::of(b), depth, bound);
}

// ---------------------------------------------------------------------------
// Free abelian sequences Z^{n_0} <-B_1- Z^{n_1} <-B_2- ... with matrix bonds.

struct AbelianSequence {
  std::vector<std::size_t> ranks;  // n_0 .. n_T
  std::vector<IntMatrix> bonds;    // B_1 .. B_T, B_i is n_{i-1} x n_i
  std::vector<IntMatrix> tail;     // optional periodic continuation B_{T+1}, B_{T+2}, ...

  void check() const {
    if (ranks.empty()) throw DomainError("abelian sequence needs at least one group");
    if (bonds.size() + 1 != ranks.size()) throw DomainError("abelian sequence: ranks/bonds length mismatch");
    for (std::size_t i = 0; i < bonds.size(); ++i)
      if (bonds[i].rows() != ranks[i] || bonds[i].cols() != ranks[i + 1])
        throw DomainError("abelian sequence: bond " + std::to_string(i + 1) + " has wrong dimensions");
    if (!tail.empty()) {
      std::size_t r = ranks.back();
      for (const auto& m : tail) {
        if (m.rows() != r) throw DomainError("abelian sequence: tail dimensions do not chain");
        r = m.cols();
      }
      if (r != ranks.back()) throw DomainError("abelian sequence: tail does not close up");
    }
  }

  bool has_bond(std::size_t i) const { return i >= 1 && (i <= bonds.size() || !tail.empty()); }
  const IntMatrix& bond(std::size_t i) const {
    if (i >= 1 && i <= bonds.size()) return bonds[i - 1];
    if (i == 0 || tail.empty()) throw DomainError("abelian sequence: bond " + std::to_string(i) + " undefined");
    return tail[(i - 1 - bonds.size()) % tail.size()];
  }
  std::size_t rank(std::size_t i) const { return i == 0 ? ranks[0] : bond(i).cols(); }
};

struct Stabilization {
  bool stabilized = false;
  std::size_t at = 0;  // first j with Im(B_{i+1..j}) = Im(B_{i+1..j-1}) confirmed through the horizon
};

/// Image lattices Im(B_{i+1} ... B_j) in Z^{n_i} for j = i..horizon, compared
/// by Hermite form. A candidate j is reported only if the image then stays
/// constant through the horizon and, for periodic tails, for at least one full
/// period past the candidate.
inline Stabilization images_stabilize(const AbelianSequence& a, std::size_t i, std::size_t horizon) {
  a.check();
  if (horizon < i + 1) throw DomainError("images_stabilize: horizon must exceed i");
  if (i > 0 && !a.has_bond(i)) throw DomainError("images_stabilize: index outside the sequence");
  for (std::size_t j = i + 1; j <= horizon; ++j)
    if (!a.has_bond(j)) throw DomainError("images_stabilize: horizon outside the sequence");
  const std::size_t ni = a.rank(i);
  std::vector<IntMatrix> images;
  IntMatrix prod = IntMatrix::identity(ni);
  images.push_back(column_hermite(prod));
  for (std::size_t j = i + 1; j <= horizon; ++j) {
    prod = prod * a.bond(j);
    images.push_back(column_hermite(prod));
  }
  const std::size_t period = a.tail.empty() ? 1 : a.tail.size();
  for (std::size_t j = i + 1; j <= horizon; ++j) {
    const auto& img = images[j - i];
    if (!(img == images[j - i - 1])) continue;
    bool holds = true;
    for (std::size_t k = j + 1; k <= horizon && holds; ++k) holds = images[k - i] == img;
    if (!holds) continue;
    if (!a.tail.empty() && j - 1 + period > horizon) return {};
    return {true, j};
  }
  return {};
}

}  // namespace modelspace
