#include "wqa/closure.hpp"

#include <algorithm>
#include <functional>
#include <map>

#include "wqa/determinize.hpp"
#include "wqa/errors.hpp"

namespace wqa {

std::string to_string(ClosureOp op) {
  switch (op) {
    case ClosureOp::Max: return "max";
    case ClosureOp::Min: return "min";
    case ClosureOp::Complement: return "complement";
    case ClosureOp::Sum: return "sum";
  }
  return "?";
}

AutomatonClass AutomatonClass::of(const WeightedAutomaton& aut) {
  return {aut.valuefn.tag, is_deterministic(aut)};
}

AutomatonClass AutomatonClass::of_pair(const WeightedAutomaton& a1,
                                       const WeightedAutomaton& a2) {
  bool det = is_deterministic(a1) && is_deterministic(a2);
  return {a1.valuefn.tag, det};
}

std::string AutomatonClass::name() const {
  switch (tag) {
    case ValTag::Last: return deterministic ? "det Last" : "nondet Last";
    case ValTag::Max: return deterministic ? "det Max" : "nondet Max";
    case ValTag::Sum: return deterministic ? "det Sum" : "nondet Sum";
    case ValTag::Sup: return deterministic ? "DSup" : "NSup";
    case ValTag::LimSup: return deterministic ? "DLSup" : "NLSup";
    case ValTag::LimInf: return deterministic ? "DLInf" : "NLInf";
    case ValTag::LimAvg: return deterministic ? "DLAvg" : "NLAvg";
    case ValTag::Disc: return deterministic ? "DDisc" : "NDisc";
  }
  return "?";
}

ClosureVerdict closure_table(const AutomatonClass& cls, ClosureOp op) {
  const bool det = cls.deterministic;
  auto yes = [](std::string c, std::string k, std::string cite) {
    return ClosureVerdict{true, std::move(c), std::move(k), std::move(cite)};
  };
  auto no = [](std::string cite) { return ClosureVerdict{false, "", "", std::move(cite)}; };

  switch (cls.tag) {
    case ValTag::Max:
      switch (op) {
        case ClosureOp::Max:
          return det ? yes("synchronized product, max weights", "O(n1*n2)", "Thm 8")
                     : yes("initial nondeterministic choice", "O(n1+n2)", "Thm 8");
        case ClosureOp::Min:
          return yes("running-maxima product, min weights", "O(n1*m1*n2*m2)", "Thm 9");
        case ClosureOp::Complement: return no("Thm 10");
        case ClosureOp::Sum:
          return yes("running-maxima product, summed weights", "O(n1*m1*n2*m2)", "Thm 11");
      }
      break;
    case ValTag::Last:
      switch (op) {
        case ClosureOp::Max:
          return det ? yes("synchronized product, max weights", "O(n1*n2)", "Thm 8")
                     : yes("initial nondeterministic choice", "O(n1+n2)", "Thm 8");
        case ClosureOp::Min:
          return yes("synchronized product, min weights", "O(n1*n2)", "Thm 9");
        case ClosureOp::Complement:
          return det ? yes("negate weights, shift by 1", "O(n)", "Thm 10")
                     : yes("subset construction, then negate and shift", "O(2^n)", "Thm 10");
        case ClosureOp::Sum:
          return yes("synchronized product, summed weights", "O(n1*n2)", "Thm 11");
      }
      break;
    case ValTag::Sum:
      switch (op) {
        case ClosureOp::Max:
          return det ? no("Thm 8")
                     : yes("initial nondeterministic choice", "O(n1+n2)", "Thm 8");
        case ClosureOp::Min: return no("Thm 9");
        case ClosureOp::Complement:
          return det ? yes("negate weights, shifted initial copy", "O(n)", "Thm 10")
                     : no("Thm 10");
        case ClosureOp::Sum:
          return yes("synchronized product, summed weights", "O(n1*n2)", "Thm 11");
      }
      break;
    case ValTag::Sup:
      switch (op) {
        case ClosureOp::Max:
          return det ? yes("synchronized product, max weights", "O(n1*n2)", "Thm 12")
                     : yes("initial nondeterministic choice", "O(n1+n2)", "Thm 12");
        case ClosureOp::Min:
          return yes("running-maxima product, min weights", "O(n1*m1*n2*m2)", "Thm 14");
        case ClosureOp::Complement: return no("Thm 19");
        case ClosureOp::Sum:
          return yes("running-maxima product, summed weights", "O(n1*m1*n2*m2)", "Thm 24");
      }
      break;
    case ValTag::LimSup:
      switch (op) {
        case ClosureOp::Max:
          return det ? yes("synchronized product, max weights", "O(n1*n2)", "Thm 12")
                     : yes("initial nondeterministic choice", "O(n1+n2)", "Thm 12");
        case ClosureOp::Min:
          return det ? yes("per-threshold switching product", "O(n1*n2*2^(m1+m2))", "Thm 16")
                     : yes("threshold guess with toggle", "O(n1*n2*(m1+m2))", "Thm 15");
        case ClosureOp::Complement:
          return det ? no("Thm 19")
                     : yes("per-threshold Buchi complementation", "O(m*2^(n log n))", "Thm 20");
        case ClosureOp::Sum:
          return det ? yes("weight-pair bit product", "O(n1*n2*2^(m1*m2))", "Thm 26")
                     : yes("guessed-pair product", "O(n1*m1*n2*m2)", "Thm 25");
      }
      break;
    case ValTag::LimInf:
      switch (op) {
        case ClosureOp::Max:
          return det ? yes("union, then breakpoint determinization",
                           "O((m1+m2)*2^(n1+n2))", "Thm 12")
                     : yes("initial nondeterministic choice", "O(n1+n2)", "Thm 12");
        case ClosureOp::Min:
          return yes("synchronized product, min weights", "O(n1*n2)", "Thm 15");
        case ClosureOp::Complement: return no("Thm 19");
        case ClosureOp::Sum:
          return det ? yes("weight-pair re-arm product", "O(n1*n2*2^(m1*m2))", "Thm 27")
                     : yes("determinize, then weight-pair re-arm product",
                           "O(2^(n1)*2^(n2)*2^(m1*m2))", "Thm 27");
      }
      break;
    case ValTag::LimAvg:
      switch (op) {
        case ClosureOp::Max:
          return det ? no("Thm 13")
                     : yes("initial nondeterministic choice", "O(n1+n2)", "Thm 12");
        case ClosureOp::Min: return no("Thm 17");
        case ClosureOp::Complement: return det ? no("Thm 22") : no("Thm 23");
        case ClosureOp::Sum: return no("Thm 29");
      }
      break;
    case ValTag::Disc:
      switch (op) {
        case ClosureOp::Max:
          return det ? no("Thm 13")
                     : yes("initial nondeterministic choice", "O(n1+n2)", "Thm 12");
        case ClosureOp::Min: return no("Thm 18");
        case ClosureOp::Complement:
          return det ? yes("pointwise weight map v -> 1 - lambda - v", "O(n)", "Thm 21")
                     : no("Thm 23");
        case ClosureOp::Sum:
          return yes("synchronized product, summed weights", "O(n1*n2)", "Thm 28");
      }
      break;
  }
  throw Error("unreachable");
}

namespace {

/// Remap a2's symbol indices to a1's alphabet order; alphabets must hold
/// the same symbol set.
WeightedAutomaton align_alphabet(const WeightedAutomaton& a1, const WeightedAutomaton& a2) {
  if (a1.alphabet == a2.alphabet) return a2;
  if (a1.alphabet.size() != a2.alphabet.size())
    throw PreconditionError("alphabets differ");
  std::vector<int> remap(a2.alphabet.size());
  for (std::size_t i = 0; i < a2.alphabet.size(); ++i) {
    int j = a1.symbol_index(a2.alphabet[i]);
    if (j < 0) throw PreconditionError("alphabets differ");
    remap[i] = j;
  }
  WeightedAutomaton out = a2;
  out.alphabet = a1.alphabet;
  for (auto& t : out.transitions) t.sym = remap[t.sym];
  out.canonicalize();
  return out;
}

void check_compatible(const WeightedAutomaton& a1, const WeightedAutomaton& a2) {
  require_valid(a1);
  require_valid(a2);
  if (!(a1.valuefn == a2.valuefn))
    throw PreconditionError("value functions differ (" + a1.valuefn.name() + " vs " +
                            a2.valuefn.name() + ")");
}

void stamp(WeightedAutomaton& out, const ClosureVerdict& v, const std::string& name) {
  out.name = name;
  out.provenance = v.construction + " [" + v.citation + ", cost " + v.cost + "]";
}

/// Fresh initial state duplicating every component initial's outgoing
/// transitions; the components are laid side by side.
WeightedAutomaton union_choice(const std::vector<const WeightedAutomaton*>& parts) {
  WeightedAutomaton out;
  out.alphabet = parts.front()->alphabet;
  out.valuefn = parts.front()->valuefn;
  out.num_states = 1;
  out.initial = 0;
  std::vector<int> offset;
  for (const auto* a : parts) {
    offset.push_back(out.num_states);
    out.num_states += a->num_states;
  }
  for (std::size_t i = 0; i < parts.size(); ++i) {
    for (const auto& t : parts[i]->transitions) {
      out.transitions.push_back({offset[i] + t.src, t.sym, offset[i] + t.dst, t.weight});
      if (t.src == parts[i]->initial)
        out.transitions.push_back({0, t.sym, offset[i] + t.dst, t.weight});
    }
  }
  out.canonicalize();
  return out;
}

using Combine = std::function<Rational(const Rational&, const Rational&)>;

/// Synchronized product with a per-transition weight combiner; reachable
/// part only.
WeightedAutomaton sync_product(const WeightedAutomaton& a1, const WeightedAutomaton& a2,
                               const Combine& combine, const ClosureConfig& cfg) {
  WeightedAutomaton out;
  out.alphabet = a1.alphabet;
  out.valuefn = a1.valuefn;

  std::map<std::pair<int, int>, int> index;
  std::vector<std::pair<int, int>> states{{a1.initial, a2.initial}};
  index[states[0]] = 0;
  out.initial = 0;

  for (std::size_t idx = 0; idx < states.size(); ++idx) {
    auto [q1, q2] = states[idx];
    for (std::size_t i = 0; i < a1.transitions.size(); ++i) {
      const auto& t1 = a1.transitions[i];
      if (t1.src != q1) continue;
      for (std::size_t j = 0; j < a2.transitions.size(); ++j) {
        const auto& t2 = a2.transitions[j];
        if (t2.src != q2 || t2.sym != t1.sym) continue;
        auto key = std::make_pair(t1.dst, t2.dst);
        auto [it, fresh] = index.try_emplace(key, static_cast<int>(states.size()));
        if (fresh) {
          states.push_back(key);
          if (states.size() > cfg.max_states) throw CapExceeded("product state explosion");
        }
        out.add_transition(static_cast<int>(idx), t1.sym, it->second,
                           combine(t1.weight, t2.weight));
      }
    }
  }
  out.num_states = static_cast<int>(states.size());
  out.canonicalize();
  return out;
}

/// Product over Q1 x V1 x Q2 x V2 remembering the largest weight seen in
/// each component; the emitted weight combines the updated maxima.
WeightedAutomaton running_max_product(const WeightedAutomaton& a1,
                                      const WeightedAutomaton& a2, bool use_min,
                                      const ClosureConfig& cfg) {
  auto v1 = weight_set(a1), v2 = weight_set(a2);
  auto find1 = [&](const Rational& w) {
    return static_cast<int>(std::lower_bound(v1.begin(), v1.end(), w) - v1.begin());
  };
  auto find2 = [&](const Rational& w) {
    return static_cast<int>(std::lower_bound(v2.begin(), v2.end(), w) - v2.begin());
  };

  WeightedAutomaton out;
  out.alphabet = a1.alphabet;
  out.valuefn = a1.valuefn;

  using Key = std::array<int, 4>;  // q1, max-so-far index 1, q2, index 2
  std::map<Key, int> index;
  std::vector<Key> states{{a1.initial, 0, a2.initial, 0}};
  index[states[0]] = 0;
  out.initial = 0;

  for (std::size_t idx = 0; idx < states.size(); ++idx) {
    Key cur = states[idx];
    for (const auto& t1 : a1.transitions) {
      if (t1.src != cur[0]) continue;
      for (const auto& t2 : a2.transitions) {
        if (t2.src != cur[2] || t2.sym != t1.sym) continue;
        int m1 = std::max(cur[1], find1(t1.weight));
        int m2 = std::max(cur[3], find2(t2.weight));
        Key key{t1.dst, m1, t2.dst, m2};
        auto [it, fresh] = index.try_emplace(key, static_cast<int>(states.size()));
        if (fresh) {
          states.push_back(key);
          if (states.size() > cfg.max_states) throw CapExceeded("product state explosion");
        }
        Rational w = use_min ? min(v1[m1], v2[m2]) : v1[m1] + v2[m2];
        out.add_transition(static_cast<int>(idx), t1.sym, it->second, std::move(w));
      }
    }
  }
  out.num_states = static_cast<int>(states.size());
  out.canonicalize();
  return out;
}

/// Guess a threshold, then toggle between the components as each crosses
/// a weight at least the guess; toggles emit the guess.
WeightedAutomaton nlsup_min(const WeightedAutomaton& a1, const WeightedAutomaton& a2,
                            const ClosureConfig& cfg) {
  auto vu = weight_set(a1);
  for (const auto& w : weight_set(a2)) vu.push_back(w);
  std::sort(vu.begin(), vu.end());
  vu.erase(std::unique(vu.begin(), vu.end()), vu.end());
  const Rational vmin = vu.front();

  WeightedAutomaton out;
  out.alphabet = a1.alphabet;
  out.valuefn = ValueFunction::limsup();
  out.initial = 0;

  using Key = std::array<int, 4>;  // q1, q2, expected component - 1, guess index
  std::map<Key, int> index;
  std::vector<Key> states;  // state id = index + 1 (0 is the fresh initial)
  auto state_id = [&](const Key& k) {
    auto [it, fresh] = index.try_emplace(k, static_cast<int>(states.size()) + 1);
    if (fresh) {
      states.push_back(k);
      if (states.size() > cfg.max_states) throw CapExceeded("product state explosion");
    }
    return it->second;
  };

  std::vector<std::pair<int, Key>> work;  // (state id, key)
  // Initial guesses: weight 0 on the very first transition.
  for (std::size_t g = 0; g < vu.size(); ++g)
    for (const auto& t1 : a1.transitions) {
      if (t1.src != a1.initial) continue;
      for (const auto& t2 : a2.transitions) {
        if (t2.src != a2.initial || t2.sym != t1.sym) continue;
        Key k{t1.dst, t2.dst, 0, static_cast<int>(g)};
        bool fresh = !index.count(k);
        int id = state_id(k);
        if (fresh) work.emplace_back(id, k);
        out.add_transition(0, t1.sym, id, Rational(0));
      }
    }

  for (std::size_t widx = 0; widx < work.size(); ++widx) {
    auto [id, cur] = work[widx];
    const Rational& guess = vu[cur[3]];
    for (const auto& t1 : a1.transitions) {
      if (t1.src != cur[0]) continue;
      for (const auto& t2 : a2.transitions) {
        if (t2.src != cur[1] || t2.sym != t1.sym) continue;
        const Rational& watched = cur[2] == 0 ? t1.weight : t2.weight;
        bool toggle = watched >= guess;
        Key nxt{t1.dst, t2.dst, toggle ? 1 - cur[2] : cur[2], cur[3]};
        bool fresh = !index.count(nxt);
        int nid = state_id(nxt);
        if (fresh) work.emplace_back(nid, nxt);
        out.add_transition(id, t1.sym, nid, toggle ? guess : vmin);
      }
    }
  }
  out.num_states = static_cast<int>(states.size()) + 1;
  out.canonicalize();
  return out;
}

int det_transition(const WeightedAutomaton& a, int state, int sym) {
  for (std::size_t i = 0; i < a.transitions.size(); ++i)
    if (a.transitions[i].src == state && a.transitions[i].sym == sym)
      return static_cast<int>(i);
  throw Error("totality violated");
}

/// One switching bit per threshold: bit j watches component b_j, toggling
/// when it crosses a weight at least v_j; toggles emit the largest such
/// threshold.
WeightedAutomaton dlsup_min(const WeightedAutomaton& a1, const WeightedAutomaton& a2,
                            const ClosureConfig& cfg) {
  auto vu = weight_set(a1);
  for (const auto& w : weight_set(a2)) vu.push_back(w);
  std::sort(vu.begin(), vu.end());
  vu.erase(std::unique(vu.begin(), vu.end()), vu.end());
  const int m = static_cast<int>(vu.size());
  if (m > cfg.max_tracked_weights) throw CapExceeded("too many distinct weights");
  const Rational vmin = vu.front();

  WeightedAutomaton out;
  out.alphabet = a1.alphabet;
  out.valuefn = ValueFunction::limsup();
  out.initial = 0;

  using Key = std::array<long, 3>;  // q1, q2, bit mask (bit j set = watching a2)
  std::map<Key, int> index;
  std::vector<Key> states{{a1.initial, a2.initial, 0}};
  index[states[0]] = 0;

  for (std::size_t idx = 0; idx < states.size(); ++idx) {
    Key cur = states[idx];
    for (std::size_t sym = 0; sym < out.alphabet.size(); ++sym) {
      const auto& t1 = a1.transitions[det_transition(a1, static_cast<int>(cur[0]),
                                                     static_cast<int>(sym))];
      const auto& t2 = a2.transitions[det_transition(a2, static_cast<int>(cur[1]),
                                                     static_cast<int>(sym))];
      long mask = cur[2], toggled = 0;
      for (int j = 0; j < m; ++j) {
        const Rational& w = (mask >> j & 1) ? t2.weight : t1.weight;
        if (w >= vu[j]) toggled |= 1L << j;
      }
      mask ^= toggled;
      Rational w = vmin;
      for (int j = m - 1; j >= 0; --j)
        if (toggled >> j & 1) {
          w = vu[j];
          break;
        }
      Key nxt{t1.dst, t2.dst, mask};
      auto [it, fresh] = index.try_emplace(nxt, static_cast<int>(states.size()));
      if (fresh) {
        states.push_back(nxt);
        if (states.size() > cfg.max_states) throw CapExceeded("product state explosion");
      }
      out.add_transition(static_cast<int>(idx), static_cast<int>(sym), it->second,
                         std::move(w));
    }
  }
  out.num_states = static_cast<int>(states.size());
  out.canonicalize();
  return out;
}

/// Guess a weight pair, then alternate expecting each component to cross
/// its guessed weight exactly; fulfilment emits the pair sum.
WeightedAutomaton nlsup_sum(const WeightedAutomaton& a1, const WeightedAutomaton& a2,
                            const ClosureConfig& cfg) {
  auto v1 = weight_set(a1), v2 = weight_set(a2);
  const Rational vmin = v1.front() + v2.front();

  WeightedAutomaton out;
  out.alphabet = a1.alphabet;
  out.valuefn = ValueFunction::limsup();
  out.initial = 0;

  using Key = std::array<int, 5>;  // q1, q2, expected - 1, guess1, guess2
  std::map<Key, int> index;
  std::vector<Key> states;
  auto state_id = [&](const Key& k) {
    auto [it, fresh] = index.try_emplace(k, static_cast<int>(states.size()) + 1);
    if (fresh) {
      states.push_back(k);
      if (states.size() > cfg.max_states) throw CapExceeded("product state explosion");
    }
    return it->second;
  };

  std::vector<std::pair<int, Key>> work;
  for (std::size_t g1 = 0; g1 < v1.size(); ++g1)
    for (std::size_t g2 = 0; g2 < v2.size(); ++g2)
      for (const auto& t1 : a1.transitions) {
        if (t1.src != a1.initial) continue;
        for (const auto& t2 : a2.transitions) {
          if (t2.src != a2.initial || t2.sym != t1.sym) continue;
          Key k{t1.dst, t2.dst, 0, static_cast<int>(g1), static_cast<int>(g2)};
          bool fresh = !index.count(k);
          int id = state_id(k);
          if (fresh) work.emplace_back(id, k);
          out.add_transition(0, t1.sym, id, vmin);
        }
      }

  for (std::size_t widx = 0; widx < work.size(); ++widx) {
    auto [id, cur] = work[widx];
    for (const auto& t1 : a1.transitions) {
      if (t1.src != cur[0]) continue;
      for (const auto& t2 : a2.transitions) {
        if (t2.src != cur[1] || t2.sym != t1.sym) continue;
        bool fulfilled = cur[2] == 0 ? t1.weight == v1[cur[3]] : t2.weight == v2[cur[4]];
        Key nxt{t1.dst, t2.dst, fulfilled ? 1 - cur[2] : cur[2], cur[3], cur[4]};
        bool fresh = !index.count(nxt);
        int nid = state_id(nxt);
        if (fresh) work.emplace_back(nid, nxt);
        out.add_transition(id, t1.sym, nid,
                           fulfilled ? v1[cur[3]] + v2[cur[4]] : vmin);
      }
    }
  }
  out.num_states = static_cast<int>(states.size()) + 1;
  out.canonicalize();
  return out;
}

/// One bit per weight pair, alternating between the components; a toggle
/// of pair (v1, v2) emits v1 + v2.
WeightedAutomaton dlsup_sum(const WeightedAutomaton& a1, const WeightedAutomaton& a2,
                            const ClosureConfig& cfg) {
  auto v1 = weight_set(a1), v2 = weight_set(a2);
  const int p = static_cast<int>(v1.size() * v2.size());
  if (p > cfg.max_tracked_weights) throw CapExceeded("too many weight pairs");
  const Rational vmin = v1.front() + v2.front();

  WeightedAutomaton out;
  out.alphabet = a1.alphabet;
  out.valuefn = ValueFunction::limsup();
  out.initial = 0;

  using Key = std::array<long, 3>;  // q1, q2, pair mask (bit set = expecting a2)
  std::map<Key, int> index;
  std::vector<Key> states{{a1.initial, a2.initial, 0}};
  index[states[0]] = 0;

  auto pair_sum = [&](int pi) { return v1[pi / v2.size()] + v2[pi % v2.size()]; };

  for (std::size_t idx = 0; idx < states.size(); ++idx) {
    Key cur = states[idx];
    for (std::size_t sym = 0; sym < out.alphabet.size(); ++sym) {
      const auto& t1 = a1.transitions[det_transition(a1, static_cast<int>(cur[0]),
                                                     static_cast<int>(sym))];
      const auto& t2 = a2.transitions[det_transition(a2, static_cast<int>(cur[1]),
                                                     static_cast<int>(sym))];
      long mask = cur[2];
      Rational w = vmin;
      long toggled = 0;
      for (int pi = 0; pi < p; ++pi) {
        const Rational& expect = (mask >> pi & 1) ? v2[pi % v2.size()] : v1[pi / v2.size()];
        const Rational& seen = (mask >> pi & 1) ? t2.weight : t1.weight;
        if (seen == expect) {
          toggled |= 1L << pi;
          w = max(w, pair_sum(pi));
        }
      }
      mask ^= toggled;
      Key nxt{t1.dst, t2.dst, mask};
      auto [it, fresh] = index.try_emplace(nxt, static_cast<int>(states.size()));
      if (fresh) {
        states.push_back(nxt);
        if (states.size() > cfg.max_states) throw CapExceeded("product state explosion");
      }
      out.add_transition(static_cast<int>(idx), static_cast<int>(sym), it->second,
                         std::move(w));
    }
  }
  out.num_states = static_cast<int>(states.size());
  out.canonicalize();
  return out;
}

/// One armed/broken bit per weight pair.  A pair breaks when either
/// component's transition falls below its weight; the emitted weight is
/// the best armed pair sum, and a broken pair re-arms once the emitted
/// weight has dipped below its sum.  The liminf of the emitted weights
/// is then exactly liminf(1) + liminf(2).
WeightedAutomaton dlinf_sum(const WeightedAutomaton& a1, const WeightedAutomaton& a2,
                            const ClosureConfig& cfg) {
  auto v1 = weight_set(a1), v2 = weight_set(a2);
  const int p = static_cast<int>(v1.size() * v2.size());
  if (p > cfg.max_tracked_weights) throw CapExceeded("too many weight pairs");
  const Rational vmin = v1.front() + v2.front();

  WeightedAutomaton out;
  out.alphabet = a1.alphabet;
  out.valuefn = ValueFunction::liminf();
  out.initial = 0;

  using Key = std::array<long, 3>;  // q1, q2, armed mask
  std::map<Key, int> index;
  std::vector<Key> states{{a1.initial, a2.initial, (1L << p) - 1}};
  index[states[0]] = 0;

  auto pair_sum = [&](int pi) { return v1[pi / v2.size()] + v2[pi % v2.size()]; };

  for (std::size_t idx = 0; idx < states.size(); ++idx) {
    Key cur = states[idx];
    for (std::size_t sym = 0; sym < out.alphabet.size(); ++sym) {
      const auto& t1 = a1.transitions[det_transition(a1, static_cast<int>(cur[0]),
                                                     static_cast<int>(sym))];
      const auto& t2 = a2.transitions[det_transition(a2, static_cast<int>(cur[1]),
                                                     static_cast<int>(sym))];
      long armed = cur[2];
      for (int pi = 0; pi < p; ++pi)
        if (t1.weight < v1[pi / v2.size()] || t2.weight < v2[pi % v2.size()])
          armed &= ~(1L << pi);
      Rational w = vmin;
      for (int pi = 0; pi < p; ++pi)
        if (armed >> pi & 1) w = max(w, pair_sum(pi));
      for (int pi = 0; pi < p; ++pi)
        if (!(armed >> pi & 1) && pair_sum(pi) > w) armed |= 1L << pi;
      Key nxt{t1.dst, t2.dst, armed};
      auto [it, fresh] = index.try_emplace(nxt, static_cast<int>(states.size()));
      if (fresh) {
        states.push_back(nxt);
        if (states.size() > cfg.max_states) throw CapExceeded("product state explosion");
      }
      out.add_transition(static_cast<int>(idx), static_cast<int>(sym), it->second,
                         std::move(w));
    }
  }
  out.num_states = static_cast<int>(states.size());
  out.canonicalize();
  return out;
}

WeightedAutomaton negate_weights(WeightedAutomaton a) {
  for (auto& t : a.transitions) t.weight = -t.weight;
  a.canonicalize();
  return a;
}

/// Per threshold v_i, complement the Buchi slice at v_i and reweight its
/// accepting edges to -v_{i-1} (others -v_n); the union of the slices
/// computes -L, finished by a shift by 1.
WeightedAutomaton nlsup_complement(const WeightedAutomaton& a, const ClosureConfig& cfg) {
  auto v = weight_set(a);
  const int n = static_cast<int>(v.size());
  if (n == 1) {
    // Constant language; complement is the constant 1 - v.
    WeightedAutomaton out = a;
    for (auto& t : out.transitions) t.weight = Rational(1) - v[0];
    out.canonicalize();
    return out;
  }

  std::vector<WeightedAutomaton> parts;
  for (int i = 1; i < n; ++i) {
    BuchiAutomaton comp = complement_nbw(threshold_nbw(a, v[i]), cfg.buchi);
    WeightedAutomaton b = std::move(comp.aut);
    for (auto& t : b.transitions)
      t.weight = t.weight == Rational(1) ? -v[i - 1] : -v[n - 1];
    b.canonicalize();
    parts.push_back(std::move(b));
  }
  std::vector<const WeightedAutomaton*> ptrs;
  for (const auto& b : parts) ptrs.push_back(&b);
  WeightedAutomaton neg = union_choice(ptrs);
  return shift(neg, Rational(1));
}

} // namespace

WeightedAutomaton op_max(const WeightedAutomaton& a1, const WeightedAutomaton& a2,
                         const ClosureConfig& cfg) {
  check_compatible(a1, a2);
  WeightedAutomaton b2 = align_alphabet(a1, a2);
  auto cls = AutomatonClass::of_pair(a1, b2);
  auto verdict = closure_table(cls, ClosureOp::Max);
  if (!verdict.closed)
    throw ClosedUnderOpViolation(cls.name(), "max", verdict.citation);

  WeightedAutomaton out;
  if (!cls.deterministic) {
    out = union_choice({&a1, &b2});
  } else {
    switch (cls.tag) {
      case ValTag::Max:
      case ValTag::Last:
      case ValTag::Sup:
      case ValTag::LimSup:
        out = sync_product(a1, b2, [](const Rational& x, const Rational& y) {
          return max(x, y);
        }, cfg);
        break;
      case ValTag::LimInf: {
        WeightedAutomaton u = union_choice({&a1, &b2});
        out = determinize_liminf(u);
        break;
      }
      default: throw Error("unreachable");
    }
  }
  stamp(out, verdict, "max(" + a1.name + "," + a2.name + ")");
  return out;
}

WeightedAutomaton op_min(const WeightedAutomaton& a1, const WeightedAutomaton& a2,
                         const ClosureConfig& cfg) {
  check_compatible(a1, a2);
  WeightedAutomaton b2 = align_alphabet(a1, a2);
  auto cls = AutomatonClass::of_pair(a1, b2);
  auto verdict = closure_table(cls, ClosureOp::Min);
  if (!verdict.closed)
    throw ClosedUnderOpViolation(cls.name(), "min", verdict.citation);

  WeightedAutomaton out;
  switch (cls.tag) {
    case ValTag::Max:
    case ValTag::Sup:
      out = running_max_product(a1, b2, /*use_min=*/true, cfg);
      break;
    case ValTag::Last:
    case ValTag::LimInf:
      out = sync_product(a1, b2, [](const Rational& x, const Rational& y) {
        return min(x, y);
      }, cfg);
      break;
    case ValTag::LimSup:
      out = cls.deterministic ? dlsup_min(a1, b2, cfg) : nlsup_min(a1, b2, cfg);
      break;
    default: throw Error("unreachable");
  }
  stamp(out, verdict, "min(" + a1.name + "," + a2.name + ")");
  return out;
}

WeightedAutomaton op_sum(const WeightedAutomaton& a1, const WeightedAutomaton& a2,
                         const ClosureConfig& cfg) {
  check_compatible(a1, a2);
  WeightedAutomaton b2 = align_alphabet(a1, a2);
  auto cls = AutomatonClass::of_pair(a1, b2);
  auto verdict = closure_table(cls, ClosureOp::Sum);
  if (!verdict.closed)
    throw ClosedUnderOpViolation(cls.name(), "sum", verdict.citation);

  auto add = [](const Rational& x, const Rational& y) { return x + y; };
  WeightedAutomaton out;
  switch (cls.tag) {
    case ValTag::Max:
    case ValTag::Sup:
      out = running_max_product(a1, b2, /*use_min=*/false, cfg);
      break;
    case ValTag::Last:
    case ValTag::Sum:
    case ValTag::Disc:
      out = sync_product(a1, b2, add, cfg);
      break;
    case ValTag::LimSup:
      out = cls.deterministic ? dlsup_sum(a1, b2, cfg) : nlsup_sum(a1, b2, cfg);
      break;
    case ValTag::LimInf:
      if (cls.deterministic) {
        out = dlinf_sum(a1, b2, cfg);
      } else {
        WeightedAutomaton d1 = determinize_liminf(a1);
        WeightedAutomaton d2 = determinize_liminf(b2);
        out = dlinf_sum(d1, d2, cfg);
      }
      break;
    default: throw Error("unreachable");
  }
  stamp(out, verdict, "sum(" + a1.name + "," + a2.name + ")");
  return out;
}

WeightedAutomaton complement(const WeightedAutomaton& aut, const ClosureConfig& cfg) {
  require_valid(aut);
  auto cls = AutomatonClass::of(aut);
  auto verdict = closure_table(cls, ClosureOp::Complement);
  if (!verdict.closed)
    throw ClosedUnderOpViolation(cls.name(), "complement", verdict.citation);

  WeightedAutomaton out;
  switch (cls.tag) {
    case ValTag::Last:
      out = cls.deterministic ? shift(negate_weights(aut), Rational(1))
                              : shift(negate_weights(determinize_subset_max(aut)), Rational(1));
      break;
    case ValTag::Sum:
      out = shift(negate_weights(aut), Rational(1));
      break;
    case ValTag::Disc:
      out = aut;
      for (auto& t : out.transitions)
        t.weight = Rational(1) - aut.valuefn.lambda - t.weight;
      out.canonicalize();
      break;
    case ValTag::LimSup:
      out = nlsup_complement(aut, cfg);
      break;
    default: throw Error("unreachable");
  }
  stamp(out, verdict, "comp(" + aut.name + ")");
  return out;
}

} // namespace wqa
