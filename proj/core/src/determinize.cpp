#include "wqa/determinize.hpp"

#include <algorithm>
#include <map>

#include "wqa/errors.hpp"

namespace wqa {

namespace {

using Mask = std::uint64_t;

struct SliceState {
  Mask subset = 0;                 // states reachable on the input read so far
  std::vector<Mask> safe;          // per slice: runs safe since the last reset

  friend bool operator<(const SliceState& a, const SliceState& b) {
    if (a.subset != b.subset) return a.subset < b.subset;
    return a.safe < b.safe;
  }
};

} // namespace

WeightedAutomaton determinize_liminf(const WeightedAutomaton& aut,
                                     const DeterminizeConfig& cfg) {
  if (aut.valuefn.tag != ValTag::LimInf)
    throw PreconditionError("determinize_liminf needs a liminf automaton");
  require_valid(aut);
  if (aut.num_states > cfg.max_input_states || aut.num_states > 64)
    throw CapExceeded("determinization input above state cap");

  const auto weights = weight_set(aut);  // ascending
  const int slices = static_cast<int>(weights.size()) - 1;  // thresholds beyond the bottom

  // succ_all[q][sym], succ_ge[v][q][sym]
  const int n = aut.num_states;
  const int asz = static_cast<int>(aut.alphabet.size());
  std::vector<Mask> succ_all(static_cast<std::size_t>(n) * asz, 0);
  std::vector<std::vector<Mask>> succ_ge(
      slices, std::vector<Mask>(static_cast<std::size_t>(n) * asz, 0));
  for (const auto& t : aut.transitions) {
    std::size_t key = static_cast<std::size_t>(t.src) * asz + t.sym;
    succ_all[key] |= 1ull << t.dst;
    for (int s = 0; s < slices; ++s)
      if (t.weight >= weights[s + 1]) succ_ge[s][key] |= 1ull << t.dst;
  }
  auto post = [&](Mask set, int sym, const std::vector<Mask>& table) {
    Mask out = 0;
    for (int q = 0; q < n; ++q)
      if (set >> q & 1) out |= table[static_cast<std::size_t>(q) * asz + sym];
    return out;
  };

  SliceState init;
  init.subset = 1ull << aut.initial;
  init.safe.assign(slices, init.subset);

  std::map<SliceState, int> index;
  std::vector<SliceState> states{init};
  index[init] = 0;

  WeightedAutomaton out;
  out.name = aut.name + "_det";
  out.provenance = "per-threshold breakpoint determinization";
  out.alphabet = aut.alphabet;
  out.valuefn = ValueFunction::liminf();
  out.initial = 0;

  for (std::size_t idx = 0; idx < states.size(); ++idx) {
    SliceState cur = states[idx];
    for (int sym = 0; sym < asz; ++sym) {
      SliceState nxt;
      nxt.subset = post(cur.subset, sym, succ_all);
      nxt.safe.resize(slices);
      int lowest_reset = slices;  // index of the smallest slice that reset
      for (int s = 0; s < slices; ++s) {
        Mask safe = post(cur.safe[s], sym, succ_ge[s]);
        if (safe == 0) {
          safe = nxt.subset;
          lowest_reset = std::min(lowest_reset, s);
        }
        nxt.safe[s] = safe;
      }
      // Slice s watches threshold weights[s+1]; a reset of slice s means
      // the value dropped below weights[s+1], so emit weights[s].
      Rational w = lowest_reset == slices ? weights.back() : weights[lowest_reset];

      auto [it, fresh] = index.try_emplace(nxt, static_cast<int>(states.size()));
      if (fresh) {
        states.push_back(nxt);
        if (states.size() > cfg.max_states)
          throw CapExceeded("determinization state explosion");
      }
      out.add_transition(static_cast<int>(idx), sym, it->second, w);
    }
  }
  out.num_states = static_cast<int>(states.size());
  out.canonicalize();
  return out;
}

WeightedAutomaton determinize_subset_max(const WeightedAutomaton& aut,
                                         const DeterminizeConfig& cfg) {
  require_valid(aut);
  if (aut.num_states > cfg.max_input_states || aut.num_states > 64)
    throw CapExceeded("determinization input above state cap");
  if (aut.valuefn.tag != ValTag::Last && aut.valuefn.tag != ValTag::Max &&
      aut.valuefn.tag != ValTag::Sup)
    throw PreconditionError("subset determinization applies to last/max/sup only");

  const int asz = static_cast<int>(aut.alphabet.size());

  std::map<Mask, int> index;
  std::vector<Mask> states{1ull << aut.initial};
  index[states[0]] = 0;

  WeightedAutomaton out;
  out.name = aut.name + "_det";
  out.provenance = "subset construction with maximal weights";
  out.alphabet = aut.alphabet;
  out.valuefn = aut.valuefn;
  out.initial = 0;

  for (std::size_t idx = 0; idx < states.size(); ++idx) {
    Mask cur = states[idx];
    for (int sym = 0; sym < asz; ++sym) {
      Mask nxt = 0;
      const Rational* best = nullptr;
      for (const auto& t : aut.transitions) {
        if (t.sym != sym || !(cur >> t.src & 1)) continue;
        nxt |= 1ull << t.dst;
        if (!best || t.weight > *best) best = &t.weight;
      }
      if (!best) throw Error("totality violated in subset construction");
      auto [it, fresh] = index.try_emplace(nxt, static_cast<int>(states.size()));
      if (fresh) {
        states.push_back(nxt);
        if (states.size() > cfg.max_states)
          throw CapExceeded("determinization state explosion");
      }
      out.add_transition(static_cast<int>(idx), sym, it->second, *best);
    }
  }
  out.num_states = static_cast<int>(states.size());
  out.canonicalize();
  return out;
}

} // namespace wqa
