#include "orbits/generate.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "orbits/random.hpp"

namespace orbits {

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t salt) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (salt + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

PrioritizedInstance random_instance(const InstanceParams& params) {
  const std::size_t n = params.facts;
  const std::size_t max_pairs = n < 2 ? 0 : n * (n - 1) / 2;
  if (params.conflicts > max_pairs) {
    throw std::invalid_argument("cannot place " + std::to_string(params.conflicts) +
                                " conflicts among " + std::to_string(n) + " facts (at most " +
                                std::to_string(max_pairs) + ")");
  }
  if (params.answers > 0 && (n == 0 || params.max_cause_size == 0 || params.max_causes == 0)) {
    throw std::invalid_argument("answers need a non-empty universe and cause size >= 1");
  }
  Rng rng(params.seed);

  std::vector<FactPair> all;
  all.reserve(max_pairs);
  for (FactId a = 0; a < n; ++a)
    for (FactId b = a + 1; b < n; ++b) all.push_back({a, b});
  // partial Fisher-Yates
  for (std::size_t i = 0; i < params.conflicts; ++i) {
    const std::size_t j = i + rng.below(all.size() - i);
    std::swap(all[i], all[j]);
  }
  ConflictSet conflicts;
  conflicts.pairs.assign(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(params.conflicts));
  conflicts.normalize();

  std::vector<FactId> universe(n);
  for (FactId f = 0; f < n; ++f) universe[f] = f;
  const std::size_t cause_cap = std::min(params.max_cause_size, n);
  std::vector<PotentialAnswer> answers;
  for (std::size_t a = 0; a < params.answers; ++a) {
    PotentialAnswer pa{"a" + std::to_string(a), {}};
    const auto k = static_cast<std::size_t>(rng.between(1, static_cast<std::int64_t>(params.max_causes)));
    for (std::size_t c = 0; c < k; ++c) {
      const auto size = static_cast<std::size_t>(rng.between(1, static_cast<std::int64_t>(cause_cap)));
      for (std::size_t i = 0; i < size; ++i) {
        const std::size_t j = i + rng.below(n - i);
        std::swap(universe[i], universe[j]);
      }
      pa.causes.push_back(make_fact_set({universe.begin(), universe.begin() + static_cast<std::ptrdiff_t>(size)}));
    }
    answers.push_back(std::move(pa));
  }
  return PrioritizedInstance::with_dense_facts(n, std::move(conflicts), {}, std::move(answers));
}

std::string PriorityParams::label() const {
  switch (mode) {
    case Mode::None: return "empty";
    case Mode::Score: return "score" + std::to_string(levels);
    case Mode::Random: {
      std::string s = std::to_string(p);
      while (s.size() > 3 && s.back() == '0') s.pop_back();
      return "rand" + s;
    }
  }
  return "?";
}

PriorityRelation generate_priority(const PrioritizedInstance& instance, const PriorityParams& params) {
  switch (params.mode) {
    case PriorityParams::Mode::None: return {};
    case PriorityParams::Mode::Score: {
      if (params.levels == 0) throw std::invalid_argument("score levels must be positive");
      Rng rng(params.seed);
      std::map<FactId, std::uint32_t> scores;
      for (FactId f = 0; f < instance.num_facts(); ++f)
        scores[f] = static_cast<std::uint32_t>(rng.below(params.levels));
      return build_score_priority(instance.conflicts(), scores);
    }
    case PriorityParams::Mode::Random:
      if (!(params.p >= 0.0 && params.p <= 1.0)) throw std::invalid_argument("p must lie in [0, 1]");
      return build_random_priority(instance.conflicts(), params.p, params.seed);
  }
  return {};
}

}  // namespace orbits
