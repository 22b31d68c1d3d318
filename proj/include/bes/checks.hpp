#pragma once

#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "bes/support.hpp"

namespace bes::checks {

inline constexpr std::uint64_t kDefaultSeed = 0xBE5BA5Eull;

/// splitmix64; identical sequences on every platform.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}
  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }
  std::uint64_t below(std::uint64_t n) { return n ? next() % n : 0; }
  bool coin() { return next() & 1; }

 private:
  std::uint64_t state_;
};

Formula random_formula(Rng& g, const std::vector<Atom>& atoms, int degree_budget, bool allow_bot);
Sequent random_sequent(Rng& g, const std::vector<Atom>& atoms, int total_degree,
                       std::size_t max_per_side, bool allow_bot);
AtomicSequent random_atomic_sequent(Rng& g, const std::vector<Atom>& atoms);
Base random_base(Rng& g, const std::vector<Atom>& atoms, std::size_t max_rules, Closure c);

/// All formulas over the given atoms (plus bot when allowed) up to the degree
/// bound, in canonical order.
std::vector<Formula> enumerate_formulas(const std::vector<Atom>& atoms, int max_degree,
                                        bool allow_bot);

/// Naive breadth-first enumeration of the derivability relation: an explicit
/// weakening-closed set over all 4^|universe| atomic sequents, grown by firing
/// ground rules and the closure schemas on every derivable premise tuple.
/// Independent of the antichain engine; universe capped at 7 atoms.
std::set<AtomicSequent> naive_derivable_set(const Base& b, const AtomSet& universe);

struct SuiteResult {
  std::string name;
  bool pass = false;
  std::string detail;
  double seconds = 0.0;
};

SuiteResult criterion1_oracle_equivalence(std::uint64_t seed, std::size_t random_samples);
SuiteResult criterion2_completeness_pipeline(std::uint64_t seed, std::size_t corpus_size);
SuiteResult criterion3_cutfree_pipeline(std::uint64_t seed, std::size_t corpus_size);
SuiteResult criterion4_prop6();
SuiteResult criterion5_mainlemma_shadows(std::uint64_t seed, std::size_t samples);
SuiteResult criterion6_categorical_witness(std::uint64_t seed, std::size_t samples);
SuiteResult criterion7_monotonicity(std::uint64_t seed, std::size_t samples);
SuiteResult criterion8_saturation_vs_bruteforce();
SuiteResult criterion9_cut_divergence();

/// Every criterion at its stated sample count; `scale` shrinks or grows the
/// randomized counts (the exhaustive parts always run in full).
std::vector<SuiteResult> run_acceptance(std::uint64_t seed, double scale);

}  // namespace bes::checks
