#ifndef DOFAM_GENERATORS_HPP
#define DOFAM_GENERATORS_HPP

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "dofam/family.hpp"
#include "dofam/graph.hpp"
#include "dofam/scm.hpp"

namespace dofam {

/// splitmix64 step; used to derive independent per-case seeds from one suite seed.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream);

/// Deterministic random source. Ranges are mapped from raw 64-bit output so results
/// do not depend on the standard library's distribution implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  std::uint64_t next() { return engine_(); }
  /// Uniform in [0, n); n > 0.
  std::size_t below(std::size_t n);
  /// Uniform in [lo, hi].
  std::size_t between(std::size_t lo, std::size_t hi) { return lo + below(hi - lo + 1); }
  /// True with probability p.
  bool chance(double p);
  /// Strictly positive probability vector of length n with small denominators.
  std::vector<Rational> positive_distribution(std::size_t n);
  template <class T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[below(i)]);
  }

 private:
  std::mt19937_64 engine_;
};

enum class GraphClass { any, admg, ancestral, dag, maximal_ancestral };

const char* to_string(GraphClass c);
GraphClass graph_class_from_string(const std::string& s);

/// Nodes are named x1..xn. Throws PreconditionViolation for n > 10 or when the
/// class is not reached within the retry budget.
Bdmg random_bdmg(std::uint64_t seed, std::size_t n, double arrow_density, double arc_density, GraphClass cls);

/**
 * Random SCM on an acyclic graph.
 *
 * Each arc carries a latent fair-ish bit shared by its endpoints; each node also
 * owns a private variable with noise_cards[i] >= cards[i] values. A node's noise is
 * the pair (private value, latent bits at the node). Mechanisms map the private
 * value onto all of the node's values for every parent and latent configuration,
 * so the joint and every intervened joint have full support.
 */
Scm random_scm(std::uint64_t seed, const Bdmg& g, const std::vector<std::size_t>& cards,
               const std::vector<std::size_t>& noise_cards);
/// Cards drawn from [2, max_card]; private noise gets card or card + 1 values.
Scm random_scm(std::uint64_t seed, const Bdmg& g, std::size_t max_card);

/// Sigma-separation family over the ground truth, intervened per node.
InterventionalFamily oracle_family(const Bdmg& g);

}  // namespace dofam

#endif
