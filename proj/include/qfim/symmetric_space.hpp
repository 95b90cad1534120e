#pragma once

#include <cstddef>
#include <memory>
#include <unordered_map>

#include "qfim/types.hpp"

namespace qfim {

/// The N-particle symmetric subspace of n bosonic modes.
///
/// Basis states are occupation tuples (k_1, ..., k_n) with sum N, enumerated
/// in reverse-lexicographic order so that (N, 0, ..., 0) comes first. The
/// ordering is part of the serialization contract: matrices dumped to disk
/// are reproducible across runs and platforms.
class SymmetricSpace {
public:
  static constexpr std::size_t kDefaultMaxDim = 1'000'000;

  /// Enumerates the space. Throws ResourceError if the dimension
  /// binomial(N+n-1, n-1) exceeds max_dim.
  static std::shared_ptr<const SymmetricSpace> create(int modes, int particles,
                                                      std::size_t max_dim = kDefaultMaxDim);

  int modes() const { return modes_; }
  int particles() const { return particles_; }
  Index dim() const { return static_cast<Index>(states_.size()); }

  const OccupationState& occupations(Index i) const { return states_.at(static_cast<std::size_t>(i)); }
  const std::vector<OccupationState>& states() const { return states_; }

  /// Position of an occupation tuple in the basis. Throws ValidationError
  /// for tuples that do not belong to the space.
  Index index_of(const OccupationState& occ) const;

  /// Two spaces are interchangeable iff they have the same (n, N);
  /// enumeration is deterministic.
  bool compatible_with(const SymmetricSpace& other) const {
    return modes_ == other.modes_ && particles_ == other.particles_;
  }

private:
  SymmetricSpace(int modes, int particles);

  struct OccHash {
    std::size_t operator()(const OccupationState& v) const noexcept {
      std::size_t h = 1469598103934665603ull;
      for (int x : v) {
        h ^= static_cast<std::size_t>(x) + 0x9e3779b97f4a7c15ull;
        h *= 1099511628211ull;
      }
      return h;
    }
  };

  int modes_;
  int particles_;
  std::vector<OccupationState> states_;
  std::unordered_map<OccupationState, Index, OccHash> index_;
};

using SpacePtr = std::shared_ptr<const SymmetricSpace>;

/// Dimension binomial(N+n-1, n-1) without enumerating; throws ResourceError
/// on overflow past max_dim.
std::size_t symmetric_dimension(int modes, int particles,
                                std::size_t max_dim = SymmetricSpace::kDefaultMaxDim);

inline SpacePtr enumerate_space(int modes, int particles,
                                std::size_t max_dim = SymmetricSpace::kDefaultMaxDim) {
  return SymmetricSpace::create(modes, particles, max_dim);
}

}  // namespace qfim
