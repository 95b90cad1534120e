#include "qfim/symmetric_space.hpp"

#include <sstream>

namespace qfim {

std::size_t symmetric_dimension(int modes, int particles, std::size_t max_dim) {
  if (modes < 2) throw ValidationError("symmetric space needs at least 2 modes");
  if (particles < 1) throw ValidationError("symmetric space needs at least 1 particle");
  // binomial(N+n-1, n-1) with early overflow bailout
  unsigned long long dim = 1;
  for (int j = 1; j <= modes - 1; ++j) {
    dim = dim * static_cast<unsigned long long>(particles + j) / static_cast<unsigned long long>(j);
    if (dim > max_dim) {
      std::ostringstream msg;
      msg << "symmetric space dimension for n=" << modes << ", N=" << particles
          << " exceeds the configured maximum " << max_dim;
      throw ResourceError(msg.str());
    }
  }
  return static_cast<std::size_t>(dim);
}

SymmetricSpace::SymmetricSpace(int modes, int particles) : modes_(modes), particles_(particles) {}

std::shared_ptr<const SymmetricSpace> SymmetricSpace::create(int modes, int particles,
                                                             std::size_t max_dim) {
  const std::size_t dim = symmetric_dimension(modes, particles, max_dim);
  auto space = std::shared_ptr<SymmetricSpace>(new SymmetricSpace(modes, particles));
  space->states_.reserve(dim);

  // Reverse-lexicographic enumeration: leading modes take the largest
  // remaining count first, so (N, 0, ..., 0) is state 0.
  OccupationState occ(static_cast<std::size_t>(modes), 0);
  auto recurse = [&](auto&& self, int mode, int remaining) -> void {
    if (mode == modes - 1) {
      occ[static_cast<std::size_t>(mode)] = remaining;
      space->states_.push_back(occ);
      return;
    }
    for (int k = remaining; k >= 0; --k) {
      occ[static_cast<std::size_t>(mode)] = k;
      self(self, mode + 1, remaining - k);
    }
  };
  recurse(recurse, 0, particles);

  space->index_.reserve(space->states_.size());
  for (Index i = 0; i < space->dim(); ++i) {
    space->index_.emplace(space->states_[static_cast<std::size_t>(i)], i);
  }
  return space;
}

Index SymmetricSpace::index_of(const OccupationState& occ) const {
  auto it = index_.find(occ);
  if (it == index_.end()) {
    std::ostringstream msg;
    msg << "occupation tuple (";
    for (std::size_t k = 0; k < occ.size(); ++k) msg << (k ? "," : "") << occ[k];
    msg << ") is not a basis state of the (n=" << modes_ << ", N=" << particles_ << ") space";
    throw ValidationError(msg.str());
  }
  return it->second;
}

}  // namespace qfim
