#include "qfim/su4.hpp"

#include <array>
#include <cmath>

namespace qfim {

namespace {

constexpr Complex kI{0.0, 1.0};
constexpr int kU = 0, kD = 1, kS = 2, kC = 3;

struct PairDef {
  const char* name;
  int i;
  int j;
};
constexpr std::array<PairDef, 6> kPairs = {{
    {"Q", kU, kD}, {"Sig", kS, kC}, {"M", kU, kC}, {"N", kS, kD}, {"U", kU, kS}, {"V", kC, kD},
}};

SparseCMatrix x_from(const SparseCMatrix& up) {
  return ((up + SparseCMatrix(up.adjoint())) * Complex(0.5, 0.0)).pruned();
}
SparseCMatrix y_from(const SparseCMatrix& up) {
  return ((up - SparseCMatrix(up.adjoint())) * (Complex(1.0, 0.0) / (2.0 * kI))).pruned();
}
SparseCMatrix z_from(const SparseCMatrix& up) {
  SparseCMatrix down = up.adjoint();
  return ((SparseCMatrix(up * down) - SparseCMatrix(down * up)) * Complex(0.5, 0.0)).pruned();
}

}  // namespace

Su4Catalog::Su4Catalog(SpacePtr space) : space_(std::move(space)) {
  if (!space_) throw ValidationError("Su4Catalog requires a space");
  if (space_->modes() != 4) throw ValidationError("Su4Catalog requires a four-mode space");
}

SparseCMatrix Su4Catalog::raising(const std::string& algebra) const {
  for (const auto& p : kPairs) {
    if (algebra == p.name) return transition_operator_sparse(*space_, p.i, p.j);
  }
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  if (algebra == "J") {
    return ((raising("M") + raising("N")) * Complex(inv_sqrt2, 0.0)).pruned();
  }
  if (algebra == "K") {
    return ((raising("U") + raising("V")) * Complex(inv_sqrt2, 0.0)).pruned();
  }
  if (algebra == "E") {
    return ((raising("Q") + raising("Sig")) * Complex(inv_sqrt2, 0.0)).pruned();
  }
  throw ValidationError("unknown su(4) sub-algebra '" + algebra + "'");
}

std::vector<std::string> Su4Catalog::names() const {
  std::vector<std::string> out;
  for (const auto& p : kPairs) {
    out.emplace_back(std::string(p.name) + "x");
    out.emplace_back(std::string(p.name) + "y");
    out.emplace_back(std::string(p.name) + "z");
  }
  out.emplace_back("Pz");
  for (const char* comp : {"J", "K", "E"}) {
    out.emplace_back(std::string(comp) + "x");
    out.emplace_back(std::string(comp) + "y");
    out.emplace_back(std::string(comp) + "z");
  }
  return out;
}

bool Su4Catalog::has(const std::string& name) const {
  for (const auto& n : names()) {
    if (n == name) return true;
  }
  return false;
}

SparseCMatrix Su4Catalog::sparse(const std::string& name) const {
  if (name.size() < 2) throw ValidationError("unknown su(4) operator '" + name + "'");
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);

  if (name == "Pz") {
    SparseCMatrix mz = z_from(raising("M"));
    SparseCMatrix nz = z_from(raising("N"));
    return ((mz - nz) * Complex(inv_sqrt2, 0.0)).pruned();
  }
  // Jz and Kz follow the collective-operator definitions (population
  // differences), not the commutator closure of their raising pairs.
  if (name == "Jz") {
    return ((z_from(raising("Q")) + z_from(raising("Sig"))) * Complex(inv_sqrt2, 0.0)).pruned();
  }
  if (name == "Kz") {
    return ((z_from(raising("Q")) - z_from(raising("Sig"))) * Complex(inv_sqrt2, 0.0)).pruned();
  }

  const char axis = name.back();
  const std::string algebra = name.substr(0, name.size() - 1);
  SparseCMatrix up = raising(algebra);
  switch (axis) {
    case 'x':
      return x_from(up);
    case 'y':
      return y_from(up);
    case 'z':
      return z_from(up);
    default:
      throw ValidationError("unknown su(4) operator '" + name + "'");
  }
}

HermitianOperator Su4Catalog::get(const std::string& name) const {
  return HermitianOperator(CMatrix(sparse(name)), name, space_);
}

}  // namespace qfim
