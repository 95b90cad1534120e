#include "qfim/lie_basis.hpp"

#include <cmath>
#include <sstream>

namespace qfim {

namespace {

constexpr Complex kI{0.0, 1.0};

SparseCMatrix pair_x(const SymmetricSpace& space, int i, int j) {
  SparseCMatrix up = transition_operator_sparse(space, i, j);
  return ((up + SparseCMatrix(up.adjoint())) * Complex(0.5, 0.0)).pruned();
}

SparseCMatrix pair_y(const SymmetricSpace& space, int i, int j) {
  SparseCMatrix up = transition_operator_sparse(space, i, j);
  return ((up - SparseCMatrix(up.adjoint())) * (Complex(1.0, 0.0) / (2.0 * kI))).pruned();
}

/// Diagonal operator sum_k w_k n_k / 2 from a weight vector over modes.
SparseCMatrix diagonal_weighted(const SymmetricSpace& space, const std::vector<double>& weights) {
  std::vector<Eigen::Triplet<Complex>> entries;
  entries.reserve(static_cast<std::size_t>(space.dim()));
  for (Index s = 0; s < space.dim(); ++s) {
    const OccupationState& occ = space.occupations(s);
    double value = 0.0;
    for (int m = 0; m < space.modes(); ++m) value += weights[static_cast<std::size_t>(m)] * occ[static_cast<std::size_t>(m)];
    if (value != 0.0) entries.emplace_back(s, s, Complex(0.5 * value, 0.0));
  }
  SparseCMatrix op(space.dim(), space.dim());
  op.setFromTriplets(entries.begin(), entries.end());
  return op;
}

double trace_of_square(const SparseCMatrix& a) {
  double sum = 0.0;
  for (int col = 0; col < a.outerSize(); ++col) {
    for (SparseCMatrix::InnerIterator it(a, col); it; ++it) sum += std::norm(it.value());
  }
  return sum;  // Tr[A^dag A] = Tr[A^2] for Hermitian A
}

std::string pair_label(const char* axis, int i, int j) {
  std::ostringstream out;
  out << "A" << axis << "_" << (i + 1) << "_" << (j + 1);
  return out.str();
}

}  // namespace

LieBasis build_lie_basis(SpacePtr space) {
  if (!space) throw ValidationError("build_lie_basis requires a space");
  const int n = space->modes();
  LieBasis basis(space);

  std::vector<std::pair<std::string, SparseCMatrix>> ops;
  ops.reserve(static_cast<std::size_t>(n) * static_cast<std::size_t>(n));

  if (n == 4) {
    // Named su(4) set in the conventional order, with modes (u, d, s, c).
    // N_y and V_y carry the orientation of the named raising operators
    // s^dag d and c^dag d, which flips the sign of the generic A^y_{23},
    // A^y_{24} pair components.
    struct Named { const char* base; int i; int j; };
    const Named subalgebras[] = {{"Q", 0, 1}, {"Sig", 2, 3}, {"M", 0, 3}, {"N", 2, 1}, {"U", 0, 2}, {"V", 3, 1}};
    auto x_of = [&](const Named& a) { return pair_x(*space, a.i, a.j); };
    auto y_of = [&](const Named& a) { return pair_y(*space, a.i, a.j); };
    auto z_of = [&](const Named& a) {
      std::vector<double> w(4, 0.0);
      w[static_cast<std::size_t>(a.i)] = 1.0;
      w[static_cast<std::size_t>(a.j)] = -1.0;
      return diagonal_weighted(*space, w);
    };
    ops.emplace_back("Qx", x_of(subalgebras[0]));
    ops.emplace_back("Qy", y_of(subalgebras[0]));
    ops.emplace_back("Qz", z_of(subalgebras[0]));
    ops.emplace_back("Sigx", x_of(subalgebras[1]));
    ops.emplace_back("Sigy", y_of(subalgebras[1]));
    ops.emplace_back("Sigz", z_of(subalgebras[1]));
    ops.emplace_back("Mx", x_of(subalgebras[2]));
    ops.emplace_back("My", y_of(subalgebras[2]));
    ops.emplace_back("Nx", x_of(subalgebras[3]));
    ops.emplace_back("Ny", y_of(subalgebras[3]));
    {
      // Pz = (Mz - Nz)/sqrt(2), the normalized alternating sum A^z_13 + A^z_24.
      std::vector<double> w = {1.0, 1.0, -1.0, -1.0};
      SparseCMatrix pz = diagonal_weighted(*space, w) * Complex(1.0 / std::sqrt(2.0), 0.0);
      ops.emplace_back("Pz", std::move(pz));
    }
    ops.emplace_back("Ux", x_of(subalgebras[4]));
    ops.emplace_back("Uy", y_of(subalgebras[4]));
    ops.emplace_back("Vx", x_of(subalgebras[5]));
    ops.emplace_back("Vy", y_of(subalgebras[5]));
  } else {
    // (a) pair components
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) {
        if (n == 2) {
          ops.emplace_back("Jx", pair_x(*space, i, j));
          ops.emplace_back("Jy", pair_y(*space, i, j));
        } else {
          ops.emplace_back(pair_label("x", i, j), pair_x(*space, i, j));
          ops.emplace_back(pair_label("y", i, j), pair_y(*space, i, j));
        }
      }
    }
    // (b) primary diagonals A^z_{12}, A^z_{34}, ...
    const int primaries = n / 2;
    for (int p = 0; p < primaries; ++p) {
      std::vector<double> w(static_cast<std::size_t>(n), 0.0);
      w[static_cast<std::size_t>(2 * p)] = 1.0;
      w[static_cast<std::size_t>(2 * p + 1)] = -1.0;
      ops.emplace_back(n == 2 ? "Jz" : pair_label("z", 2 * p, 2 * p + 1), diagonal_weighted(*space, w));
    }
    // (c) alternating-index sums: for k = 2, 4, ... the weight vector is
    // +1 on modes 1..k and -1 spread over modes k+1, k+2, matching
    // sum_i [A^z_{(2i-1)(k+1)} + A^z_{(2i)(k+2)}].
    const int k_limit = (n % 2 == 0) ? n - 2 : n - 3;
    for (int k = 2; k <= k_limit; k += 2) {
      std::vector<double> w(static_cast<std::size_t>(n), 0.0);
      for (int m = 0; m < k; ++m) w[static_cast<std::size_t>(m)] = 1.0;
      w[static_cast<std::size_t>(k)] = -k / 2.0;
      w[static_cast<std::size_t>(k + 1)] = -k / 2.0;
      std::ostringstream label;
      label << "Azsum_" << k;
      ops.emplace_back(label.str(), diagonal_weighted(*space, w));
    }
    if (n % 2 == 1) {
      // terminal operator A^z_{1n} + ... + A^z_{(n-1)n}
      std::vector<double> w(static_cast<std::size_t>(n), 1.0);
      w[static_cast<std::size_t>(n - 1)] = -(n - 1.0);
      std::ostringstream label;
      label << "Azsum_" << (n - 1);
      ops.emplace_back(label.str(), diagonal_weighted(*space, w));
    }
  }

  // Normalize every operator to the shared norm C = Tr[(A^z_12)^2]. The pair
  // components already carry it; the diagonal sums need N_i = sqrt(C/Tr[O^2]).
  std::vector<double> w12(static_cast<std::size_t>(n), 0.0);
  w12[0] = 1.0;
  w12[1] = -1.0;
  basis.norm_c_ = trace_of_square(diagonal_weighted(*space, w12));

  basis.generators_.reserve(ops.size());
  basis.sparse_.reserve(ops.size());
  for (auto& [label, op] : ops) {
    const double norm2 = trace_of_square(op);
    const double scale = std::sqrt(basis.norm_c_ / norm2);
    if (std::abs(scale - 1.0) > 1e-12) op = op * Complex(scale, 0.0);
    basis.generators_.emplace_back(CMatrix(op), label, space);
    basis.sparse_.push_back(std::move(op));
  }

  if (basis.size() != n * n - 1) {
    throw NumericalError("build_lie_basis produced the wrong generator count");
  }
  return basis;
}

std::vector<std::string> LieBasis::labels() const {
  std::vector<std::string> out;
  out.reserve(generators_.size());
  for (const auto& g : generators_) out.push_back(g.label());
  return out;
}

int LieBasis::label_index(const std::string& label) const {
  for (std::size_t k = 0; k < generators_.size(); ++k) {
    if (generators_[k].label() == label) return static_cast<int>(k);
  }
  return -1;
}

double LieBasis::killing_norm_closed_form() const {
  // prod_{j=1..n} (N+j) / (n+1)!  ==  prod_{j=1..n} (N+j)/(j+1)
  const int n = modes();
  double value = 1.0;
  for (int j = 1; j <= n; ++j) value *= static_cast<double>(particles() + j) / static_cast<double>(j + 1);
  return value;
}

CVector LieBasis::apply_generator(int mu, const CVector& v) const {
  return sparse_.at(static_cast<std::size_t>(mu)) * v;
}

CVector LieBasis::apply_combination(const RVector& coeffs, const CVector& v) const {
  if (coeffs.size() != size()) throw ValidationError("coefficient vector has wrong length");
  CVector out = CVector::Zero(v.size());
  for (int mu = 0; mu < size(); ++mu) {
    if (coeffs[mu] != 0.0) out += coeffs[mu] * (sparse_[static_cast<std::size_t>(mu)] * v);
  }
  return out;
}

SparseCMatrix LieBasis::combination_sparse(const RVector& coeffs) const {
  if (coeffs.size() != size()) throw ValidationError("coefficient vector has wrong length");
  SparseCMatrix out(space_->dim(), space_->dim());
  for (int mu = 0; mu < size(); ++mu) {
    if (coeffs[mu] != 0.0) out = (out + Complex(coeffs[mu], 0.0) * sparse_[static_cast<std::size_t>(mu)]).pruned();
  }
  return out;
}

HermitianOperator LieBasis::materialize(const RVector& coeffs, std::string label) const {
  return HermitianOperator(CMatrix(combination_sparse(coeffs)), std::move(label), space_);
}

Decomposition decompose_operator(const LieBasis& basis, const HermitianOperator& op) {
  require_compatible(basis.space(), op.space(), "decompose_operator");
  const int k = basis.size();
  RVector coeffs(k);
  for (int mu = 0; mu < k; ++mu) {
    Complex tr = 0.0;
    const SparseCMatrix& g = basis.sparse_generator(mu);
    for (int col = 0; col < g.outerSize(); ++col) {
      for (SparseCMatrix::InnerIterator it(g, col); it; ++it) {
        tr += it.value() * op.matrix()(col, it.row());  // Tr[G op] = sum G(r,c) op(c,r)
      }
    }
    coeffs[mu] = tr.real() / basis.norm_c();
  }
  CMatrix rest = op.matrix();
  const Complex mean_trace = op.matrix().trace() / static_cast<double>(op.dim());
  rest.diagonal().array() -= mean_trace;
  for (int mu = 0; mu < k; ++mu) {
    if (coeffs[mu] != 0.0) rest -= coeffs[mu] * CMatrix(basis.sparse_generator(mu));
  }
  return {std::move(coeffs), rest.norm()};
}

}  // namespace qfim
