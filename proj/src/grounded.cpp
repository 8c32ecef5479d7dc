#include "grounded.hpp"

#include <Eigen/Cholesky>
#include <Eigen/SparseCholesky>

#include "coherence_lab/error.hpp"

namespace coherence_lab::detail {

namespace {

constexpr Eigen::Index kSmallSystem = 48;
constexpr Eigen::Index kBlockColumns = 128;

// Dense Cholesky for small or dense systems, sparse LDLT (AMD ordering) otherwise.
bool prefer_dense(Eigen::Index m, Eigen::Index nonzeros) {
  return m <= kSmallSystem || nonzeros * 8 > m * m;
}

}  // namespace

struct GroundedSystem::Impl {
  bool dense = true;
  Eigen::LLT<Eigen::MatrixXd> dense_factor;
  Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> sparse_factor;
};

GroundedSystem::GroundedSystem(const Graph& g, const std::vector<bool>& grounded,
                               std::span<const double> shift)
    : position_(g.node_count(), -1), impl_(std::make_unique<Impl>()) {
  for (NodeId v = 0; v < g.node_count(); ++v) {
    if (!grounded[v]) {
      position_[v] = static_cast<Eigen::Index>(kept_.size());
      kept_.push_back(v);
    }
  }
  const auto m = static_cast<Eigen::Index>(kept_.size());
  if (m == 0) return;

  std::vector<Eigen::Triplet<double>> triplets;
  triplets.reserve(4 * g.edge_count() + kept_.size());
  for (const Edge& e : g.edges()) {
    const Eigen::Index pu = position_[e.u];
    const Eigen::Index pv = position_[e.v];
    if (pu >= 0) triplets.emplace_back(pu, pu, e.weight);
    if (pv >= 0) triplets.emplace_back(pv, pv, e.weight);
    if (pu >= 0 && pv >= 0) {
      triplets.emplace_back(pu, pv, -e.weight);
      triplets.emplace_back(pv, pu, -e.weight);
    }
  }
  if (!shift.empty()) {
    for (NodeId v : kept_) {
      if (shift[v] != 0.0) triplets.emplace_back(position_[v], position_[v], shift[v]);
    }
  }
  Eigen::SparseMatrix<double> A(m, m);
  A.setFromTriplets(triplets.begin(), triplets.end());

  bool ok = true;
  impl_->dense = prefer_dense(m, A.nonZeros());
  if (impl_->dense) {
    impl_->dense_factor.compute(Eigen::MatrixXd(A));
    ok = impl_->dense_factor.info() == Eigen::Success;
  } else {
    impl_->sparse_factor.compute(A);
    ok = impl_->sparse_factor.info() == Eigen::Success &&
         (impl_->sparse_factor.vectorD().array() > 0.0).all();
  }
  if (!ok) {
    fail(ErrorCode::Disconnected,
         "grounded Laplacian is not positive definite; some component has no leader");
  }
}

GroundedSystem::~GroundedSystem() = default;
GroundedSystem::GroundedSystem(GroundedSystem&&) noexcept = default;
GroundedSystem& GroundedSystem::operator=(GroundedSystem&&) noexcept = default;

Eigen::VectorXd GroundedSystem::inverse_diagonal() const {
  const auto m = static_cast<Eigen::Index>(kept_.size());
  Eigen::VectorXd diag(m);
  if (m == 0) return diag;
  if (impl_->dense) {
    // diag(A^-1)_i is the squared norm of column i of L^-1 when A = L L'.
    const Eigen::MatrixXd lower_inv = impl_->dense_factor.matrixL().solve(Eigen::MatrixXd::Identity(m, m));
    return lower_inv.colwise().squaredNorm().transpose();
  }
  for (Eigen::Index start = 0; start < m; start += kBlockColumns) {
    const Eigen::Index cols = std::min(kBlockColumns, m - start);
    Eigen::MatrixXd rhs = Eigen::MatrixXd::Zero(m, cols);
    for (Eigen::Index c = 0; c < cols; ++c) rhs(start + c, c) = 1.0;
    const Eigen::MatrixXd x = impl_->sparse_factor.solve(rhs);
    for (Eigen::Index c = 0; c < cols; ++c) diag(start + c) = x(start + c, c);
  }
  return diag;
}

Eigen::VectorXd GroundedSystem::solve(const Eigen::VectorXd& rhs) const {
  if (kept_.empty()) return {};
  if (impl_->dense) return impl_->dense_factor.solve(rhs);
  return impl_->sparse_factor.solve(rhs);
}

double GroundedSystem::inverse_entry(NodeId v) const {
  const Eigen::Index p = position_.at(v);
  if (p < 0) fail(ErrorCode::LeaderQueried, "node " + std::to_string(v) + " is grounded");
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(kept_.size()));
  rhs(p) = 1.0;
  return solve(rhs)(p);
}

}  // namespace coherence_lab::detail
