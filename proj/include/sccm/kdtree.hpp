#pragma once

#include <span>
#include <vector>

#include <Eigen/Dense>

namespace sccm {

struct Neighbor {
  Eigen::Index id;
  double distance;  // Euclidean
};

/// Static k-d tree over a subset of the rows of a point matrix.
///
/// Results are ordered by (distance, id) so ties resolve the same way as a
/// stable brute-force scan.
class KdTree {
public:
  using Index = Eigen::Index;

  /// Indexes rows `subset` of `points` (all rows when subset is empty).
  explicit KdTree(const Eigen::Ref<const Eigen::MatrixXd>& points, std::span<const Index> subset = {},
                  int leaf_size = 12);

  Index size() const { return static_cast<Index>(ids_.size()); }
  Index dim() const { return dim_; }

  /// k nearest indexed points to `query`, skipping the point whose id is
  /// `exclude` (-1 skips nothing). Fewer than k results only when the tree
  /// holds fewer points.
  void knn(const double* query, int k, Index exclude, std::vector<Neighbor>& out) const;
  std::vector<Neighbor> knn(const Eigen::Ref<const Eigen::VectorXd>& query, int k, Index exclude = -1) const;

  /// All indexed points within `radius` (inclusive), sorted.
  void radius_search(const double* query, double radius, Index exclude, std::vector<Neighbor>& out) const;

private:
  struct Node {
    Index begin, end;  // range in ids_ / points_
    int split_dim = -1;
    double split = 0.0;
    int left = -1, right = -1;
  };

  struct Heap;

  int build(Index begin, Index end, int leaf_size);
  void search_knn(int node, const double* q, Heap& heap, Index exclude) const;
  void search_radius(int node, const double* q, double r2, Index exclude, std::vector<Neighbor>& out) const;
  double sqdist(Index local, const double* q) const;

  Index dim_ = 0;
  Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> points_;
  std::vector<Index> ids_;
  std::vector<Node> nodes_;
};

/// Reference O(N) scan with the same ordering contract as KdTree::knn.
std::vector<Neighbor> brute_force_knn(const Eigen::Ref<const Eigen::MatrixXd>& points,
                                      std::span<const Eigen::Index> subset,
                                      const Eigen::Ref<const Eigen::VectorXd>& query, int k,
                                      Eigen::Index exclude = -1);

}  // namespace sccm
