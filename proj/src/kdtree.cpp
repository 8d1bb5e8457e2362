#include "sccm/kdtree.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "sccm/error.hpp"

namespace sccm {

namespace {

struct Candidate {
  double d2;
  Eigen::Index id;
  bool operator<(const Candidate& o) const { return d2 < o.d2 || (d2 == o.d2 && id < o.id); }
};

}  // namespace

// Bounded max-heap of the k best candidates seen so far.
struct KdTree::Heap {
  int k;
  std::vector<Candidate> items;

  bool full() const { return static_cast<int>(items.size()) >= k; }
  double worst() const { return items.front().d2; }

  void offer(double d2, Index id) {
    const Candidate c{d2, id};
    if (!full()) {
      items.push_back(c);
      std::push_heap(items.begin(), items.end());
    } else if (c < items.front()) {
      std::pop_heap(items.begin(), items.end());
      items.back() = c;
      std::push_heap(items.begin(), items.end());
    }
  }
};

KdTree::KdTree(const Eigen::Ref<const Eigen::MatrixXd>& points, std::span<const Index> subset, int leaf_size)
    : dim_(points.cols()) {
  if (subset.empty()) {
    ids_.resize(static_cast<std::size_t>(points.rows()));
    std::iota(ids_.begin(), ids_.end(), Index{0});
  } else {
    ids_.assign(subset.begin(), subset.end());
  }
  points_.resize(static_cast<Index>(ids_.size()), dim_);
  for (std::size_t i = 0; i < ids_.size(); ++i) {
    if (ids_[i] < 0 || ids_[i] >= points.rows()) throw argument_error("kd-tree subset index out of range");
    points_.row(static_cast<Index>(i)) = points.row(ids_[i]);
  }
  if (!ids_.empty()) build(0, static_cast<Index>(ids_.size()), std::max(1, leaf_size));
}

int KdTree::build(Index begin, Index end, int leaf_size) {
  const int id = static_cast<int>(nodes_.size());
  nodes_.push_back(Node{begin, end});
  if (end - begin <= leaf_size) return id;

  // Split on the widest coordinate at the median.
  auto block = points_.middleRows(begin, end - begin);
  const Eigen::RowVectorXd spread = block.colwise().maxCoeff() - block.colwise().minCoeff();
  Index dim = 0;
  const double width = spread.maxCoeff(&dim);
  if (width <= 0.0) return id;  // all coincident; keep as a leaf

  const Index mid = begin + (end - begin) / 2;
  std::vector<Index> order(static_cast<std::size_t>(end - begin));
  std::iota(order.begin(), order.end(), begin);
  std::nth_element(order.begin(), order.begin() + (mid - begin), order.end(), [&](Index a, Index b) {
    const double va = points_(a, dim), vb = points_(b, dim);
    return va < vb || (va == vb && a < b);
  });
  // Permute the block according to `order`.
  Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> tmp(end - begin, dim_);
  std::vector<Index> tmp_ids(order.size());
  for (std::size_t i = 0; i < order.size(); ++i) {
    tmp.row(static_cast<Index>(i)) = points_.row(order[i]);
    tmp_ids[i] = ids_[static_cast<std::size_t>(order[i])];
  }
  points_.middleRows(begin, end - begin) = tmp;
  std::copy(tmp_ids.begin(), tmp_ids.end(), ids_.begin() + begin);

  nodes_[static_cast<std::size_t>(id)].split_dim = static_cast<int>(dim);
  nodes_[static_cast<std::size_t>(id)].split = points_(mid, dim);
  const int left = build(begin, mid, leaf_size);
  const int right = build(mid, end, leaf_size);
  nodes_[static_cast<std::size_t>(id)].left = left;
  nodes_[static_cast<std::size_t>(id)].right = right;
  return id;
}

double KdTree::sqdist(Index local, const double* q) const {
  const double* p = points_.data() + local * dim_;
  double s = 0.0;
  for (Index j = 0; j < dim_; ++j) {
    const double d = p[j] - q[j];
    s += d * d;
  }
  return s;
}

void KdTree::search_knn(int node_id, const double* q, Heap& heap, Index exclude) const {
  const Node& node = nodes_[static_cast<std::size_t>(node_id)];
  if (node.split_dim < 0) {
    for (Index i = node.begin; i < node.end; ++i) {
      const Index id = ids_[static_cast<std::size_t>(i)];
      if (id == exclude) continue;
      heap.offer(sqdist(i, q), id);
    }
    return;
  }
  const double diff = q[node.split_dim] - node.split;
  const int near = diff < 0.0 ? node.left : node.right;
  const int far = diff < 0.0 ? node.right : node.left;
  search_knn(near, q, heap, exclude);
  // <= keeps equal-distance ties reachable for the (distance, id) order.
  if (!heap.full() || diff * diff <= heap.worst()) search_knn(far, q, heap, exclude);
}

void KdTree::knn(const double* query, int k, Index exclude, std::vector<Neighbor>& out) const {
  out.clear();
  if (k <= 0 || ids_.empty()) return;
  Heap heap{k, {}};
  heap.items.reserve(static_cast<std::size_t>(k) + 1);
  search_knn(0, query, heap, exclude);
  std::sort(heap.items.begin(), heap.items.end());
  out.reserve(heap.items.size());
  for (const auto& c : heap.items) out.push_back({c.id, std::sqrt(c.d2)});
}

std::vector<Neighbor> KdTree::knn(const Eigen::Ref<const Eigen::VectorXd>& query, int k, Index exclude) const {
  if (query.size() != dim_) throw argument_error("kd-tree query dimension mismatch");
  const Eigen::VectorXd q = query;
  std::vector<Neighbor> out;
  knn(q.data(), k, exclude, out);
  return out;
}

void KdTree::search_radius(int node_id, const double* q, double r2, Index exclude,
                           std::vector<Neighbor>& out) const {
  const Node& node = nodes_[static_cast<std::size_t>(node_id)];
  if (node.split_dim < 0) {
    for (Index i = node.begin; i < node.end; ++i) {
      const Index id = ids_[static_cast<std::size_t>(i)];
      if (id == exclude) continue;
      const double d2 = sqdist(i, q);
      if (d2 <= r2) out.push_back({id, d2});
    }
    return;
  }
  const double diff = q[node.split_dim] - node.split;
  if (diff <= 0.0 || diff * diff <= r2) search_radius(node.left, q, r2, exclude, out);
  if (diff >= 0.0 || diff * diff <= r2) search_radius(node.right, q, r2, exclude, out);
}

void KdTree::radius_search(const double* query, double radius, Index exclude, std::vector<Neighbor>& out) const {
  out.clear();
  if (ids_.empty()) return;
  search_radius(0, query, radius * radius, exclude, out);
  std::sort(out.begin(), out.end(), [](const Neighbor& a, const Neighbor& b) {
    return a.distance < b.distance || (a.distance == b.distance && a.id < b.id);
  });
  for (auto& n : out) n.distance = std::sqrt(n.distance);
}

std::vector<Neighbor> brute_force_knn(const Eigen::Ref<const Eigen::MatrixXd>& points,
                                      std::span<const Eigen::Index> subset,
                                      const Eigen::Ref<const Eigen::VectorXd>& query, int k, Eigen::Index exclude) {
  std::vector<Candidate> all;
  auto consider = [&](Eigen::Index id) {
    if (id == exclude) return;
    all.push_back({(points.row(id).transpose() - query).squaredNorm(), id});
  };
  if (subset.empty())
    for (Eigen::Index i = 0; i < points.rows(); ++i) consider(i);
  else
    for (Eigen::Index i : subset) consider(i);
  std::sort(all.begin(), all.end());
  std::vector<Neighbor> out;
  for (std::size_t i = 0; i < all.size() && static_cast<int>(i) < k; ++i)
    out.push_back({all[i].id, std::sqrt(all[i].d2)});
  return out;
}

}  // namespace sccm
