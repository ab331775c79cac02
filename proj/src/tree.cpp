#include "subdrift/tree.hpp"

#include <algorithm>
#include <cstdio>
#include <numeric>
#include <stdexcept>

namespace subdrift {

namespace {

double gini(long n1, long n) {
  if (n == 0) return 0.0;
  double p = static_cast<double>(n1) / static_cast<double>(n);
  return 2.0 * p * (1.0 - p);
}

struct SplitChoice {
  int attribute = -1;
  double threshold = 0.0;
  double impurity = 0.0;  // weighted child impurity
};

struct Builder {
  const Dataset& data;
  DecisionTree::FitOptions opts;
  std::vector<int>& order;  // index buffer, partitioned in place

  // Scratch reused across nodes.
  std::vector<std::pair<double, int>> values;

  SplitChoice best_split(int begin, int end) {
    SplitChoice best;
    long n = end - begin;
    for (int a = 0; a < kAttributeCount; ++a) {
      values.clear();
      for (int i = begin; i < end; ++i) {
        const Record& r = data.records[static_cast<std::size_t>(order[static_cast<std::size_t>(i)])];
        values.emplace_back(r.value(static_cast<Attribute>(a)),
                            data.labels[static_cast<std::size_t>(order[static_cast<std::size_t>(i)])]);
      }
      std::sort(values.begin(), values.end());
      long total1 = 0;
      for (const auto& [v, y] : values) total1 += y;
      long left_n = 0, left1 = 0;
      for (long i = 0; i + 1 < n; ++i) {
        ++left_n;
        left1 += values[static_cast<std::size_t>(i)].second;
        if (values[static_cast<std::size_t>(i)].first ==
            values[static_cast<std::size_t>(i + 1)].first) {
          continue;
        }
        if (left_n < opts.min_leaf || n - left_n < opts.min_leaf) continue;
        double imp = (static_cast<double>(left_n) * gini(left1, left_n) +
                      static_cast<double>(n - left_n) * gini(total1 - left1, n - left_n)) /
                     static_cast<double>(n);
        if (best.attribute < 0 || imp < best.impurity) {
          best.attribute = a;
          best.threshold = (values[static_cast<std::size_t>(i)].first +
                            values[static_cast<std::size_t>(i + 1)].first) / 2.0;
          best.impurity = imp;
        }
      }
    }
    return best;
  }
};

}  // namespace

DecisionTree DecisionTree::fit(const Dataset& data, FitOptions opts) {
  if (data.records.empty()) throw std::invalid_argument("cannot fit a tree on an empty dataset");
  if (data.records.size() != data.labels.size()) {
    throw std::invalid_argument("records/labels size mismatch");
  }
  if (opts.max_depth < 0 || opts.min_leaf < 1) {
    throw std::invalid_argument("bad tree fit options");
  }

  std::vector<int> order(data.records.size());
  std::iota(order.begin(), order.end(), 0);
  Builder builder{data, opts, order, {}};

  DecisionTree tree;
  // Recursive lambda over [begin, end) node ranges; returns node index.
  auto make_node = [&](auto&& self, int begin, int end, int depth) -> int {
    long n = end - begin;
    long n1 = 0;
    for (int i = begin; i < end; ++i) {
      n1 += data.labels[static_cast<std::size_t>(order[static_cast<std::size_t>(i)])];
    }
    Node node;
    node.label = n1 * 2 > n ? 1 : 0;
    tree.depth_ = std::max(tree.depth_, depth);
    bool pure = n1 == 0 || n1 == n;
    if (depth >= opts.max_depth || pure || n < 2L * opts.min_leaf) {
      int idx = static_cast<int>(tree.nodes_.size());
      tree.nodes_.push_back(node);
      return idx;
    }
    SplitChoice split = builder.best_split(begin, end);
    double parent_imp = gini(n1, n);
    if (split.attribute < 0 || !(split.impurity < parent_imp)) {
      int idx = static_cast<int>(tree.nodes_.size());
      tree.nodes_.push_back(node);
      return idx;
    }
    node.attribute = split.attribute;
    node.threshold = split.threshold;
    auto mid_it = std::partition(
        order.begin() + begin, order.begin() + end, [&](int ri) {
          return data.records[static_cast<std::size_t>(ri)].value(
                     static_cast<Attribute>(split.attribute)) < split.threshold;
        });
    int mid = static_cast<int>(mid_it - order.begin());
    int idx = static_cast<int>(tree.nodes_.size());
    tree.nodes_.push_back(node);
    int left = self(self, begin, mid, depth + 1);
    int right = self(self, mid, end, depth + 1);
    tree.nodes_[static_cast<std::size_t>(idx)].left = left;
    tree.nodes_[static_cast<std::size_t>(idx)].right = right;
    return idx;
  };
  make_node(make_node, 0, static_cast<int>(data.records.size()), 0);

  long correct = 0;
  for (std::size_t i = 0; i < data.records.size(); ++i) {
    correct += tree.predict(data.records[i]) == data.labels[i];
  }
  tree.training_accuracy_ = static_cast<double>(correct) / static_cast<double>(data.records.size());
  return tree;
}

int DecisionTree::predict(const Record& r) const {
  if (nodes_.empty()) throw std::logic_error("predict on an unfitted tree");
  int idx = 0;
  while (nodes_[static_cast<std::size_t>(idx)].attribute >= 0) {
    const Node& node = nodes_[static_cast<std::size_t>(idx)];
    idx = r.value(static_cast<Attribute>(node.attribute)) < node.threshold ? node.left
                                                                           : node.right;
  }
  return nodes_[static_cast<std::size_t>(idx)].label;
}

std::string DecisionTree::dump() const {
  std::string out;
  auto walk = [&](auto&& self, int idx, int indent) -> void {
    const Node& node = nodes_[static_cast<std::size_t>(idx)];
    out.append(static_cast<std::size_t>(indent) * 2, ' ');
    if (node.attribute < 0) {
      out += "leaf label=" + std::to_string(node.label) + "\n";
      return;
    }
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6g", node.threshold);
    out += std::string(attribute_name(static_cast<Attribute>(node.attribute)));
    out += " < ";
    out += buf;
    out += "\n";
    self(self, node.left, indent + 1);
    self(self, node.right, indent + 1);
  };
  if (!nodes_.empty()) walk(walk, 0, 0);
  return out;
}

}  // namespace subdrift
