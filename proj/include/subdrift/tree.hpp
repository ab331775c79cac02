#pragma once

#include <string>
#include <vector>

#include "subdrift/agrawal.hpp"

namespace subdrift {

struct Dataset {
  std::vector<Record> records;
  std::vector<int> labels;  // {0, 1}
};

// Binary CART with Gini impurity. All attributes are treated as ordered
// numeric; split thresholds are midpoints between consecutive distinct
// values and route "value < threshold" to the left child. Ties between
// splits break toward the lowest attribute id, then the lowest threshold,
// so fitting is fully deterministic.
class DecisionTree {
 public:
  struct FitOptions {
    int max_depth = 5;
    int min_leaf = 5;
  };

  static DecisionTree fit(const Dataset& data, FitOptions opts);
  static DecisionTree fit(const Dataset& data) { return fit(data, FitOptions{}); }

  int predict(const Record& r) const;
  int depth() const { return depth_; }
  double training_accuracy() const { return training_accuracy_; }
  std::size_t node_count() const { return nodes_.size(); }

  // Indented one-node-per-line text form, stable across identical fits.
  std::string dump() const;

 private:
  struct Node {
    int attribute = -1;       // -1 marks a leaf
    double threshold = 0.0;
    int left = -1;
    int right = -1;
    int label = 0;            // majority label (leaves; kept on splits too)
  };

  std::vector<Node> nodes_;
  int depth_ = 0;
  double training_accuracy_ = 0.0;
};

}  // namespace subdrift
