#ifndef QEMBED_CLASSIFY_HPP
#define QEMBED_CLASSIFY_HPP

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "qembed/matrix.hpp"

namespace qembed {

struct Hyperparams {
  double l2 = 1e-4;            // L2 strength; the bias column is not penalized
  double learning_rate = 0.1;  // initial step, halved whenever the loss would rise
  std::size_t max_epochs = 1000;
  double tol = 1e-6;           // gradient-norm stopping threshold
  std::uint64_t seed = 0;      // kept for interface stability; zero init uses no randomness
};

// One-vs-rest logistic regression. weights is C x (d+1) with the bias in the
// last column, rows aligned with classes.
struct LogRegModel {
  std::vector<std::string> classes;
  Matrix weights;
  Hyperparams hp;

  std::size_t feature_dim() const { return weights.cols() == 0 ? 0 : weights.cols() - 1; }
};

// Full-batch gradient descent on the L2-regularized mean negative
// log-likelihood, one binary problem per class. Zero initialization, loss
// monotone by construction (backtracking halving), stops at gradient norm
// < tol or max_epochs. Requires >= 2 distinct labels and finite features.
LogRegModel train_ovr_logreg(const Matrix& x, const std::vector<std::string>& labels,
                             const Hyperparams& hp);

struct Prediction {
  std::string label;           // argmax score, ties broken by earliest class
  std::vector<double> scores;  // sigmoid(w_c . x + b_c), aligned with classes
};

Prediction predict(const LogRegModel& model, std::span<const double> x);

// Versioned text container with class list, feature dim and weight rows.
void save_logreg_model(const std::string& path, const LogRegModel& model);
LogRegModel load_logreg_model(const std::string& path);

namespace detail {
// Loss and gradient of one binary subproblem at the given (d+1)-weight vector
// (bias last). Exposed so tests can check the analytic gradient against
// finite differences of the loss.
double binary_logreg_loss_grad(const Matrix& x, const std::vector<int>& y01,
                               std::span<const double> weights, double l2,
                               std::span<double> grad_out);
}  // namespace detail

}  // namespace qembed

#endif  // QEMBED_CLASSIFY_HPP
