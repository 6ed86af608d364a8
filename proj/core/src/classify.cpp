#include "qembed/classify.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>

#include "qembed/errors.hpp"
#include "textio.hpp"

namespace qembed {

namespace detail {

double binary_logreg_loss_grad(const Matrix& x, const std::vector<int>& y01,
                               std::span<const double> weights, double l2,
                               std::span<double> grad_out) {
  const std::size_t n = x.rows();
  const std::size_t d = x.cols();
  if (weights.size() != d + 1 || grad_out.size() != d + 1) {
    throw ConfigError("binary_logreg_loss_grad: weight vector must have dim+1 entries");
  }
  if (y01.size() != n) throw ConfigError("binary_logreg_loss_grad: label count mismatch");

  std::fill(grad_out.begin(), grad_out.end(), 0.0);
  double loss = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double* row = x.data() + i * d;
    double z = weights[d];
    for (std::size_t j = 0; j < d; ++j) z += weights[j] * row[j];
    const double y = static_cast<double>(y01[i]);
    // log(1+e^z) - y*z, computed without overflow for large |z|.
    loss += std::max(z, 0.0) - y * z + std::log1p(std::exp(-std::abs(z)));
    const double sigma = 1.0 / (1.0 + std::exp(-z));
    const double residual = sigma - y;
    for (std::size_t j = 0; j < d; ++j) grad_out[j] += residual * row[j];
    grad_out[d] += residual;
  }
  const double inv_n = 1.0 / static_cast<double>(n);
  loss *= inv_n;
  for (double& g : grad_out) g *= inv_n;
  // Penalty skips the bias.
  for (std::size_t j = 0; j < d; ++j) {
    loss += 0.5 * l2 * weights[j] * weights[j];
    grad_out[j] += l2 * weights[j];
  }
  return loss;
}

}  // namespace detail

namespace {

std::vector<double> fit_binary(const Matrix& x, const std::vector<int>& y01,
                               const Hyperparams& hp) {
  const std::size_t d = x.cols();
  std::vector<double> w(d + 1, 0.0);
  std::vector<double> grad(d + 1, 0.0);
  std::vector<double> trial(d + 1, 0.0);
  std::vector<double> trial_grad(d + 1, 0.0);

  double lr = hp.learning_rate;
  double loss = detail::binary_logreg_loss_grad(x, y01, w, hp.l2, grad);
  for (std::size_t epoch = 0; epoch < hp.max_epochs; ++epoch) {
    double gnorm = 0.0;
    for (double g : grad) gnorm += g * g;
    if (std::sqrt(gnorm) < hp.tol) break;

    // Halve the step until the loss stops increasing.
    bool stepped = false;
    while (lr > 1e-18) {
      for (std::size_t j = 0; j <= d; ++j) trial[j] = w[j] - lr * grad[j];
      const double trial_loss = detail::binary_logreg_loss_grad(x, y01, trial, hp.l2, trial_grad);
      if (trial_loss <= loss) {
        w.swap(trial);
        grad.swap(trial_grad);
        loss = trial_loss;
        stepped = true;
        break;
      }
      lr *= 0.5;
    }
    if (!stepped) break;  // step size underflowed; nothing more to gain
  }
  return w;
}

}  // namespace

LogRegModel train_ovr_logreg(const Matrix& x, const std::vector<std::string>& labels,
                             const Hyperparams& hp) {
  if (x.rows() < 2) throw ConfigError("train_ovr_logreg: need at least two examples");
  if (labels.size() != x.rows()) {
    throw ConfigError("train_ovr_logreg: label count does not match example count");
  }
  if (!(hp.learning_rate > 0.0)) throw ConfigError("learning rate must be positive");
  if (!(hp.l2 >= 0.0)) throw ConfigError("l2 strength must be non-negative");
  if (hp.max_epochs == 0) throw ConfigError("max epochs must be at least 1");
  if (!(hp.tol >= 0.0)) throw ConfigError("tolerance must be non-negative");
  if (!x.all_finite()) throw NumericError("train_ovr_logreg: features contain non-finite values");

  std::vector<std::string> classes;
  std::unordered_map<std::string, std::size_t> class_index;
  for (const auto& label : labels) {
    if (class_index.emplace(label, classes.size()).second) classes.push_back(label);
  }
  if (classes.size() < 2) {
    throw ConfigError("train_ovr_logreg: need at least two distinct labels");
  }

  LogRegModel model;
  model.classes = classes;
  model.hp = hp;
  model.weights = Matrix(classes.size(), x.cols() + 1, 0.0);
  std::vector<int> y01(labels.size(), 0);
  for (std::size_t c = 0; c < classes.size(); ++c) {
    for (std::size_t i = 0; i < labels.size(); ++i) {
      y01[i] = labels[i] == classes[c] ? 1 : 0;
    }
    const std::vector<double> w = fit_binary(x, y01, hp);
    for (std::size_t j = 0; j < w.size(); ++j) model.weights(c, j) = w[j];
  }
  return model;
}

Prediction predict(const LogRegModel& model, std::span<const double> x) {
  const std::size_t d = model.feature_dim();
  if (x.size() != d) {
    throw ConfigError("predict: feature vector has dimension " + std::to_string(x.size()) +
                      ", model expects " + std::to_string(d));
  }
  Prediction p;
  p.scores.resize(model.classes.size(), 0.0);
  std::size_t best = 0;
  for (std::size_t c = 0; c < model.classes.size(); ++c) {
    double z = model.weights(c, d);
    for (std::size_t j = 0; j < d; ++j) z += model.weights(c, j) * x[j];
    p.scores[c] = 1.0 / (1.0 + std::exp(-z));
    if (p.scores[c] > p.scores[best]) best = c;
  }
  p.label = model.classes[best];
  return p;
}

void save_logreg_model(const std::string& path, const LogRegModel& model) {
  auto out = io::open_output(path);
  out << "qembed logreg-model v1\n";
  out << "classes " << model.classes.size() << "\n";
  for (const auto& name : model.classes) out << name << "\n";
  out << "dim " << model.feature_dim() << "\n";
  out << "hyperparams " << io::format_double(model.hp.l2) << " "
      << io::format_double(model.hp.learning_rate) << " " << model.hp.max_epochs << " "
      << io::format_double(model.hp.tol) << " " << model.hp.seed << "\n";
  out << "weights\n";
  for (std::size_t c = 0; c < model.weights.rows(); ++c) {
    for (std::size_t j = 0; j < model.weights.cols(); ++j) {
      if (j > 0) out << " ";
      out << io::format_double(model.weights(c, j));
    }
    out << "\n";
  }
  if (!out) throw DataError("failed writing " + path);
}

namespace {

std::string read_line_or_throw(std::istream& in, const std::string& path) {
  std::string line;
  if (!io::getline_crlf(in, line)) throw DataError("truncated classifier model: " + path);
  return line;
}

std::string expect_field(std::istream& in, const std::string& keyword, const std::string& path) {
  const std::string line = read_line_or_throw(in, path);
  if (line.rfind(keyword + " ", 0) != 0) {
    throw DataError("expected '" + keyword + "' line in " + path);
  }
  return line.substr(keyword.size() + 1);
}

}  // namespace

LogRegModel load_logreg_model(const std::string& path) {
  auto in = io::open_input(path);
  std::string header = read_line_or_throw(in, path);
  io::strip_bom(header);
  if (header != "qembed logreg-model v1") {
    throw DataError("unrecognized classifier model header in " + path);
  }
  LogRegModel model;
  const std::size_t c = io::parse_size(expect_field(in, "classes", path), path);
  if (c < 2) throw DataError("classifier model needs at least two classes in " + path);
  model.classes.reserve(c);
  for (std::size_t i = 0; i < c; ++i) model.classes.push_back(read_line_or_throw(in, path));
  const std::size_t d = io::parse_size(expect_field(in, "dim", path), path);
  const auto hp_fields = io::split_ws(expect_field(in, "hyperparams", path));
  if (hp_fields.size() != 5) throw DataError("malformed hyperparams line in " + path);
  model.hp.l2 = io::parse_double(hp_fields[0], path);
  model.hp.learning_rate = io::parse_double(hp_fields[1], path);
  model.hp.max_epochs = io::parse_size(hp_fields[2], path);
  model.hp.tol = io::parse_double(hp_fields[3], path);
  model.hp.seed = io::parse_size(hp_fields[4], path);
  if (read_line_or_throw(in, path) != "weights") {
    throw DataError("expected 'weights' line in " + path);
  }
  model.weights = Matrix(c, d + 1, 0.0);
  for (std::size_t i = 0; i < c; ++i) {
    const auto fields = io::split_ws(read_line_or_throw(in, path));
    if (fields.size() != d + 1) {
      throw DataError("weight row " + std::to_string(i) + " has wrong arity in " + path);
    }
    for (std::size_t j = 0; j <= d; ++j) {
      model.weights(i, j) = io::parse_double(fields[j], path);
    }
  }
  return model;
}

}  // namespace qembed
