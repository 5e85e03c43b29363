#include "quditcut/qubo.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <map>
#include <stdexcept>

#include <json.hpp>

namespace quditcut {

namespace {

// Shortest round-trip decimal form, so exports are bit-exact and auditable.
std::string format_double(double x) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, res.ptr);
}

class LineWrapper {
 public:
  explicit LineWrapper(std::string& out) : out_(out) {}

  void append(const std::string& token) {
    if (width_ > 0 && width_ + token.size() + 1 > 200) {
      out_ += "\n ";
      width_ = 1;
    }
    out_ += " " + token;
    width_ += token.size() + 1;
  }

  void finish() {
    out_ += "\n";
    width_ = 0;
  }

 private:
  std::string& out_;
  std::size_t width_ = 0;
};

std::string signed_term(double coeff, const std::string& body, bool first) {
  std::string token;
  if (coeff < 0) {
    token = first ? "-" : "- ";
  } else if (!first) {
    token = "+ ";
  }
  token += format_double(std::fabs(coeff));
  if (!body.empty()) token += " " + body;
  return token;
}

}  // namespace

std::string to_string(ConstraintMode mode) {
  return mode == ConstraintMode::penalized ? "penalized" : "hard";
}

ConstraintMode constraint_mode_from_string(const std::string& name) {
  if (name == "penalized") return ConstraintMode::penalized;
  if (name == "hard") return ConstraintMode::hard;
  throw std::invalid_argument("unknown constraint mode '" + name +
                              "' (expected 'penalized' or 'hard')");
}

std::string QuboModel::variable_name(int index) const {
  const int vertex = index / num_partitions;
  const int level = index % num_partitions;
  return "x" + std::to_string(vertex) + "_" + std::to_string(level);
}

QuboModel build_qubo(const MinDCutInstance& instance, ConstraintMode mode) {
  const int n = instance.graph.num_vertices;
  const int d = instance.num_partitions;
  if (n < 1 || d < 2) throw std::invalid_argument("invalid instance");

  QuboModel model;
  model.num_vertices = n;
  model.num_partitions = d;
  model.c_max = instance.penalty.c_max;
  model.lambda1 = instance.penalty.lambda1;
  model.lambda2 = instance.penalty.lambda2;
  model.mode = mode;
  model.linear.assign(static_cast<std::size_t>(n) * d, 0.0);

  std::map<std::pair<int, int>, double> quad;

  // Cut objective: W (1 - sum_k x_{i,k} x_{j,k}) per edge.
  for (const auto& e : instance.graph.edges) {
    model.constant += static_cast<double>(e.weight);
    for (int k = 0; k < d; ++k) {
      quad[{model.variable_index(e.i, k), model.variable_index(e.j, k)}] -=
          static_cast<double>(e.weight);
    }
  }

  if (mode == ConstraintMode::penalized) {
    // Per-partition parabola -l1 (C - y_k) + l2 (C - y_k)^2 with
    // y_k = sum_i x_{i,k}; expanded with x^2 = x for binaries:
    //   const: -l1 C + l2 C^2
    //   linear: l1 - 2 l2 C + l2 on every x_{i,k}
    //   quadratic: 2 l2 on every vertex pair within a partition.
    const double l1 = model.lambda1;
    const double l2 = model.lambda2;
    const double cmax = static_cast<double>(model.c_max);
    model.constant += d * (-l1 * cmax + l2 * cmax * cmax);
    const double lin = l1 - 2.0 * l2 * cmax + l2;
    for (auto& v : model.linear) v += lin;
    for (int k = 0; k < d; ++k) {
      for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
          quad[{model.variable_index(i, k), model.variable_index(j, k)}] +=
              2.0 * l2;
        }
      }
    }
  }

  model.quadratic.reserve(quad.size());
  for (const auto& [key, coeff] : quad) {
    if (coeff != 0.0) model.quadratic.push_back({key.first, key.second, coeff});
  }
  return model;
}

double qubo_objective(const QuboModel& model, const std::vector<int>& bits) {
  if (bits.size() != model.linear.size()) {
    throw std::invalid_argument("bit vector length mismatch");
  }
  double value = model.constant;
  for (std::size_t v = 0; v < bits.size(); ++v) {
    if (bits[v]) value += model.linear[v];
  }
  for (const auto& term : model.quadratic) {
    if (bits[term.a] && bits[term.b]) value += term.coefficient;
  }
  return value;
}

bool satisfies_one_hot(const QuboModel& model, const std::vector<int>& bits) {
  for (int i = 0; i < model.num_vertices; ++i) {
    int active = 0;
    for (int k = 0; k < model.num_partitions; ++k) {
      active += bits[model.variable_index(i, k)] ? 1 : 0;
    }
    if (active != 1) return false;
  }
  return true;
}

std::vector<int> decode_assignment(const QuboModel& model,
                                   const std::vector<int>& bits) {
  if (!satisfies_one_hot(model, bits)) {
    throw std::invalid_argument("bitstring violates the one-hot rows");
  }
  std::vector<int> labels(static_cast<std::size_t>(model.num_vertices), 0);
  for (int i = 0; i < model.num_vertices; ++i) {
    for (int k = 0; k < model.num_partitions; ++k) {
      if (bits[model.variable_index(i, k)]) labels[i] = k;
    }
  }
  return labels;
}

std::string to_lp_string(const QuboModel& model) {
  std::string out;
  out += "\\ quditcut qubo export, schema 1\n";
  out += "\\ n=" + std::to_string(model.num_vertices) +
         " d=" + std::to_string(model.num_partitions) +
         " c_max=" + std::to_string(model.c_max) +
         " lambda1=" + format_double(model.lambda1) +
         " lambda2=" + format_double(model.lambda2) +
         " capacity=" + to_string(model.mode) + "\n";
  out += "Minimize\n obj:";

  LineWrapper wrap(out);
  bool first = true;
  if (model.constant != 0.0) {
    wrap.append(signed_term(model.constant, "", first));
    first = false;
  }
  for (std::size_t v = 0; v < model.linear.size(); ++v) {
    if (model.linear[v] == 0.0) continue;
    wrap.append(signed_term(model.linear[v],
                            model.variable_name(static_cast<int>(v)), first));
    first = false;
  }
  if (!model.quadratic.empty()) {
    wrap.append(first ? "[" : "+ [");
    bool qfirst = true;
    for (const auto& term : model.quadratic) {
      // LP quadratic sections carry doubled coefficients inside [ ] / 2.
      wrap.append(signed_term(2.0 * term.coefficient,
                              model.variable_name(term.a) + " * " +
                                  model.variable_name(term.b),
                              qfirst));
      qfirst = false;
    }
    wrap.append("] / 2");
    first = false;
  }
  if (first) wrap.append("0");
  wrap.finish();

  out += "Subject To\n";
  for (int i = 0; i < model.num_vertices; ++i) {
    out += " assign_" + std::to_string(i) + ":";
    LineWrapper row(out);
    for (int k = 0; k < model.num_partitions; ++k) {
      row.append((k == 0 ? "" : "+ ") +
                 model.variable_name(model.variable_index(i, k)));
    }
    row.append("= 1");
    row.finish();
  }
  if (model.mode == ConstraintMode::hard) {
    for (int k = 0; k < model.num_partitions; ++k) {
      out += " cap_" + std::to_string(k) + ":";
      LineWrapper row(out);
      for (int i = 0; i < model.num_vertices; ++i) {
        row.append((i == 0 ? "" : "+ ") +
                   model.variable_name(model.variable_index(i, k)));
      }
      row.append("<= " + std::to_string(model.c_max));
      row.finish();
    }
  }

  out += "Binary\n";
  {
    LineWrapper names(out);
    for (std::size_t v = 0; v < model.linear.size(); ++v) {
      names.append(model.variable_name(static_cast<int>(v)));
    }
    names.finish();
  }
  out += "End\n";
  return out;
}

std::string to_qubo_json_string(const QuboModel& model) {
  nlohmann::json j;
  j["version"] = 1;
  j["mode"] = to_string(model.mode);
  j["num_vertices"] = model.num_vertices;
  j["d"] = model.num_partitions;
  j["c_max"] = model.c_max;
  j["lambda1"] = model.lambda1;
  j["lambda2"] = model.lambda2;
  j["num_variables"] = model.linear.size();
  j["variable_naming"] = "x{vertex}_{level}, index = vertex * d + level";
  j["constant"] = model.constant;

  auto linear = nlohmann::json::array();
  for (std::size_t v = 0; v < model.linear.size(); ++v) {
    if (model.linear[v] != 0.0) {
      linear.push_back({static_cast<int>(v), model.linear[v]});
    }
  }
  j["linear"] = std::move(linear);

  auto quadratic = nlohmann::json::array();
  for (const auto& term : model.quadratic) {
    quadratic.push_back({term.a, term.b, term.coefficient});
  }
  j["quadratic"] = std::move(quadratic);

  auto one_hot = nlohmann::json::array();
  for (int i = 0; i < model.num_vertices; ++i) {
    auto vars = nlohmann::json::array();
    for (int k = 0; k < model.num_partitions; ++k) {
      vars.push_back(model.variable_index(i, k));
    }
    one_hot.push_back(std::move(vars));
  }
  j["constraints"]["one_hot"] = std::move(one_hot);

  if (model.mode == ConstraintMode::hard) {
    auto capacity = nlohmann::json::array();
    for (int k = 0; k < model.num_partitions; ++k) {
      auto vars = nlohmann::json::array();
      for (int i = 0; i < model.num_vertices; ++i) {
        vars.push_back(model.variable_index(i, k));
      }
      capacity.push_back({{"level", k},
                          {"vars", std::move(vars)},
                          {"bound", model.c_max}});
    }
    j["constraints"]["capacity"] = std::move(capacity);
  }
  return j.dump(2) + "\n";
}

}  // namespace quditcut
