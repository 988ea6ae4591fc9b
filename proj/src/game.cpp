#include "herdgames/game.hpp"

#include <cmath>
#include <set>
#include <sstream>
#include <utility>

#include "json.hpp"

namespace herdgames {

GameSpec::GameSpec(std::string name, std::vector<std::string> labels,
                   AffineUtility utility)
    : name_(std::move(name)),
      labels_(std::move(labels)),
      utility_(std::move(utility)) {
  const std::size_t n = labels_.size();
  if (n < 2) {
    throw InvalidParams("a game needs at least two actions");
  }
  std::set<std::string> distinct(labels_.begin(), labels_.end());
  if (distinct.size() != n) {
    throw InvalidParams("action labels must be distinct");
  }
  if (utility_.b.size() != n || utility_.M.size() != n) {
    throw DimensionMismatch("utility dimensions do not match action count");
  }
  for (const auto& row : utility_.M) {
    if (row.size() != n) {
      throw DimensionMismatch("utility matrix row length does not match action count");
    }
  }
  for (double v : utility_.b) {
    if (!std::isfinite(v)) throw InvalidParams("non-finite utility intercept");
  }
  for (const auto& row : utility_.M) {
    for (double v : row) {
      if (!std::isfinite(v)) throw InvalidParams("non-finite utility coefficient");
    }
  }
}

double utility(const GameSpec& g, int action, const Measure& mu) {
  if (action < 0 || action >= g.n()) {
    throw DimensionMismatch("action index out of range");
  }
  if (static_cast<int>(mu.size()) != g.n()) {
    throw DimensionMismatch("measure size does not match action count");
  }
  const AffineUtility& u = g.affine();
  double v = u.b[action];
  for (int j = 0; j < g.n(); ++j) {
    v += u.M[action][j] * mu[j];
  }
  return v;
}

std::vector<double> utilities(const GameSpec& g, const Measure& mu) {
  std::vector<double> out(g.n());
  for (int i = 0; i < g.n(); ++i) out[i] = utility(g, i, mu);
  return out;
}

double utility_diff(const GameSpec& g, int i, int j, const Measure& mu) {
  if (i == j) {
    throw InvalidParams("utility_diff requires two distinct actions");
  }
  return utility(g, i, mu) - utility(g, j, mu);
}

GameSpec builtin(const BuiltinParams& params) {
  switch (params.id) {
    case BuiltinId::Braess2: {
      if (!(params.rho > 0.0 && params.rho < 1.0)) {
        throw InvalidParams("braess2 requires rho in (0,1)");
      }
      const double r = params.rho;
      return GameSpec("braess2", {"A", "B"},
                      {{-1.0, -1.0}, {{-r, 0.0}, {0.0, -r}}});
    }
    case BuiltinId::Braess3: {
      if (!(params.rho > 0.0 && params.rho < 1.0)) {
        throw InvalidParams("braess3 requires rho in (0,1)");
      }
      const double r = params.rho;
      return GameSpec("braess3", {"A", "B", "AB"},
                      {{-1.0, -1.0, 0.0},
                       {{-r, 0.0, -r}, {0.0, -r, -r}, {-r, -r, -2.0 * r}}});
    }
    case BuiltinId::Bandwidth: {
      const int n = params.levels;
      if (n < 2) throw InvalidParams("bandwidth requires at least two levels");
      // Levels descend from 1 to 1/n so index 0 is the full-rate action.
      std::vector<double> level(n);
      std::vector<std::string> labels(n);
      for (int i = 0; i < n; ++i) {
        level[i] = 1.0 / static_cast<double>(i + 1);
        labels[i] = i == 0 ? "1" : "1/" + std::to_string(i + 1);
      }
      AffineUtility u;
      u.b = level;
      u.M.assign(n, std::vector<double>(n));
      for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) u.M[i][j] = -level[i] * level[j];
      }
      return GameSpec("bandwidth", std::move(labels), std::move(u));
    }
    case BuiltinId::Product: {
      if (!(params.c1 > params.c2 && params.c2 > params.c3)) {
        throw InvalidParams("product requires c1 > c2 > c3");
      }
      AffineUtility u;
      u.b = {params.c1, params.c2, params.c3};
      u.M.assign(3, std::vector<double>(3, 0.0));
      return GameSpec("product", {"1", "2", "3"}, std::move(u));
    }
  }
  throw InvalidParams("unknown builtin game id");
}

GameSpec braess2(double rho) {
  return builtin({BuiltinId::Braess2, rho});
}

GameSpec braess3(double rho) {
  return builtin({BuiltinId::Braess3, rho});
}

GameSpec bandwidth(int levels) {
  BuiltinParams p;
  p.id = BuiltinId::Bandwidth;
  p.levels = levels;
  return builtin(p);
}

GameSpec product_selection(double c1, double c2, double c3) {
  BuiltinParams p;
  p.id = BuiltinId::Product;
  p.c1 = c1;
  p.c2 = c2;
  p.c3 = c3;
  return builtin(p);
}

namespace {

using nlohmann::json;

const json* find_field(const json& obj, const char* key, const std::string& path) {
  auto it = obj.find(key);
  if (it == obj.end()) {
    throw SchemaError("missing field: " + path);
  }
  return &*it;
}

std::vector<double> number_array(const json& arr, const std::string& path) {
  if (!arr.is_array()) throw SchemaError("expected array at " + path);
  std::vector<double> out;
  out.reserve(arr.size());
  for (std::size_t i = 0; i < arr.size(); ++i) {
    if (!arr[i].is_number()) {
      throw SchemaError("expected number at " + path + "[" + std::to_string(i) + "]");
    }
    out.push_back(arr[i].get<double>());
  }
  return out;
}

}  // namespace

GameSpec parse_game(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw SchemaError(std::string("invalid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw SchemaError("expected object at document root");

  std::string name;
  if (auto it = doc.find("name"); it != doc.end()) {
    if (!it->is_string()) throw SchemaError("expected string at name");
    name = it->get<std::string>();
  }

  const json* actions = find_field(doc, "actions", "actions");
  if (!actions->is_array()) throw SchemaError("expected array at actions");
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < actions->size(); ++i) {
    if (!(*actions)[i].is_string()) {
      throw SchemaError("expected string at actions[" + std::to_string(i) + "]");
    }
    labels.push_back((*actions)[i].get<std::string>());
  }

  const json* util = find_field(doc, "utility", "utility");
  if (!util->is_object()) throw SchemaError("expected object at utility");
  if (auto it = util->find("type"); it != util->end()) {
    if (!it->is_string() || it->get<std::string>() != "affine") {
      throw SchemaError("unsupported value at utility.type (only \"affine\")");
    }
  }
  AffineUtility u;
  u.b = number_array(*find_field(*util, "b", "utility.b"), "utility.b");
  const json* m = find_field(*util, "M", "utility.M");
  if (!m->is_array()) throw SchemaError("expected array at utility.M");
  for (std::size_t i = 0; i < m->size(); ++i) {
    u.M.push_back(number_array((*m)[i], "utility.M[" + std::to_string(i) + "]"));
  }

  try {
    return GameSpec(std::move(name), std::move(labels), std::move(u));
  } catch (const Error& e) {
    throw SchemaError(std::string("invalid game: ") + e.what());
  }
}

std::string serialize_game(const GameSpec& g) {
  json doc;
  if (!g.name().empty()) doc["name"] = g.name();
  doc["actions"] = g.labels();
  doc["utility"] = {{"type", "affine"}, {"b", g.affine().b}, {"M", g.affine().M}};
  return doc.dump(2);
}

}  // namespace herdgames
