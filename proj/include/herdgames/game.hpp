#ifndef HERDGAMES_GAME_HPP
#define HERDGAMES_GAME_HPP

#include <string>
#include <vector>

#include "herdgames/measure.hpp"

namespace herdgames {

// Utility affine in the population measure: u(i, mu) = b[i] + sum_j M[i][j] * mu_j.
// b is in utility units, M in utility per unit of population mass.
struct AffineUtility {
  std::vector<double> b;
  std::vector<std::vector<double>> M;
};

// A mean-field game with a finite action set: action labels plus an affine
// utility. Immutable; all operations on it are pure.
class GameSpec {
 public:
  GameSpec(std::string name, std::vector<std::string> labels,
           AffineUtility utility);

  int n() const { return static_cast<int>(labels_.size()); }
  const std::string& name() const { return name_; }
  const std::vector<std::string>& labels() const { return labels_; }
  const AffineUtility& affine() const { return utility_; }

 private:
  std::string name_;
  std::vector<std::string> labels_;
  AffineUtility utility_;
};

double utility(const GameSpec& g, int action, const Measure& mu);

// All n utilities at mu, in action order.
std::vector<double> utilities(const GameSpec& g, const Measure& mu);

// h_ij(mu) = u(i, mu) - u(j, mu), the pairwise utility difference.
double utility_diff(const GameSpec& g, int i, int j, const Measure& mu);

enum class BuiltinId { Product, Braess2, Braess3, Bandwidth };

// Parameters for the built-in games. rho is the congestion coefficient of the
// routing games, levels the number of bandwidth transmission levels, and
// (c1, c2, c3) the constant product utilities with c1 > c2 > c3.
struct BuiltinParams {
  BuiltinId id = BuiltinId::Product;
  double rho = 0.5;
  int levels = 3;
  double c1 = 3.0, c2 = 2.0, c3 = 1.0;
};

GameSpec builtin(const BuiltinParams& params);

// Convenience constructors for the built-ins.
GameSpec braess2(double rho);
GameSpec braess3(double rho);
GameSpec bandwidth(int levels);
GameSpec product_selection(double c1 = 3.0, double c2 = 2.0, double c3 = 1.0);

// Game document schema:
//   {"name": string?, "actions": [string, ...],
//    "utility": {"type": "affine", "b": [number, ...], "M": [[number, ...], ...]}}
// parse_game throws SchemaError with the offending field path;
// parse_game(serialize_game(g)) reproduces g exactly.
GameSpec parse_game(const std::string& text);
std::string serialize_game(const GameSpec& g);

}  // namespace herdgames

#endif  // HERDGAMES_GAME_HPP
