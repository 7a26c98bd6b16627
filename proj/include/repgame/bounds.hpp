#pragma once

#include <optional>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>
#include <nlohmann/json.hpp>

namespace repgame {

using Rational = boost::multiprecision::cpp_rational;

/// Exact value of a decimal literal such as "0.1", "-2.5e-3" or "3/7".
Rational parse_rational(const std::string& text);
/// Shortest decimal that round-trips `x`, read back exactly ("0.1" for 0.1).
Rational decimal_rational(double x);
/// "p/q", or "p" for integers.
std::string to_fraction_string(const Rational& r);
double to_double(const Rational& r);

/// Closed-form lower bounds for the N x N coordination game, all exact.
struct BoundTable {
  int n = 0;
  Rational delta;
  Rational gamma;
  /// (N-2)/N - gamma - delta
  Rational passive_bound;
  /// gamma [(N-1)/N - delta]
  Rational active_bound;
  /// x / (1 + x) with x = (N-2)/N - delta
  Rational gamma_star;
  /// x^2 / (1 + x)
  Rational mixed_bound;
  /// x^2 / 2
  Rational theorem1_bound;
};

/// Requires N >= 3 and 0 < delta < (N-2)/N; gamma in [0, 1] defaults to gamma_star.
BoundTable bound_table(int n, const Rational& delta, std::optional<Rational> gamma = std::nullopt);
BoundTable bound_table(int n, double delta, std::optional<double> gamma = std::nullopt);

nlohmann::json to_json(const BoundTable& t);
std::string to_csv(const BoundTable& t);
std::string to_text(const BoundTable& t);

}  // namespace repgame
