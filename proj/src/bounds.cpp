#include "repgame/bounds.hpp"

#include <charconv>
#include <cstdlib>
#include <iomanip>
#include <sstream>
#include <stdexcept>

namespace repgame {

using boost::multiprecision::cpp_int;

Rational parse_rational(const std::string& text) {
  const auto slash = text.find('/');
  if (slash != std::string::npos) {
    const Rational den = parse_rational(text.substr(slash + 1));
    if (den == 0) throw std::invalid_argument("rational: zero denominator");
    return parse_rational(text.substr(0, slash)) / den;
  }
  std::size_t i = 0;
  bool negative = false;
  if (i < text.size() && (text[i] == '+' || text[i] == '-')) negative = text[i++] == '-';
  cpp_int digits = 0;
  long exponent = 0;
  bool any = false;
  bool dot = false;
  for (; i < text.size(); ++i) {
    const char ch = text[i];
    if (ch >= '0' && ch <= '9') {
      digits = digits * 10 + (ch - '0');
      if (dot) --exponent;
      any = true;
    } else if (ch == '.' && !dot) {
      dot = true;
    } else {
      break;
    }
  }
  if (!any) throw std::invalid_argument("rational: not a number: '" + text + "'");
  if (i < text.size() && (text[i] == 'e' || text[i] == 'E')) {
    const std::string tail = text.substr(i + 1);
    char* end = nullptr;
    const long e = std::strtol(tail.c_str(), &end, 10);
    if (tail.empty() || *end != '\0') throw std::invalid_argument("rational: bad exponent in '" + text + "'");
    exponent += e;
    i = text.size();
  }
  if (i != text.size()) throw std::invalid_argument("rational: trailing characters in '" + text + "'");
  if (exponent > 4000 || exponent < -4000) throw std::invalid_argument("rational: exponent out of range");
  const cpp_int scale = pow(cpp_int(10), static_cast<unsigned>(exponent < 0 ? -exponent : exponent));
  Rational value = exponent < 0 ? Rational(digits, scale) : Rational(digits * scale);
  return negative ? Rational(-value) : value;
}

Rational decimal_rational(double x) {
  char buffer[64];
  const auto result = std::to_chars(buffer, buffer + sizeof buffer, x);
  if (result.ec != std::errc()) throw std::invalid_argument("rational: cannot format value");
  return parse_rational(std::string(buffer, result.ptr));
}

std::string to_fraction_string(const Rational& r) {
  if (denominator(r) == 1) return numerator(r).str();
  return numerator(r).str() + "/" + denominator(r).str();
}

double to_double(const Rational& r) { return r.convert_to<double>(); }

BoundTable bound_table(int n, const Rational& delta, std::optional<Rational> gamma) {
  if (n < 3) throw std::invalid_argument("bound_table: requires N >= 3");
  const Rational margin(n - 2, n);
  if (!(delta > 0 && delta < margin)) throw std::invalid_argument("bound_table: delta outside (0, (N-2)/N)");
  if (gamma && (*gamma < 0 || *gamma > 1)) throw std::invalid_argument("bound_table: gamma outside [0, 1]");
  BoundTable t;
  t.n = n;
  t.delta = delta;
  const Rational x = margin - delta;
  t.gamma_star = x / (1 + x);
  t.gamma = gamma ? *gamma : t.gamma_star;
  t.passive_bound = margin - t.gamma - delta;
  t.active_bound = t.gamma * (Rational(n - 1, n) - delta);
  t.mixed_bound = x * x / (1 + x);
  t.theorem1_bound = x * x / 2;
  return t;
}

BoundTable bound_table(int n, double delta, std::optional<double> gamma) {
  std::optional<Rational> g;
  if (gamma) g = decimal_rational(*gamma);
  return bound_table(n, decimal_rational(delta), g);
}

namespace {

std::vector<std::pair<std::string, const Rational*>> fields(const BoundTable& t) {
  return {{"delta", &t.delta},
          {"gamma", &t.gamma},
          {"passive_bound", &t.passive_bound},
          {"active_bound", &t.active_bound},
          {"gamma_star", &t.gamma_star},
          {"mixed_bound", &t.mixed_bound},
          {"theorem1_bound", &t.theorem1_bound}};
}

}  // namespace

nlohmann::json to_json(const BoundTable& t) {
  nlohmann::json j = {{"N", t.n}};
  for (const auto& [name, value] : fields(t)) {
    j[name] = {{"exact", to_fraction_string(*value)}, {"value", to_double(*value)}};
  }
  return j;
}

std::string to_csv(const BoundTable& t) {
  std::ostringstream out;
  out << "quantity,exact,value\n";
  out << "N," << t.n << ',' << t.n << '\n';
  out << std::setprecision(17);
  for (const auto& [name, value] : fields(t)) {
    out << name << ',' << to_fraction_string(*value) << ',' << to_double(*value) << '\n';
  }
  return out.str();
}

std::string to_text(const BoundTable& t) {
  std::ostringstream out;
  out << "N = " << t.n << '\n' << std::setprecision(6);
  for (const auto& [name, value] : fields(t)) {
    out << std::left << std::setw(16) << name << std::setw(24) << to_fraction_string(*value)
        << to_double(*value) << '\n';
  }
  return out.str();
}

}  // namespace repgame
