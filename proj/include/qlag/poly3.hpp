#pragma once

#include <cctype>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>

#include "json.hpp"
#include "qlag/errors.hpp"

namespace qlag {

inline std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r)) {
    throw arithmetic_overflow("coefficient addition overflowed 64 bits");
  }
  return r;
}

inline std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) {
    throw arithmetic_overflow("coefficient multiplication overflowed 64 bits");
  }
  return r;
}

/// Exponent triple of one term. Degrees are always nonnegative.
struct Monomial {
  int x_deg = 0;
  int y_deg = 0;
  int q_deg = 0;

  friend bool operator==(const Monomial&, const Monomial&) = default;
};

/// Canonical term order: descending x-degree, then descending y-degree, then
/// descending q-degree. Under this order the monic quadratic prints as
/// "x^2 - y*q*x - 2*y*x - x + y^2*q + y^2".
struct MonomialOrder {
  bool operator()(const Monomial& a, const Monomial& b) const {
    if (a.x_deg != b.x_deg) return a.x_deg > b.x_deg;
    if (a.y_deg != b.y_deg) return a.y_deg > b.y_deg;
    return a.q_deg > b.q_deg;
  }
};

/// Sparse polynomial in x, y, q over the signed 64-bit integers.
///
/// Invariants: no stored coefficient is zero and each monomial appears at
/// most once, so equality is plain coefficient-wise comparison. All
/// coefficient arithmetic is overflow-checked. Values are safe to share
/// between threads once fully constructed; the mutating operators only ever
/// touch the left operand.
class Poly3 {
 public:
  using TermMap = std::map<Monomial, std::int64_t, MonomialOrder>;

  Poly3() = default;

  static Poly3 constant(std::int64_t c) { return term({0, 0, 0}, c); }
  static Poly3 one() { return constant(1); }

  static Poly3 term(const Monomial& m, std::int64_t coeff) {
    if (m.x_deg < 0 || m.y_deg < 0 || m.q_deg < 0) {
      throw negative_exponent("monomial degrees must be nonnegative");
    }
    Poly3 p;
    if (coeff != 0) p.terms_.emplace(m, coeff);
    return p;
  }

  static Poly3 x(int deg = 1) { return term({deg, 0, 0}, 1); }
  static Poly3 y(int deg = 1) { return term({0, deg, 0}, 1); }
  static Poly3 q(int deg = 1) { return term({0, 0, deg}, 1); }

  bool is_zero() const { return terms_.empty(); }
  const TermMap& terms() const { return terms_; }

  std::int64_t coeff(const Monomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? 0 : it->second;
  }

  /// Largest x-degree appearing in any term (0 for the zero polynomial).
  int x_degree() const { return terms_.empty() ? 0 : terms_.begin()->first.x_deg; }

  /// Adds coeff * m, dropping the term if the sum cancels to zero.
  void add_term(const Monomial& m, std::int64_t coeff) {
    if (m.x_deg < 0 || m.y_deg < 0 || m.q_deg < 0) {
      throw negative_exponent("monomial degrees must be nonnegative");
    }
    if (coeff == 0) return;
    auto [it, inserted] = terms_.emplace(m, coeff);
    if (!inserted) {
      it->second = checked_add(it->second, coeff);
      if (it->second == 0) terms_.erase(it);
    }
  }

  Poly3& operator+=(const Poly3& rhs) {
    for (const auto& [m, c] : rhs.terms_) add_term(m, c);
    return *this;
  }

  Poly3& operator-=(const Poly3& rhs) {
    for (const auto& [m, c] : rhs.terms_) add_term(m, checked_mul(c, -1));
    return *this;
  }

  Poly3& operator*=(const Poly3& rhs) { return *this = *this * rhs; }

  friend Poly3 operator+(Poly3 lhs, const Poly3& rhs) { return lhs += rhs; }
  friend Poly3 operator-(Poly3 lhs, const Poly3& rhs) { return lhs -= rhs; }

  friend Poly3 operator-(const Poly3& p) {
    Poly3 r;
    for (const auto& [m, c] : p.terms_) r.terms_.emplace(m, checked_mul(c, -1));
    return r;
  }

  friend Poly3 operator*(const Poly3& lhs, const Poly3& rhs) {
    Poly3 r;
    for (const auto& [ma, ca] : lhs.terms_) {
      for (const auto& [mb, cb] : rhs.terms_) {
        Monomial m{ma.x_deg + mb.x_deg, ma.y_deg + mb.y_deg, ma.q_deg + mb.q_deg};
        r.add_term(m, checked_mul(ca, cb));
      }
    }
    return r;
  }

  friend bool operator==(const Poly3&, const Poly3&) = default;

  /// Text form: terms in canonical order, each printed as coefficient, then
  /// y-, q- and x-factors joined by '*', with unit coefficients and unit
  /// exponents omitted. The zero polynomial prints as "0".
  std::string to_string() const;

  static Poly3 parse(std::string_view text);

  /// JSON form: [{"x":a,"y":b,"q":d,"coeff":c}, ...] in canonical order.
  nlohmann::json to_json() const {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& [m, c] : terms_) {
      arr.push_back({{"x", m.x_deg}, {"y", m.y_deg}, {"q", m.q_deg}, {"coeff", c}});
    }
    return arr;
  }

  static Poly3 from_json(const nlohmann::json& j) {
    if (!j.is_array()) throw parse_error("polynomial JSON must be an array of terms");
    Poly3 p;
    for (const auto& t : j) {
      if (!t.is_object() || !t.contains("x") || !t.contains("y") || !t.contains("q") ||
          !t.contains("coeff")) {
        throw parse_error("polynomial term must have keys x, y, q, coeff");
      }
      Monomial m{t.at("x").get<int>(), t.at("y").get<int>(), t.at("q").get<int>()};
      if (m.x_deg < 0 || m.y_deg < 0 || m.q_deg < 0) {
        throw parse_error("polynomial term has a negative exponent");
      }
      p.add_term(m, t.at("coeff").get<std::int64_t>());
    }
    return p;
  }

 private:
  TermMap terms_;
};

/// The q-integer 1 + q + ... + q^(n-1); zero when n = 0.
inline Poly3 q_integer(int n) {
  if (n < 0) throw error("q_integer: negative argument");
  Poly3 p;
  for (int i = 0; i < n; ++i) p.add_term({0, 0, i}, 1);
  return p;
}

namespace detail {

inline std::int64_t checked_pow(std::int64_t base, int exp) {
  std::int64_t r = 1;
  for (int i = 0; i < exp; ++i) r = checked_mul(r, base);
  return r;
}

}  // namespace detail

/// Substitutes the provided integer values; omitted variables stay symbolic.
inline Poly3 specialize(const Poly3& p, std::optional<std::int64_t> x_val,
                        std::optional<std::int64_t> y_val,
                        std::optional<std::int64_t> q_val) {
  Poly3 r;
  for (const auto& [m, c] : p.terms()) {
    std::int64_t coeff = c;
    Monomial rest = m;
    if (x_val) {
      coeff = checked_mul(coeff, detail::checked_pow(*x_val, m.x_deg));
      rest.x_deg = 0;
    }
    if (y_val) {
      coeff = checked_mul(coeff, detail::checked_pow(*y_val, m.y_deg));
      rest.y_deg = 0;
    }
    if (q_val) {
      coeff = checked_mul(coeff, detail::checked_pow(*q_val, m.q_deg));
      rest.q_deg = 0;
    }
    r.add_term(rest, coeff);
  }
  return r;
}

inline std::string Poly3::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    if (first) {
      if (c < 0) out += "-";
      first = false;
    } else {
      out += c < 0 ? " - " : " + ";
    }
    std::string mag = std::to_string(c);
    if (c < 0) mag.erase(0, 1);

    std::string factors;
    auto append_var = [&factors](char v, int deg) {
      if (deg == 0) return;
      if (!factors.empty()) factors += '*';
      factors += v;
      if (deg > 1) factors += '^' + std::to_string(deg);
    };
    append_var('y', m.y_deg);
    append_var('q', m.q_deg);
    append_var('x', m.x_deg);

    if (factors.empty()) {
      out += mag;
    } else if (mag == "1") {
      out += factors;
    } else {
      out += mag + '*' + factors;
    }
  }
  return out;
}

inline Poly3 Poly3::parse(std::string_view text) {
  std::size_t pos = 0;
  auto skip_ws = [&] {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  };
  auto parse_uint = [&]() -> std::int64_t {
    if (pos >= text.size() || !std::isdigit(static_cast<unsigned char>(text[pos]))) {
      throw parse_error("expected a number at position " + std::to_string(pos));
    }
    std::int64_t v = 0;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
      v = checked_add(checked_mul(v, 10), text[pos] - '0');
      ++pos;
    }
    return v;
  };

  Poly3 p;
  skip_ws();
  if (pos >= text.size()) throw parse_error("empty polynomial text");
  bool expect_term = true;
  std::int64_t sign = 1;
  if (text[pos] == '-') {
    sign = -1;
    ++pos;
  } else if (text[pos] == '+') {
    ++pos;
  }
  while (expect_term) {
    skip_ws();
    std::int64_t coeff = sign;
    Monomial mono;
    bool expect_factor = true;
    while (expect_factor) {
      skip_ws();
      if (pos >= text.size()) throw parse_error("unexpected end of polynomial text");
      char ch = text[pos];
      if (std::isdigit(static_cast<unsigned char>(ch))) {
        coeff = checked_mul(coeff, parse_uint());
      } else if (ch == 'x' || ch == 'y' || ch == 'q') {
        ++pos;
        int deg = 1;
        skip_ws();
        if (pos < text.size() && text[pos] == '^') {
          ++pos;
          skip_ws();
          deg = static_cast<int>(parse_uint());
        }
        if (ch == 'x') mono.x_deg += deg;
        if (ch == 'y') mono.y_deg += deg;
        if (ch == 'q') mono.q_deg += deg;
      } else {
        throw parse_error(std::string("unexpected character '") + ch + "' at position " +
                          std::to_string(pos));
      }
      skip_ws();
      if (pos < text.size() && text[pos] == '*') {
        ++pos;
      } else {
        expect_factor = false;
      }
    }
    p.add_term(mono, coeff);
    skip_ws();
    if (pos >= text.size()) {
      expect_term = false;
    } else if (text[pos] == '+' || text[pos] == '-') {
      sign = text[pos] == '-' ? -1 : 1;
      ++pos;
    } else {
      throw parse_error(std::string("unexpected character '") + text[pos] +
                        "' at position " + std::to_string(pos));
    }
  }
  return p;
}

}  // namespace qlag
