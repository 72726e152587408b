#pragma once

// Two-variable Laurent polynomials in a and z with exact integer coefficients.

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace bandsurg {

struct Term {
  int ea = 0;  // power of a
  int ez = 0;  // power of z
  std::int64_t coef = 0;

  friend bool operator==(const Term&, const Term&) = default;
};

class LaurentPoly2 {
 public:
  LaurentPoly2() = default;
  /// Constant polynomial.
  explicit LaurentPoly2(std::int64_t c);
  static LaurentPoly2 monomial(int ea, int ez, std::int64_t coef = 1);
  /// Terms are combined and zeros dropped.
  static LaurentPoly2 from_terms(std::vector<Term> terms);

  /// Sorted by (ez, ea); never holds a zero coefficient.
  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::int64_t coefficient(int ea, int ez) const;

  LaurentPoly2& operator+=(const LaurentPoly2& o);
  LaurentPoly2& operator-=(const LaurentPoly2& o);
  friend LaurentPoly2 operator+(LaurentPoly2 a, const LaurentPoly2& b) { return a += b; }
  friend LaurentPoly2 operator-(LaurentPoly2 a, const LaurentPoly2& b) { return a -= b; }
  friend LaurentPoly2 operator*(const LaurentPoly2& a, const LaurentPoly2& b);
  LaurentPoly2 operator-() const;
  /// Multiply by coef * a^ea * z^ez.
  LaurentPoly2 shifted(int ea, int ez, std::int64_t coef = 1) const;
  LaurentPoly2 pow(unsigned k) const;

  friend bool operator==(const LaurentPoly2&, const LaurentPoly2&) = default;

  /// "ea:ez:c" tokens separated by spaces; "0" for the zero polynomial.
  std::string canonical() const;
  static LaurentPoly2 parse_canonical(std::string_view text);
  /// Human-readable form, e.g. "2a^-2 - a^-4 + a^-2z^2".
  std::string pretty() const;
  std::size_t hash() const;

 private:
  std::vector<Term> terms_;
};

/// Throws std::overflow_error when a coefficient leaves the int64 range.
std::int64_t checked_add(std::int64_t x, std::int64_t y);
std::int64_t checked_mul(std::int64_t x, std::int64_t y);

/// Mirror image in the convention a P(L+) - a^-1 P(L-) = z P(L0): a -> -a^-1.
LaurentPoly2 mirror_poly(const LaurentPoly2& p);

/// (a - a^-1) z^-1, the value of the two-component unlink.
LaurentPoly2 unlink_factor();

struct LaurentHash {
  std::size_t operator()(const LaurentPoly2& p) const { return p.hash(); }
};

}  // namespace bandsurg
