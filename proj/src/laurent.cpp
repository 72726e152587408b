#include "bandsurg/laurent.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>
#include <stdexcept>

namespace bandsurg {

std::int64_t checked_add(std::int64_t x, std::int64_t y) {
  std::int64_t r = 0;
  if (__builtin_add_overflow(x, y, &r)) throw std::overflow_error("polynomial coefficient overflow");
  return r;
}

std::int64_t checked_mul(std::int64_t x, std::int64_t y) {
  std::int64_t r = 0;
  if (__builtin_mul_overflow(x, y, &r)) throw std::overflow_error("polynomial coefficient overflow");
  return r;
}

namespace {

bool term_less(const Term& a, const Term& b) {
  return a.ez != b.ez ? a.ez < b.ez : a.ea < b.ea;
}

std::vector<Term> normalize(std::vector<Term> terms) {
  std::sort(terms.begin(), terms.end(), term_less);
  std::vector<Term> out;
  out.reserve(terms.size());
  for (const auto& t : terms) {
    if (!out.empty() && out.back().ea == t.ea && out.back().ez == t.ez) {
      out.back().coef = checked_add(out.back().coef, t.coef);
    } else {
      out.push_back(t);
    }
  }
  std::erase_if(out, [](const Term& t) { return t.coef == 0; });
  return out;
}

std::vector<Term> merge(const std::vector<Term>& a, const std::vector<Term>& b, int sign) {
  std::vector<Term> out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && term_less(a[i], b[j]))) {
      out.push_back(a[i++]);
    } else if (i == a.size() || term_less(b[j], a[i])) {
      out.push_back({b[j].ea, b[j].ez, sign > 0 ? b[j].coef : checked_mul(-1, b[j].coef)});
      ++j;
    } else {
      const std::int64_t c =
          sign > 0 ? checked_add(a[i].coef, b[j].coef) : checked_add(a[i].coef, checked_mul(-1, b[j].coef));
      if (c != 0) out.push_back({a[i].ea, a[i].ez, c});
      ++i;
      ++j;
    }
  }
  return out;
}

}  // namespace

LaurentPoly2::LaurentPoly2(std::int64_t c) {
  if (c != 0) terms_.push_back({0, 0, c});
}

LaurentPoly2 LaurentPoly2::monomial(int ea, int ez, std::int64_t coef) {
  LaurentPoly2 p;
  if (coef != 0) p.terms_.push_back({ea, ez, coef});
  return p;
}

LaurentPoly2 LaurentPoly2::from_terms(std::vector<Term> terms) {
  LaurentPoly2 p;
  p.terms_ = normalize(std::move(terms));
  return p;
}

std::int64_t LaurentPoly2::coefficient(int ea, int ez) const {
  Term key{ea, ez, 0};
  auto it = std::lower_bound(terms_.begin(), terms_.end(), key, term_less);
  return (it != terms_.end() && it->ea == ea && it->ez == ez) ? it->coef : 0;
}

LaurentPoly2& LaurentPoly2::operator+=(const LaurentPoly2& o) {
  terms_ = merge(terms_, o.terms_, +1);
  return *this;
}

LaurentPoly2& LaurentPoly2::operator-=(const LaurentPoly2& o) {
  terms_ = merge(terms_, o.terms_, -1);
  return *this;
}

LaurentPoly2 operator*(const LaurentPoly2& a, const LaurentPoly2& b) {
  std::vector<Term> prod;
  prod.reserve(a.terms_.size() * b.terms_.size());
  for (const auto& x : a.terms_) {
    for (const auto& y : b.terms_) prod.push_back({x.ea + y.ea, x.ez + y.ez, checked_mul(x.coef, y.coef)});
  }
  return LaurentPoly2::from_terms(std::move(prod));
}

LaurentPoly2 LaurentPoly2::operator-() const { return shifted(0, 0, -1); }

LaurentPoly2 LaurentPoly2::shifted(int ea, int ez, std::int64_t coef) const {
  LaurentPoly2 p;
  if (coef == 0) return p;
  p.terms_.reserve(terms_.size());
  for (const auto& t : terms_) p.terms_.push_back({t.ea + ea, t.ez + ez, checked_mul(t.coef, coef)});
  return p;
}

LaurentPoly2 LaurentPoly2::pow(unsigned k) const {
  LaurentPoly2 result(1);
  for (unsigned i = 0; i < k; ++i) result = result * *this;
  return result;
}

std::string LaurentPoly2::canonical() const {
  if (terms_.empty()) return "0";
  std::string out;
  for (const auto& t : terms_) {
    if (!out.empty()) out += ' ';
    out += std::to_string(t.ea) + ':' + std::to_string(t.ez) + ':' + std::to_string(t.coef);
  }
  return out;
}

LaurentPoly2 LaurentPoly2::parse_canonical(std::string_view text) {
  std::vector<Term> terms;
  std::size_t pos = 0;
  auto fail = [&] { throw std::invalid_argument("malformed polynomial: " + std::string(text)); };
  while (pos < text.size()) {
    while (pos < text.size() && text[pos] == ' ') ++pos;
    if (pos == text.size()) break;
    std::size_t end = text.find(' ', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view tok = text.substr(pos, end - pos);
    pos = end;
    if (tok == "0") continue;
    long long v[3];
    std::size_t p = 0;
    for (int k = 0; k < 3; ++k) {
      auto [ptr, ec] = std::from_chars(tok.data() + p, tok.data() + tok.size(), v[k]);
      if (ec != std::errc()) fail();
      p = static_cast<std::size_t>(ptr - tok.data());
      if (k < 2) {
        if (p >= tok.size() || tok[p] != ':') fail();
        ++p;
      }
    }
    if (p != tok.size() || v[2] == 0) fail();
    terms.push_back({static_cast<int>(v[0]), static_cast<int>(v[1]), v[2]});
  }
  return from_terms(std::move(terms));
}

std::string LaurentPoly2::pretty() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& t : terms_) {
    std::int64_t c = t.coef;
    if (first) {
      if (c < 0) os << '-';
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    first = false;
    const std::int64_t m = c < 0 ? -c : c;
    const bool bare = t.ea == 0 && t.ez == 0;
    if (m != 1 || bare) os << m;
    if (t.ea != 0) {
      os << 'a';
      if (t.ea != 1) os << '^' << t.ea;
    }
    if (t.ez != 0) {
      os << 'z';
      if (t.ez != 1) os << '^' << t.ez;
    }
  }
  return os.str();
}

std::size_t LaurentPoly2::hash() const {
  std::size_t h = 0xcbf29ce484222325ULL;
  auto mix = [&h](std::uint64_t v) {
    h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  };
  for (const auto& t : terms_) {
    mix(static_cast<std::uint32_t>(t.ea));
    mix(static_cast<std::uint32_t>(t.ez));
    mix(static_cast<std::uint64_t>(t.coef));
  }
  return h;
}

LaurentPoly2 mirror_poly(const LaurentPoly2& p) {
  std::vector<Term> out;
  out.reserve(p.terms().size());
  for (const auto& t : p.terms()) {
    const bool odd = (t.ea % 2) != 0;
    out.push_back({-t.ea, t.ez, odd ? -t.coef : t.coef});
  }
  return LaurentPoly2::from_terms(std::move(out));
}

LaurentPoly2 unlink_factor() {
  return LaurentPoly2::from_terms({{1, -1, 1}, {-1, -1, -1}});
}

}  // namespace bandsurg
