#include "mcilp/polynomial.hpp"

#include <numeric>
#include <sstream>

#include "mcilp/errors.hpp"

namespace mcilp {

Polynomial Polynomial::constant(std::size_t nvars, const Rational& c) {
  Polynomial p(nvars);
  p.add_term(Exponent(nvars, 0), c);
  return p;
}

Polynomial Polynomial::variable(std::size_t nvars, std::size_t i) {
  Polynomial p(nvars);
  Exponent e(nvars, 0);
  e[i] = 1;
  p.add_term(e, 1);
  return p;
}

Polynomial Polynomial::power_sum(std::size_t nvars, unsigned degree) {
  Polynomial p(nvars);
  for (std::size_t i = 0; i < nvars; ++i) {
    Exponent e(nvars, 0);
    e[i] = degree;
    p.add_term(e, 1);
  }
  return p;
}

unsigned Polynomial::degree() const {
  unsigned d = 0;
  for (const auto& [e, c] : terms_) d = std::max(d, std::accumulate(e.begin(), e.end(), 0u));
  return d;
}

bool Polynomial::is_homogeneous(unsigned d) const {
  for (const auto& [e, c] : terms_)
    if (std::accumulate(e.begin(), e.end(), 0u) != d) return false;
  return true;
}

void Polynomial::add_term(const Exponent& e, const Rational& c) {
  if (e.size() != nvars_) throw DimensionMismatch("exponent length differs from variable count");
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

Rational Polynomial::evaluate(std::span<const Int> v) const {
  RatVec r;
  r.reserve(v.size());
  for (Int x : v) r.push_back(rational(x));
  return evaluate(r);
}

Rational Polynomial::evaluate(const RatVec& v) const {
  if (v.size() != nvars_) throw DimensionMismatch("point length differs from variable count");
  Rational sum = 0;
  for (const auto& [e, c] : terms_) {
    Rational t = c;
    for (std::size_t i = 0; i < nvars_; ++i) {
      if (e[i] == 0) continue;
      Rational pw;
      mpz_pow_ui(pw.get_num_mpz_t(), v[i].get_num_mpz_t(), e[i]);
      mpz_pow_ui(pw.get_den_mpz_t(), v[i].get_den_mpz_t(), e[i]);
      t *= pw;
    }
    sum += t;
  }
  return sum;
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
  if (o.nvars_ != nvars_) throw DimensionMismatch("polynomial variable counts differ");
  for (const auto& [e, c] : o.terms_) add_term(e, c);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) {
  if (o.nvars_ != nvars_) throw DimensionMismatch("polynomial variable counts differ");
  for (const auto& [e, c] : o.terms_) add_term(e, -c);
  return *this;
}

Polynomial& Polynomial::operator*=(const Rational& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [e, v] : terms_) v *= c;
  return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  if (a.nvars_ != b.nvars_) throw DimensionMismatch("polynomial variable counts differ");
  Polynomial r(a.nvars_);
  Exponent e(a.nvars_);
  for (const auto& [ea, ca] : a.terms_)
    for (const auto& [eb, cb] : b.terms_) {
      for (std::size_t i = 0; i < a.nvars_; ++i) e[i] = ea[i] + eb[i];
      r.add_term(e, ca * cb);
    }
  return r;
}

Polynomial Polynomial::pow(unsigned s) const {
  Polynomial result = constant(nvars_, 1);
  Polynomial base = *this;
  while (s > 0) {
    if (s & 1u) result = result * base;
    s >>= 1u;
    if (s) base = base * base;
  }
  return result;
}

Polynomial Polynomial::compose_affine(std::span<const Int> offset, const IntMat& m, std::size_t cols) const {
  // Linear forms offset_i + sum_j m_ij mu_j and their cached powers.
  std::vector<std::vector<Polynomial>> powers(nvars_);
  for (std::size_t i = 0; i < nvars_; ++i) {
    Polynomial lin = constant(cols, rational(offset[i]));
    for (std::size_t j = 0; j < cols; ++j)
      if (m[i][j] != 0) lin += variable(cols, j) * rational(m[i][j]);
    powers[i].push_back(constant(cols, 1));
    powers[i].push_back(lin);
  }
  Polynomial out(cols);
  for (const auto& [e, c] : terms_) {
    Polynomial t = constant(cols, c);
    for (std::size_t i = 0; i < nvars_; ++i) {
      while (powers[i].size() <= e[i]) powers[i].push_back(powers[i].back() * powers[i][1]);
      if (e[i] > 0) t = t * powers[i][e[i]];
    }
    out += t;
  }
  return out;
}

Polynomial Polynomial::shifted(std::span<const Int> shift) const {
  IntMat id(nvars_, IntVec(nvars_, 0));
  IntVec off(nvars_);
  for (std::size_t i = 0; i < nvars_; ++i) {
    id[i][i] = 1;
    off[i] = -shift[i];
  }
  return compose_affine(off, id, nvars_);
}

std::string Polynomial::to_string() const {
  std::ostringstream os;
  bool first = true;
  for (const auto& [e, c] : terms_) {
    if (!first) os << ';';
    first = false;
    os << mcilp::to_string(c) << ':';
    for (std::size_t i = 0; i < e.size(); ++i) os << (i ? "," : "") << e[i];
  }
  return os.str();
}

Rational parse_rational(const std::string& text) {
  Rational r;
  if (text.empty() || r.set_str(text, 10) != 0) throw ParseError("malformed rational: '" + text + "'");
  if (r.get_den() == 0) throw ParseError("zero denominator: '" + text + "'");
  r.canonicalize();
  return r;
}

Polynomial Polynomial::parse(const std::string& text, std::size_t nvars) {
  Polynomial p(nvars);
  std::stringstream ss(text);
  std::string term;
  while (std::getline(ss, term, ';')) {
    auto colon = term.find(':');
    if (colon == std::string::npos) throw ParseError("polynomial term lacks ':' in '" + term + "'");
    Rational c = parse_rational(term.substr(0, colon));
    Exponent e;
    std::stringstream es(term.substr(colon + 1));
    std::string tok;
    while (std::getline(es, tok, ',')) {
      std::size_t used = 0;
      unsigned long v = 0;
      try {
        v = std::stoul(tok, &used);
      } catch (const std::exception&) {
        throw ParseError("malformed exponent '" + tok + "'");
      }
      if (used != tok.size() || tok.find('-') != std::string::npos) throw ParseError("malformed exponent '" + tok + "'");
      e.push_back(static_cast<unsigned>(v));
    }
    if (e.size() != nvars) throw ParseError("exponent has wrong length in '" + term + "'");
    p.add_term(e, c);
  }
  return p;
}

}  // namespace mcilp
