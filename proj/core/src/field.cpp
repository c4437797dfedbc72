#include "dgdef/field.hpp"

#include <charconv>
#include <ostream>

namespace dgdef {

namespace {

bool is_prime_number(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

std::uint32_t mod_pow(std::uint64_t base, std::uint64_t exp, std::uint64_t p) {
  std::uint64_t r = 1;
  base %= p;
  while (exp) {
    if (exp & 1) r = r * base % p;
    base = base * base % p;
    exp >>= 1;
  }
  return static_cast<std::uint32_t>(r);
}

std::uint32_t reduce(long v, std::uint32_t p) {
  long r = v % static_cast<long>(p);
  if (r < 0) r += p;
  return static_cast<std::uint32_t>(r);
}

std::uint32_t reduce(const mpz_class& z, std::uint32_t p) {
  mpz_class r = z % p;
  if (r < 0) r += p;
  return static_cast<std::uint32_t>(r.get_ui());
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

}  // namespace

Field Field::prime(std::uint32_t p) {
  if (p > (1u << 31) || !is_prime_number(p))
    throw std::invalid_argument("not a supported prime: " + std::to_string(p));
  return Field(p);
}

std::string Field::name() const { return is_rational() ? "Q" : "F" + std::to_string(p_); }

Field Field::parse(std::string_view text) {
  text = trim(text);
  if (text == "Q" || text == "QQ") return rationals();
  std::string_view digits = text;
  if (digits.starts_with("GF(") && digits.ends_with(")")) {
    digits = digits.substr(3, digits.size() - 4);
  } else if (digits.starts_with("F")) {
    digits.remove_prefix(1);
    if (digits.starts_with("_")) digits.remove_prefix(1);
  }
  std::uint64_t p = 0;
  auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), p);
  if (ec != std::errc() || ptr != digits.data() + digits.size() || p > (1ull << 31))
    throw std::invalid_argument("bad field declaration: " + std::string(text));
  return prime(static_cast<std::uint32_t>(p));
}

void Scalar::init_zero() {
  if (field_.is_prime())
    value_ = std::uint32_t{0};
  else
    value_ = mpq_class(0);
}

Scalar::Scalar(Field f, long value) : field_(f) {
  if (f.is_prime())
    value_ = reduce(value, f.characteristic());
  else
    value_ = mpq_class(value);
}

Scalar::Scalar(Field f, long num, long den) : Scalar(Field::rationals(), 0) {
  if (den == 0) throw std::domain_error("zero denominator");
  *this = Scalar(f, mpq_class(mpz_class(num), mpz_class(den)));
}

Scalar::Scalar(Field f, const mpq_class& q) : field_(f) {
  mpq_class c = q;
  c.canonicalize();
  if (f.is_rational()) {
    value_ = c;
    return;
  }
  std::uint32_t p = f.characteristic();
  std::uint32_t den = reduce(c.get_den(), p);
  if (den == 0) throw std::domain_error("denominator divisible by the field characteristic");
  std::uint64_t num = reduce(c.get_num(), p);
  value_ = static_cast<std::uint32_t>(num * mod_pow(den, p - 2, p) % p);
}

void Scalar::check(const Scalar& o) const {
  if (!(field_ == o.field_))
    throw FieldMismatch("field mismatch: " + field_.name() + " vs " + o.field_.name());
}

bool Scalar::is_zero() const {
  if (field_.is_prime()) return std::get<std::uint32_t>(value_) == 0;
  return sgn(std::get<mpq_class>(value_)) == 0;
}

bool Scalar::is_one() const {
  if (field_.is_prime()) return std::get<std::uint32_t>(value_) == 1;
  return std::get<mpq_class>(value_) == 1;
}

Scalar Scalar::operator-() const {
  Scalar r = *this;
  if (field_.is_prime()) {
    auto v = std::get<std::uint32_t>(value_);
    r.value_ = v == 0 ? 0u : field_.characteristic() - v;
  } else {
    r.value_ = mpq_class(-std::get<mpq_class>(value_));
  }
  return r;
}

Scalar& Scalar::operator+=(const Scalar& o) {
  check(o);
  if (field_.is_prime()) {
    std::uint64_t s = std::uint64_t{std::get<std::uint32_t>(value_)} + std::get<std::uint32_t>(o.value_);
    value_ = static_cast<std::uint32_t>(s % field_.characteristic());
  } else {
    std::get<mpq_class>(value_) += std::get<mpq_class>(o.value_);
  }
  return *this;
}

Scalar& Scalar::operator-=(const Scalar& o) { return *this += -o; }

Scalar& Scalar::operator*=(const Scalar& o) {
  check(o);
  if (field_.is_prime()) {
    std::uint64_t s = std::uint64_t{std::get<std::uint32_t>(value_)} * std::get<std::uint32_t>(o.value_);
    value_ = static_cast<std::uint32_t>(s % field_.characteristic());
  } else {
    std::get<mpq_class>(value_) *= std::get<mpq_class>(o.value_);
  }
  return *this;
}

Scalar Scalar::inverse() const {
  if (is_zero()) throw std::domain_error("division by zero");
  Scalar r = *this;
  if (field_.is_prime()) {
    auto p = field_.characteristic();
    r.value_ = mod_pow(std::get<std::uint32_t>(value_), p - 2, p);
  } else {
    r.value_ = mpq_class(1 / std::get<mpq_class>(value_));
  }
  return r;
}

Scalar& Scalar::operator/=(const Scalar& o) {
  check(o);
  return *this *= o.inverse();
}

bool operator==(const Scalar& a, const Scalar& b) {
  a.check(b);
  return a.value_ == b.value_;
}

std::uint32_t Scalar::residue() const { return std::get<std::uint32_t>(value_); }

const mpq_class& Scalar::rational() const { return std::get<mpq_class>(value_); }

std::string Scalar::to_string() const {
  if (field_.is_prime()) return std::to_string(std::get<std::uint32_t>(value_));
  const auto& q = std::get<mpq_class>(value_);
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

Scalar Scalar::parse(std::string_view text, Field f) {
  text = trim(text);
  if (text.empty()) throw std::invalid_argument("empty scalar literal");
  std::string s(text);
  if (s.front() == '+') s.erase(0, 1);
  auto slash = s.find('/');
  auto valid_int = [](const std::string& t) {
    if (t.empty()) return false;
    std::size_t i = (t[0] == '-') ? 1 : 0;
    if (i == t.size()) return false;
    for (; i < t.size(); ++i)
      if (t[i] < '0' || t[i] > '9') return false;
    return true;
  };
  std::string num = s.substr(0, slash);
  std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
  if (!valid_int(num) || !valid_int(den)) throw std::invalid_argument("bad scalar literal: " + s);
  mpz_class n(num), d(den);
  if (d == 0) throw std::invalid_argument("zero denominator in literal: " + s);
  return Scalar(f, mpq_class(n, d));
}

std::ostream& operator<<(std::ostream& os, const Scalar& s) { return os << s.to_string(); }

Scalar factorial(Field f, unsigned n) {
  Scalar r = Scalar::one(f);
  for (unsigned k = 2; k <= n; ++k) r *= Scalar(f, static_cast<long>(k));
  if (r.is_zero())
    throw std::domain_error("characteristic " + std::to_string(f.characteristic()) +
                            " too small for " + std::to_string(n) + "!");
  return r;
}

}  // namespace dgdef
