#include "hgd/rational.hpp"

#include <cctype>

namespace hgd {

namespace {

bool all_digits(const std::string& s) {
  if (s.empty()) return false;
  for (char ch : s)
    if (!std::isdigit(static_cast<unsigned char>(ch))) return false;
  return true;
}

}  // namespace

Rational parse_rational(const std::string& text) {
  std::string s;
  for (char ch : text)
    if (!std::isspace(static_cast<unsigned char>(ch))) s.push_back(ch);
  bool negative = false;
  if (!s.empty() && (s[0] == '-' || s[0] == '+')) {
    negative = s[0] == '-';
    s.erase(0, 1);
  }
  Rational r;
  auto slash = s.find('/');
  auto dot = s.find('.');
  if (slash != std::string::npos) {
    std::string p = s.substr(0, slash), q = s.substr(slash + 1);
    if (!all_digits(p) || !all_digits(q)) fail(ErrorCode::InvalidArgument, "malformed rational '" + text + "'");
    mpz_class den(q);
    if (den == 0) fail(ErrorCode::InvalidArgument, "zero denominator in '" + text + "'");
    r = Rational(mpz_class(p), den);
  } else if (dot != std::string::npos) {
    std::string ip = s.substr(0, dot), fp = s.substr(dot + 1);
    if (ip.empty()) ip = "0";
    if (!all_digits(ip) || (!fp.empty() && !all_digits(fp)))
      fail(ErrorCode::InvalidArgument, "malformed rational '" + text + "'");
    mpz_class den = 1;
    for (std::size_t j = 0; j < fp.size(); ++j) den *= 10;
    r = Rational(mpz_class(ip + fp), den);
  } else {
    if (!all_digits(s)) fail(ErrorCode::InvalidArgument, "malformed rational '" + text + "'");
    r = Rational(mpz_class(s));
  }
  r.canonicalize();
  return negative ? Rational(-r) : r;
}

std::string to_string(const Rational& r) {
  Rational c = r;
  c.canonicalize();
  return c.get_num().get_str() + "/" + c.get_den().get_str();
}

mpz_class floor_of(const Rational& r) {
  mpz_class out;
  mpz_fdiv_q(out.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
  return out;
}

mpz_class ceil_of(const Rational& r) {
  mpz_class out;
  mpz_cdiv_q(out.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
  return out;
}

long ceil_long(const Rational& r) {
  mpz_class c = ceil_of(r);
  if (!c.fits_slong_p()) fail(ErrorCode::InvalidArgument, "value " + to_string(r) + " out of range");
  return c.get_si();
}

double to_double(const Rational& r) { return r.get_d(); }

}  // namespace hgd
