#pragma once

#include <gmpxx.h>

#include <string>

#include "hgd/error.hpp"

namespace hgd {

using Rational = mpq_class;

// Parses "p/q", "p" or a finite decimal such as "1.5".
Rational parse_rational(const std::string& text);

// Always "p/q" with q > 0, e.g. "1/1", "3/2", "0/1".
std::string to_string(const Rational& r);

mpz_class floor_of(const Rational& r);
mpz_class ceil_of(const Rational& r);
long ceil_long(const Rational& r);
double to_double(const Rational& r);

}  // namespace hgd
