#ifndef NSPOLY_RATIONAL_HPP
#define NSPOLY_RATIONAL_HPP

#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/eigen.hpp>
#include <cctype>
#include <stdexcept>
#include <string>

namespace nspoly {

using Rational = boost::multiprecision::mpq_rational;
using Integer  = boost::multiprecision::mpz_int;

/** Thrown on malformed documents or literals. */
class ParseError : public std::runtime_error {
  public:
    explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

/**
 * Parse an exact rational literal "p" or "p/q". Rejects empty strings,
 * stray characters and zero denominators before handing the text to GMP
 * (which would abort on q = 0).
 */
inline Rational parse_rational(const std::string& text) {
    if (text.empty()) throw ParseError("empty rational literal");
    auto check_digits = [&](std::size_t begin, std::size_t end) {
        if (begin >= end) throw ParseError("malformed rational literal: " + text);
        std::size_t i = begin;
        if (text[i] == '-' || text[i] == '+') ++i;
        if (i >= end) throw ParseError("malformed rational literal: " + text);
        for (; i < end; ++i)
            if (!std::isdigit(static_cast<unsigned char>(text[i])))
                throw ParseError("malformed rational literal: " + text);
    };
    std::size_t slash = text.find('/');
    if (slash == std::string::npos) {
        check_digits(0, text.size());
        return Rational(Integer(text));
    }
    check_digits(0, slash);
    check_digits(slash + 1, text.size());
    Integer num(text.substr(0, slash));
    Integer den(text.substr(slash + 1));
    if (den == 0) throw ParseError("zero denominator in rational literal: " + text);
    return Rational(num, den);
}

/** Canonical serialization: "p/q" in lowest terms, or "p" when q = 1. */
inline std::string rational_to_string(const Rational& r) { return r.str(); }

}  // namespace nspoly

#endif  // NSPOLY_RATIONAL_HPP
