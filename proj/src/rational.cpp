#include "jigsaw/rational.hpp"

#include "jigsaw/errors.hpp"

#include <cctype>

namespace jigsaw {

std::size_t hash_integer(const Integer& z)
{
    const mpz_srcptr p = z.get_mpz_t();
    const int n = p->_mp_size < 0 ? -p->_mp_size : p->_mp_size;
    std::size_t h = static_cast<std::size_t>(p->_mp_size) * 0x9E3779B97F4A7C15ull;
    for (int i = 0; i < n; ++i) {
        h ^= static_cast<std::size_t>(p->_mp_d[i]) + 0x9E3779B97F4A7C15ull + (h << 6) + (h >> 2);
    }
    return h;
}

std::string to_string(const Integer& z) { return z.get_str(); }

Integer parse_integer(std::string_view text)
{
    std::string s(text);
    if (s.empty()) throw ParseError("empty integer");
    std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (i == s.size()) throw ParseError("malformed integer '" + s + "'");
    for (std::size_t k = i; k < s.size(); ++k) {
        if (!std::isdigit(static_cast<unsigned char>(s[k]))) {
            throw ParseError("malformed integer '" + s + "'");
        }
    }
    if (s[0] == '+') s.erase(0, 1);
    return Integer(s, 10);
}

Rational::Rational(const Integer& num, const Integer& den)
{
    if (den == 0) throw InvalidArgument("rational with zero denominator");
    value_ = mpq_class(num, den);
    value_.canonicalize();
}

Rational& Rational::operator/=(const Rational& o)
{
    if (o.sign() == 0) throw InvalidArgument("division by zero");
    value_ /= o.value_;
    return *this;
}

Rational Rational::operator-() const { return Rational(mpq_class(-value_)); }

Integer Rational::floor() const
{
    Integer q;
    mpz_fdiv_q(q.get_mpz_t(), num().get_mpz_t(), den().get_mpz_t());
    return q;
}

std::string Rational::to_string() const
{
    if (is_integer()) return num().get_str();
    return num().get_str() + "/" + den().get_str();
}

Rational Rational::parse(std::string_view text)
{
    const auto slash = text.find('/');
    if (slash == std::string_view::npos) return Rational(parse_integer(text));
    const Integer n = parse_integer(text.substr(0, slash));
    const Integer d = parse_integer(text.substr(slash + 1));
    if (d == 0) throw ParseError("zero denominator in '" + std::string(text) + "'");
    return Rational(n, d);
}

Rational abs(const Rational& r) { return r.sign() < 0 ? -r : r; }

std::string ExtendedRational::to_string() const
{
    return is_infinity() ? std::string("inf") : value_->to_string();
}

ExtendedRational ExtendedRational::parse(std::string_view text)
{
    if (text == "inf" || text == "Infinity" || text == "oo") return infinity();
    return ExtendedRational(Rational::parse(text));
}

Integer denominator_height(const ExtendedRational& x)
{
    if (x.is_infinity()) return 0;
    return x.value().den();
}

std::size_t RationalHash::operator()(const Rational& r) const
{
    return hash_integer(r.num()) * 31u + hash_integer(r.den());
}

}  // namespace jigsaw
