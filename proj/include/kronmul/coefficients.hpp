#ifndef KRONMUL_COEFFICIENTS_HPP
#define KRONMUL_COEFFICIENTS_HPP

#include <charconv>
#include <cmath>
#include <cstdint>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <string>
#include <type_traits>

#include <boost/multiprecision/cpp_int.hpp>

namespace kronmul
{

using big_int = boost::multiprecision::cpp_int;
using big_rational = boost::multiprecision::cpp_rational;

// Thrown when a Poisson product needs an exact 1/2 and the coefficient ring
// cannot represent it (odd arbitrary-precision integer).
class halving_unsupported : public std::domain_error
{
public:
    using std::domain_error::domain_error;
};

// Operations a coefficient type must provide beyond the ring operators
// (+, *, unary -, default-constructed zero).
template <typename T>
struct coeff_traits;

template <>
struct coeff_traits<double> {
    static constexpr const char *name = "double";
    static bool is_zero(double x)
    {
        return x == 0.0;
    }
    // Exact in binary floating point.
    static double halve(double x)
    {
        return x * 0.5;
    }
    static double to_double(double x)
    {
        return x;
    }
    static double parse(const std::string &s)
    {
        std::size_t pos = 0;
        const double v = std::stod(s, &pos);
        if (pos != s.size()) {
            throw std::invalid_argument("trailing characters in coefficient '" + s + "'");
        }
        return v;
    }
    static std::string str(double x)
    {
        std::ostringstream os;
        os.precision(std::numeric_limits<double>::max_digits10);
        os << x;
        return os.str();
    }
};

template <>
struct coeff_traits<big_int> {
    static constexpr const char *name = "int";
    static bool is_zero(const big_int &x)
    {
        return x.is_zero();
    }
    static big_int halve(const big_int &x)
    {
        if ((x & 1) != 0) {
            throw halving_unsupported("integer coefficient " + x.str() + " is odd, cannot halve exactly");
        }
        return x >> 1;
    }
    static double to_double(const big_int &x)
    {
        return x.convert_to<double>();
    }
    static big_int parse(const std::string &s)
    {
        return big_int(s);
    }
    static std::string str(const big_int &x)
    {
        return x.str();
    }
};

template <>
struct coeff_traits<big_rational> {
    static constexpr const char *name = "rational";
    static bool is_zero(const big_rational &x)
    {
        return x.is_zero();
    }
    static big_rational halve(const big_rational &x)
    {
        return x / 2;
    }
    static double to_double(const big_rational &x)
    {
        return x.convert_to<double>();
    }
    // Accepts "p" or "p/q".
    static big_rational parse(const std::string &s)
    {
        return big_rational(s);
    }
    static std::string str(const big_rational &x)
    {
        return x.str();
    }
};

template <typename T>
concept coefficient_ring = requires(T m, const T &a, const T &b) {
    { a + b } -> std::convertible_to<T>;
    { a * b } -> std::convertible_to<T>;
    { -a } -> std::convertible_to<T>;
    m += a;
    T{};
    { coeff_traits<T>::is_zero(a) } -> std::convertible_to<bool>;
    coeff_traits<T>::halve(a);
    { coeff_traits<T>::to_double(a) } -> std::convertible_to<double>;
};

} // namespace kronmul

#endif
