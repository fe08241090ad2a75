#ifndef KRONMUL_IO_HPP
#define KRONMUL_IO_HPP

#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <kronmul/coefficients.hpp>
#include <kronmul/poisson.hpp>
#include <kronmul/polynomial.hpp>

namespace kronmul
{

class parse_error : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

namespace detail
{

inline std::vector<std::string> tokenize(const std::string &line)
{
    std::istringstream is(line);
    std::vector<std::string> tokens;
    std::string tok;
    while (is >> tok) {
        tokens.push_back(tok);
    }
    return tokens;
}

inline std::int64_t parse_int(const std::string &s, std::size_t line_no)
{
    try {
        std::size_t pos = 0;
        const long long v = std::stoll(s, &pos);
        if (pos != s.size()) {
            throw std::invalid_argument(s);
        }
        return v;
    } catch (const std::exception &) {
        throw parse_error("line " + std::to_string(line_no) + ": '" + s + "' is not an integer");
    }
}

} // namespace detail

// One term per line: `coefficient  e_0 e_1 ... e_{m-1}`. Blank lines and
// lines starting with '#' are skipped; the variable count is taken from the
// first data line.
template <coefficient_ring C>
laurent_polynomial<C> parse_polynomial(std::istream &is)
{
    laurent_polynomial<C> out;
    bool have_vars = false;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(is, line)) {
        ++line_no;
        const auto tokens = detail::tokenize(line);
        if (tokens.empty() || tokens.front().front() == '#') {
            continue;
        }
        if (!have_vars) {
            out = laurent_polynomial<C>(tokens.size() - 1);
            have_vars = true;
        } else if (tokens.size() != out.num_vars() + 1) {
            throw parse_error("line " + std::to_string(line_no) + ": expected "
                              + std::to_string(out.num_vars() + 1) + " fields, got "
                              + std::to_string(tokens.size()));
        }
        C coeff;
        try {
            coeff = coeff_traits<C>::parse(tokens.front());
        } catch (const std::exception &) {
            throw parse_error("line " + std::to_string(line_no) + ": bad coefficient '"
                              + tokens.front() + "'");
        }
        multiindex e(tokens.size() - 1);
        for (std::size_t k = 0; k < e.size(); ++k) {
            e[k] = detail::parse_int(tokens[k + 1], line_no);
        }
        out.push_term(std::move(coeff), std::move(e));
    }
    return canonicalize_poly(out);
}

template <coefficient_ring C>
void print_polynomial(const laurent_polynomial<C> &p, std::ostream &os)
{
    for (const auto &t : p.terms()) {
        os << coeff_traits<C>::str(t.coeff);
        for (auto e : t.exponents) {
            os << ' ' << e;
        }
        os << '\n';
    }
}

// One term per line: `coefficient  c|s  j_0 j_1 ... j_{m-1}`.
template <coefficient_ring C>
poisson_series<C> parse_poisson(std::istream &is)
{
    poisson_series<C> out;
    bool have_vars = false;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(is, line)) {
        ++line_no;
        const auto tokens = detail::tokenize(line);
        if (tokens.empty() || tokens.front().front() == '#') {
            continue;
        }
        if (tokens.size() < 2) {
            throw parse_error("line " + std::to_string(line_no) + ": expected coefficient and flavor");
        }
        if (!have_vars) {
            out = poisson_series<C>(tokens.size() - 2);
            have_vars = true;
        } else if (tokens.size() != out.num_trig_vars() + 2) {
            throw parse_error("line " + std::to_string(line_no) + ": expected "
                              + std::to_string(out.num_trig_vars() + 2) + " fields, got "
                              + std::to_string(tokens.size()));
        }
        C coeff;
        try {
            coeff = coeff_traits<C>::parse(tokens.front());
        } catch (const std::exception &) {
            throw parse_error("line " + std::to_string(line_no) + ": bad coefficient '"
                              + tokens.front() + "'");
        }
        trig_flavor flavor;
        if (tokens[1] == "c" || tokens[1] == "cos") {
            flavor = trig_flavor::cos;
        } else if (tokens[1] == "s" || tokens[1] == "sin") {
            flavor = trig_flavor::sin;
        } else {
            throw parse_error("line " + std::to_string(line_no) + ": flavor must be c or s, got '"
                              + tokens[1] + "'");
        }
        multiindex j(tokens.size() - 2);
        for (std::size_t k = 0; k < j.size(); ++k) {
            j[k] = detail::parse_int(tokens[k + 2], line_no);
        }
        out.push_term(std::move(coeff), std::move(j), flavor);
    }
    return canonicalize_poisson(out);
}

template <coefficient_ring C>
void print_poisson(const poisson_series<C> &s, std::ostream &os)
{
    for (const auto &t : s.terms()) {
        os << coeff_traits<C>::str(t.coeff) << ' '
           << (t.flavor == trig_flavor::cos ? 'c' : 's');
        for (auto j : t.multipliers) {
            os << ' ' << j;
        }
        os << '\n';
    }
}

} // namespace kronmul

#endif
