#pragma once

#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/eigen.hpp>
#include <Eigen/Dense>

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

namespace conival {

/**
 * Exact scalar type for all geometric predicates: arbitrary-precision
 * rationals backed by GMP. Values produced by arithmetic are always in
 * canonical form (reduced, denominator > 0); the parsing helpers below
 * restore canonical form for values built from raw strings.
 */
using Rational = boost::multiprecision::mpq_rational;
using Integer = boost::multiprecision::mpz_int;

using Vec = Eigen::Matrix<Rational, Eigen::Dynamic, 1>;
using Mat = Eigen::Matrix<Rational, Eigen::Dynamic, Eigen::Dynamic>;

class parse_error : public std::runtime_error {
public:
    explicit parse_error(const std::string& what) : std::runtime_error(what) {}
};

/** Parse "p/q", "p" or "-p/q". Throws parse_error on malformed input or q = 0. */
inline Rational rat_from_string(const std::string& s) {
    if (s.empty()) throw parse_error("empty rational literal");
    for (char c : s) {
        if (!(std::isdigit(static_cast<unsigned char>(c)) || c == '-' || c == '+' || c == '/'))
            throw parse_error("malformed rational literal: '" + s + "'");
    }
    Rational q;
    try {
        q = Rational(s);
    } catch (const std::exception&) {
        throw parse_error("malformed rational literal: '" + s + "'");
    }
    if (denominator(q) == 0) throw parse_error("zero denominator in rational literal: '" + s + "'");
    // boost's string ctor stores the raw fraction; GMP arithmetic requires canonical form.
    mpq_canonicalize(q.backend().data());
    return q;
}

inline std::string rat_to_string(const Rational& q) { return q.str(); }

/** num/den with any signs; canonicalizes. */
inline Rational make_rational(long long num, long long den) {
    if (den == 0) throw std::invalid_argument("make_rational: zero denominator");
    Rational q{Integer(num), Integer(den)};
    return q;
}

/** Exact conversion; binary doubles are dyadic rationals. Rejects NaN/inf. */
inline Rational rational_from_double(double x) {
    if (!std::isfinite(x)) throw std::invalid_argument("rational_from_double: non-finite");
    return Rational(x);
}

inline Vec vec_from_strings(const std::vector<std::string>& entries) {
    Vec v(static_cast<Eigen::Index>(entries.size()));
    for (Eigen::Index i = 0; i < v.size(); ++i) v(i) = rat_from_string(entries[static_cast<size_t>(i)]);
    return v;
}

inline Vec vec_from_ints(const std::vector<long long>& entries) {
    Vec v(static_cast<Eigen::Index>(entries.size()));
    for (Eigen::Index i = 0; i < v.size(); ++i) v(i) = Rational(entries[static_cast<size_t>(i)]);
    return v;
}

inline std::vector<std::string> vec_to_strings(const Vec& v) {
    std::vector<std::string> out;
    out.reserve(static_cast<size_t>(v.size()));
    for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v(i).str());
    return out;
}

inline bool is_zero_vec(const Vec& v) {
    for (Eigen::Index i = 0; i < v.size(); ++i)
        if (v(i) != 0) return false;
    return true;
}

inline Vec zero_vec(int dim) { return Vec::Zero(dim); }

inline Vec unit_vec(int dim, int i) {
    Vec v = Vec::Zero(dim);
    v(i) = 1;
    return v;
}

/**
 * Scale a nonzero rational vector to the unique primitive integer vector in
 * its ray: cleared denominators, gcd of entries 1. With sign_normalize the
 * first nonzero entry is made positive (use only where v and -v are
 * equivalent, e.g. hyperplane normals and lineality generators).
 */
inline Vec primitive(const Vec& v, bool sign_normalize = false) {
    if (is_zero_vec(v)) throw std::invalid_argument("primitive: zero vector");
    Integer l = 1;
    for (Eigen::Index i = 0; i < v.size(); ++i)
        if (v(i) != 0) l = lcm(l, denominator(v(i)));
    Vec w = v;
    Rational scale(l);
    for (Eigen::Index i = 0; i < w.size(); ++i) w(i) *= scale;
    Integer g = 0;
    for (Eigen::Index i = 0; i < w.size(); ++i)
        if (w(i) != 0) g = gcd(g, abs(numerator(w(i))));
    Rational gr(g);
    for (Eigen::Index i = 0; i < w.size(); ++i) w(i) /= gr;
    if (sign_normalize) {
        for (Eigen::Index i = 0; i < w.size(); ++i) {
            if (w(i) != 0) {
                if (w(i) < 0) w = -w;
                break;
            }
        }
    }
    return w;
}

/** Lexicographic comparison, for deterministic ordering of generator sets. */
inline int compare_vec(const Vec& a, const Vec& b) {
    if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
    for (Eigen::Index i = 0; i < a.size(); ++i) {
        if (a(i) < b(i)) return -1;
        if (a(i) > b(i)) return 1;
    }
    return 0;
}

inline bool vec_less(const Vec& a, const Vec& b) { return compare_vec(a, b) < 0; }
inline bool vec_eq(const Vec& a, const Vec& b) { return compare_vec(a, b) == 0; }

inline std::string vec_key(const Vec& v) {
    std::string s;
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        if (i) s += ',';
        s += v(i).str();
    }
    return s;
}

inline double to_double(const Rational& q) { return q.convert_to<double>(); }

}  // namespace conival
