#include "fabercone/rational.hpp"

#include <sstream>

#include "fabercone/errors.hpp"

namespace fabercone {

Rat parse_rational(const std::string& text) {
    if (text.empty()) throw ParseError("empty rational");
    const auto slash = text.find('/');
    try {
        if (slash == std::string::npos) {
            Int p(text);
            return Rat(p);
        }
        Int p(text.substr(0, slash));
        Int q(text.substr(slash + 1));
        if (q <= 0) throw ParseError("rational denominator must be positive: " + text);
        Rat r(p, q);
        r.canonicalize();
        return r;
    } catch (const std::invalid_argument&) {
        throw ParseError("malformed rational: " + text);
    }
}

std::string rat_str(const Rat& value) {
    if (value.get_den() == 1) return value.get_num().get_str();
    return value.get_num().get_str() + "/" + value.get_den().get_str();
}

QVec to_qvec(const ZVec& v) {
    QVec out;
    out.reserve(v.size());
    for (const auto& x : v) out.emplace_back(x);
    return out;
}

ZVec to_zvec(const QVec& v) {
    ZVec out;
    out.reserve(v.size());
    for (const auto& x : v) {
        if (x.get_den() != 1) throw DimensionMismatch("vector entry is not integral");
        out.push_back(x.get_num());
    }
    return out;
}

ZVec primitive(const QVec& v) {
    Int lcm_den = 1;
    for (const auto& x : v) mpz_lcm(lcm_den.get_mpz_t(), lcm_den.get_mpz_t(), x.get_den().get_mpz_t());
    ZVec out;
    out.reserve(v.size());
    Int content = 0;
    for (const auto& x : v) {
        Int scaled = x.get_num() * (lcm_den / x.get_den());
        mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), scaled.get_mpz_t());
        out.push_back(std::move(scaled));
    }
    if (content > 1)
        for (auto& x : out) x /= content;
    return out;
}

ZVec primitive(const ZVec& v) {
    Int content = 0;
    for (const auto& x : v) mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), x.get_mpz_t());
    if (content <= 1) return v;
    ZVec out = v;
    for (auto& x : out) x /= content;
    return out;
}

bool is_zero(const ZVec& v) {
    for (const auto& x : v)
        if (x != 0) return false;
    return true;
}

bool is_zero(const QVec& v) {
    for (const auto& x : v)
        if (x != 0) return false;
    return true;
}

Rat dot(const QVec& a, const QVec& b) {
    Rat acc = 0;
    for (size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
    return acc;
}

Int dot(const ZVec& a, const ZVec& b) {
    Int acc = 0;
    for (size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
    return acc;
}

Rat dot(const ZVec& a, const QVec& b) {
    Rat acc = 0;
    for (size_t i = 0; i < a.size(); ++i) acc += Rat(a[i]) * b[i];
    return acc;
}

int lex_compare(const ZVec& a, const ZVec& b) {
    const size_t m = std::min(a.size(), b.size());
    for (size_t i = 0; i < m; ++i) {
        const int c = cmp(a[i], b[i]);
        if (c != 0) return c;
    }
    if (a.size() == b.size()) return 0;
    return a.size() < b.size() ? -1 : 1;
}

std::string vec_str(const ZVec& v) {
    std::ostringstream os;
    os << "(";
    for (size_t i = 0; i < v.size(); ++i) {
        if (i) os << ",";
        os << v[i].get_str();
    }
    os << ")";
    return os.str();
}

std::string vec_str(const QVec& v) {
    std::ostringstream os;
    os << "(";
    for (size_t i = 0; i < v.size(); ++i) {
        if (i) os << ",";
        os << rat_str(v[i]);
    }
    os << ")";
    return os.str();
}

std::uint64_t fnv1a64(const std::string& bytes) {
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

std::string fnv1a64_hex(const std::string& bytes) {
    static const char* digits = "0123456789abcdef";
    std::uint64_t h = fnv1a64(bytes);
    std::string out(16, '0');
    for (int i = 15; i >= 0; --i) {
        out[i] = digits[h & 0xf];
        h >>= 4;
    }
    return out;
}

}  // namespace fabercone
