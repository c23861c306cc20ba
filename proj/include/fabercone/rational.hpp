#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <vector>

namespace fabercone {

using Rat = mpq_class;
using Int = mpz_class;
using QVec = std::vector<Rat>;
using ZVec = std::vector<Int>;

// Accepts "p" or "p/q" with q > 0; result is gcd-reduced.
Rat parse_rational(const std::string& text);

// Canonical rendering, "p" when the denominator is 1, else "p/q".
std::string rat_str(const Rat& value);

QVec to_qvec(const ZVec& v);
ZVec to_zvec(const QVec& v);  // requires all entries integral

// Scales by the unique positive rational making the entries coprime
// integers.  The zero vector maps to zeros.
ZVec primitive(const QVec& v);
ZVec primitive(const ZVec& v);

bool is_zero(const ZVec& v);
bool is_zero(const QVec& v);

Rat dot(const QVec& a, const QVec& b);
Int dot(const ZVec& a, const ZVec& b);
Rat dot(const ZVec& a, const QVec& b);

int lex_compare(const ZVec& a, const ZVec& b);

struct ZVecLess {
    bool operator()(const ZVec& a, const ZVec& b) const { return lex_compare(a, b) < 0; }
};

std::string vec_str(const ZVec& v);
std::string vec_str(const QVec& v);

// FNV-1a over a byte string; used for content keys and transcript hashes.
std::uint64_t fnv1a64(const std::string& bytes);
std::string fnv1a64_hex(const std::string& bytes);

}  // namespace fabercone
