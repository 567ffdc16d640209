#pragma once

#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "gridhom/complex.hpp"
#include "gridhom/gf2.hpp"

namespace gridhom {

// Dimensions of a bigraded GF(2) vector space, indexed by (maslov, alex2)
// with the Alexander grading doubled.
struct PoincarePolynomial {
    std::map<std::pair<int, long long>, long long> coeffs;

    bool is_zero() const { return coeffs.empty(); }
    long long total_dim() const;
    long long dim(int maslov, long long alex2) const;
    void add(int maslov, long long alex2, long long count);

    friend bool operator==(const PoincarePolynomial&, const PoincarePolynomial&) = default;

    std::string to_string() const;  // deterministic human-readable form
};

// Homology dimensions per stratum: dim H = dim C - rank d_here - rank d_above.
// Throws NotAComplex when the boundary does not square to zero.
PoincarePolynomial homology(const BigradedComplex& c, int threads = 0);

// The two-dimensional space W(i) contributes summands at (0,0) and (-1,-i).
PoincarePolynomial tensor_w(const PoincarePolynomial& p, long long i);

// Graded tensor product and the shift X[[a,b]] (entries move to (d-a, s-b2)).
PoincarePolynomial tensor(const PoincarePolynomial& p, const PoincarePolynomial& q);
PoincarePolynomial shift(const PoincarePolynomial& p, int a, long long b2);

// Exact division by the product of (1 + t^-1 q^-2w) over the given weights,
// greedily from the top Maslov grading. Throws DeconvolutionError when the
// division leaves a remainder.
PoincarePolynomial hat_from_tilde(const PoincarePolynomial& tilde,
                                  std::span<const long long> plain_o_weights);

// Shifts alex2 so the lowest supported value is zero; identity on zero.
PoincarePolynomial normalize_ashift(const PoincarePolynomial& p);
bool equal_up_to_ashift(const PoincarePolynomial& a, const PoincarePolynomial& b);

// Graded Euler characteristic: a Laurent polynomial in q, exponent = alex2.
using LaurentQ = std::map<long long, long long>;
LaurentQ euler_characteristic(const PoincarePolynomial& p);
LaurentQ euler_characteristic_chain(const BigradedComplex& c);
std::string laurent_to_string(const LaurentQ& q);  // exponents printed halved

std::string poincare_to_json(const PoincarePolynomial& p);

// Convenience pipeline entry points.
PoincarePolynomial tilde_homology(const WeightedDiagram& wd, int threads = 0);
PoincarePolynomial hat_homology(const WeightedDiagram& wd, int threads = 0);

// Independent dense implementation used as a cross-check: naive rectangle
// search, explicit cell scans, textbook elimination. Grids above 7x7 are
// rejected with TooLarge.
PoincarePolynomial oracle_homology(const WeightedDiagram& wd);
PoincarePolynomial oracle_cn_homology(const CnFixture& f);

}  // namespace gridhom
