#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "gridhom/diagram.hpp"

namespace gridhom {

// A state: one lattice point on each vertical and each horizontal circle.
// perm[c] is the row of the point on vertical circle c.
struct State {
    std::vector<std::uint8_t> perm;

    int n() const { return (int)perm.size(); }
    friend bool operator==(const State&, const State&) = default;
};

// A planar point with an integer coefficient; coordinates are doubled so
// that marking centers (half-integers) stay integral.
struct WeightedPoint {
    long long x = 0;
    long long y = 0;
    long long coeff = 1;
};

// I(A, B): coefficient-weighted count of pairs a in A, b in B with a < b in
// both coordinates strictly. Bilinear in formal sums.
long long i_pairing(std::span<const WeightedPoint> a, std::span<const WeightedPoint> b);

// 2 * J(A, B) = I(A, B) + I(B, A).
long long j_pairing2(std::span<const WeightedPoint> a, std::span<const WeightedPoint> b);

// Doubled planar coordinates of states and markings under a cut.
std::vector<WeightedPoint> state_points(const PlanarRealization& pr, const State& x);
std::vector<WeightedPoint> o_points(const PlanarRealization& pr);  // coeff 1 each

// M(x) = J(x - O, x - O) + 1; an integer, independent of the cut.
int maslov(const PlanarRealization& pr, const State& x);

// Doubled Alexander grading 2*A(x) = 2*J(x, sum w(X_j) X_j - sum w(O_i) O_i).
// Only differences between states are invariants of the toroidal diagram.
long long alexander2(const PlanarRealization& pr, const WeightedDiagram& wd, const State& x);

// Maslov grading of a staircase-fixture state (single O-type marking).
int maslov_cn(const CnFixture& f, const State& x);

// Visits all n! states in lexicographic order of perm.
void for_each_state(int n, const std::function<void(const State&)>& fn);

// Materialized lexicographic list; intended for small n.
std::vector<State> enumerate_states(const GridDiagram& d);

// Lexicographic (un)ranking and bit-packing, used to index generators.
std::uint64_t lex_rank(std::span<const std::uint8_t> perm);
State lex_unrank(int n, std::uint64_t rank);
std::uint64_t factorial(int n);

}  // namespace gridhom
