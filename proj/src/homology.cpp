#include "gridhom/homology.hpp"

#include <algorithm>
#include <sstream>

#include <json.hpp>

#include "gridhom/parallel.hpp"

namespace gridhom {

long long PoincarePolynomial::total_dim() const {
    long long t = 0;
    for (const auto& [k, v] : coeffs) t += v;
    return t;
}

long long PoincarePolynomial::dim(int maslov, long long alex2) const {
    auto it = coeffs.find({maslov, alex2});
    return it == coeffs.end() ? 0 : it->second;
}

void PoincarePolynomial::add(int maslov, long long alex2, long long count) {
    if (count == 0) return;
    auto [it, fresh] = coeffs.emplace(std::make_pair(maslov, alex2), count);
    if (!fresh) {
        it->second += count;
        if (it->second == 0) coeffs.erase(it);
    }
}

namespace {

std::string half_exponent(long long a2) {
    if (a2 % 2 == 0) return std::to_string(a2 / 2);
    return std::to_string(a2) + "/2";
}

}  // namespace

std::string PoincarePolynomial::to_string() const {
    if (coeffs.empty()) return "0";
    std::ostringstream out;
    bool first = true;
    for (const auto& [k, v] : coeffs) {
        if (!first) out << " + ";
        first = false;
        if (v != 1) out << v << "*";
        out << "t^{" << k.first << "}q^{" << half_exponent(k.second) << "}";
    }
    return out.str();
}

PoincarePolynomial homology(const BigradedComplex& c, int threads) {
    if (!c.d_squared_zero()) throw NotAComplex("boundary map does not square to zero");

    const std::size_t ns = c.strata.size();
    std::vector<long long> rank_of(ns, 0);
    parallel_chunks(ns, (int)ns, resolve_threads(threads), [&](int, std::uint64_t b, std::uint64_t e) {
        for (std::uint64_t i = b; i < e; ++i) {
            const Stratum& s = c.strata[i];
            if (s.below < 0 || s.rows.empty()) continue;
            rank_of[i] = gf2_rank_csc((std::uint32_t)c.strata[s.below].dim(), s.col_ptr, s.rows);
        }
    });

    std::vector<long long> dims(ns);
    for (std::size_t i = 0; i < ns; ++i) dims[i] = (long long)c.strata[i].dim();
    for (std::size_t i = 0; i < ns; ++i) {
        if (c.strata[i].below >= 0) {
            dims[i] -= rank_of[i];
            dims[c.strata[i].below] -= rank_of[i];
        }
    }

    PoincarePolynomial p;
    for (std::size_t i = 0; i < ns; ++i) {
        if (dims[i] < 0) throw InternalError("negative homology dimension");
        p.add(c.strata[i].maslov, c.strata[i].alex2, dims[i]);
    }
    return p;
}

PoincarePolynomial tensor_w(const PoincarePolynomial& p, long long i) {
    PoincarePolynomial out;
    for (const auto& [k, v] : p.coeffs) {
        out.add(k.first, k.second, v);
        out.add(k.first - 1, k.second - 2 * i, v);
    }
    return out;
}

PoincarePolynomial tensor(const PoincarePolynomial& p, const PoincarePolynomial& q) {
    PoincarePolynomial out;
    for (const auto& [a, va] : p.coeffs)
        for (const auto& [b, vb] : q.coeffs) out.add(a.first + b.first, a.second + b.second, va * vb);
    return out;
}

PoincarePolynomial shift(const PoincarePolynomial& p, int a, long long b2) {
    PoincarePolynomial out;
    for (const auto& [k, v] : p.coeffs) out.add(k.first - a, k.second - b2, v);
    return out;
}

PoincarePolynomial hat_from_tilde(const PoincarePolynomial& tilde,
                                  std::span<const long long> plain_o_weights) {
    PoincarePolynomial cur = tilde;
    for (long long w : plain_o_weights) {
        // Divide by 1 + t^-1 q^-2w. Leading (top-Maslov) terms of the divisor
        // are unital, so the quotient is forced from the top down and its
        // support stays within the dividend's support.
        PoincarePolynomial q;
        std::vector<std::pair<int, long long>> keys;
        keys.reserve(cur.coeffs.size());
        for (const auto& [k, v] : cur.coeffs) keys.push_back(k);
        std::sort(keys.begin(), keys.end(), [](auto& a, auto& b) { return a.first > b.first; });
        for (const auto& k : keys) {
            long long val = cur.dim(k.first, k.second) - q.dim(k.first + 1, k.second + 2 * w);
            if (val < 0)
                throw DeconvolutionError("tilde polynomial is not divisible by W(" +
                                         std::to_string(w) + ")");
            q.add(k.first, k.second, val);
        }
        if (tensor_w(q, w) != cur)
            throw DeconvolutionError("division by W(" + std::to_string(w) + ") left a remainder");
        cur = std::move(q);
    }
    return cur;
}

PoincarePolynomial normalize_ashift(const PoincarePolynomial& p) {
    if (p.is_zero()) return p;
    long long lo = p.coeffs.begin()->first.second;
    for (const auto& [k, v] : p.coeffs) lo = std::min(lo, k.second);
    return shift(p, 0, lo);
}

bool equal_up_to_ashift(const PoincarePolynomial& a, const PoincarePolynomial& b) {
    return normalize_ashift(a) == normalize_ashift(b);
}

LaurentQ euler_characteristic(const PoincarePolynomial& p) {
    LaurentQ chi;
    for (const auto& [k, v] : p.coeffs) {
        chi[k.second] += (k.first % 2 == 0) ? v : -v;
        if (chi[k.second] == 0) chi.erase(k.second);
    }
    return chi;
}

LaurentQ euler_characteristic_chain(const BigradedComplex& c) {
    LaurentQ chi;
    for (const auto& s : c.strata) {
        chi[s.alex2] += (s.maslov % 2 == 0) ? (long long)s.dim() : -(long long)s.dim();
        if (chi[s.alex2] == 0) chi.erase(s.alex2);
    }
    return chi;
}

std::string laurent_to_string(const LaurentQ& q) {
    if (q.empty()) return "0";
    std::ostringstream out;
    bool first = true;
    for (const auto& [e, v] : q) {
        long long mag = v < 0 ? -v : v;
        if (first) {
            if (v < 0) out << "-";
            first = false;
        } else {
            out << (v < 0 ? " - " : " + ");
        }
        if (mag != 1 || e == 0) out << mag;
        if (e != 0) {
            if (mag != 1) out << "*";
            out << "q^{" << half_exponent(e) << "}";
        }
    }
    return out.str();
}

std::string poincare_to_json(const PoincarePolynomial& p) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& [k, v] : p.coeffs)
        arr.push_back({{"maslov", k.first}, {"alex2", k.second}, {"dim", v}});
    return arr.dump();
}

PoincarePolynomial tilde_homology(const WeightedDiagram& wd, int threads) {
    return homology(tilde_complex(wd, threads), threads);
}

PoincarePolynomial hat_homology(const WeightedDiagram& wd, int threads) {
    auto weights = wd.plain_o_weights();
    return hat_from_tilde(tilde_homology(wd, threads), weights);
}

}  // namespace gridhom
