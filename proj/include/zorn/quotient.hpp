#pragma once

/**
 * Finite quotient machinery: the unit loops over Z/mZ, their exact orders,
 * and the Chinese-remainder product decomposition.
 *
 * Elements are packed into one 64-bit word (one byte per component,
 * big-endian a, x1, x2, x3, y1, y2, y3, b), which keeps an order-259200 loop
 * in a few megabytes and makes multiplication a handful of integer ops plus
 * table-driven modular reduction.  A FiniteLoop is an immutable shared
 * handle: subloop views hold it by value, so lifetime management is free.
 *
 * Enumeration follows the counting proof for prime powers — iterate (a, y)
 * and solve for the dependent component — and assembles composite moduli
 * from coprime factors via CRT, cross-checking every count against the
 * closed index formula.
 */

#include <algorithm>
#include <array>
#include <atomic>
#include <cstdint>
#include <memory>
#include <mutex>
#include <numeric>
#include <vector>

#include "zorn/algebra.hpp"
#include "zorn/errors.hpp"
#include "zorn/parallel.hpp"
#include "zorn/ring.hpp"

namespace zorn {

// ============================================================================
// Index formula
// ============================================================================

// n^7 * prod_{p | n} (1 - p^-4), exactly: prod over p^k || n of p^7k - p^(7k-4).
[[nodiscard]] inline BigInt index_gamma(std::int64_t n) {
    if (n < 1) throw zorn_error(errc::precondition_violated, "index_gamma requires n >= 1");
    BigInt out = 1;
    for (const PrimePower& pp : factor_int(n)) {
        const BigInt pk = boost::multiprecision::pow(BigInt(pp.p), static_cast<unsigned>(7 * pp.k));
        const BigInt p4 = boost::multiprecision::pow(BigInt(pp.p), 4u);
        out *= pk - pk / p4;
    }
    return out;
}

// ============================================================================
// Packed element helpers
// ============================================================================

namespace detail {

// Component order a, x1, x2, x3, y1, y2, y3, b from the high byte down.
[[nodiscard]] inline std::uint64_t pack8(const std::array<std::int64_t, 8>& c) {
    std::uint64_t out = 0;
    for (int i = 0; i < 8; ++i)
        out = (out << 8) | static_cast<std::uint64_t>(c[i] & 0xFF);
    return out;
}

[[nodiscard]] inline std::array<std::int64_t, 8> unpack8(std::uint64_t p) {
    std::array<std::int64_t, 8> c;
    for (int i = 7; i >= 0; --i) {
        c[i] = static_cast<std::int64_t>(p & 0xFF);
        p >>= 8;
    }
    return c;
}

// Every per-component intermediate is bounded by 4*(m-1)^2 <= 484 for the
// moduli the enumeration cap admits, so one centered table covers reduction.
constexpr std::int64_t mod_lut_half = 1024;

struct LoopData {
    std::int64_t m = 1;
    std::vector<std::uint64_t> elements;              // identity first, then ascending
    std::array<std::int16_t, 2 * mod_lut_half> lut{}; // v in [-half, half)

    static constexpr std::size_t memo_cap = 4096;       // built on first multiply
    static constexpr std::size_t memo_hard_cap = 20000; // built only on warm_cache
    mutable std::vector<std::uint16_t> memo;            // order^2 products, built lazily
    mutable std::atomic<bool> memo_ready{false};
    mutable std::once_flag memo_once;
    mutable std::vector<std::uint32_t> direct;        // base-m digit index -> position
    mutable std::once_flag direct_once;

    [[nodiscard]] std::int64_t reduce(std::int64_t v) const { return lut[v + mod_lut_half]; }

    [[nodiscard]] std::uint64_t packed_mul(std::uint64_t p, std::uint64_t q) const {
        const auto u = unpack8(p), v = unpack8(q);
        std::array<std::int64_t, 8> r;
        r[0] = u[0] * v[0] + u[1] * v[4] + u[2] * v[5] + u[3] * v[6];
        r[7] = u[7] * v[7] + u[4] * v[1] + u[5] * v[2] + u[6] * v[3];
        const std::int64_t cy1 = u[5] * v[6] - u[6] * v[5];
        const std::int64_t cy2 = u[6] * v[4] - u[4] * v[6];
        const std::int64_t cy3 = u[4] * v[5] - u[5] * v[4];
        const std::int64_t cx1 = u[2] * v[3] - u[3] * v[2];
        const std::int64_t cx2 = u[3] * v[1] - u[1] * v[3];
        const std::int64_t cx3 = u[1] * v[2] - u[2] * v[1];
        r[1] = u[0] * v[1] + v[7] * u[1] - cy1;
        r[2] = u[0] * v[2] + v[7] * u[2] - cy2;
        r[3] = u[0] * v[3] + v[7] * u[3] - cy3;
        r[4] = v[0] * u[4] + u[7] * v[4] + cx1;
        r[5] = v[0] * u[5] + u[7] * v[5] + cx2;
        r[6] = v[0] * u[6] + u[7] * v[6] + cx3;
        for (auto& c : r) c = reduce(c);
        return pack8(r);
    }

    // det == 1 throughout, so the inverse is the diagonal swap with negated vectors.
    [[nodiscard]] std::uint64_t packed_inv(std::uint64_t p) const {
        auto c = unpack8(p);
        std::swap(c[0], c[7]);
        for (int i = 1; i < 7; ++i) c[i] = reduce(-c[i]);
        return pack8(c);
    }

    [[nodiscard]] std::size_t base_m_index(std::uint64_t p) const {
        const auto c = unpack8(p);
        std::size_t idx = 0;
        for (int i = 0; i < 8; ++i) idx = idx * static_cast<std::size_t>(m) + c[i];
        return idx;
    }

    void ensure_direct() const {
        std::call_once(direct_once, [this] {
            std::size_t span = 1;
            for (int i = 0; i < 8; ++i) span *= static_cast<std::size_t>(m);
            direct.assign(span, 0xFFFFFFFFu);
            for (std::size_t i = 0; i < elements.size(); ++i)
                direct[base_m_index(elements[i])] = static_cast<std::uint32_t>(i);
        });
    }

    [[nodiscard]] std::uint32_t find(std::uint64_t packed) const {
        if (m <= 9) {
            ensure_direct();
            return direct[base_m_index(packed)];
        }
        if (packed == elements[0]) return 0;
        const auto it = std::lower_bound(elements.begin() + 1, elements.end(), packed);
        if (it != elements.end() && *it == packed)
            return static_cast<std::uint32_t>(it - elements.begin());
        return 0xFFFFFFFFu;
    }

    void ensure_memo() const {
        std::call_once(memo_once, [this] {
            const std::size_t n = elements.size();
            memo.resize(n * n);
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j)
                    memo[i * n + j] =
                        static_cast<std::uint16_t>(find(packed_mul(elements[i], elements[j])));
            memo_ready.store(true, std::memory_order_release);
        });
    }
};

}  // namespace detail

// ============================================================================
// FiniteLoop
// ============================================================================

class FiniteLoop {
  public:
    static constexpr std::uint32_t npos = 0xFFFFFFFFu;

    [[nodiscard]] std::int64_t modulus() const { return data_->m; }
    [[nodiscard]] std::size_t order() const { return data_->elements.size(); }
    [[nodiscard]] std::uint64_t packed(std::uint32_t i) const { return data_->elements.at(i); }

    [[nodiscard]] ZornMatrix element(std::uint32_t i) const {
        const auto c = detail::unpack8(data_->elements.at(i));
        return zmat(c[0], {c[1], c[2], c[3]}, {c[4], c[5], c[6]}, c[7], Modulus::mod(data_->m));
    }

    // Position of a matrix (npos if absent); the modulus must match exactly.
    [[nodiscard]] std::uint32_t index_of(const ZornMatrix& A) const {
        if (A.mod != Modulus::mod(data_->m))
            throw zorn_error(errc::modulus_mismatch, "matrix modulus does not match the loop");
        std::array<std::int64_t, 8> c;
        c[0] = A.a.convert_to<std::int64_t>();
        c[7] = A.b.convert_to<std::int64_t>();
        for (int i = 0; i < 3; ++i) {
            c[1 + i] = A.x[i].convert_to<std::int64_t>();
            c[4 + i] = A.y[i].convert_to<std::int64_t>();
        }
        return data_->find(detail::pack8(c));
    }

    [[nodiscard]] bool contains(const ZornMatrix& A) const { return index_of(A) != npos; }

    [[nodiscard]] std::uint32_t mul(std::uint32_t i, std::uint32_t j) const {
        const detail::LoopData& d = *data_;
        if (d.memo_ready.load(std::memory_order_acquire))
            return d.memo[static_cast<std::size_t>(i) * d.elements.size() + j];
        if (d.elements.size() <= detail::LoopData::memo_cap) {
            d.ensure_memo();
            return d.memo[static_cast<std::size_t>(i) * d.elements.size() + j];
        }
        return d.find(d.packed_mul(d.elements[i], d.elements[j]));
    }

    /**
     * Forces the dense multiplication table when the order allows it; a win
     * for whole-universe scans whose multiply count dwarfs the build cost.
     */
    void warm_cache() const {
        if (data_->elements.size() <= detail::LoopData::memo_hard_cap) data_->ensure_memo();
    }

    [[nodiscard]] std::uint32_t inv(std::uint32_t i) const {
        return data_->find(data_->packed_inv(data_->elements[i]));
    }

    [[nodiscard]] std::uint32_t pow(std::uint32_t i, BigInt e) const {
        if (e < 0) {
            i = inv(i);
            e = -e;
        }
        std::uint32_t acc = 0, base = i;
        while (e > 0) {
            if ((e & 1) != 0) acc = mul(acc, base);
            base = mul(base, base);
            e >>= 1;
        }
        return acc;
    }

    // Multiplicative order of element i inside its cyclic subgroup.
    [[nodiscard]] std::int64_t element_order(std::uint32_t i) const {
        std::int64_t n = 1;
        std::uint32_t acc = i;
        while (acc != 0) {
            acc = mul(acc, i);
            ++n;
            if (static_cast<std::size_t>(n) > order() + 1)
                throw std::logic_error("internal: element order exceeds loop order");
        }
        return n;
    }

    // True when element i reduces to the identity mod d (d must divide m).
    [[nodiscard]] bool is_congruent_identity(std::uint32_t i, std::int64_t d) const {
        if (d < 1 || data_->m % d != 0)
            throw zorn_error(errc::not_divisor,
                             "congruence level " + std::to_string(d) + " does not divide " +
                                 std::to_string(data_->m));
        const auto c = detail::unpack8(data_->elements[i]);
        if (c[0] % d != 1 % d || c[7] % d != 1 % d) return false;
        for (int t = 1; t < 7; ++t)
            if (c[t] % d != 0) return false;
        return true;
    }

    friend bool operator==(const FiniteLoop& a, const FiniteLoop& b) {
        return a.data_ == b.data_;
    }

  private:
    explicit FiniteLoop(std::shared_ptr<const detail::LoopData> d) : data_(std::move(d)) {}
    std::shared_ptr<const detail::LoopData> data_;

    friend FiniteLoop enumerate_sll(std::int64_t);
};

// ============================================================================
// Enumeration
// ============================================================================

namespace detail {

// All packed det-1 elements mod p^k by the counting argument: for a unit
// corner the last component is determined by (x, y); otherwise some y_j must
// be a unit and x_j is solved from the determinant equation.
[[nodiscard]] inline std::vector<std::uint64_t> enumerate_prime_power(std::int64_t p, int k) {
    std::int64_t m = 1;
    for (int i = 0; i < k; ++i) m *= p;
    std::vector<std::uint64_t> out;
    out.reserve(index_gamma(m).convert_to<std::size_t>());
    std::mutex merge_mutex;

    parallel_blocks(static_cast<std::uint64_t>(m), [&](std::uint64_t alo, std::uint64_t ahi) {
        std::vector<std::uint64_t> local;
        for (std::int64_t a = static_cast<std::int64_t>(alo); a < static_cast<std::int64_t>(ahi);
             ++a) {
            if (a % p != 0) {
                const std::int64_t ai = mod_inv(a, m).convert_to<std::int64_t>();
                for (std::int64_t y1 = 0; y1 < m; ++y1)
                    for (std::int64_t y2 = 0; y2 < m; ++y2)
                        for (std::int64_t y3 = 0; y3 < m; ++y3)
                            for (std::int64_t x1 = 0; x1 < m; ++x1)
                                for (std::int64_t x2 = 0; x2 < m; ++x2)
                                    for (std::int64_t x3 = 0; x3 < m; ++x3) {
                                        const std::int64_t b =
                                            ai * (1 + x1 * y1 + x2 * y2 + x3 * y3) % m;
                                        local.push_back(
                                            pack8({a, x1, x2, x3, y1, y2, y3, b}));
                                    }
            } else {
                for (std::int64_t y1 = 0; y1 < m; ++y1)
                    for (std::int64_t y2 = 0; y2 < m; ++y2)
                        for (std::int64_t y3 = 0; y3 < m; ++y3) {
                            const std::int64_t ys[3] = {y1, y2, y3};
                            int j = -1;
                            for (int t = 0; t < 3 && j < 0; ++t)
                                if (ys[t] % p != 0) j = t;
                            if (j < 0) continue;  // x.y can never reach ab - 1
                            const std::int64_t yj = mod_inv(ys[j], m).convert_to<std::int64_t>();
                            for (std::int64_t b = 0; b < m; ++b)
                                for (std::int64_t xu = 0; xu < m; ++xu)
                                    for (std::int64_t xv = 0; xv < m; ++xv) {
                                        std::int64_t xs[3];
                                        xs[(j + 1) % 3] = xu;
                                        xs[(j + 2) % 3] = xv;
                                        std::int64_t rhs = a * b - 1 - xu * ys[(j + 1) % 3] -
                                                           xv * ys[(j + 2) % 3];
                                        rhs %= m;
                                        if (rhs < 0) rhs += m;
                                        xs[j] = yj * rhs % m;
                                        local.push_back(pack8(
                                            {a, xs[0], xs[1], xs[2], y1, y2, y3, b}));
                                    }
                        }
            }
        }
        const std::lock_guard<std::mutex> lock(merge_mutex);
        out.insert(out.end(), local.begin(), local.end());
    });
    return out;
}

// Componentwise CRT lift of two coprime packed element sets.
[[nodiscard]] inline std::vector<std::uint64_t> crt_combine(const std::vector<std::uint64_t>& ea,
                                                            std::int64_t ma,
                                                            const std::vector<std::uint64_t>& eb,
                                                            std::int64_t mb) {
    const std::int64_t m = ma * mb;
    const std::int64_t basis_a = crt({{1, ma}, {0, mb}}).r.convert_to<std::int64_t>();
    const std::int64_t basis_b = crt({{0, ma}, {1, mb}}).r.convert_to<std::int64_t>();
    std::vector<std::uint64_t> out;
    out.reserve(ea.size() * eb.size());
    for (const std::uint64_t pa : ea) {
        const auto ca = unpack8(pa);
        for (const std::uint64_t pb : eb) {
            const auto cb = unpack8(pb);
            std::array<std::int64_t, 8> c;
            for (int i = 0; i < 8; ++i) c[i] = (ca[i] * basis_a + cb[i] * basis_b) % m;
            out.push_back(pack8(c));
        }
    }
    return out;
}

[[nodiscard]] inline std::shared_ptr<const LoopData> make_loop_data(
    std::int64_t m, std::vector<std::uint64_t> elements) {
    auto data = std::make_shared<LoopData>();
    data->m = m;
    std::sort(elements.begin(), elements.end());
    if (std::adjacent_find(elements.begin(), elements.end()) != elements.end())
        throw std::logic_error("internal: duplicate element in enumeration");
    if (BigInt(elements.size()) != index_gamma(m))
        throw std::logic_error("internal: enumeration count disagrees with the index formula");
    // Canonical order: identity first, everything else ascending.
    std::array<std::int64_t, 8> id{};
    id[0] = 1 % m;
    id[7] = 1 % m;
    const std::uint64_t packed_id = pack8(id);
    const auto it = std::lower_bound(elements.begin(), elements.end(), packed_id);
    if (it == elements.end() || *it != packed_id)
        throw std::logic_error("internal: identity missing from enumeration");
    std::rotate(elements.begin(), it, it + 1);
    data->elements = std::move(elements);
    for (std::int64_t v = -mod_lut_half; v < mod_lut_half; ++v)
        data->lut[v + mod_lut_half] = static_cast<std::int16_t>(((v % m) + m) % m);
    return data;
}

}  // namespace detail

/**
 * The det-1 unit loop mod m.  Direct enumeration handles prime powers up to
 * 9; coprime composites are assembled by CRT; anything past the caps (factor
 * above 9, or total order above 2^26) raises TooLarge.
 */
[[nodiscard]] inline FiniteLoop enumerate_sll(std::int64_t m) {
    if (m < 1) throw zorn_error(errc::precondition_violated, "enumerate_sll requires m >= 1");
    const PrimePowerList factors = factor_int(m);
    for (const PrimePower& pp : factors) {
        std::int64_t pk = 1;
        for (int i = 0; i < pp.k; ++i) pk *= pp.p;
        if (pk > 9)
            throw zorn_error(errc::too_large,
                             "prime power " + std::to_string(pk) + " exceeds the enumeration cap",
                             "{\"prime_power\":" + std::to_string(pk) + "}");
    }
    if (index_gamma(m) > (BigInt(1) << 26))
        throw zorn_error(errc::too_large,
                         "loop order " + index_gamma(m).str() + " exceeds the order cap",
                         "{\"order\":\"" + index_gamma(m).str() + "\"}");

    std::vector<std::uint64_t> elements;
    std::int64_t built = 1;
    if (factors.empty()) {
        elements.push_back(0);  // mod 1: the zero word is the identity
    } else {
        for (const PrimePower& pp : factors) {
            std::int64_t pk = 1;
            for (int i = 0; i < pp.k; ++i) pk *= pp.p;
            std::vector<std::uint64_t> part = detail::enumerate_prime_power(pp.p, pp.k);
            elements = built == 1 ? std::move(part)
                                  : detail::crt_combine(elements, built, part, pk);
            built *= pk;
        }
    }
    return FiniteLoop(detail::make_loop_data(m, std::move(elements)));
}

// ============================================================================
// CRT isomorphism check
// ============================================================================

/**
 * Verifies that componentwise reduction identifies the mod-(m1*m2) loop with
 * the product of the mod-m1 and mod-m2 loops: bijective over the whole
 * element set, and multiplicative along a full sweep pairing each element
 * with itself and with its canonical successor.
 */
[[nodiscard]] inline bool crt_iso_check(std::int64_t m1, std::int64_t m2) {
    if (m1 < 1 || m2 < 1)
        throw zorn_error(errc::precondition_violated, "crt_iso_check requires m1, m2 >= 1");
    if (std::gcd(m1, m2) != 1)
        throw zorn_error(errc::not_coprime,
                         "moduli " + std::to_string(m1) + " and " + std::to_string(m2) +
                             " share a factor");
    const FiniteLoop L = enumerate_sll(m1 * m2);
    const FiniteLoop L1 = enumerate_sll(m1);
    const FiniteLoop L2 = enumerate_sll(m2);
    const std::size_t n = L.order();
    if (n != L1.order() * L2.order()) return false;

    const auto project = [&](std::uint32_t i, std::int64_t mk,
                             const FiniteLoop& Lk) -> std::uint32_t {
        auto c = detail::unpack8(L.packed(i));
        for (auto& v : c) v %= mk;
        std::uint32_t r = FiniteLoop::npos;
        // Reuse the target loop's own lookup through a packed probe.
        const ZornMatrix probe =
            zmat(c[0], {c[1], c[2], c[3]}, {c[4], c[5], c[6]}, c[7], Modulus::mod(mk));
        r = Lk.index_of(probe);
        return r;
    };

    std::vector<std::uint32_t> p1(n), p2(n);
    std::vector<std::uint8_t> seen(n, 0);
    for (std::uint32_t i = 0; i < n; ++i) {
        p1[i] = project(i, m1, L1);
        p2[i] = project(i, m2, L2);
        if (p1[i] == FiniteLoop::npos || p2[i] == FiniteLoop::npos) return false;
        const std::size_t key = static_cast<std::size_t>(p1[i]) * L2.order() + p2[i];
        if (seen[key]) return false;  // not injective
        seen[key] = 1;
    }

    for (std::uint32_t i = 0; i < n; ++i) {
        const std::uint32_t j = (i + 1 == n) ? 0 : i + 1;
        const std::uint32_t sq = L.mul(i, i), pr = L.mul(i, j);
        if (p1[sq] != L1.mul(p1[i], p1[i]) || p2[sq] != L2.mul(p2[i], p2[i])) return false;
        if (p1[pr] != L1.mul(p1[i], p1[j]) || p2[pr] != L2.mul(p2[i], p2[j])) return false;
    }
    return true;
}

}  // namespace zorn
