#pragma once

/**
 * Error taxonomy shared by every module.
 *
 * Precondition violations throw zorn_error with a machine-readable code;
 * the CLI maps codes to {"error": name, "witness": ...} and exit status 1.
 */

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>

namespace zorn {

enum class errc {
    not_invertible,
    not_coprime,
    not_unimodular,
    modulus_mismatch,
    invalid_sl2,
    precondition_violated,
    not_in_gamma,
    degenerate_v,
    too_large,
    not_divisor,
    lagrange_fails,
};

[[nodiscard]] inline const char* errc_name(errc c) noexcept {
    switch (c) {
        case errc::not_invertible:        return "NotInvertible";
        case errc::not_coprime:           return "NotCoprime";
        case errc::not_unimodular:        return "NotUnimodular";
        case errc::modulus_mismatch:      return "ModulusMismatch";
        case errc::invalid_sl2:           return "InvalidSL2";
        case errc::precondition_violated: return "PreconditionViolated";
        case errc::not_in_gamma:          return "NotInGamma";
        case errc::degenerate_v:          return "DegenerateV";
        case errc::too_large:             return "TooLarge";
        case errc::not_divisor:           return "NotDivisor";
        case errc::lagrange_fails:        return "LagrangeFails";
    }
    return "Unknown";
}

class zorn_error : public std::runtime_error {
public:
    zorn_error(errc code, const std::string& what, std::string witness = {})
        : std::runtime_error(std::string(errc_name(code)) + ": " + what),
          code_(code),
          witness_(std::move(witness)) {}

    [[nodiscard]] errc code() const noexcept { return code_; }
    [[nodiscard]] const char* name() const noexcept { return errc_name(code_); }
    // Optional witness rendered as a JSON fragment, empty when absent.
    [[nodiscard]] const std::string& witness() const noexcept { return witness_; }

private:
    errc code_;
    std::string witness_;
};

// Thrown by index_or_cosets when the Lagrange property fails; carries the
// offending (h, x) pair as element indices of the ambient loop.
class lagrange_error : public zorn_error {
public:
    lagrange_error(std::uint32_t h, std::uint32_t x)
        : zorn_error(errc::lagrange_fails,
                     "coset H(h*x) differs from Hx",
                     "{\"h\":" + std::to_string(h) + ",\"x\":" + std::to_string(x) + "}"),
          h_(h),
          x_(x) {}

    [[nodiscard]] std::pair<std::uint32_t, std::uint32_t> pair() const noexcept { return {h_, x_}; }

private:
    std::uint32_t h_;
    std::uint32_t x_;
};

}  // namespace zorn
