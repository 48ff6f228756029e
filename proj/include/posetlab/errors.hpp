#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace posetlab {

enum class errc {
    not_prime_power,
    division_by_zero,
    out_of_range,
    too_large,
    not_a_basis,
    wrong_ground_kind,
    parse_error,
    cycle_detected,
    invalid_tuple,
    zero_multiplicity,
    not_k_sperner,
};

const char* errc_name(errc c);

// Domain error carrying a machine-readable kind and, for a few kinds
// (not_k_sperner, covering violations), a witness element-id list.
class wb_error : public std::runtime_error {
public:
    wb_error(errc code, const std::string& msg)
        : std::runtime_error(std::string(errc_name(code)) + ": " + msg), code_(code) {}
    wb_error(errc code, const std::string& msg, std::vector<int> witness)
        : std::runtime_error(std::string(errc_name(code)) + ": " + msg),
          code_(code), witness_(std::move(witness)) {}

    errc code() const { return code_; }
    const std::vector<int>& witness() const { return witness_; }

private:
    errc code_;
    std::vector<int> witness_;
};

[[noreturn]] inline void fail(errc code, const std::string& msg) {
    throw wb_error(code, msg);
}

[[noreturn]] inline void fail(errc code, const std::string& msg, std::vector<int> witness) {
    throw wb_error(code, msg, std::move(witness));
}

}  // namespace posetlab
