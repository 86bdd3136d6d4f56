#pragma once

#include <stdexcept>
#include <string>

namespace upcross {

enum class errc {
    empty_sequence,
    index_out_of_range,
    too_large,
    too_deep,
    bad_thresholds,
    window_too_long,
    window_too_short,
    prefix_too_short,
    precondition_violated,
    bad_parameter,
    bad_weights,
    no_unique_stationary,
    parse_error,
};

class error : public std::runtime_error {
public:
    error(errc code, std::string message)
        : std::runtime_error(std::move(message)), code_(code) {}

    errc code() const noexcept { return code_; }

private:
    errc code_;
};

}  // namespace upcross
