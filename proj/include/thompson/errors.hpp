#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace thompson {

/// Malformed textual input. `position` is a 0-based character offset.
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& what, std::size_t position)
        : std::runtime_error(what + " (at position " + std::to_string(position) + ")"),
          position_(position) {}

    std::size_t position() const noexcept { return position_; }

private:
    std::size_t position_;
};

/// A precondition of an operation was violated. The message names the contract.
class ContractError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

}  // namespace thompson
