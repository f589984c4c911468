#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace kahler {

// Errors caused by bad input (malformed expressions, invalid charts).
class user_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class parse_error : public user_error {
public:
    parse_error(const std::string &msg, std::size_t pos)
        : user_error(msg + " at position " + std::to_string(pos)), position_(pos) {}
    std::size_t position() const noexcept { return position_; }

private:
    std::size_t position_;
};

class validation_error : public user_error {
public:
    using user_error::user_error;
};

class domain_error : public user_error {
public:
    using user_error::user_error;
};

// An internal invariant that the construction guarantees did not hold.
class contract_violation : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

} // namespace kahler
