#pragma once

#include <stdexcept>
#include <string>

namespace burnside {

/// Malformed or unreadable user input (table files, partition strings).
class InputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A brute-force or allocation cap would be exceeded.
class ResourceLimitError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// An identity that must hold exactly was violated (e.g. a non-integral orbit count).
class ConsistencyError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

}  // namespace burnside
