#pragma once

#include <stdexcept>
#include <string>

namespace gb2d {

/// Input outside the supported range of an operation.
class domain_error : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// An approximation was requested where it does not apply
/// (wrong parameter regime or too close to a coalescence set).
class regime_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A truncated series could not certify the requested tolerance.
class tolerance_error : public std::runtime_error {
public:
    tolerance_error(const std::string& what, double achieved)
        : std::runtime_error(what), achieved_(achieved) {}
    double achieved() const noexcept { return achieved_; }

private:
    double achieved_;
};

}  // namespace gb2d
