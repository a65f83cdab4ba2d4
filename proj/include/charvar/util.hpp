#pragma once

#include <chrono>
#include <stdexcept>
#include <string>

namespace charvar {

struct TimeoutError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct PreconditionError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct InternalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/* Wall-clock budget for a single basis computation. Checked inside the pair
   loops; nullptr deadline means unbounded. */
class Deadline {
public:
    Deadline() : limited_(false) {}
    explicit Deadline(std::chrono::seconds budget)
        : limited_(true), end_(std::chrono::steady_clock::now() + budget) {}

    void check(const char* what) const {
        if (limited_ && std::chrono::steady_clock::now() > end_)
            throw TimeoutError(std::string("computation budget exceeded in ") + what);
    }

private:
    bool limited_;
    std::chrono::steady_clock::time_point end_;
};

} // namespace charvar
