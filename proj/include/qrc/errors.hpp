// errors.hpp — exception taxonomy shared by all modules.
// Each error carries a stable machine-readable kind string that the CLI
// forwards as JSON on stderr.

#pragma once

#include <stdexcept>
#include <string>

namespace qrc {

class Error : public std::runtime_error {
public:
    Error(std::string kind, const std::string& msg)
        : std::runtime_error(msg), kind_(std::move(kind)) {}
    const std::string& kind() const noexcept { return kind_; }

private:
    std::string kind_;
};

// Caller violated a documented precondition.
struct ContractError : Error {
    explicit ContractError(const std::string& msg) : Error("contract", msg) {}
};

// Requested problem size exceeds a configured cap.
struct ResourceError : Error {
    explicit ResourceError(const std::string& msg) : Error("resource", msg) {}
};

// Integrator accuracy guard tripped (e.g. trace drift before renormalization).
struct IntegratorError : Error {
    explicit IntegratorError(const std::string& msg) : Error("integrator", msg) {}
};

// Target series admits no NRMSE normalization (max == min).
struct DegenerateTargetError : Error {
    explicit DegenerateTargetError(const std::string& msg) : Error("degenerate-target", msg) {}
};

struct IoError : Error {
    explicit IoError(const std::string& msg) : Error("io", msg) {}
};

struct ConfigError : Error {
    explicit ConfigError(const std::string& msg) : Error("config", msg) {}
};

} // namespace qrc
