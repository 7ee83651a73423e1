#pragma once

#include <stdexcept>
#include <string>

namespace zernike {

/// Base class for every error raised by the library. `kind()` is a stable
/// machine-readable tag used by the CLI when it reports errors as JSON.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
    virtual const char* kind() const noexcept { return "Error"; }
};

#define ZERNIKE_DEFINE_ERROR(Name)                                          \
    class Name : public Error {                                             \
    public:                                                                 \
        explicit Name(const std::string& what) : Error(what) {}             \
        const char* kind() const noexcept override { return #Name; }        \
    };

// Point outside the metric domain 1 + alpha r^2 > 0, or an operation that
// needs a compact disk (alpha < 0) called with alpha >= 0.
ZERNIKE_DEFINE_ERROR(DomainError)
ZERNIKE_DEFINE_ERROR(ConfigError)
ZERNIKE_DEFINE_ERROR(PrecisionError)
ZERNIKE_DEFINE_ERROR(QuadratureError)
ZERNIKE_DEFINE_ERROR(ConvergenceError)
ZERNIKE_DEFINE_ERROR(StepSizeError)
ZERNIKE_DEFINE_ERROR(GaugeMismatchError)

#undef ZERNIKE_DEFINE_ERROR

/// Raised when back-substitution would divide by lambda_{n-2k} - lambda_n ~ 0,
/// i.e. on the locus beta = -2 alpha (n - k).
class ResonanceError : public Error {
public:
    ResonanceError(const std::string& what, int n, int k)
        : Error(what), n_(n), k_(k) {}
    const char* kind() const noexcept override { return "ResonanceError"; }
    int n() const noexcept { return n_; }
    int k() const noexcept { return k_; }

private:
    int n_;
    int k_;
};

}  // namespace zernike
