#pragma once

#include <array>
#include <stdexcept>
#include <string>

namespace qsym {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NonPrimeModulus : Error { using Error::Error; };
struct InvalidParameters : Error { using Error::Error; };

struct MalformedHeader : Error { using Error::Error; };
struct TruncatedBitVector : Error { using Error::Error; };
struct TrailingBytes : Error { using Error::Error; };

struct NotStronglyRegular : Error {
    int u, v; // witness pair
    NotStronglyRegular(const std::string& msg, int u_, int v_) : Error(msg), u(u_), v(v_) {}
};

struct NotThreePointRegular : Error {
    std::array<int, 3> first, second; // two same-shape triples with different counts
    NotThreePointRegular(const std::string& msg, std::array<int, 3> a, std::array<int, 3> b)
        : Error(msg), first(a), second(b) {}
};

struct ArityMismatch : Error { using Error::Error; };
struct InvalidDiagram : Error { using Error::Error; };
struct HashMismatch : Error { using Error::Error; };
struct DimensionMismatch : Error { using Error::Error; };
struct UnknownDerivation : Error { using Error::Error; };

/// Declared, resumable: the thrower leaves a checkpoint behind before raising.
struct ResourceBudgetExceeded : Error {
    std::string checkpoint_path;
    explicit ResourceBudgetExceeded(const std::string& msg, std::string ckpt = {})
        : Error(msg), checkpoint_path(std::move(ckpt)) {}
};

} // namespace qsym
