#ifndef DTSNE_ERROR_HPP
#define DTSNE_ERROR_HPP

#include <stdexcept>
#include <string>
#include <string_view>

namespace dtsne {

enum class ErrorCode {
    NonFinite,
    TooFewSamples,
    LabelLengthMismatch,
    FileNotFound,
    ParseError,
    RaggedRows,
    IoError,
    DimensionTooLarge,
    LengthMismatch,
    NotNormalized,
    DegenerateRow,
    InvalidConfig,
    NonFiniteIterate,
    KTooLarge,
    ZeroRadius,
    SpecInvalid,
};

std::string_view to_string(ErrorCode code);

/// Every failure raised by the library carries one of the codes above.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(message), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

}  // namespace dtsne

#endif
