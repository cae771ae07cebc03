#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace lmtk {

enum class Errc {
    UnsupportedEncoding,
    CorruptHeader,
    EmptyAudio,
    AudioTooShort,
    MissingColumn,
    UnparseableTimestamp,
    UnknownSpeaker,
    UnknownToken,
    ZeroClass,
    UnlabeledDialogue,
    DialogueTooShort,
    EvenEnsemble,
    LengthMismatch,
    InvalidArgument,
    Io,
    Parse,
};

std::string_view errc_name(Errc code);

// All recoverable failures in the toolkit surface as lmtk::Error; the code
// lets callers (the CLI in particular) map failures onto exit statuses.
class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& what)
        : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

    Errc code() const noexcept { return code_; }

private:
    Errc code_;
};

}  // namespace lmtk
