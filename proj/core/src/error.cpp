#include "lmtk/error.hpp"

namespace lmtk {

std::string_view errc_name(Errc code) {
    switch (code) {
        case Errc::UnsupportedEncoding: return "UnsupportedEncoding";
        case Errc::CorruptHeader: return "CorruptHeader";
        case Errc::EmptyAudio: return "EmptyAudio";
        case Errc::AudioTooShort: return "AudioTooShort";
        case Errc::MissingColumn: return "MissingColumn";
        case Errc::UnparseableTimestamp: return "UnparseableTimestamp";
        case Errc::UnknownSpeaker: return "UnknownSpeaker";
        case Errc::UnknownToken: return "UnknownToken";
        case Errc::ZeroClass: return "ZeroClass";
        case Errc::UnlabeledDialogue: return "UnlabeledDialogue";
        case Errc::DialogueTooShort: return "DialogueTooShort";
        case Errc::EvenEnsemble: return "EvenEnsemble";
        case Errc::LengthMismatch: return "LengthMismatch";
        case Errc::InvalidArgument: return "InvalidArgument";
        case Errc::Io: return "Io";
        case Errc::Parse: return "Parse";
    }
    return "Unknown";
}

}  // namespace lmtk
