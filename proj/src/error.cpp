#include "plasti/error.hpp"

namespace plasti {

std::string_view to_string(ErrorKind kind)
{
    switch (kind) {
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::InvalidDescription: return "InvalidDescription";
    case ErrorKind::OverlappingComponents: return "OverlappingComponents";
    case ErrorKind::EmptyWindow: return "EmptyWindow";
    case ErrorKind::RuleDivergence: return "RuleDivergence";
    case ErrorKind::DeclarationContradicted: return "DeclarationContradicted";
    case ErrorKind::NotDiscrete: return "NotDiscrete";
    case ErrorKind::WindowTooSmall: return "WindowTooSmall";
    case ErrorKind::OutsideDomain: return "OutsideDomain";
    case ErrorKind::AmbiguousPiece: return "AmbiguousPiece";
    case ErrorKind::DegenerateSpace: return "DegenerateSpace";
    case ErrorKind::InverseMissing: return "InverseMissing";
    case ErrorKind::CapExceeded: return "CapExceeded";
    case ErrorKind::MetadataUnvalidated: return "MetadataUnvalidated";
    case ErrorKind::InvalidMatrix: return "InvalidMatrix";
    case ErrorKind::OuterMetricInvalid: return "OuterMetricInvalid";
    case ErrorKind::UnknownGalleryId: return "UnknownGalleryId";
    case ErrorKind::PreconditionFailed: return "PreconditionFailed";
    }
    return "Unknown";
}

}  // namespace plasti
