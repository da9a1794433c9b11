#pragma once

#include <stdexcept>
#include <string>

namespace klab {

enum class Errc {
  NotALattice,
  NoAdjoint,
  CapExceeded,
  UnknownName,
  MalformedSurface,
  MonadMismatch,
  ModeUnsupported,
  NoClosedForm,
  HypothesisUnmet,
  NotExponentiable,
};

inline const char* errc_name(Errc c) {
  switch (c) {
    case Errc::NotALattice: return "NotALattice";
    case Errc::NoAdjoint: return "NoAdjoint";
    case Errc::CapExceeded: return "CapExceeded";
    case Errc::UnknownName: return "UnknownName";
    case Errc::MalformedSurface: return "MalformedSurface";
    case Errc::MonadMismatch: return "MonadMismatch";
    case Errc::ModeUnsupported: return "ModeUnsupported";
    case Errc::NoClosedForm: return "NoClosedForm";
    case Errc::HypothesisUnmet: return "HypothesisUnmet";
    case Errc::NotExponentiable: return "NotExponentiable";
  }
  return "?";
}

class Error : public std::runtime_error {
public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}
  Errc code() const { return code_; }

private:
  Errc code_;
};

[[noreturn]] inline void raise(Errc code, const std::string& what) { throw Error(code, what); }

}  // namespace klab
