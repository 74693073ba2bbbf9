#include "qpipe/errors.hpp"

#include <sstream>

namespace qpipe {

namespace {

std::string cap_message(int requested, int cap) {
  std::ostringstream os;
  os << "requested " << requested << " qubits exceeds the qubit cap of " << cap
     << " (raise it with --qubit-cap or QPIPE_QUBIT_CAP)";
  return os.str();
}

std::string annihilated_message(std::size_t pixel, double threshold) {
  std::ostringstream os;
  os << "signal annihilated at pixel " << pixel << ": every estimation bin is below threshold "
     << threshold;
  return os.str();
}

}  // namespace

ResourceLimitError::ResourceLimitError(int requested, int cap)
    : Error(cap_message(requested, cap)), requested_(requested), cap_(cap) {}

SignalAnnihilated::SignalAnnihilated(std::size_t pixel, double threshold)
    : Error(annihilated_message(pixel, threshold)), pixel_(pixel) {}

}  // namespace qpipe
