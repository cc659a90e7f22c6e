#include "qlab/exact.hpp"

namespace qlab {

std::string ExactComplex::to_string() const {
  if (im_ == 0) return re_.str();
  std::string imag;
  if (im_ == 1) {
    imag = "i";
  } else if (im_ == -1) {
    imag = "-i";
  } else {
    imag = im_.str() + "i";
  }
  if (re_ == 0) return imag;
  return re_.str() + (im_ > 0 ? "+" : "") + imag;
}

}  // namespace qlab
