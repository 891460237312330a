#include "rimc/errors.hpp"

#include <sstream>

namespace rimc {

namespace {

std::string describe(const char* what, std::complex<double> value) {
  std::ostringstream os;
  os.precision(17);
  os << what << " (" << value.real() << (value.imag() < 0 ? " - " : " + ")
     << std::abs(value.imag()) << "i)";
  return os.str();
}

}  // namespace

ShiftIsEigenvalue::ShiftIsEigenvalue(std::complex<double> sigma)
    : Error(describe("A - sigma B is singular at sigma", sigma)), sigma_(sigma) {}

ReducedSingular::ReducedSingular(std::complex<double> z)
    : Error(describe("reduced Hessenberg system is singular at z", z)), z_(z) {}

}  // namespace rimc
