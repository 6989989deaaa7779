#pragma once

#include <complex>

namespace ptcubic {

// Energies, wavefunction values, logarithmic derivatives. Every operation
// that returns one guarantees finite components; poles, overflow and domain
// misuse surface as exceptions instead.
using ComplexValue = std::complex<double>;

}
