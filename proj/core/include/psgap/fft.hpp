#pragma once

#include <complex>
#include <vector>

namespace psgap {

/// In-place iterative radix-2 FFT; size must be a power of two.
/// Forward convention: a_k <- sum_j a_j exp(-2 pi i jk / N).
void fft_inplace(std::vector<std::complex<double>>& a, bool inverse = false);

}  // namespace psgap
