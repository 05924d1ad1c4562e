#pragma once

#include <complex>
#include <vector>

namespace lplab {

// In-place N-dimensional DFT of an M^N row-major array (last axis fastest).
// sign = -1 forward, +1 backward; neither direction is normalised.
void fft_nd(std::vector<std::complex<double>>& data, int N, int M, int sign);

}  // namespace lplab
