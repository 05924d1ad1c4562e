#include "lplab/fft.hpp"

#include <fftw3.h>

#include <mutex>

#include "lplab/errors.hpp"

namespace lplab {

namespace {
std::mutex& planner_mutex() {
  static std::mutex mu;
  return mu;
}
}  // namespace

void fft_nd(std::vector<std::complex<double>>& data, int N, int M, int sign) {
  std::size_t total = 1;
  for (int k = 0; k < N; ++k) total *= static_cast<std::size_t>(M);
  if (data.size() != total) throw DomainError("fft_nd: array size does not match M^N");
  int dims[3] = {M, M, M};
  auto* ptr = reinterpret_cast<fftw_complex*>(data.data());
  fftw_plan plan;
  {
    // The FFTW planner is not thread-safe; execution is.
    std::lock_guard<std::mutex> lock(planner_mutex());
    plan = fftw_plan_dft(N, dims, ptr, ptr, sign < 0 ? FFTW_FORWARD : FFTW_BACKWARD, FFTW_ESTIMATE);
  }
  if (!plan) throw Error("fftw_plan_dft failed");
  fftw_execute(plan);
  std::lock_guard<std::mutex> lock(planner_mutex());
  fftw_destroy_plan(plan);
}

}  // namespace lplab
