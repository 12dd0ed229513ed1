#include "fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <stdexcept>
#include <utility>
#include <vector>

namespace nslab::detail {

namespace {

class PlanCache {
 public:
  ~PlanCache() {
    for (auto& [key, plan] : plans_) fftw_destroy_plan(plan);
  }

  fftw_plan get(int m, FftDirection dir) {
    const std::lock_guard lock(mutex_);
    const auto key = std::make_pair(m, dir);
    if (auto it = plans_.find(key); it != plans_.end()) return it->second;
    // FFTW_ESTIMATE leaves the scratch array untouched during planning.
    std::vector<std::complex<double>> scratch(static_cast<std::size_t>(m) * m);
    auto* buf = reinterpret_cast<fftw_complex*>(scratch.data());
    fftw_plan plan = fftw_plan_dft_2d(m, m, buf, buf,
                                      dir == FftDirection::Forward ? FFTW_FORWARD : FFTW_BACKWARD,
                                      FFTW_ESTIMATE | FFTW_UNALIGNED);
    if (plan == nullptr) throw std::runtime_error("FFTW failed to create a plan");
    plans_.emplace(key, plan);
    return plan;
  }

 private:
  std::mutex mutex_;
  std::map<std::pair<int, FftDirection>, fftw_plan> plans_;
};

PlanCache& cache() {
  static PlanCache instance;
  return instance;
}

}  // namespace

void fft2d_inplace(std::span<std::complex<double>> data, int m, FftDirection dir) {
  if (data.size() != static_cast<std::size_t>(m) * m) {
    throw std::invalid_argument("fft buffer does not match transform size");
  }
  fftw_plan plan = cache().get(m, dir);
  auto* buf = reinterpret_cast<fftw_complex*>(data.data());
  fftw_execute_dft(plan, buf, buf);
}

}  // namespace nslab::detail
