#include "modrate/detail/fft.hpp"

#include <fftw3.h>

#include <mutex>

#include "modrate/error.hpp"

namespace modrate::detail {
namespace {

// The FFTW planner is not reentrant; execution is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

class Plan {
 public:
  explicit Plan(fftw_plan p) : plan_(p) {
    if (plan_ == nullptr) throw Error(ErrorCode::InvalidArgument, "FFTW plan creation failed");
  }
  Plan(const Plan&) = delete;
  Plan& operator=(const Plan&) = delete;
  ~Plan() {
    std::lock_guard lock(planner_mutex());
    fftw_destroy_plan(plan_);
  }
  void execute() const { fftw_execute(plan_); }

 private:
  fftw_plan plan_;
};

fftw_complex* as_fftw(std::vector<std::complex<double>>& v) {
  return reinterpret_cast<fftw_complex*>(v.data());
}

}  // namespace

void fft(std::vector<std::complex<double>>& data, int sign) {
  if (data.size() <= 1) return;
  fftw_plan raw;
  {
    std::lock_guard lock(planner_mutex());
    raw = fftw_plan_dft_1d(static_cast<int>(data.size()), as_fftw(data), as_fftw(data),
                           sign < 0 ? FFTW_FORWARD : FFTW_BACKWARD, FFTW_ESTIMATE);
  }
  Plan(raw).execute();
}

void fft2(std::vector<std::complex<double>>& data, std::size_t rows, std::size_t cols, int sign) {
  if (data.size() != rows * cols) throw Error(ErrorCode::InvalidArgument, "fft2: size mismatch");
  if (data.size() <= 1) return;
  fftw_plan raw;
  {
    std::lock_guard lock(planner_mutex());
    raw = fftw_plan_dft_2d(static_cast<int>(rows), static_cast<int>(cols), as_fftw(data),
                           as_fftw(data), sign < 0 ? FFTW_FORWARD : FFTW_BACKWARD, FFTW_ESTIMATE);
  }
  Plan(raw).execute();
}

std::vector<double> dct1(const std::vector<double>& x) {
  if (x.size() < 2) throw Error(ErrorCode::InvalidArgument, "dct1 needs at least two points");
  std::vector<double> in = x;
  std::vector<double> out(x.size());
  fftw_plan raw;
  {
    std::lock_guard lock(planner_mutex());
    raw = fftw_plan_r2r_1d(static_cast<int>(x.size()), in.data(), out.data(), FFTW_REDFT00,
                           FFTW_ESTIMATE);
  }
  Plan(raw).execute();
  return out;
}

}  // namespace modrate::detail
