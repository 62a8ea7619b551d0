#include "fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <stdexcept>
#include <utility>

namespace isac::detail {

namespace {

// FFTW plan creation is not thread-safe; execution on distinct buffers is.
// Plans are cached per (size, direction) and created with FFTW_UNALIGNED so
// they can run on any std::vector storage via the new-array interface.
class PlanCache {
  public:
    fftw_plan get(int n, int sign) {
        std::lock_guard<std::mutex> lock(mutex_);
        const auto key = std::make_pair(n, sign);
        auto it = plans_.find(key);
        if (it != plans_.end()) return it->second;
        std::vector<std::complex<double>> in(static_cast<std::size_t>(n)),
            out(static_cast<std::size_t>(n));
        fftw_plan p = fftw_plan_dft_1d(n, reinterpret_cast<fftw_complex*>(in.data()),
                                       reinterpret_cast<fftw_complex*>(out.data()), sign,
                                       FFTW_ESTIMATE | FFTW_UNALIGNED);
        if (!p) throw std::runtime_error("fftw plan creation failed");
        plans_.emplace(key, p);
        return p;
    }

  private:
    std::mutex mutex_;
    std::map<std::pair<int, int>, fftw_plan> plans_;
};

PlanCache& cache() {
    static PlanCache c;
    return c;
}

std::vector<std::complex<double>> run(const std::vector<std::complex<double>>& x, int sign) {
    if (x.empty()) return {};
    const int n = static_cast<int>(x.size());
    fftw_plan p = cache().get(n, sign);
    std::vector<std::complex<double>> out(x.size());
    // fftw_execute_dft does not modify the input for out-of-place c2c plans,
    // but takes a mutable pointer.
    fftw_execute_dft(p, reinterpret_cast<fftw_complex*>(
                            const_cast<std::complex<double>*>(x.data())),
                     reinterpret_cast<fftw_complex*>(out.data()));
    return out;
}

}  // namespace

std::vector<std::complex<double>> fft(const std::vector<std::complex<double>>& x) {
    return run(x, FFTW_FORWARD);
}

std::vector<std::complex<double>> ifft(const std::vector<std::complex<double>>& x) {
    std::vector<std::complex<double>> out = run(x, FFTW_BACKWARD);
    const double inv_n = 1.0 / static_cast<double>(x.size());
    for (auto& v : out) v *= inv_n;
    return out;
}

}  // namespace isac::detail
