#include "stri/fft.hpp"

#include <fftw3.h>

#include <cstring>
#include <map>
#include <mutex>
#include <stdexcept>

namespace stri::fft {

namespace {

// FFTW planning is not thread safe; execution on the plan's own arrays is.
// Each thread keeps its own plans and aligned buffers, keyed by (dims, sign).
std::mutex g_plan_mutex;

struct PlanEntry {
    fftw_plan plan = nullptr;
    fftw_complex* buf = nullptr;
    std::size_t n = 0;

    ~PlanEntry() {
        if (plan) {
            std::lock_guard<std::mutex> lk(g_plan_mutex);
            fftw_destroy_plan(plan);
        }
        if (buf) fftw_free(buf);
    }
};

using Key = std::pair<std::vector<int>, int>;

PlanEntry& get_plan(const std::vector<int>& dims, int sign) {
    thread_local std::map<Key, PlanEntry> cache;
    Key key{dims, sign};
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;

    std::size_t n = 1;
    for (int d : dims) {
        if (d <= 0) throw std::invalid_argument("fft: nonpositive dimension");
        n *= static_cast<std::size_t>(d);
    }
    PlanEntry& e = cache[key];
    e.n = n;
    e.buf = fftw_alloc_complex(n);
    if (!e.buf) throw std::bad_alloc();
    {
        std::lock_guard<std::mutex> lk(g_plan_mutex);
        e.plan = fftw_plan_dft(static_cast<int>(dims.size()), dims.data(), e.buf, e.buf,
                               sign < 0 ? FFTW_FORWARD : FFTW_BACKWARD, FFTW_ESTIMATE);
    }
    if (!e.plan) throw std::runtime_error("fft: plan creation failed");
    return e;
}

}  // namespace

void transform(const std::vector<int>& dims, std::complex<double>* data, int sign) {
    PlanEntry& e = get_plan(dims, sign);
    std::memcpy(e.buf, data, e.n * sizeof(fftw_complex));
    fftw_execute(e.plan);
    std::memcpy(data, e.buf, e.n * sizeof(fftw_complex));
}

std::int64_t next_smooth(std::int64_t n) {
    if (n < 1) return 1;
    for (std::int64_t m = n;; ++m) {
        std::int64_t r = m;
        while (r % 2 == 0) r /= 2;
        while (r % 3 == 0) r /= 3;
        while (r % 5 == 0) r /= 5;
        if (r == 1) return m;
    }
}

}  // namespace stri::fft
