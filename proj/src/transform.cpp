#include "dampflow/transform.hpp"

#include <fftw3.h>

#include <complex>
#include <map>
#include <mutex>
#include <vector>

namespace dampflow {

namespace {

// Plan pair for one lattice size. Plans are created once per n under a lock;
// fftw_execute_dft on caller-owned buffers is re-entrant, so transforms of
// distinct fields can run concurrently.
struct PlanPair {
    fftw_plan forward = nullptr;
    fftw_plan backward = nullptr;
};

PlanPair& plans_for(int n) {
    static std::map<int, PlanPair> cache;
    static std::mutex mutex;
    std::lock_guard<std::mutex> lock(mutex);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;

    std::vector<std::complex<double>> scratch_in(static_cast<std::size_t>(n) * n * n);
    std::vector<std::complex<double>> scratch_out(scratch_in.size());
    auto* in = reinterpret_cast<fftw_complex*>(scratch_in.data());
    auto* out = reinterpret_cast<fftw_complex*>(scratch_out.data());
    PlanPair p;
    const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
    p.forward = fftw_plan_dft_3d(n, n, n, in, out, FFTW_FORWARD, flags);
    p.backward = fftw_plan_dft_3d(n, n, n, in, out, FFTW_BACKWARD, flags);
    return cache.emplace(n, p).first->second;
}

}  // namespace

SpectralField forward_transform(const PhysicalField& f) {
    const Grid& grid = f.grid();
    const int n = grid.n_points();
    const std::size_t m = grid.point_count();
    PlanPair& plans = plans_for(n);

    SpectralField g(grid);
    std::vector<std::complex<double>> buf(m);
    const double scale = 1.0 / static_cast<double>(m);
    for (int c = 0; c < 3; ++c) {
        auto src = f.component(c);
        for (std::size_t p = 0; p < m; ++p) buf[p] = {src[p], 0.0};
        auto dst = g.component(c);
        fftw_execute_dft(plans.forward, reinterpret_cast<fftw_complex*>(buf.data()),
                         reinterpret_cast<fftw_complex*>(dst.data()));
        for (auto& v : dst) v *= scale;
    }
    return g;
}

PhysicalField inverse_transform(const SpectralField& g) {
    const Grid& grid = g.grid();
    const int n = grid.n_points();
    const std::size_t m = grid.point_count();
    PlanPair& plans = plans_for(n);

    PhysicalField f(grid);
    std::vector<std::complex<double>> in(m);
    std::vector<std::complex<double>> out(m);
    for (int c = 0; c < 3; ++c) {
        auto src = g.component(c);
        for (std::size_t p = 0; p < m; ++p) in[p] = src[p];
        fftw_execute_dft(plans.backward, reinterpret_cast<fftw_complex*>(in.data()),
                         reinterpret_cast<fftw_complex*>(out.data()));
        auto dst = f.component(c);
        for (std::size_t p = 0; p < m; ++p) dst[p] = out[p].real();
    }
    return f;
}

}  // namespace dampflow
