#include "codedconv/conv_core.hpp"

#include <cmath>
#include <complex>
#include <stdexcept>

namespace codedconv {

double CostModel::log(double v) const {
    return std::log(v) / std::log(log_base);
}

RealVector convolve_direct(const RealVector& a, const RealVector& x) {
    if (a.empty() || x.empty()) {
        throw std::invalid_argument("convolve_direct: empty input");
    }
    RealVector out(a.size() + x.size() - 1, 0.0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        for (std::size_t j = 0; j < x.size(); ++j) {
            out[i + j] += a[i] * x[j];
        }
    }
    return out;
}

namespace {

// In-place iterative radix-2 FFT, n a power of two.
void fft_inplace(std::vector<std::complex<double>>& v, bool inverse) {
    const std::size_t n = v.size();
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(v[i], v[j]);
    }
    const double pi = std::acos(-1.0);
    for (std::size_t len = 2; len <= n; len <<= 1) {
        double ang = 2.0 * pi / static_cast<double>(len) * (inverse ? -1.0 : 1.0);
        std::complex<double> wlen(std::cos(ang), std::sin(ang));
        for (std::size_t i = 0; i < n; i += len) {
            std::complex<double> w(1.0, 0.0);
            for (std::size_t k = 0; k < len / 2; ++k) {
                std::complex<double> u = v[i + k];
                std::complex<double> t = v[i + k + len / 2] * w;
                v[i + k] = u + t;
                v[i + k + len / 2] = u - t;
                w *= wlen;
            }
        }
    }
    if (inverse) {
        for (auto& c : v) c /= static_cast<double>(n);
    }
}

}  // namespace

RealVector convolve_fft(const RealVector& a, const RealVector& x) {
    if (a.empty() || x.empty()) {
        throw std::invalid_argument("convolve_fft: empty input");
    }
    const std::size_t out_len = a.size() + x.size() - 1;
    std::size_t n = 1;
    while (n < out_len) n <<= 1;
    std::vector<std::complex<double>> fa(n), fx(n);
    for (std::size_t i = 0; i < a.size(); ++i) fa[i] = a[i];
    for (std::size_t i = 0; i < x.size(); ++i) fx[i] = x[i];
    fft_inplace(fa, false);
    fft_inplace(fx, false);
    for (std::size_t i = 0; i < n; ++i) fa[i] *= fx[i];
    fft_inplace(fa, true);
    RealVector out(out_len);
    for (std::size_t i = 0; i < out_len; ++i) out[i] = fa[i].real();
    return out;
}

RealVector convolve_overlap_add(const RealVector& a, const RealVector& x,
                                std::size_t block) {
    if (a.empty() || x.empty()) {
        throw std::invalid_argument("convolve_overlap_add: empty input");
    }
    if (block == 0) {
        throw std::invalid_argument("convolve_overlap_add: block must be >= 1");
    }
    const std::size_t out_len = a.size() + x.size() - 1;
    RealVector out(out_len, 0.0);
    for (std::size_t start = 0; start < a.size(); start += block) {
        const std::size_t len = std::min(block, a.size() - start);
        RealVector piece(a.begin() + static_cast<std::ptrdiff_t>(start),
                         a.begin() + static_cast<std::ptrdiff_t>(start + len));
        RealVector conv = convolve_fft(piece, x);
        for (std::size_t i = 0; i < conv.size(); ++i) {
            out[start + i] += conv[i];
        }
    }
    return out;
}

RealVector shift_add_combine(const std::vector<RealVector>& pieces,
                             std::size_t shift_step, std::size_t total_len) {
    RealVector out(total_len, 0.0);
    for (std::size_t i = 0; i < pieces.size(); ++i) {
        const std::size_t offset = i * shift_step;
        if (offset + pieces[i].size() > total_len) {
            throw std::invalid_argument(
                "shift_add_combine: piece overflows total_len");
        }
        for (std::size_t j = 0; j < pieces[i].size(); ++j) {
            out[offset + j] += pieces[i][j];
        }
    }
    return out;
}

double cost_scenario1(long m1, long m2, const CostModel& model) {
    if (m1 < 1 || m2 < 1) {
        throw std::invalid_argument("cost_scenario1: lengths must be >= 1");
    }
    const double m = static_cast<double>(m1 + m2);
    return model.c * m * model.log(m);
}

double cost_scenario2(long m1, long m2, const CostModel& model) {
    if (m1 < 1 || m2 < 1) {
        throw std::invalid_argument("cost_scenario2: lengths must be >= 1");
    }
    if (m2 > m1) {
        throw std::invalid_argument("cost_scenario2: requires m2 <= m1");
    }
    return 2.0 * model.c * static_cast<double>(m1) *
           (model.log(2.0 * static_cast<double>(m2)) + 1.0);
}

}  // namespace codedconv
