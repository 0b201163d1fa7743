#include "codedconv/mds_code.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

namespace codedconv {

VandermondeCode make_code(int n, int k, NodeScheme scheme) {
    if (k < 1 || n < k) {
        throw std::invalid_argument("make_code: need 1 <= k <= n");
    }
    VandermondeCode code;
    code.n = n;
    code.k = k;
    code.nodes.resize(static_cast<std::size_t>(n));
    const double pi = std::acos(-1.0);
    for (int r = 0; r < n; ++r) {
        switch (scheme) {
            case NodeScheme::chebyshev:
                code.nodes[r] = std::cos((2.0 * (r + 1) - 1.0) * pi / (2.0 * n));
                break;
            case NodeScheme::uniform:
                code.nodes[r] = (n == 1) ? 0.0 : -1.0 + 2.0 * r / (n - 1.0);
                break;
            case NodeScheme::integer_grid:
                code.nodes[r] = static_cast<double>(r);
                break;
        }
    }
    code.generator.resize(static_cast<std::size_t>(n) * k);
    for (int r = 0; r < n; ++r) {
        double pow = 1.0;
        for (int c = 0; c < k; ++c) {
            code.generator[static_cast<std::size_t>(r) * k + c] = pow;
            pow *= code.nodes[r];
        }
    }
    return code;
}

std::vector<RealVector> encode(const VandermondeCode& code,
                               const std::vector<RealVector>& pieces) {
    if (static_cast<int>(pieces.size()) != code.k) {
        throw std::invalid_argument("encode: expected exactly k pieces");
    }
    const std::size_t len = pieces[0].size();
    for (const auto& p : pieces) {
        if (p.size() != len) {
            throw std::invalid_argument("encode: piece length mismatch");
        }
    }
    std::vector<RealVector> coded(static_cast<std::size_t>(code.n),
                                  RealVector(len, 0.0));
    for (int r = 0; r < code.n; ++r) {
        for (int i = 0; i < code.k; ++i) {
            const double g = code.gen(r, i);
            for (std::size_t t = 0; t < len; ++t) {
                coded[r][t] += g * pieces[i][t];
            }
        }
    }
    return coded;
}

namespace {

double one_norm(const std::vector<double>& m, int k) {
    double best = 0.0;
    for (int c = 0; c < k; ++c) {
        double col = 0.0;
        for (int r = 0; r < k; ++r) col += std::abs(m[static_cast<std::size_t>(r) * k + c]);
        best = std::max(best, col);
    }
    return best;
}

// Inverts a row-major k x k matrix via Gauss-Jordan with partial pivoting.
std::vector<double> invert(std::vector<double> a, int k) {
    std::vector<double> inv(static_cast<std::size_t>(k) * k, 0.0);
    for (int i = 0; i < k; ++i) inv[static_cast<std::size_t>(i) * k + i] = 1.0;
    for (int col = 0; col < k; ++col) {
        int pivot = col;
        for (int r = col + 1; r < k; ++r) {
            if (std::abs(a[static_cast<std::size_t>(r) * k + col]) >
                std::abs(a[static_cast<std::size_t>(pivot) * k + col])) {
                pivot = r;
            }
        }
        if (a[static_cast<std::size_t>(pivot) * k + col] == 0.0) {
            throw std::runtime_error("make_decoder: singular submatrix");
        }
        if (pivot != col) {
            for (int c = 0; c < k; ++c) {
                std::swap(a[static_cast<std::size_t>(pivot) * k + c],
                          a[static_cast<std::size_t>(col) * k + c]);
                std::swap(inv[static_cast<std::size_t>(pivot) * k + c],
                          inv[static_cast<std::size_t>(col) * k + c]);
            }
        }
        const double d = a[static_cast<std::size_t>(col) * k + col];
        for (int c = 0; c < k; ++c) {
            a[static_cast<std::size_t>(col) * k + c] /= d;
            inv[static_cast<std::size_t>(col) * k + c] /= d;
        }
        for (int r = 0; r < k; ++r) {
            if (r == col) continue;
            const double f = a[static_cast<std::size_t>(r) * k + col];
            if (f == 0.0) continue;
            for (int c = 0; c < k; ++c) {
                a[static_cast<std::size_t>(r) * k + c] -=
                    f * a[static_cast<std::size_t>(col) * k + c];
                inv[static_cast<std::size_t>(r) * k + c] -=
                    f * inv[static_cast<std::size_t>(col) * k + c];
            }
        }
    }
    return inv;
}

}  // namespace

DecoderMatrix make_decoder(const VandermondeCode& code,
                           const std::vector<int>& finished_indices) {
    if (static_cast<int>(finished_indices.size()) != code.k) {
        throw std::invalid_argument("make_decoder: expected exactly k indices");
    }
    std::set<int> uniq(finished_indices.begin(), finished_indices.end());
    if (static_cast<int>(uniq.size()) != code.k) {
        throw std::invalid_argument("make_decoder: duplicate indices");
    }
    for (int idx : finished_indices) {
        if (idx < 0 || idx >= code.n) {
            throw std::invalid_argument("make_decoder: index out of range");
        }
    }
    DecoderMatrix dec;
    dec.k = code.k;
    dec.indices.assign(uniq.begin(), uniq.end());

    const int k = code.k;
    std::vector<double> sub(static_cast<std::size_t>(k) * k);
    for (int r = 0; r < k; ++r) {
        for (int c = 0; c < k; ++c) {
            sub[static_cast<std::size_t>(r) * k + c] = code.gen(dec.indices[r], c);
        }
    }
    dec.inverse = invert(sub, k);
    const double cond = one_norm(sub, k) * one_norm(dec.inverse, k);
    if (cond > 1e12) {
        throw std::runtime_error("make_decoder: submatrix ill-conditioned");
    }
    return dec;
}

std::vector<RealVector> decode_group(const DecoderMatrix& decoder,
                                     const std::vector<RealVector>& coded_outputs) {
    const int k = decoder.k;
    if (static_cast<int>(coded_outputs.size()) != k) {
        throw std::invalid_argument("decode_group: expected exactly k outputs");
    }
    const std::size_t len = coded_outputs[0].size();
    for (const auto& o : coded_outputs) {
        if (o.size() != len) {
            throw std::invalid_argument("decode_group: output length mismatch");
        }
    }
    std::vector<RealVector> decoded(static_cast<std::size_t>(k),
                                    RealVector(len, 0.0));
    for (int i = 0; i < k; ++i) {
        for (int l = 0; l < k; ++l) {
            const double b = decoder.inv(i, l);
            for (std::size_t t = 0; t < len; ++t) {
                decoded[i][t] += b * coded_outputs[l][t];
            }
        }
    }
    return decoded;
}

}  // namespace codedconv
