#pragma once

#include <vector>

#include "codedconv/conv_core.hpp"

namespace codedconv {

enum class NodeScheme { chebyshev, uniform, integer_grid };

// (n,k) MDS code over the reals via a Vandermonde generator.
// Row r of the generator is [1, g_r, g_r^2, ..., g_r^{k-1}]; distinct
// nodes make every k x k square submatrix invertible.
struct VandermondeCode {
    int n = 0;
    int k = 0;
    std::vector<double> nodes;      // n distinct evaluation points
    std::vector<double> generator;  // row-major n x k

    double gen(int row, int col) const { return generator[static_cast<std::size_t>(row) * k + col]; }
};

// Inverse of the k x k submatrix of the generator picked by `indices`
// (0-based rows of the code, sorted ascending).
struct DecoderMatrix {
    std::vector<int> indices;
    int k = 0;
    std::vector<double> inverse;  // row-major k x k, [G^T_L]^{-1}

    double inv(int row, int col) const { return inverse[static_cast<std::size_t>(row) * k + col]; }
};

VandermondeCode make_code(int n, int k, NodeScheme scheme = NodeScheme::chebyshev);

// Coded piece r = sum_i g_r^i * pieces[i], entrywise. Pieces must have
// equal lengths; exactly k of them.
std::vector<RealVector> encode(const VandermondeCode& code,
                               const std::vector<RealVector>& pieces);

// LU with partial pivoting; throws if the submatrix is ill-conditioned
// (estimated condition number above 1e12).
DecoderMatrix make_decoder(const VandermondeCode& code,
                           const std::vector<int>& finished_indices);

// Recover the k source piece-convolutions from the k finished coded
// convolutions (same linear combination applied entrywise).
std::vector<RealVector> decode_group(const DecoderMatrix& decoder,
                                     const std::vector<RealVector>& coded_outputs);

}  // namespace codedconv
