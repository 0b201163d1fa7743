#pragma once

#include <cstddef>
#include <vector>

namespace codedconv {

using RealVector = std::vector<double>;

// Cost model for FFT-based convolution: C * (m1+m2) * log(m1+m2).
// log_base is 2 (butterfly count) or e; all derived quantities
// (task shifts, exponents) use the same base.
struct CostModel {
    double c = 1.0;
    double log_base = 2.0;

    double log(double v) const;
};

// O(m1*m2) linear convolution, the reference oracle for everything else.
RealVector convolve_direct(const RealVector& a, const RealVector& x);

// FFT-based linear convolution. Matches convolve_direct within 1e-9
// relative error for doubles at the lengths we care about.
RealVector convolve_fft(const RealVector& a, const RealVector& x);

// Overlap-add: a is split into blocks of length `block`, each convolved
// with x, results summed with shifts. x is conventionally the short vector
// but no length relation is required.
RealVector convolve_overlap_add(const RealVector& a, const RealVector& x,
                                std::size_t block);

// Sum of zero-padded pieces, piece i shifted right by i*shift_step.
// Every piece must fit: i*shift_step + piece.size() <= total_len.
RealVector shift_add_combine(const std::vector<RealVector>& pieces,
                             std::size_t shift_step, std::size_t total_len);

// Scenario 1: comparable lengths, C*(m1+m2)*log(m1+m2).
double cost_scenario1(long m1, long m2, const CostModel& model);

// Scenario 2: overlap methods with short x, 2*C*m1*(log(2*m2)+1).
// Requires m2 <= m1.
double cost_scenario2(long m1, long m2, const CostModel& model);

}  // namespace codedconv
