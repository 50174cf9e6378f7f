#pragma once

#include <cstdint>
#include <vector>

namespace escg {

struct MeanStd {
    double mean = 0.0;
    double std_dev = 0.0;  // sample (n-1); 0 when n < 2
    std::size_t n = 0;
};

MeanStd mean_std(const std::vector<double>& xs);

// Regularized upper incomplete gamma Q(a, x); the chi-square survival
// function is Q(k/2, x/2).
double gamma_q(double a, double x);

// P(chi2 >= observed) for equiprobable bins given observed bin counts.
double chi_square_uniform_pvalue(const std::vector<std::uint64_t>& bin_counts);

// Two-sample Kolmogorov-Smirnov p-value (asymptotic with the usual
// small-sample correction).
double ks_two_sample_pvalue(std::vector<double> a, std::vector<double> b);

}  // namespace escg
