#include "escg/stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace escg {

MeanStd mean_std(const std::vector<double>& xs) {
    MeanStd r;
    r.n = xs.size();
    if (xs.empty()) return r;
    double sum = 0.0;
    for (double x : xs) sum += x;
    r.mean = sum / static_cast<double>(xs.size());
    if (xs.size() < 2) return r;
    double sq = 0.0;
    for (double x : xs) sq += (x - r.mean) * (x - r.mean);
    r.std_dev = std::sqrt(sq / static_cast<double>(xs.size() - 1));
    return r;
}

namespace {

// Series expansion of P(a, x), converges fast for x < a + 1.
double gamma_p_series(double a, double x) {
    double ap = a;
    double sum = 1.0 / a;
    double del = sum;
    for (int i = 0; i < 500; ++i) {
        ap += 1.0;
        del *= x / ap;
        sum += del;
        if (std::fabs(del) < std::fabs(sum) * 1e-15) break;
    }
    return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

// Lentz continued fraction for Q(a, x), converges fast for x > a + 1.
double gamma_q_cf(double a, double x) {
    const double tiny = 1e-300;
    double b = x + 1.0 - a;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i < 500; ++i) {
        const double an = -static_cast<double>(i) * (static_cast<double>(i) - a);
        b += 2.0;
        d = an * d + b;
        if (std::fabs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::fabs(c) < tiny) c = tiny;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::fabs(del - 1.0) < 1e-15) break;
    }
    return h * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

}  // namespace

double gamma_q(double a, double x) {
    if (a <= 0.0 || x < 0.0) throw std::invalid_argument("gamma_q requires a > 0 and x >= 0");
    if (x == 0.0) return 1.0;
    if (x < a + 1.0) return 1.0 - gamma_p_series(a, x);
    return gamma_q_cf(a, x);
}

double chi_square_uniform_pvalue(const std::vector<std::uint64_t>& bin_counts) {
    if (bin_counts.size() < 2) throw std::invalid_argument("need at least two bins");
    std::uint64_t total = 0;
    for (auto c : bin_counts) total += c;
    if (total == 0) throw std::invalid_argument("need at least one sample");
    const double expected = static_cast<double>(total) / static_cast<double>(bin_counts.size());
    double chi2 = 0.0;
    for (auto c : bin_counts) {
        const double d = static_cast<double>(c) - expected;
        chi2 += d * d / expected;
    }
    const double dof = static_cast<double>(bin_counts.size() - 1);
    return gamma_q(dof / 2.0, chi2 / 2.0);
}

double ks_two_sample_pvalue(std::vector<double> a, std::vector<double> b) {
    if (a.empty() || b.empty()) throw std::invalid_argument("KS test needs non-empty samples");
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    const auto na = a.size();
    const auto nb = b.size();
    double d = 0.0;
    std::size_t i = 0, j = 0;
    while (i < na && j < nb) {
        const double x = std::min(a[i], b[j]);
        while (i < na && a[i] <= x) ++i;
        while (j < nb && b[j] <= x) ++j;
        d = std::max(d, std::fabs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
    }
    const double ne = static_cast<double>(na) * nb / (static_cast<double>(na) + nb);
    const double lambda = (std::sqrt(ne) + 0.12 + 0.11 / std::sqrt(ne)) * d;
    // Kolmogorov survival function.
    double p = 0.0;
    double sign = 1.0;
    for (int k = 1; k <= 100; ++k) {
        const double term = std::exp(-2.0 * k * k * lambda * lambda);
        p += 2.0 * sign * term;
        sign = -sign;
        if (term < 1e-12) break;
    }
    return std::clamp(p, 0.0, 1.0);
}

}  // namespace escg
