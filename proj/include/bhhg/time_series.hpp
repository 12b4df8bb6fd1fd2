#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace bhhg {

/// Uniformly sampled series: value i lives at t0 + i*dt.
template <class T>
struct BasicTimeSeries {
    double t0 = 0.0;
    double dt = 0.0;
    std::vector<T> values;

    BasicTimeSeries() = default;
    BasicTimeSeries(double start, double step, std::vector<T> v)
        : t0(start), dt(step), values(std::move(v)) {}

    std::size_t size() const { return values.size(); }
    double time(std::size_t i) const { return t0 + static_cast<double>(i) * dt; }
    double t_end() const { return values.empty() ? t0 : time(values.size() - 1); }
};

using TimeSeries = BasicTimeSeries<double>;
using ComplexTimeSeries = BasicTimeSeries<std::complex<double>>;

} // namespace bhhg
