#pragma once

#include <behave/behaviour.hpp>

#include <vector>

namespace behave::kernels {

/// Precomputed column maps for a filtered join: keep the rows of `driver`
/// whose restriction to each factor's variables is a row of that factor.
/// Evaluates (factor_1 x ... x factor_k x full(rest)) ∩ driver without
/// materializing the product. Result rows inherit the driver's canonical order.
class FilterPlan {
public:
    struct Factor {
        const Behaviour* behaviour;
        std::vector<std::size_t> columns;  // driver column of each factor code
    };

    // Factors must use driver variables with identical alphabets and horizon,
    // and be pairwise disjoint. Driver variables not covered stay unconstrained.
    FilterPlan(const Behaviour& driver, const std::vector<const Behaviour*>& factors);

    const Behaviour& driver() const noexcept { return *driver_; }
    const std::vector<Factor>& factors() const noexcept { return factors_; }

    bool accepts(std::span<const Code> row, std::vector<Code>& scratch) const;

private:
    const Behaviour* driver_;
    std::vector<Factor> factors_;
};

// Reference implementation, one row at a time.
Behaviour filter_serial(const FilterPlan& plan);

// OpenMP over driver rows; falls back to the serial loop without OpenMP.
Behaviour filter_parallel(const FilterPlan& plan);

// Picks the parallel kernel for large drivers.
Behaviour filter(const FilterPlan& plan);

inline constexpr std::size_t kParallelThreshold = 4096;

}  // namespace behave::kernels
