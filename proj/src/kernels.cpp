#include <behave/kernels.hpp>

#include <set>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace behave::kernels {

FilterPlan::FilterPlan(const Behaviour& driver, const std::vector<const Behaviour*>& factors) : driver_(&driver) {
    const auto& dspace = driver.space();
    const std::size_t horizon = static_cast<std::size_t>(dspace.horizon());
    std::set<std::string> seen;
    factors_.reserve(factors.size());
    for (const Behaviour* f : factors) {
        const auto& fspace = f->space();
        if (fspace.horizon() != dspace.horizon())
            throw Error(ErrorKind::HorizonMismatch, "factor horizon " + std::to_string(fspace.horizon()) +
                                                        " differs from network horizon " +
                                                        std::to_string(dspace.horizon()));
        Factor factor{f, {}};
        factor.columns.reserve(fspace.width());
        for (const auto& var : fspace.variables()) {
            auto idx = dspace.find(var.name());
            if (!idx) throw Error(ErrorKind::UnknownVariable, "network has no variable '" + var.name() + "'");
            if (!(dspace.variables()[*idx] == var))
                throw Error(ErrorKind::SchemaMismatch, "alphabet of '" + var.name() + "' differs from the network's");
            if (!seen.insert(var.name()).second)
                throw Error(ErrorKind::VariableClash, "variable '" + var.name() + "' appears in two factors");
            for (std::size_t t = 0; t < horizon; ++t) factor.columns.push_back(*idx * horizon + t);
        }
        factors_.push_back(std::move(factor));
    }
}

bool FilterPlan::accepts(std::span<const Code> row, std::vector<Code>& scratch) const {
    for (const auto& f : factors_) {
        scratch.resize(f.columns.size());
        for (std::size_t k = 0; k < f.columns.size(); ++k) scratch[k] = row[f.columns[k]];
        if (!f.behaviour->contains(scratch)) return false;
    }
    return true;
}

namespace {

Behaviour gather(const FilterPlan& plan, const std::vector<char>& keep) {
    const Behaviour& d = plan.driver();
    std::vector<Code> codes;
    std::size_t rows = 0;
    for (std::size_t i = 0; i < d.size(); ++i) {
        if (!keep[i]) continue;
        auto r = d.row(i);
        codes.insert(codes.end(), r.begin(), r.end());
        ++rows;
    }
    return Behaviour::from_codes(d.space(), std::move(codes), rows);
}

}  // namespace

Behaviour filter_serial(const FilterPlan& plan) {
    const Behaviour& d = plan.driver();
    std::vector<char> keep(d.size(), 0);
    std::vector<Code> scratch;
    for (std::size_t i = 0; i < d.size(); ++i) keep[i] = plan.accepts(d.row(i), scratch) ? 1 : 0;
    return gather(plan, keep);
}

Behaviour filter_parallel(const FilterPlan& plan) {
    const Behaviour& d = plan.driver();
    const auto n = static_cast<std::ptrdiff_t>(d.size());
    std::vector<char> keep(d.size(), 0);
#pragma omp parallel
    {
        std::vector<Code> scratch;
#pragma omp for schedule(static)
        for (std::ptrdiff_t i = 0; i < n; ++i) {
            keep[static_cast<std::size_t>(i)] = plan.accepts(d.row(static_cast<std::size_t>(i)), scratch) ? 1 : 0;
        }
    }
    return gather(plan, keep);
}

Behaviour filter(const FilterPlan& plan) {
    if (plan.driver().size() >= kParallelThreshold) return filter_parallel(plan);
    return filter_serial(plan);
}

}  // namespace behave::kernels
