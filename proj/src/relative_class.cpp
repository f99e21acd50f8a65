#include "dqi/relative_class.hpp"

#include "dqi/error.hpp"

namespace dqi {

RelativeClass::RelativeClass(std::size_t ambient_dim, std::size_t system_size, std::size_t degree)
    : ambient_dim_(ambient_dim), system_size_(system_size), degree_(degree)
{
}

Polynomial RelativeClass::component(const IndexTuple &indices) const
{
    auto it = components_.find(indices);
    return it == components_.end() ? Polynomial(ambient_dim_) : it->second;
}

void RelativeClass::add(IndexTuple indices, const Polynomial &w)
{
    if (indices.size() != degree_)
        throw ArgumentError("relative class component has wrong degree");
    if (w.dim() != ambient_dim_)
        throw DimensionError("relative class coefficient has wrong dimension");
    for (std::size_t i : indices)
        if (i >= system_size_)
            throw ArgumentError("generator index " + std::to_string(i) + " out of range");
    int sign = detail::sort_with_sign(indices);
    if (sign == 0 || w.is_zero())
        return;
    auto [it, inserted] = components_.try_emplace(indices, sign > 0 ? w : -w);
    if (!inserted) {
        if (sign > 0)
            it->second += w;
        else
            it->second -= w;
        if (it->second.is_zero())
            components_.erase(it);
    }
}

RelativeClass &RelativeClass::operator+=(const RelativeClass &rhs)
{
    if (rhs.system_size_ != system_size_ || rhs.degree_ != degree_ || rhs.ambient_dim_ != ambient_dim_)
        throw DimensionError("relative class sum: shape mismatch");
    for (const auto &[idx, w] : rhs.components_)
        add(idx, w);
    return *this;
}

RelativeClass &RelativeClass::operator-=(const RelativeClass &rhs)
{
    if (rhs.system_size_ != system_size_ || rhs.degree_ != degree_ || rhs.ambient_dim_ != ambient_dim_)
        throw DimensionError("relative class difference: shape mismatch");
    for (const auto &[idx, w] : rhs.components_)
        add(idx, -w);
    return *this;
}

RelativeClass d_hor(const IntegrableSystem &system, const RelativeClass &c)
{
    if (c.system_size() != system.size())
        throw DimensionError("d_hor: class built for " + std::to_string(c.system_size()) +
                             " generators, system has " + std::to_string(system.size()));
    if (c.ambient_dim() != system.dim())
        throw DimensionError("d_hor: ambient dimension mismatch");
    RelativeClass out(c.ambient_dim(), c.system_size(), c.degree() + 1);
    for (const auto &[idx, w] : c.components()) {
        for (std::size_t i = 0; i < system.size(); ++i) {
            auto merged = detail::wedge_indices({i}, idx);
            if (!merged)
                continue;
            Polynomial b = poisson_bracket(system.pi, system.generators[i], w);
            out.add(merged->second, merged->first > 0 ? b : -b);
        }
    }
    return out;
}

} // namespace dqi
