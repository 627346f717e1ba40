#pragma once

#include "frfboot/errors.hpp"
#include "frfboot/grid.hpp"

#include <cmath>
#include <complex>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

namespace frfboot {

using Complex = std::complex<double>;

/// One subject's frequency response; values[k] belongs to grid.freqs()[k].
struct Frf {
    std::vector<Complex> values;

    std::size_t size() const noexcept { return values.size(); }
    friend bool operator==(const Frf&, const Frf&) = default;
};

/// Pseudo-impulse-response: real samples on a TimeGrid.
struct Pir {
    std::vector<double> samples;

    std::size_t size() const noexcept { return samples.size(); }
    friend bool operator==(const Pir&, const Pir&) = default;
};

inline bool all_finite(const Frf& h) {
    for (const auto& v : h.values)
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
            return false;
    return true;
}

/// FRFs of one experimental group, all on the same frequency grid.
class FrfGroup {
public:
    FrfGroup(FrequencyGrid grid, std::vector<Frf> members, std::vector<std::string> labels = {})
        : grid_(std::move(grid)), members_(std::move(members)), labels_(std::move(labels)) {
        for (std::size_t i = 0; i < members_.size(); ++i) {
            if (members_[i].size() != grid_.size())
                throw LengthMismatchError("member " + std::to_string(i) + " has " +
                                          std::to_string(members_[i].size()) + " values, grid has " +
                                          std::to_string(grid_.size()));
            if (!all_finite(members_[i]))
                throw ValidationError("member " + std::to_string(i) + " has non-finite values");
        }
        if (labels_.empty()) {
            labels_.reserve(members_.size());
            for (std::size_t i = 0; i < members_.size(); ++i)
                labels_.push_back("s" + std::to_string(i + 1));
        } else if (labels_.size() != members_.size()) {
            throw LengthMismatchError("label count does not match member count");
        }
    }

    const FrequencyGrid& grid() const noexcept { return grid_; }
    const std::vector<Frf>& members() const noexcept { return members_; }
    const std::vector<std::string>& labels() const noexcept { return labels_; }
    std::size_t size() const noexcept { return members_.size(); }
    const Frf& operator[](std::size_t i) const { return members_[i]; }

private:
    FrequencyGrid grid_;
    std::vector<Frf> members_;
    std::vector<std::string> labels_;
};

} // namespace frfboot
