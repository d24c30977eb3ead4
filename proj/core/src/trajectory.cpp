#include "inspde/trajectory.hpp"

#include <cmath>

#include "inspde/errors.hpp"

namespace inspde {

Trajectory::Trajectory(double dt, int history_steps, int forward_steps, int dim)
    : dt_(dt), history_steps_(history_steps), forward_steps_(forward_steps), dim_(dim),
      values_(static_cast<std::size_t>(history_steps + forward_steps + 1),
              HVector(static_cast<std::size_t>(dim))) {
    if (!(dt > 0.0) || history_steps < 0 || forward_steps < 0 || dim < 1)
        throw ContractViolation("Trajectory: invalid grid shape");
}

int Trajectory::index_of(double t) const {
    const double pos = t / dt_ + history_steps_;
    const double r = std::round(pos);
    if (std::abs(pos - r) > 1e-9 * std::max(1.0, std::abs(pos)))
        throw ContractViolation("Trajectory::index_of: time is not grid-aligned");
    const int i = static_cast<int>(r);
    if (i < 0 || i >= size())
        throw ContractViolation("Trajectory::index_of: time outside [-r, T]");
    return i;
}

const HVector* Trajectory::post_jump_at(int index) const {
    auto it = post_jumps_.find(index);
    return it == post_jumps_.end() ? nullptr : &it->second;
}

bool Trajectory::same_grid_as(const Trajectory& other) const {
    return dt_ == other.dt_ && history_steps_ == other.history_steps_ &&
           forward_steps_ == other.forward_steps_ && dim_ == other.dim_;
}

} // namespace inspde
