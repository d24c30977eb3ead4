#pragma once

#include <map>
#include <vector>

#include "inspde/hvector.hpp"

namespace inspde {

/// Grid-indexed solution values on [-r, T]. Index 0 holds t = -r, index
/// history_steps() holds t = 0, the last index holds t = T. At an impulse
/// time t_k the grid slot stores the LEFT limit x(t_k^-); the right limit
/// x(t_k^+) is kept separately in the post-jump map, so the jump size is a
/// directly testable difference of stored values.
class Trajectory {
public:
    Trajectory(double dt, int history_steps, int forward_steps, int dim);

    double dt() const { return dt_; }
    int history_steps() const { return history_steps_; }
    int forward_steps() const { return forward_steps_; }
    int dim() const { return dim_; }
    int size() const { return static_cast<int>(values_.size()); }

    double time_of(int index) const { return dt_ * (index - history_steps_); }
    /// Grid index of a grid-aligned time; throws ContractViolation otherwise.
    int index_of(double t) const;

    const HVector& at_index(int index) const { return values_[static_cast<std::size_t>(index)]; }
    HVector& at_index(int index) { return values_[static_cast<std::size_t>(index)]; }
    const HVector& at_time(double t) const { return at_index(index_of(t)); }

    /// Right limits x(t_k^+), keyed by grid index.
    const std::map<int, HVector>& post_jumps() const { return post_jumps_; }
    void set_post_jump(int index, HVector v) { post_jumps_[index] = std::move(v); }
    const HVector* post_jump_at(int index) const;

    bool same_grid_as(const Trajectory& other) const;

private:
    double dt_;
    int history_steps_;
    int forward_steps_;
    int dim_;
    std::vector<HVector> values_;
    std::map<int, HVector> post_jumps_;
};

} // namespace inspde
