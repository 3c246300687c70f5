#pragma once

// Small sparse-to-dense row builder for the protocol LPs.

#include <initializer_list>
#include <string>
#include <utility>
#include <vector>

#include "diamond/linprog.hpp"
#include "diamond/rates.hpp"

namespace diamond::detail {

class LpBuilder {
 public:
  using Term = std::pair<std::size_t, double>;

  std::size_t var(std::string name) {
    names_.push_back(std::move(name));
    return names_.size() - 1;
  }

  void leq(std::initializer_list<Term> terms, double bound = 0.0) {
    leq_.push_back({std::vector<Term>(terms), bound});
  }
  void eq(std::initializer_list<Term> terms, double bound = 0.0) {
    eq_.push_back({std::vector<Term>(terms), bound});
  }

  const std::string& name(std::size_t i) const { return names_[i]; }
  std::size_t size() const { return names_.size(); }

  // Dense LP with the ray constraint and objective for ratio k.
  lp::LinearProgramSpec build(std::size_t ra, std::size_t rb, double k) const {
    lp::LinearProgramSpec spec = dense();
    apply_ray(spec, ra, rb, k);
    return spec;
  }

  // Dense LP maximizing the sum of `objective` variables.
  lp::LinearProgramSpec build_max(std::initializer_list<std::size_t> objective) const {
    lp::LinearProgramSpec spec = dense();
    for (std::size_t i : objective) spec.objective[i] = 1.0;
    return spec;
  }

 private:
  struct Row {
    std::vector<Term> terms;
    double bound;
  };

  lp::LinearProgramSpec dense() const {
    lp::LinearProgramSpec spec;
    spec.num_vars = names_.size();
    spec.objective.assign(spec.num_vars, 0.0);
    auto densify = [&](const Row& r) {
      auto row = spec.zero_row();
      for (const auto& [i, c] : r.terms) row[i] += c;
      return row;
    };
    for (const auto& r : leq_) spec.add_leq(densify(r), r.bound);
    for (const auto& r : eq_) spec.add_eq(densify(r), r.bound);
    return spec;
  }

  std::vector<std::string> names_;
  std::vector<Row> leq_;
  std::vector<Row> eq_;
};

}  // namespace diamond::detail
