#include "trilab/triangle.hpp"

#include <stdexcept>
#include <utility>

namespace trilab {

std::string node_str(const NodeIndex& v) {
  return "(" + std::to_string(v.n) + "," + std::to_string(v.k) + ")";
}

namespace {

Rat checked(const MultiplicitySpec::Rule& rule, int n, int k, const char* side,
            const std::string& name) {
  if (n < 0 || k < 0 || k > n)
    throw std::invalid_argument(std::string(side) + " multiplicity queried outside the triangle at " +
                                node_str({n, k}));
  Rat v = rule(n, k);
  if (v <= 0)
    throw std::domain_error("triangle '" + name + "' has nonpositive " + side +
                            " multiplicity " + rat_str(v) + " at " + node_str({n, k}));
  return v;
}

}  // namespace

MultiplicitySpec::MultiplicitySpec(std::string name, Rule left, Rule right,
                                   std::map<std::string, Rat> params)
    : name_(std::move(name)), left_(std::move(left)), right_(std::move(right)),
      params_(std::move(params)) {
  if (!left_ || !right_) throw std::invalid_argument("multiplicity rules must be callable");
  for (int n = 0; n <= 8; ++n)
    for (int k = 0; k <= n; ++k) {
      checked(left_, n, k, "left", name_);
      checked(right_, n, k, "right", name_);
    }
}

Rat MultiplicitySpec::left(int n, int k) const { return checked(left_, n, k, "left", name_); }

Rat MultiplicitySpec::right(int n, int k) const { return checked(right_, n, k, "right", name_); }

long double MultiplicitySpec::left_ld(int n, int k) const {
  return left_ld_ ? left_ld_(n, k) : rat_ldouble(left(n, k));
}

long double MultiplicitySpec::right_ld(int n, int k) const {
  return right_ld_ ? right_ld_(n, k) : rat_ldouble(right(n, k));
}

void MultiplicitySpec::set_float_rules(FloatRule left, FloatRule right) {
  left_ld_ = std::move(left);
  right_ld_ = std::move(right);
}

MultiplicitySpec transpose(const MultiplicitySpec& tri) {
  // Copy the spec by value into the closures: the result owns its rules.
  MultiplicitySpec base = tri;
  MultiplicitySpec out(
      "transpose(" + tri.name() + ")",
      [base](int n, int k) { return base.right(n, n - k); },
      [base](int n, int k) { return base.left(n, n - k); }, tri.params());
  out.set_float_rules([base](int n, int k) { return base.right_ld(n, n - k); },
                      [base](int n, int k) { return base.left_ld(n, n - k); });
  return out;
}

}  // namespace trilab
