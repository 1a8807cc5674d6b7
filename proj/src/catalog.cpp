#include "trilab/catalog.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace trilab {

namespace {

constexpr long double kNegInf = -std::numeric_limits<long double>::infinity();

void require_params(const std::map<std::string, Rat>& params,
                    std::initializer_list<std::string> keys, const std::string& name) {
  for (const auto& key : keys)
    if (!params.count(key))
      throw std::invalid_argument("triangle '" + name + "' requires parameter '" + key + "'");
  for (const auto& [key, _] : params) {
    bool known = false;
    for (const auto& want : keys) known = known || key == want;
    if (!known)
      throw std::invalid_argument("triangle '" + name + "' does not take parameter '" + key + "'");
  }
}

Rat param(const std::map<std::string, Rat>& params, const std::string& key) {
  return params.at(key);
}

}  // namespace

TriangleName parse_triangle_name(const std::string& s) {
  if (s == "pascal") return TriangleName::Pascal;
  if (s == "q-pascal") return TriangleName::QPascal;
  if (s == "stirling") return TriangleName::Stirling;
  if (s == "stirling-inf") return TriangleName::StirlingInf;
  if (s == "eulerian") return TriangleName::Eulerian;
  throw std::invalid_argument("unknown triangle name '" + s + "'");
}

std::string triangle_name_str(TriangleName name) {
  switch (name) {
    case TriangleName::Pascal: return "pascal";
    case TriangleName::QPascal: return "q-pascal";
    case TriangleName::Stirling: return "stirling";
    case TriangleName::StirlingInf: return "stirling-inf";
    case TriangleName::Eulerian: return "eulerian";
  }
  throw std::runtime_error("unreachable triangle name");
}

MultiplicitySpec catalog_triangle(TriangleName name, const std::map<std::string, Rat>& params) {
  auto one_ld = [](int, int) { return 1.0L; };
  switch (name) {
    case TriangleName::Pascal: {
      require_params(params, {}, "pascal");
      auto one = [](int, int) { return Rat(1); };
      MultiplicitySpec tri("pascal", one, one);
      tri.set_float_rules(one_ld, one_ld);
      return tri;
    }
    case TriangleName::QPascal: {
      require_params(params, {"q"}, "q-pascal");
      const Rat q = param(params, "q");
      if (q <= 0) throw std::invalid_argument("q-pascal requires q > 0");
      MultiplicitySpec tri(
          "q-pascal", [](int, int) { return Rat(1); },
          [q](int n, int k) { return rat_pow(q, n - k); }, params);
      const long double qf = rat_ldouble(q);
      tri.set_float_rules(one_ld, [qf](int n, int k) { return powl(qf, n - k); });
      return tri;
    }
    case TriangleName::Stirling: {
      require_params(params, {"alpha"}, "stirling");
      const Rat alpha = param(params, "alpha");
      if (alpha >= 1) throw std::invalid_argument("stirling requires alpha < 1");
      MultiplicitySpec tri(
          "stirling", [alpha](int n, int k) -> Rat { return Rat(n + 1) - alpha * (k + 1); },
          [](int, int) { return Rat(1); }, params);
      const long double af = rat_ldouble(alpha);
      tri.set_float_rules([af](int n, int k) { return (n + 1) - af * (k + 1); }, one_ld);
      return tri;
    }
    case TriangleName::StirlingInf: {
      require_params(params, {}, "stirling-inf");
      MultiplicitySpec tri(
          "stirling-inf", [](int, int k) { return Rat(k + 1); },
          [](int, int) { return Rat(1); });
      tri.set_float_rules([](int, int k) { return static_cast<long double>(k + 1); }, one_ld);
      return tri;
    }
    case TriangleName::Eulerian: {
      require_params(params, {}, "eulerian");
      MultiplicitySpec tri(
          "eulerian", [](int, int k) { return Rat(k + 1); },
          [](int n, int k) { return Rat(n - k + 1); });
      tri.set_float_rules([](int, int k) { return static_cast<long double>(k + 1); },
                          [](int n, int k) { return static_cast<long double>(n - k + 1); });
      return tri;
    }
  }
  throw std::runtime_error("unreachable catalog name");
}

BoundaryPoint BoundaryPoint::pascal_x(const Rat& x) {
  if (x < 0 || x > 1) throw std::invalid_argument("pascal point requires x in [0,1]");
  BoundaryPoint p;
  p.kind = Kind::PascalX;
  p.value = x;
  return p;
}

BoundaryPoint BoundaryPoint::qpascal_m(long m) {
  if (m < 0) throw std::invalid_argument("q-pascal point requires m >= 0");
  BoundaryPoint p;
  p.kind = Kind::QPascalM;
  p.m = m;
  return p;
}

BoundaryPoint BoundaryPoint::stirling_m(long m) {
  if (m < 0) throw std::invalid_argument("stirling point requires m >= 0");
  BoundaryPoint p;
  p.kind = Kind::StirlingM;
  p.m = m;
  return p;
}

BoundaryPoint BoundaryPoint::stirling_s(const Rat& s) {
  if (s < 0) throw std::invalid_argument("stirling point requires s >= 0");
  BoundaryPoint p;
  p.kind = Kind::StirlingS;
  p.value = s;
  return p;
}

BoundaryPoint BoundaryPoint::eulerian_m(long m) {
  if (m == 0) throw std::invalid_argument("eulerian points require integer m != 0");
  BoundaryPoint p;
  p.kind = Kind::EulerianM;
  p.m = m;
  return p;
}

BoundaryPoint BoundaryPoint::infinity_of(Kind kind) {
  BoundaryPoint p;
  p.kind = kind;
  p.infinite = true;
  return p;
}

BoundaryPoint BoundaryPoint::trivial_zero() {
  BoundaryPoint p;
  p.kind = Kind::TrivialZero;
  return p;
}

BoundaryPoint BoundaryPoint::trivial_inf() {
  BoundaryPoint p;
  p.kind = Kind::TrivialInf;
  return p;
}

BoundaryPoint BoundaryPoint::parse(const std::string& text, TriangleName name) {
  if (text == "trivial-0") return trivial_zero();
  if (text == "trivial-inf") return trivial_inf();

  const auto eq = text.find('=');
  if (eq == std::string::npos)
    throw std::invalid_argument("boundary point must look like key=value, got '" + text + "'");
  const std::string key = text.substr(0, eq);
  const std::string val = text.substr(eq + 1);
  const bool inf = (val == "inf");

  auto integer_value = [&]() {
    Rat r = parse_rat(val);
    if (r.get_den() != 1)
      throw std::invalid_argument("point index m must be an integer, got '" + val + "'");
    if (!r.get_num().fits_slong_p())
      throw std::invalid_argument("point index m out of range: '" + val + "'");
    return r.get_num().get_si();
  };

  switch (name) {
    case TriangleName::Pascal:
      if (key != "x") throw std::invalid_argument("pascal points use x=<rational in [0,1]>");
      if (inf) throw std::invalid_argument("pascal points are finite: x in [0,1]");
      return pascal_x(parse_rat(val));
    case TriangleName::QPascal:
      if (key != "m") throw std::invalid_argument("q-pascal points use m=<0,1,...> or m=inf");
      return inf ? infinity_of(Kind::QPascalM) : qpascal_m(integer_value());
    case TriangleName::Stirling:
      if (key == "m") return inf ? infinity_of(Kind::StirlingM) : stirling_m(integer_value());
      if (key == "s") return inf ? infinity_of(Kind::StirlingS) : stirling_s(parse_rat(val));
      throw std::invalid_argument("stirling points use m=... (alpha<0) or s=... (alpha=0)");
    case TriangleName::StirlingInf:
      if (key != "m") throw std::invalid_argument("stirling-inf points use m=<0,1,...> or m=inf");
      return inf ? infinity_of(Kind::StirlingM) : stirling_m(integer_value());
    case TriangleName::Eulerian:
      if (key != "m") throw std::invalid_argument("eulerian points use m=<nonzero integer> or m=inf");
      return inf ? infinity_of(Kind::EulerianM) : eulerian_m(integer_value());
  }
  throw std::runtime_error("unreachable point parse");
}

std::string BoundaryPoint::str() const {
  switch (kind) {
    case Kind::PascalX: return "x=" + rat_str(value);
    case Kind::QPascalM: return infinite ? "m=inf" : "m=" + std::to_string(m);
    case Kind::StirlingM: return infinite ? "m=inf" : "m=" + std::to_string(m);
    case Kind::StirlingS: return infinite ? "s=inf" : "s=" + rat_str(value);
    case Kind::EulerianM: return infinite ? "m=inf" : "m=" + std::to_string(m);
    case Kind::TrivialZero: return "trivial-0";
    case Kind::TrivialInf: return "trivial-inf";
  }
  throw std::runtime_error("unreachable point kind");
}

namespace {

KernelArray empty_kernel(int depth) {
  KernelArray V;
  V.depth = depth;
  V.rows.resize(static_cast<std::size_t>(depth) + 1);
  for (int n = 0; n <= depth; ++n) V.rows[n].assign(static_cast<std::size_t>(n) + 1, Rat(0));
  return V;
}

KernelArray trivial_zero_kernel(const MultiplicitySpec& tri, int depth) {
  KernelArray V = empty_kernel(depth);
  Rat edge(1);  // D_{n,0} accumulated along the left edge
  V.rows[0][0] = 1;
  for (int n = 1; n <= depth; ++n) {
    edge *= tri.left(n - 1, 0);
    V.rows[n][0] = 1 / edge;
  }
  return V;
}

KernelArray trivial_inf_kernel(const MultiplicitySpec& tri, int depth) {
  KernelArray V = empty_kernel(depth);
  Rat edge(1);  // D_{n,n} accumulated along the diagonal
  V.rows[0][0] = 1;
  for (int n = 1; n <= depth; ++n) {
    edge *= tri.right(n - 1, n - 1);
    V.rows[n][n] = 1 / edge;
  }
  return V;
}

KernelArray from_first_column_checked(const MultiplicitySpec& tri, const std::vector<Rat>& col,
                                      int depth, const std::string& what) {
  ColumnBuildResult built = kernel_from_first_column(tri, col, depth);
  if (built.verdict != Membership::Accept)
    throw std::runtime_error("column construction for " + what +
                             " produced a negative entry at " +
                             node_str(*built.first_negative));
  return std::move(built.array);
}

void check_nonnegative(const KernelArray& V, const std::string& what) {
  for (int n = 0; n <= V.depth; ++n)
    for (int k = 0; k <= n; ++k)
      if (V.rows[n][k] < 0)
        throw std::runtime_error("extreme kernel " + what + " has a negative entry at " +
                                 node_str({n, k}));
}

}  // namespace

KernelArray extreme_kernel(TriangleName name, const std::map<std::string, Rat>& params,
                           const BoundaryPoint& point, int depth) {
  if (depth < 0) throw std::invalid_argument("negative depth");
  using Kind = BoundaryPoint::Kind;

  if (point.kind == Kind::TrivialZero)
    return trivial_zero_kernel(catalog_triangle(name, params), depth);
  if (point.kind == Kind::TrivialInf)
    return trivial_inf_kernel(catalog_triangle(name, params), depth);

  KernelArray V = empty_kernel(depth);
  switch (name) {
    case TriangleName::Pascal: {
      if (point.kind != Kind::PascalX)
        throw std::invalid_argument("pascal extremes are indexed by x");
      const Rat x = point.value;
      for (int n = 0; n <= depth; ++n)
        for (int k = 0; k <= n; ++k)
          V.rows[n][k] = rat_pow(x, n - k) * rat_pow(Rat(1) - x, k);
      break;
    }
    case TriangleName::QPascal: {
      if (point.kind != Kind::QPascalM)
        throw std::invalid_argument("q-pascal extremes are indexed by m");
      const Rat q = params.count("q") ? params.at("q") : Rat(0);
      if (!(q > 0 && q < 1))
        throw std::invalid_argument(
            "q-pascal extreme kernels require 0 < q < 1 (reach q > 1 through transposition)");
      if (point.infinite) {
        for (int n = 0; n <= depth; ++n) V.rows[n][n] = 1;
        break;
      }
      const long m = point.m;
      for (int n = 0; n <= depth; ++n)
        for (int k = 0; k <= n && k <= m; ++k) {
          Rat tail(1);  // (1-q^{m-k+1}) ... (1-q^m)
          for (long i = m - k + 1; i <= m; ++i) tail *= Rat(1) - rat_pow(q, i);
          V.rows[n][k] = rat_pow(q, (m - k) * static_cast<long>(n - k)) * tail;
        }
      break;
    }
    case TriangleName::Stirling:
    case TriangleName::StirlingInf: {
      if (point.kind == Kind::StirlingS) {
        if (name != TriangleName::Stirling)
          throw std::invalid_argument("s-points belong to the alpha = 0 stirling triangle");
        const Rat alpha = params.count("alpha") ? params.at("alpha") : Rat(1);
        if (alpha != 0)
          throw std::invalid_argument("s-points require alpha = 0; m-points cover alpha < 0");
        if (point.infinite)
          return trivial_inf_kernel(catalog_triangle(name, params), depth);
        std::vector<Rat> col(static_cast<std::size_t>(depth) + 1);
        for (int n = 0; n <= depth; ++n) col[n] = 1 / rising_factorial(point.value + 1, n);
        return from_first_column_checked(catalog_triangle(name, params), col, depth,
                                         "stirling " + point.str());
      }
      if (point.kind != Kind::StirlingM)
        throw std::invalid_argument("stirling extremes are indexed by m (alpha < 0) or s (alpha = 0)");
      if (point.infinite)
        return trivial_inf_kernel(catalog_triangle(name, params), depth);
      std::vector<Rat> col(static_cast<std::size_t>(depth) + 1);
      if (name == TriangleName::StirlingInf) {
        for (int n = 0; n <= depth; ++n) col[n] = 1 / rat_pow(Rat(point.m + 1), n);
      } else {
        const Rat alpha = params.count("alpha") ? params.at("alpha") : Rat(1);
        if (alpha >= 0)
          throw std::invalid_argument("m-points require alpha < 0 (use s-points at alpha = 0)");
        const Rat base = Rat(point.m + 1) * (-alpha) + 1;
        for (int n = 0; n <= depth; ++n) col[n] = 1 / rising_factorial(base, n);
      }
      return from_first_column_checked(catalog_triangle(name, params), col, depth,
                                       "stirling " + point.str());
    }
    case TriangleName::Eulerian: {
      if (point.kind != Kind::EulerianM)
        throw std::invalid_argument("eulerian extremes are indexed by integer m or m=inf");
      for (int n = 0; n <= depth; ++n) {
        const Rat fac = Rat(factorial(n + 1));
        for (int k = 0; k <= n; ++k) {
          Rat prod(1);
          if (!point.infinite)
            for (long i = -static_cast<long>(k); i <= n - k; ++i)
              prod *= Rat(1) + Rat(i) / Rat(point.m);
          V.rows[n][k] = prod / fac;
        }
      }
      break;
    }
  }
  check_nonnegative(V, point.str());
  return V;
}

Rat boundary_coordinate(const MultiplicitySpec& tri, const KernelArray& V) {
  if (V.depth < 1)
    throw std::invalid_argument("boundary coordinate needs the array down to level 1");
  return tri.left(0, 0) * V.at(1, 0);
}

long double log_extreme_value(TriangleName name, const std::map<std::string, Rat>& params,
                              const BoundaryPoint& point, long n, long k) {
  using Kind = BoundaryPoint::Kind;
  if (k < 0 || k > n) return kNegInf;

  switch (point.kind) {
    case Kind::TrivialZero: {
      if (k != 0) return kNegInf;
      MultiplicitySpec tri = catalog_triangle(name, params);
      long double acc = 0;
      for (long j = 0; j < n; ++j)
        acc -= logl(rat_ldouble(tri.left(static_cast<int>(j), 0)));
      return acc;
    }
    case Kind::TrivialInf: {
      if (k != n) return kNegInf;
      MultiplicitySpec tri = catalog_triangle(name, params);
      long double acc = 0;
      for (long j = 0; j < n; ++j)
        acc -= logl(rat_ldouble(tri.right(static_cast<int>(j), static_cast<int>(j))));
      return acc;
    }
    case Kind::PascalX: {
      if (name != TriangleName::Pascal) throw std::invalid_argument("x-point on non-pascal triangle");
      const long double x = rat_ldouble(point.value);
      long double acc = 0;
      if (n - k > 0) acc += (x == 0 ? kNegInf : (n - k) * logl(x));
      if (k > 0) acc += (x == 1 ? kNegInf : k * logl(1 - x));
      return acc;
    }
    case Kind::QPascalM: {
      if (name != TriangleName::QPascal) throw std::invalid_argument("m-point on non-q-pascal triangle");
      const long double q = rat_ldouble(params.at("q"));
      if (point.infinite) return k == n ? 0.0L : kNegInf;
      const long m = point.m;
      if (k > m) return kNegInf;
      long double acc = (m - k) * static_cast<long double>(n - k) * logl(q);
      for (long i = m - k + 1; i <= m; ++i) acc += log1pl(-powl(q, i));
      return acc;
    }
    case Kind::EulerianM: {
      if (name != TriangleName::Eulerian) throw std::invalid_argument("m-point on non-eulerian triangle");
      long double acc = -lgammal(static_cast<long double>(n) + 2);
      if (!point.infinite)
        for (long i = -k; i <= n - k; ++i) {
          const long double f = 1.0L + static_cast<long double>(i) / point.m;
          if (f <= 0) return kNegInf;
          acc += logl(f);
        }
      return acc;
    }
    case Kind::StirlingM:
    case Kind::StirlingS:
      throw std::invalid_argument(
          "stirling kernels have no entrywise closed form; use exact mode");
  }
  throw std::runtime_error("unreachable point kind");
}

}  // namespace trilab
