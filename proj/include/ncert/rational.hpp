#pragma once

// Exact rational scalar used by the constraint-system machinery, plus the
// Eigen glue that lets it live inside dense Eigen matrices.

#include <string>
#include <string_view>

#include <Eigen/Core>
#include <boost/multiprecision/cpp_int.hpp>

namespace ncert {

using Rational = boost::multiprecision::number<boost::multiprecision::cpp_rational_backend,
                                               boost::multiprecision::et_off>;

using RationalMatrix = Eigen::Matrix<Rational, Eigen::Dynamic, Eigen::Dynamic>;
using RationalVector = Eigen::Matrix<Rational, Eigen::Dynamic, 1>;

/// "p/q" in lowest terms, or "p" when the denominator is 1.
std::string to_string(const Rational& q);

/// Accepts "p", "-p", "p/q" and decimal literals such as "0.25".
Rational parse_rational(std::string_view text);

/// Best rational approximation with denominator <= max_den if it lies within
/// tol of x; otherwise the exact binary value of x.
Rational rational_from_double(double x, double tol = 1e-12, long max_den = 1000000);

inline double to_double(const Rational& q) { return q.convert_to<double>(); }

}  // namespace ncert

// Boost 1.74 probes Matrix::const_iterator, which Eigen defines as void for
// non-vector shapes; overload resolution against Rational then fails hard.
namespace boost::multiprecision::detail {
template <typename S, int R, int C, int O, int MR, int MC>
struct is_byte_container<Eigen::Matrix<S, R, C, O, MR, MC>> : boost::false_type {};
template <typename D>
struct is_byte_container<Eigen::MatrixBase<D>> : boost::false_type {};
}  // namespace boost::multiprecision::detail

namespace Eigen {

template <>
struct NumTraits<ncert::Rational> : GenericNumTraits<ncert::Rational> {
  typedef ncert::Rational Real;
  typedef ncert::Rational NonInteger;
  typedef ncert::Rational Nested;
  enum {
    IsInteger = 0,
    IsSigned = 1,
    IsComplex = 0,
    RequireInitialization = 1,
    ReadCost = 6,
    AddCost = 150,
    MulCost = 100
  };
  static inline Real epsilon() { return 0; }
  static inline Real dummy_precision() { return 0; }
  static inline int digits10() { return 0; }
};

}  // namespace Eigen
