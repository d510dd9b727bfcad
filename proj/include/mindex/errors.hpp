#ifndef MINDEX_ERRORS_HPP_
#define MINDEX_ERRORS_HPP_

#include <stdexcept>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace mindex {

  /// Arbitrary-precision integer used for every group order. Expression
  /// templates are off so that `auto` and brace-initialisation yield values.
  using BigInt = boost::multiprecision::number<
      boost::multiprecision::cpp_int_backend<>,
      boost::multiprecision::et_off>;

  class Error : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
  };

  /// Malformed input, violated preconditions, or a question that has no
  /// answer (kappa of the trivial group). The CLI maps these to exit code 1.
  class InputError : public Error {
   public:
    using Error::Error;
  };

  /// The input is fine but lies beyond what this library can decide: an
  /// unidentified simple group, a decomposition that did not finish, a size
  /// cap. The CLI maps these to exit code 2.
  class CapabilityError : public Error {
   public:
    using Error::Error;
  };

  class TrivialGroupError : public InputError {
   public:
    TrivialGroupError()
        : InputError("κ undefined: no proper subgroup (trivial group)") {}
    explicit TrivialGroupError(std::string const& what) : InputError(what) {}
  };

  class UnknownSimpleError : public CapabilityError {
   public:
    explicit UnknownSimpleError(BigInt order)
        : CapabilityError("μ unavailable for simple group of order "
                          + order.str()),
          _order(std::move(order)) {}

    BigInt const& order() const noexcept {
      return _order;
    }

   private:
    BigInt _order;
  };

  class DecompositionIncomplete : public CapabilityError {
   public:
    using CapabilityError::CapabilityError;
  };

}  // namespace mindex

#endif  // MINDEX_ERRORS_HPP_
