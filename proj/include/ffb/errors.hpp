#pragma once

#include <stdexcept>
#include <string>

namespace ffb {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Input-contract violations.
class TiesPresentError : public Error { public: using Error::Error; };
class NonFiniteError : public Error { public: using Error::Error; };
class EmptyInputError : public Error { public: using Error::Error; };
class OriginAboveFirstPointError : public Error { public: using Error::Error; };
class DegenerateRangeError : public Error { public: using Error::Error; };
class TooFewPointsError : public Error { public: using Error::Error; };
class LengthMismatchError : public Error { public: using Error::Error; };
class DimensionMismatchError : public Error { public: using Error::Error; };
class InvalidOrderError : public Error { public: using Error::Error; };
class ZeroGapError : public Error { public: using Error::Error; };

// Dense reference paths refuse problems beyond their documented size cap.
class SizeCapError : public Error { public: using Error::Error; };

// Numerical failures.
class SingularMatrixError : public Error { public: using Error::Error; };
class NotSpdError : public Error { public: using Error::Error; };
class NotConvergedError : public Error { public: using Error::Error; };

class IoError : public Error { public: using Error::Error; };
class FormatError : public Error { public: using Error::Error; };

}  // namespace ffb
