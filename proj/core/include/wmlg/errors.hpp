#pragma once

#include <stdexcept>
#include <string>

namespace wmlg {

/// Root of the library's error hierarchy. Data- and computation-level failures
/// derive from this; precondition violations (programmer errors) throw
/// std::invalid_argument instead.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// --- panel data ---------------------------------------------------------

/// A CSV cell failed to parse (message carries the 1-based row number).
class ParseError : public Error { public: using Error::Error; };

/// The panel is not balanced: some (id, time) cell is missing or duplicated.
class UnbalancedPanel : public Error { public: using Error::Error; };

/// An outcome value is negative, NaN or infinite.
class InvalidOutcome : public Error { public: using Error::Error; };

/// A requested time label is not on the panel's (or model's) grid.
class UnknownTime : public Error { public: using Error::Error; };

// --- index computation --------------------------------------------------

/// The weight argument mu1*n + mu2*Q - mu3*j + mu4 left the positive range.
class InvalidWeightIndex : public Error { public: using Error::Error; };

/// B(Q) = sum of weights is zero (or negative) for a nonempty marked set.
class DegenerateWeights : public Error { public: using Error::Error; };

// --- asymptotics --------------------------------------------------------

/// Successive quadrature refinements failed to agree within tolerance.
class QuadratureError : public Error { public: using Error::Error; };

/// The model puts no (or too little) mass below the threshold, the copula
/// correlation is degenerate, or a normalizer is numerically zero.
class DegenerateModel : public Error { public: using Error::Error; };

/// A cross-section has an empty marked set where the plug-in needs one.
class DegenerateCrossSection : public Error { public: using Error::Error; };

/// Internal consistency check failed (e.g. asymmetric covariance output);
/// indicates a bug, not bad input.
class InternalError : public Error { public: using Error::Error; };

// --- variation inference ------------------------------------------------

/// Relative change requested with a zero base index.
class UndefinedRelativeChange : public Error { public: using Error::Error; };

/// A variance that must be nonnegative came out negative beyond tolerance.
class NegativeVariance : public Error { public: using Error::Error; };

} // namespace wmlg
